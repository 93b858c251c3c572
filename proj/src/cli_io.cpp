#include "toric/cli_io.hpp"

#include "toric/errors.hpp"
#include "toric/volumes.hpp"

#include "json.hpp"

#include <climits>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unistd.h>

namespace toric {

using ojson = nlohmann::ordered_json;

namespace {

ojson int_json(const Int& x)
{
    if (x.fits_slong_p())
        return ojson(x.get_si());
    return ojson(x.get_str());
}

Int parse_int(const nlohmann::json& j)
{
    if (j.is_number_integer())
        return Int(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned())
        return Int(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) {
        Int x;
        if (x.set_str(j.get<std::string>(), 10) != 0)
            throw InvalidInput("not an integer: \"" + j.get<std::string>() + "\"");
        return x;
    }
    throw InvalidInput("expected an integer, got " + j.dump());
}

const char* context_name(CycleContext c)
{
    return c == CycleContext::affine ? "affine" : "projective";
}

/// Face-keyed table with keys in sorted string order.
ojson face_table(const Polytope& p, const std::vector<Int>& values)
{
    std::map<std::string, Int> sorted;
    for (std::size_t f = 0; f < values.size(); ++f)
        sorted.emplace(p.label(f), values[f]);
    ojson out = ojson::object();
    for (const auto& [k, v] : sorted)
        out[k] = int_json(v);
    return out;
}

ojson vector_json(const IntVector& v)
{
    ojson a = ojson::array();
    for (const auto& x : v)
        a.push_back(int_json(x));
    return a;
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

const char* kind_name(PairKind k)
{
    switch (k) {
    case PairKind::rsv:
        return "rsv";
    case PairKind::u:
        return "u";
    default:
        return "i";
    }
}

/// Polytope plus memoized pair tables, optionally persisted in a cache directory.
class Session
{
public:
    explicit Session(const JobSpec& spec) : spec_(spec), poly_(build(spec))
    {
        if (spec_.cache_dir)
            load_cache();
    }

    const Polytope& polytope() const { return poly_; }

    const PairTable& table(PairKind kind)
    {
        auto it = tables_.find(kind);
        if (it != tables_.end())
            return it->second;
        PairTable t = compute_pair_table(poly_, kind, spec_.max_dim, spec_.jobs);
        dirty_ = true;
        return tables_.emplace(kind, std::move(t)).first->second;
    }

    Route route() const
    {
        if (spec_.route)
            return *spec_.route;
        return poly_.mode() == Mode::cone ? Route::normal : Route::general;
    }

    EulerTable euler(Route r)
    {
        if (r == Route::normal)
            return euler_obstructions_normal(poly_, table(PairKind::rsv));
        return euler_obstructions_general(poly_, table(PairKind::u), table(PairKind::i));
    }

    void save_cache()
    {
        if (!spec_.cache_dir || !dirty_)
            return;
        ojson j;
        j["input"] = canonical_input(spec_);
        j["faces"] = labels();
        ojson tables = ojson::object();
        for (const auto& [kind, table] : tables_) {
            ojson rows = ojson::array();
            for (const auto& [key, value] : table)
                rows.push_back(ojson::array({poly_.label(key.first), poly_.label(key.second), int_json(value)}));
            tables[kind_name(kind)] = std::move(rows);
        }
        j["tables"] = std::move(tables);

        namespace fs = std::filesystem;
        fs::create_directories(*spec_.cache_dir);
        fs::path target = cache_path();
        fs::path temp = target;
        temp += ".tmp." + std::to_string(::getpid());
        {
            std::ofstream out(temp);
            out << j.dump() << '\n';
            if (!out)
                throw InvalidInput("cannot write cache file " + temp.string());
        }
        fs::rename(temp, target);
        dirty_ = false;
    }

private:
    static Polytope build(const JobSpec& spec)
    {
        if (spec.points.empty())
            throw InvalidInput("input has no points");
        if (spec.points.size() > spec.max_points)
            throw GuardExceeded(std::to_string(spec.points.size()) + " points exceed --max-points " +
                                std::to_string(spec.max_points));
        PointConfiguration a(spec.points);
        return spec.mode == Mode::cone ? Polytope::from_cone(std::move(a)) : Polytope::from_points(std::move(a));
    }

    std::vector<std::string> labels() const
    {
        std::vector<std::string> out;
        for (std::size_t f = 0; f < poly_.faces().size(); ++f)
            out.push_back(poly_.label(f));
        return out;
    }

    std::filesystem::path cache_path() const
    {
        char name[32];
        std::snprintf(name, sizeof name, "%016llx.json",
                      static_cast<unsigned long long>(fnv1a(canonical_input(spec_))));
        return std::filesystem::path(*spec_.cache_dir) / name;
    }

    void load_cache()
    {
        std::ifstream in(cache_path());
        if (!in)
            return;
        try {
            nlohmann::json j = nlohmann::json::parse(in);
            if (j.at("input").get<std::string>() != canonical_input(spec_))
                return;
            if (j.at("faces").get<std::vector<std::string>>() != labels())
                return;
            std::map<std::string, std::size_t> index;
            for (std::size_t f = 0; f < poly_.faces().size(); ++f)
                index[poly_.label(f)] = f;
            std::map<PairKind, PairTable> loaded;
            for (PairKind kind : {PairKind::rsv, PairKind::u, PairKind::i}) {
                if (!j.at("tables").contains(kind_name(kind)))
                    continue;
                PairTable t;
                for (const auto& row : j["tables"][kind_name(kind)])
                    t.emplace(std::make_pair(index.at(row.at(0).get<std::string>()),
                                             index.at(row.at(1).get<std::string>())),
                              parse_int(row.at(2)));
                if (t.size() != nested_pairs(poly_.faces()).size())
                    return;
                loaded.emplace(kind, std::move(t));
            }
            tables_ = std::move(loaded);
        } catch (const std::exception&) {
            // An unreadable cache entry is ignored and rewritten.
            tables_.clear();
        }
    }

    const JobSpec& spec_;
    Polytope poly_;
    std::map<PairKind, PairTable> tables_;
    bool dirty_ = false;
};

ConstructibleData parse_rho(const Polytope& p, const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("rho file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rho") || !j["rho"].is_object())
        throw InvalidInput("rho file must be an object with a \"rho\" object");
    std::map<std::string, std::size_t> index;
    for (std::size_t f = 0; f < p.faces().size(); ++f)
        index[p.label(f)] = f;
    ConstructibleData rho;
    rho.rho.assign(p.faces().size(), 0);
    std::vector<bool> seen(p.faces().size(), false);
    for (const auto& [key, value] : j["rho"].items()) {
        auto it = index.find(key);
        if (it == index.end())
            throw InvalidInput("rho names an unknown face \"" + key + "\"");
        rho.rho[it->second] = parse_int(value);
        seen[it->second] = true;
    }
    for (std::size_t f = 0; f < seen.size(); ++f)
        if (!seen[f])
            throw InvalidInput("rho is missing face \"" + p.label(f) + "\"");
    return rho;
}

void check_volume_oracle(const Polytope& p, const std::vector<Int>& volumes, std::size_t max_dim)
{
    for (std::size_t f = 0; f < p.faces().size(); ++f) {
        const Face& face = p.faces()[f];
        if (face.dim > max_dim)
            continue;
        std::vector<IntVector> pts;
        for (std::size_t j : face.id)
            pts.push_back(p.points()[j]);
        if (ehrhart_volume_oracle(pts, face.lattice, max_dim) != volumes[f])
            throw InternalInconsistency("volume oracle disagrees on face \"" + p.label(f) + "\"");
    }
}

std::vector<std::pair<std::size_t, std::size_t>> strict_pairs(const Polytope& p)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (auto [a, b] : nested_pairs(p.faces()))
        if (a != b)
            out.emplace_back(a, b);
    return out;
}

SubdiagramRegion region_for(const Polytope& p, Route route, std::size_t a, std::size_t b, std::size_t max_dim)
{
    return route == Route::normal ? rsv_region(p, a, b, max_dim) : u_region(p, a, b);
}

void check_region_oracle(const Polytope& p, Route route, std::size_t max_dim)
{
    for (auto [a, b] : strict_pairs(p)) {
        if (p.faces()[a].dim - p.faces()[b].dim > 2)
            continue;
        SubdiagramRegion r = region_for(p, route, a, b, max_dim);
        if (subdiagram_volume_oracle(r, max_dim) != r.volume)
            throw InternalInconsistency("subdiagram oracle disagrees on pair (\"" + p.label(a) + "\", \"" +
                                        p.label(b) + "\")");
    }
}

void dump_regions(const Polytope& p, Route route, std::size_t max_dim, const std::string& path)
{
    ojson out = ojson::array();
    for (auto [a, b] : strict_pairs(p)) {
        SubdiagramRegion r = region_for(p, route, a, b, max_dim);
        ojson entry;
        entry["alpha"] = p.label(a);
        entry["beta"] = p.label(b);
        entry["kind"] = route == Route::normal ? "rsv" : "u";
        ojson cone = ojson::array();
        for (const auto& g : r.cone.generators)
            cone.push_back(vector_json(g));
        entry["cone"] = std::move(cone);
        ojson gens = ojson::array();
        for (const auto& g : r.generators)
            gens.push_back(vector_json(g));
        entry["generators"] = std::move(gens);
        ojson facets = ojson::array();
        for (const auto& f : r.bounded_facets) {
            ojson pts = ojson::array();
            for (const auto& x : f)
                pts.push_back(vector_json(x));
            facets.push_back(std::move(pts));
        }
        entry["bounded_facets"] = std::move(facets);
        entry["volume"] = int_json(r.volume);
        out.push_back(std::move(entry));
    }
    std::ofstream f(path);
    f << out.dump(2) << '\n';
    if (!f)
        throw InvalidInput("cannot write region dump " + path);
}

ojson faces_json(const Polytope& p)
{
    const auto& faces = p.faces();
    ojson j;
    j["mode"] = p.mode() == Mode::cone ? "cone" : "polytope";
    j["ambient_dim"] = p.input().dim;
    j["dim"] = p.dim();
    ojson list = ojson::array();
    for (std::size_t f = 0; f < faces.size(); ++f) {
        ojson face;
        face["id"] = p.label(f);
        face["dim"] = faces[f].dim;
        const std::size_t sub = p.mode() == Mode::cone ? 1 : 0;
        ojson extremal = ojson::array();
        for (std::size_t g : faces.below(f))
            if (faces[g].dim == sub)
                extremal.push_back(p.label(g));
        if (faces[f].dim == sub)
            extremal.push_back(p.label(f));
        face[p.mode() == Mode::cone ? "rays" : "vertices"] = std::move(extremal);
        list.push_back(std::move(face));
    }
    j["faces"] = std::move(list);
    ojson order = ojson::array();
    for (auto [b, a] : faces.order())
        order.push_back(ojson::array({p.label(b), p.label(a)}));
    j["order"] = std::move(order);
    return j;
}

ojson report_json(const Polytope& p, const DiscriminantReport& r)
{
    ojson j;
    j["m"] = r.m;
    ojson deltas = ojson::array();
    for (const auto& d : r.deltas)
        deltas.push_back(int_json(d));
    j["deltas"] = std::move(deltas);
    j["codim"] = r.codim;
    j["degree"] = int_json(r.degree);
    ojson per_face = ojson::array();
    for (const auto& t : r.per_face) {
        ojson f;
        f["id"] = p.label(t.face);
        f["dim"] = t.dim;
        f["codim"] = t.codim;
        f["volume"] = int_json(t.volume);
        f["eu"] = int_json(t.eu);
        per_face.push_back(std::move(f));
    }
    j["per_face"] = std::move(per_face);
    j["dual_defect"] = r.dual_defect;
    return j;
}

// ---------------------------------------------------------------------------
// check

struct CheckList
{
    ojson entries = ojson::array();
    bool pass = true;

    void add(const std::string& name, bool ok, const std::string& detail = {})
    {
        ojson e;
        e["name"] = name;
        e["pass"] = ok;
        if (!detail.empty())
            e["detail"] = detail;
        entries.push_back(std::move(e));
        pass = pass && ok;
    }

    void skip(const std::string& name, const std::string& reason)
    {
        ojson e;
        e["name"] = name;
        e["pass"] = true;
        e["detail"] = "not applicable: " + reason;
        entries.push_back(std::move(e));
    }

    template <class Body>
    void run(const std::string& name, Body&& body)
    {
        try {
            std::string detail;
            bool ok = body(detail);
            add(name, ok, detail);
        } catch (const GuardExceeded&) {
            throw;
        } catch (const std::exception& e) {
            add(name, false, e.what());
        }
    }
};

std::vector<ConstructibleData> sample_rhos(std::size_t faces, int count)
{
    std::mt19937_64 engine(20240601);
    std::vector<ConstructibleData> out;
    out.push_back({std::vector<Int>(faces, 1)});
    for (int k = 0; k < count; ++k) {
        ConstructibleData rho;
        for (std::size_t f = 0; f < faces; ++f)
            rho.rho.push_back(static_cast<long>(engine() % 11) - 5);
        out.push_back(std::move(rho));
    }
    return out;
}

ojson run_check(Session& s, const JobSpec& spec)
{
    const Polytope& p = s.polytope();
    const auto& faces = p.faces();
    CheckList checks;

    checks.run("face_lattice_diamond", [&](std::string& detail) {
        for (auto [b, a] : faces.order()) {
            if (faces[a].dim != faces[b].dim + 2)
                continue;
            std::size_t between = 0;
            for (std::size_t g : faces.above(b))
                if (faces.precedes(g, a) && g != a)
                    ++between;
            if (between != 2) {
                detail = "interval (\"" + p.label(b) + "\", \"" + p.label(a) + "\") has " +
                         std::to_string(between + 2) + " elements";
                return false;
            }
        }
        return true;
    });

    const std::size_t top = faces.top();
    const bool normal = is_normal_configuration(p, spec.max_dim);

    if (p.mode() == Mode::polytope) {
        checks.run("euler_relation", [&](std::string&) {
            long chi = 0;
            for (const auto& f : faces.faces())
                chi += f.dim % 2 == 0 ? 1 : -1;
            return chi == 1;
        });

        std::vector<Int> volumes = face_volumes(p);
        checks.run("volume_oracle", [&](std::string&) {
            check_volume_oracle(p, volumes, spec.max_dim);
            return true;
        });

        checks.run("vertex_choice_independence", [&](std::string& detail) {
            for (auto [a, b] : strict_pairs(p)) {
                Int u0 = subdiagram_volume_u(p, a, b), i0 = face_index_i(p, a, b);
                for (std::size_t v : faces[b].vertices)
                    if (subdiagram_volume_u(p, a, b, v) != u0 || face_index_i(p, a, b, v) != i0) {
                        detail = "pair (\"" + p.label(a) + "\", \"" + p.label(b) + "\")";
                        return false;
                    }
            }
            return true;
        });

        EulerTable eu = s.euler(Route::general);
        checks.run("top_face_euler", [&](std::string&) { return eu[top] == 1; });

        checks.run("two_path_delta", [&](std::string&) {
            return delta_sequence(p, volumes, eu) == recombine_delta(euler_integrals(p, volumes, eu), p.dim());
        });

        if (p.points().size() == p.dim() + 1)
            checks.skip("degree_positive", "A is affinely independent, so the dual variety is empty");
        else
            checks.run("degree_positive", [&](std::string& detail) {
                auto [r, degree] = dual_dimension_degree(delta_sequence(p, volumes, eu));
                detail = "codim " + std::to_string(r) + ", degree " + degree.get_str();
                return sgn(degree) > 0;
            });

        if (eu.all_one())
            checks.run("smooth_collapse", [&](std::string&) {
                return delta_sequence(p, volumes, eu).front() == gkz_smooth_degree(p, volumes);
            });
        else
            checks.skip("smooth_collapse", "Euler obstruction is not identically 1");

        if (normal) {
            checks.run("normality_bridge", [&](std::string& detail) {
                const auto& r = s.table(PairKind::rsv);
                const auto& u = s.table(PairKind::u);
                const auto& i = s.table(PairKind::i);
                for (const auto& [key, value] : r)
                    if (pair_value(u, key.first, key.second) * pair_value(i, key.first, key.second) != value) {
                        detail = "pair (\"" + p.label(key.first) + "\", \"" + p.label(key.second) + "\")";
                        return false;
                    }
                return s.euler(Route::normal).values == eu.values;
            });
        } else {
            checks.skip("normality_bridge", "configuration is not normal");
        }

        checks.run("cc_round_trip", [&](std::string&) {
            const auto& u = s.table(PairKind::u);
            const auto& i = s.table(PairKind::i);
            for (const auto& rho : sample_rhos(faces.size(), 5))
                if (rho_from_cc(p, cc_projective(p, rho, u, i), spec.max_dim).rho != rho.rho)
                    return false;
            return true;
        });

        if (p.dim() == 2 && normal)
            checks.run("smoothness_equivalence", [&](std::string& detail) {
                auto r = smoothness_equivalence_n2(p, spec.max_dim);
                detail = r.smooth ? "smooth" : "singular";
                return r.consistent();
            });
        else
            checks.skip("smoothness_equivalence", "needs a normal lattice polygon");
    } else {
        EulerTable eu = s.euler(Route::normal);
        checks.run("top_face_euler", [&](std::string&) { return eu[top] == 1; });
        checks.run("cc_round_trip", [&](std::string&) {
            const auto& r = s.table(PairKind::rsv);
            for (const auto& rho : sample_rhos(faces.size(), 5))
                if (rho_from_cc(p, cc_affine(p, rho, r), spec.max_dim).rho != rho.rho)
                    return false;
            return true;
        });
        if (normal)
            checks.run("normality_bridge", [&](std::string&) {
                return s.euler(Route::general).values == eu.values;
            });
        else
            checks.skip("normality_bridge", "semigroup is not saturated");
    }

    checks.run("subdiagram_oracle", [&](std::string&) {
        check_region_oracle(p, s.route(), spec.max_dim);
        return true;
    });

    ojson j;
    j["checks"] = std::move(checks.entries);
    j["pass"] = checks.pass;
    return j;
}

ojson run_command(Session& s, const JobSpec& spec, bool& failed)
{
    const Polytope& p = s.polytope();
    switch (spec.command) {
    case Command::faces:
        return faces_json(p);

    case Command::volumes: {
        std::vector<Int> volumes = face_volumes(p);
        if (spec.oracle)
            check_volume_oracle(p, volumes, spec.max_dim);
        ojson j;
        j["volumes"] = face_table(p, volumes);
        return j;
    }

    case Command::euler: {
        Route route = s.route();
        EulerTable eu = s.euler(route);
        if (spec.oracle)
            check_region_oracle(p, route, spec.max_dim);
        return face_table(p, eu.values);
    }

    case Command::discriminant: {
        if (p.mode() != Mode::polytope)
            throw InvalidInput("discriminant needs polytope mode");
        std::vector<Int> volumes = face_volumes(p);
        EulerTable eu = s.euler(s.route());
        if (spec.oracle) {
            check_volume_oracle(p, volumes, spec.max_dim);
            check_region_oracle(p, s.route(), spec.max_dim);
            if (delta_sequence(p, volumes, eu) != recombine_delta(euler_integrals(p, volumes, eu), p.dim()))
                throw InternalInconsistency("two-path delta identity fails");
        }
        return report_json(p, discriminant_report(p, volumes, eu));
    }

    case Command::charcycle: {
        if (!spec.rho_json)
            throw InvalidInput("charcycle needs --rho FILE");
        ConstructibleData rho = parse_rho(p, *spec.rho_json);
        CharCycleResult cc = spec.context == CycleContext::affine
                                 ? cc_affine(p, rho, s.table(PairKind::rsv))
                                 : cc_projective(p, rho, s.table(PairKind::u), s.table(PairKind::i));
        if (spec.oracle && rho_from_cc(p, cc, spec.max_dim).rho != rho.rho)
            throw InternalInconsistency("characteristic cycle does not reconstruct rho");
        ojson j;
        j["context"] = context_name(cc.context);
        j["m"] = face_table(p, cc.m);
        return j;
    }

    case Command::ic: {
        std::size_t n = spec.ic_n == 0 ? p.dim() : spec.ic_n;
        CharCycleResult cc = ic_multiplicities(p, n, s.table(PairKind::rsv));
        ojson j;
        j["n"] = n;
        j["m"] = face_table(p, cc.m);
        return j;
    }

    case Command::check: {
        ojson j = run_check(s, spec);
        failed = !j["pass"].get<bool>();
        return j;
    }
    }
    throw InvalidInput("unknown command");
}

} // namespace

std::optional<Command> parse_command(const std::string& name)
{
    static const std::map<std::string, Command> names{
        {"faces", Command::faces},         {"volumes", Command::volumes}, {"euler", Command::euler},
        {"discriminant", Command::discriminant}, {"charcycle", Command::charcycle}, {"ic", Command::ic},
        {"check", Command::check},
    };
    auto it = names.find(name);
    if (it == names.end())
        return std::nullopt;
    return it->second;
}

void parse_input(const std::string& text, JobSpec& spec)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("input is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw InvalidInput("input must be a JSON object");
    spec.mode = Mode::polytope;
    if (j.contains("mode")) {
        if (!j["mode"].is_string())
            throw InvalidInput("\"mode\" must be a string");
        const std::string mode = j["mode"];
        if (mode == "polytope")
            spec.mode = Mode::polytope;
        else if (mode == "cone")
            spec.mode = Mode::cone;
        else
            throw InvalidInput("unknown mode \"" + mode + "\"");
    }
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
        throw InvalidInput("\"points\" must be a nonempty array of integer vectors");
    spec.points.clear();
    for (const auto& row : j["points"]) {
        if (!row.is_array())
            throw InvalidInput("each point must be an array of integers");
        IntVector v;
        for (const auto& x : row)
            v.push_back(parse_int(x));
        spec.points.push_back(std::move(v));
    }
}

std::string canonical_input(const JobSpec& spec)
{
    std::ostringstream os;
    os << (spec.mode == Mode::cone ? "cone" : "polytope");
    for (const auto& p : spec.points)
        os << ';' << to_string(p);
    return os.str();
}

JobResult run_job(const JobSpec& spec)
{
    JobResult result;
    try {
        Session session(spec);
        bool failed = false;
        ojson j = run_command(session, spec, failed);
        if (spec.dump_regions)
            dump_regions(session.polytope(), session.route(), spec.max_dim, *spec.dump_regions);
        session.save_cache();
        result.output = j.dump(2) + "\n";
        if (failed) {
            result.status = exit_inconsistency;
            result.error = "check failed";
        }
    } catch (const InvalidInput& e) {
        result = {exit_invalid_input, {}, e.what()};
    } catch (const GuardExceeded& e) {
        result = {exit_guard_exceeded, {}, e.what()};
    } catch (const InternalInconsistency& e) {
        result = {exit_inconsistency, {}, e.what()};
    } catch (const nlohmann::json::exception& e) {
        result = {exit_invalid_input, {}, e.what()};
    } catch (const std::exception& e) {
        result = {exit_inconsistency, {}, e.what()};
    }
    return result;
}

} // namespace toric
