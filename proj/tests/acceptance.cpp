// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include "corpus.hpp"
#include "generators.hpp"
#include "toric/cli_io.hpp"
#include "toric/volumes.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace toric;
using test::pts;

namespace {

using Poly = std::vector<Rat>; // coefficients, lowest degree first

void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

// Exact interpolation through (0, y0), (1, y1), ... by Newton divided differences.
Poly interpolate(const std::vector<Rat>& ys)
{
    const std::size_t n = ys.size();
    std::vector<Rat> c = ys;
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t j = n - 1; j >= k; --j)
            c[j] = (c[j] - c[j - 1]) / Rat(static_cast<long>(k));
    Poly out{c[n - 1]};
    for (std::size_t k = n - 1; k-- > 0;) {
        Poly next(out.size() + 1);
        for (std::size_t j = 0; j < out.size(); ++j) {
            next[j + 1] += out[j];
            next[j] -= out[j] * Rat(static_cast<long>(k));
        }
        next[0] += c[k];
        out = std::move(next);
    }
    trim(out);
    return out;
}

// Divides p by (a + b t) while the division is exact, at most `limit` times (0: no limit).
void strip_linear(Poly& p, const Rat& a, const Rat& b, int limit)
{
    for (int count = 0; limit == 0 || count < limit; ++count) {
        if (p.size() < 2)
            return;
        Poly q(p.size() - 1);
        Poly r = p;
        for (std::size_t j = p.size() - 1; j >= 1; --j) {
            q[j - 1] = r[j] / b;
            r[j] -= q[j - 1] * b;
            r[j - 1] -= q[j - 1] * a;
        }
        if (r[0] != 0)
            return;
        p = std::move(q);
    }
}

Int sylvester_resultant(const std::vector<Int>& f, const std::vector<Int>& g)
{
    // f, g highest degree first.
    const std::size_t m = f.size() - 1, n = g.size() - 1, size = m + n;
    IntegerMatrix s(size, size);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j <= m; ++j)
            s(r, r + j) = f[j];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j <= n; ++j)
            s(n + r, r + j) = g[j];
    return determinant(s);
}

// Degree of the discriminant of sum_{a in exps} c_a x^a, from its restriction to a
// line in coefficient space with the factors c_min and c_max removed.
long univariate_discriminant_degree(const std::vector<long>& exps, test::Rng& rng)
{
    const long lo = exps.front(), hi = exps.back();
    std::vector<long> base, step;
    do {
        base.clear();
        step.clear();
        for (std::size_t k = 0; k < exps.size(); ++k) {
            base.push_back(rng.uniform_long(1, 9));
            step.push_back(rng.uniform_long(1, 9));
        }
    } while (base.front() * step.back() == base.back() * step.front());
    const std::size_t samples = 4 * static_cast<std::size_t>(hi - lo) + 4;
    std::vector<Rat> values;
    for (std::size_t t = 0; t < samples; ++t) {
        std::vector<Int> f(static_cast<std::size_t>(hi - lo + 1), 0);
        for (std::size_t k = 0; k < exps.size(); ++k)
            f[static_cast<std::size_t>(hi - exps[k])] = base[k] + static_cast<long>(t) * step[k];
        std::vector<Int> df;
        for (std::size_t j = 0; j + 1 < f.size(); ++j)
            df.push_back(f[j] * static_cast<long>(f.size() - 1 - j));
        values.push_back(Rat(sylvester_resultant(f, df)));
    }
    Poly d = interpolate(values);
    strip_linear(d, base.front(), step.front(), 0);
    strip_linear(d, base.back(), step.back(), 1);
    return static_cast<long>(d.size()) - 1;
}

DiscriminantReport report(const Polytope& p)
{
    return discriminant_report(p, face_volumes(p), euler_obstructions(p, Route::general));
}

Polytope polytope(const std::vector<IntVector>& points) { return Polytope::from_points(PointConfiguration(points)); }

std::map<std::string, Int> eu_by_label(const Polytope& p, const EulerTable& eu)
{
    std::map<std::string, Int> out;
    for (std::size_t f = 0; f < p.faces().size(); ++f)
        out[p.label(f)] = eu[f];
    return out;
}

struct Failure
{
    std::string what;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Failure{what};
}

bool is_simplex(const Polytope& p) { return p.points().size() == p.dim() + 1; }

// --- criteria ---------------------------------------------------------------

void example_end_to_end()
{
    auto start = std::chrono::steady_clock::now();
    Polytope p = polytope(test::stretched_simplex());
    auto eu = eu_by_label(p, euler_obstructions(p, Route::general));
    require(eu.size() == 15, "face count");
    for (const auto& [label, value] : eu) {
        const bool vanishes = label == "1" || label == "2" || label == "1,2";
        require(value == (vanishes ? 0 : 1), "Eu on face " + label);
    }
    DiscriminantReport r = report(p);
    require(r.deltas.size() == 4 && r.deltas[0] == 0 && r.deltas[1] == 0 && r.deltas[2] == 2, "delta_1..3");
    require(r.codim == 3 && r.degree == 2, "codim and degree");
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(seconds < 1.0, "runtime");
}

void classical_discriminants()
{
    auto start = std::chrono::steady_clock::now();
    test::Rng rng(101);
    for (long d = 2; d <= 8; ++d) {
        std::vector<long> exps;
        for (long k = 0; k <= d; ++k)
            exps.push_back(k);
        const long oracle = univariate_discriminant_degree(exps, rng);
        DiscriminantReport r = report(polytope(test::segment(d)));
        require(r.codim == 1 && r.degree == oracle && oracle == 2 * d - 2,
                "d = " + std::to_string(d) + ", oracle " + std::to_string(oracle) + ", got " + r.degree.get_str());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(seconds < 1.0, "runtime");
}

void segre_and_cusp()
{
    // a + b x + c y + d x y is singular in the torus exactly when ad - bc = 0.
    DiscriminantReport segre = report(polytope(test::unit_square()));
    require(segre.codim == 1 && segre.degree == 2, "Segre quadric");

    test::Rng rng(102);
    Polytope cusp = polytope(test::cusp());
    auto eu = eu_by_label(cusp, euler_obstructions(cusp, Route::general));
    // The cusp vertex has multiplicity 2, the least generator of <2, 3>.
    require(eu.at("0") == 2, "Eu at the cusp");
    DiscriminantReport r = report(cusp);
    require(r.codim == 1 && r.degree == univariate_discriminant_degree({0, 2, 3}, rng) && r.degree == 3,
            "cuspidal cubic");
}

void smooth_collapse()
{
    int smooth = 0;
    for (const auto& c : test::corpus()) {
        Polytope p = polytope(c.points);
        EulerTable eu = euler_obstructions(p, Route::general);
        if (!eu.all_one())
            continue;
        ++smooth;
        auto vol = face_volumes(p);
        require(delta_sequence(p, vol, eu).front() == gkz_smooth_degree(p, vol), c.name);
    }
    require(smooth >= 10, "too few smooth configurations");
}

void two_path_delta()
{
    for (const auto& c : test::corpus()) {
        Polytope p = polytope(c.points);
        auto vol = face_volumes(p);
        EulerTable eu = euler_obstructions(p, Route::general);
        require(delta_sequence(p, vol, eu) == recombine_delta(euler_integrals(p, vol, eu), p.dim()), c.name);
    }
}

void normality_bridge()
{
    int count = 0;
    for (const auto& c : test::very_ample()) {
        Polytope p = polytope(c.points);
        require(p.dim() >= 2 && p.dim() <= 3, c.name + " dimension");
        require(is_normal_configuration(p), c.name + " is not normal");
        PairTable r = compute_pair_table(p, PairKind::rsv);
        PairTable u = compute_pair_table(p, PairKind::u);
        PairTable i = compute_pair_table(p, PairKind::i);
        for (const auto& [key, value] : r)
            require(pair_value(u, key.first, key.second) * pair_value(i, key.first, key.second) == value,
                    c.name + " pair (" + p.label(key.first) + " | " + p.label(key.second) + ")");
        require(euler_obstructions_normal(p, r).values == euler_obstructions_general(p, u, i).values,
                c.name + " Euler tables");
        ++count;
    }
    require(count >= 10, "too few configurations");
}

void volume_oracle()
{
    for (const auto& c : test::corpus()) {
        Polytope p = polytope(c.points);
        auto vol = face_volumes(p);
        for (std::size_t f = 0; f < p.faces().size(); ++f) {
            if (p.faces()[f].dim > 4)
                continue;
            std::vector<IntVector> face_points;
            for (std::size_t j : p.faces()[f].id)
                face_points.push_back(p.points()[j]);
            require(vol[f] == ehrhart_volume_oracle(face_points, p.faces()[f].lattice), c.name + " " + p.label(f));
        }
    }
}

void cc_round_trip()
{
    test::Rng rng(108);
    for (const auto& c : test::corpus()) {
        Polytope p = polytope(c.points);
        const std::size_t n = p.faces().size();
        PairTable u = compute_pair_table(p, PairKind::u);
        PairTable i = compute_pair_table(p, PairKind::i);
        for (int trial = 0; trial < 50; ++trial) {
            ConstructibleData rho;
            for (std::size_t f = 0; f < n; ++f)
                rho.rho.push_back(rng.uniform_long(-20, 20));
            require(rho_from_cc(p, cc_projective(p, rho, u, i)).rho == rho.rho, c.name);
        }
        if (euler_obstructions_general(p, u, i).all_one()) {
            // rho = 1 gives (-1)^dim on the conormal of X; the shifted constant function gives 1.
            const long sign = p.dim() % 2 == 0 ? 1 : -1;
            CharCycleResult one = cc_projective(p, {std::vector<Int>(n, 1)}, u, i);
            CharCycleResult shifted = cc_projective(p, {std::vector<Int>(n, sign)}, u, i);
            for (std::size_t f = 0; f < n; ++f) {
                const bool top = f == p.faces().top();
                require(one.m[f] == (top ? sign : 0), c.name + " constant function");
                require(shifted.m[f] == (top ? 1 : 0), c.name + " shifted constant function");
            }
        }
    }
}

void polygon_smoothness()
{
    int singular = 0, total = 0;
    for (const auto& poly : test::polygons()) {
        Polytope p = polytope(poly.points);
        SmoothnessReport r = smoothness_equivalence_n2(p);
        require(r.consistent(), poly.name);
        require(r.smooth == poly.smooth, poly.name + " smoothness");
        singular += !r.smooth;
        ++total;
    }
    require(total >= 10 && singular >= 3, "polygon corpus too small");
}

void invariance()
{
    test::Rng rng(110);
    for (const auto& c : test::corpus()) {
        Polytope p = polytope(c.points);
        const std::size_t n = c.points.front().size();
        if (!is_simplex(p)) {
            DiscriminantReport a = report(p);
            for (int trial = 0; trial < 3; ++trial) {
                auto moved = test::transform_points(c.points, test::random_unimodular(rng, n, 10),
                                                    test::random_vector(rng, n, -6, 6));
                Polytope q = polytope(moved);
                DiscriminantReport b = report(q);
                require(a.m == b.m && a.deltas == b.deltas && a.codim == b.codim && a.degree == b.degree &&
                            a.dual_defect == b.dual_defect && a.per_face.size() == b.per_face.size(),
                        c.name + " report");
                for (std::size_t k = 0; k < a.per_face.size(); ++k)
                    require(p.label(a.per_face[k].face) == q.label(b.per_face[k].face) &&
                                a.per_face[k].volume == b.per_face[k].volume && a.per_face[k].eu == b.per_face[k].eu,
                            c.name + " per-face terms");
            }
        }
        for (auto [alpha, beta] : nested_pairs(p.faces())) {
            const Int u0 = subdiagram_volume_u(p, alpha, beta), i0 = face_index_i(p, alpha, beta);
            for (std::size_t w : p.faces()[beta].vertices)
                require(subdiagram_volume_u(p, alpha, beta, w) == u0 && face_index_i(p, alpha, beta, w) == i0,
                        c.name + " vertex choice");
        }
    }
    for (const char* name : {"stretched-simplex", "cube", "octahedron", "hexagon", "2-simplex-3"}) {
        JobSpec spec;
        spec.points = test::named(name);
        for (Command command : {Command::discriminant, Command::euler, Command::check}) {
            spec.command = command;
            spec.jobs = 1;
            const std::string serial = run_job(spec).output;
            require(!serial.empty(), std::string(name) + " output");
            for (unsigned jobs : {2u, 4u, 8u}) {
                spec.jobs = jobs;
                require(run_job(spec).output == serial, std::string(name) + " --jobs " + std::to_string(jobs));
            }
        }
    }
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void()>>> criteria{
        {"Example tetrahedron: Euler table, deltas, codim 3, degree 2", example_end_to_end},
        {"Classical discriminants d = 2..8: codim 1, degree 2d - 2", classical_discriminants},
        {"Segre quadric degree 2; cuspidal cubic Eu 2, degree 3", segre_and_cusp},
        {"Smooth collapse of delta_1 to the face sum", smooth_collapse},
        {"Two-path delta identity on the corpus", two_path_delta},
        {"Normality bridge i * u = RSV and equal Euler tables", normality_bridge},
        {"Normalized volume equals the Ehrhart oracle on every face", volume_oracle},
        {"Characteristic-cycle round trip and constant function", cc_round_trip},
        {"Polygons: smooth, Eu = 1 and irreducible IC cycle agree", polygon_smoothness},
        {"Invariance under automorphisms, vertex choice and thread count", invariance},
    };
    int failed = 0;
    auto suite_start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            criteria[k].second();
        } catch (const Failure& f) {
            ok = false;
            detail = f.what;
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.3f s", seconds);
        std::cout << (ok ? "PASS" : "FAIL") << "  " << (k + 1) << ". " << criteria[k].first << " (" << timing << ")";
        if (!ok)
            std::cout << ": " << detail;
        std::cout << '\n';
        failed += !ok;
    }
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed in " << total << " s\n";
    return failed == 0 ? 0 : 1;
}
