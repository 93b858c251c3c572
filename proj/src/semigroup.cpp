#include "toric/semigroup.hpp"

#include "toric/errors.hpp"
#include "toric/volumes.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace toric {

namespace {

std::vector<std::vector<Rat>> rational_inverse(const IntegerMatrix& m)
{
    const std::size_t n = m.rows();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            a[r][c] = m(r, c);
        a[r][n + r] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a[p][c]) == 0)
            ++p;
        if (p == n)
            throw InternalInconsistency("singular simplicial cone");
        std::swap(a[p], a[c]);
        Rat pivot = a[c][c];
        for (auto& x : a[c])
            x /= pivot;
        for (std::size_t r = 0; r < n; ++r)
            if (r != c && sgn(a[r][c]) != 0) {
                Rat f = a[r][c];
                for (std::size_t j = 0; j < 2 * n; ++j)
                    a[r][j] -= f * a[c][j];
            }
    }
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            inv[r][c] = a[r][n + c];
    return inv;
}

Rat fractional_part(const Rat& x)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - Rat(q);
}

/// Nonzero lattice points of the half-open parallelepiped spanned by the rows of w.
std::vector<IntVector> parallelepiped_points(const IntegerMatrix& w)
{
    const std::size_t d = w.rows();
    SmithForm snf = smith_normal_form(w);
    IntegerMatrix v_inverse = unimodular_inverse(snf.V);
    auto w_inverse = rational_inverse(w);

    std::vector<IntVector> out;
    IntVector y(d);
    for (;;) {
        IntVector x = v_inverse.left_multiply(y);
        std::vector<Rat> point(d);
        for (std::size_t i = 0; i < d; ++i) {
            Rat lambda = 0;
            for (std::size_t k = 0; k < d; ++k)
                lambda += Rat(x[k]) * w_inverse[k][i];
            Rat f = fractional_part(lambda);
            for (std::size_t c = 0; c < d; ++c)
                point[c] += f * Rat(w(i, c));
        }
        IntVector p(d);
        for (std::size_t c = 0; c < d; ++c) {
            point[c].canonicalize();
            if (point[c].get_den() != 1)
                throw InternalInconsistency("parallelepiped point is not integral");
            p[c] = point[c].get_num();
        }
        if (!is_zero(p))
            out.push_back(std::move(p));

        std::size_t i = 0;
        while (i < d && y[i] + 1 >= snf.D(i, i)) {
            y[i] = 0;
            ++i;
        }
        if (i == d)
            break;
        ++y[i];
    }
    return out;
}

bool in_cone(const std::vector<IntVector>& facets, const IntVector& x)
{
    return std::all_of(facets.begin(), facets.end(), [&](const IntVector& a) { return sgn(dot(a, x)) >= 0; });
}

RationalCone full_cone(std::vector<IntVector> generators, std::size_t dim)
{
    RationalCone k = make_cone(std::move(generators), dim);
    if (k.dim != dim || !k.pointed)
        throw InternalInconsistency("face-pair cone is not full-dimensional and pointed");
    return k;
}

void check_pair(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t vertex)
{
    const auto& faces = p.faces();
    if (alpha >= faces.size() || beta >= faces.size() || !faces.precedes(beta, alpha))
        throw InvalidInput("faces are not nested");
    const auto& vs = faces[beta].vertices;
    if (std::find(vs.begin(), vs.end(), vertex) == vs.end())
        throw InvalidInput("origin is not a vertex of the smaller face");
}

} // namespace

std::vector<IntVector> hilbert_basis(const RationalCone& k, std::size_t max_dim)
{
    if (!k.pointed)
        throw InvalidInput("hilbert_basis: cone is not pointed");
    if (k.dim == 0)
        return {};
    if (k.dim > max_dim)
        throw GuardExceeded("Hilbert basis of a " + std::to_string(k.dim) + "-dimensional cone exceeds --max-dim " +
                            std::to_string(max_dim));
    const std::size_t d = k.dim;
    ConeChart cc = cone_chart(k);

    std::vector<IntVector> rays;
    for (const auto& g : cc.generators)
        rays.push_back(primitive(g));
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

    std::set<IntVector> candidates(rays.begin(), rays.end());
    if (d > 1) {
        IntVector ell(d);
        for (const auto& a : cc.facets)
            ell = ell + a;
        Int l = 1;
        for (const auto& r : rays)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), Int(dot(ell, r)).get_mpz_t());
        std::vector<IntVector> section;
        for (const auto& r : rays)
            section.push_back(scaled(r, l / dot(ell, r)));
        for (const auto& cell : triangulate(section)) {
            std::vector<IntVector> rows;
            for (std::size_t j : cell.indices)
                rows.push_back(rays[j]);
            for (auto& x : parallelepiped_points(IntegerMatrix::from_rows(rows, d)))
                candidates.insert(std::move(x));
        }
    }

    std::vector<IntVector> list(candidates.begin(), candidates.end());
    std::vector<IntVector> basis;
    for (const auto& x : list) {
        bool reducible = std::any_of(list.begin(), list.end(),
                                     [&](const IntVector& c) { return c != x && in_cone(cc.facets, x - c); });
        if (!reducible)
            basis.push_back(cc.chart.from_saturated_coordinates(x));
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

SubdiagramRegion subdiagram_region(const RationalCone& k, const std::vector<IntVector>& generators)
{
    if (!k.pointed)
        throw InvalidInput("subdiagram_region: cone is not pointed");
    SubdiagramRegion region;
    region.cone = k;
    region.generators = generators;
    std::sort(region.generators.begin(), region.generators.end());
    if (k.dim == 0) {
        region.volume = 1;
        return region;
    }
    const std::size_t d = k.dim;
    ConeChart cc = cone_chart(k);
    std::vector<IntVector> g;
    for (const auto& x : region.generators) {
        if (is_zero(x))
            throw InvalidInput("subdiagram_region: generators must be nonzero");
        g.push_back(cc.chart.saturated_coordinates(x));
    }

    std::vector<IntVector> lifted;
    for (const auto& x : g) {
        IntVector h(d + 1);
        h[0] = 1;
        std::copy(x.begin(), x.end(), h.begin() + 1);
        lifted.push_back(std::move(h));
    }
    for (const auto& r : cc.generators) {
        IntVector h(d + 1);
        std::copy(r.begin(), r.end(), h.begin() + 1);
        lifted.push_back(std::move(h));
    }

    region.volume = 0;
    for (const auto& f : cone_facets(lifted, d + 1)) {
        IntVector a(f.begin() + 1, f.end());
        bool bounded = std::none_of(cc.generators.begin(), cc.generators.end(),
                                    [&](const IntVector& r) { return sgn(dot(a, r)) == 0; });
        if (!bounded)
            continue;
        if (sgn(f[0]) >= 0)
            throw InternalInconsistency("apex lies in the Newton region");
        std::vector<IntVector> facet;
        std::vector<IntVector> pyramid{IntVector(d)};
        for (std::size_t j = 0; j < g.size(); ++j)
            if (sgn(f[0] + dot(a, g[j])) == 0) {
                facet.push_back(region.generators[j]);
                pyramid.push_back(g[j]);
            }
        region.volume += standard_volume(pyramid);
        region.bounded_facets.push_back(std::move(facet));
    }
    std::sort(region.bounded_facets.begin(), region.bounded_facets.end());
    return region;
}

Int subdiagram_volume_oracle(const SubdiagramRegion& region, std::size_t max_dim)
{
    const RationalCone& k = region.cone;
    if (k.dim == 0)
        return 1;
    LatticeChart chart(k.generators, k.ambient_dim);
    AffineLattice lattice = AffineLattice::linear(chart.saturated_basis(), k.ambient_dim);
    Int total = 0;
    for (const auto& facet : region.bounded_facets) {
        std::vector<IntVector> pyramid{IntVector(k.ambient_dim)};
        pyramid.insert(pyramid.end(), facet.begin(), facet.end());
        total += ehrhart_volume_oracle(pyramid, lattice, max_dim);
    }
    return total;
}

SemigroupPresentation semigroup_presentation(const Polytope& p, std::size_t alpha, std::size_t beta,
                                             std::size_t vertex)
{
    check_pair(p, alpha, beta, vertex);
    const auto& faces = p.faces();
    const auto& pts = p.points();
    std::vector<IntVector> diffs;
    for (std::size_t j : faces[alpha].id)
        diffs.push_back(pts[j] - pts[vertex]);

    SemigroupPresentation s;
    s.origin_vertex = vertex;
    s.alpha_chart = LatticeChart(diffs, p.dim());
    std::vector<IntVector> coords, beta_coords;
    for (std::size_t t = 0; t < diffs.size(); ++t) {
        coords.push_back(s.alpha_chart.coordinates(diffs[t]));
        if (std::binary_search(faces[beta].id.begin(), faces[beta].id.end(), faces[alpha].id[t]))
            beta_coords.push_back(coords.back());
    }
    s.beta_chart = LatticeChart(beta_coords, s.alpha_chart.rank());
    for (const auto& c : coords)
        s.generators.push_back(s.beta_chart.quotient_coordinates(c));
    return s;
}

SubdiagramRegion rsv_region(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t max_dim)
{
    RationalCone k = project_cone_along_face(p, alpha, beta);
    return subdiagram_region(k, hilbert_basis(k, max_dim));
}

Int rsv(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t max_dim)
{
    return rsv(p, alpha, beta, p.origin_vertex(beta), max_dim);
}

Int rsv(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t vertex, std::size_t max_dim)
{
    check_pair(p, alpha, beta, vertex);
    if (alpha == beta)
        return 1;
    RationalCone k = project_cone_along_face(p, alpha, beta, vertex);
    return subdiagram_region(k, hilbert_basis(k, max_dim)).volume;
}

namespace {

SubdiagramRegion u_region_at(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t vertex)
{
    SemigroupPresentation s = semigroup_presentation(p, alpha, beta, vertex);
    std::vector<IntVector> g;
    for (const auto& x : s.generators)
        if (!is_zero(x))
            g.push_back(x);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    const std::size_t k = s.alpha_chart.rank() - s.beta_chart.rank();
    return subdiagram_region(full_cone(g, k), g);
}

} // namespace

SubdiagramRegion u_region(const Polytope& p, std::size_t alpha, std::size_t beta)
{
    return u_region_at(p, alpha, beta, p.origin_vertex(beta));
}

Int subdiagram_volume_u(const Polytope& p, std::size_t alpha, std::size_t beta)
{
    return subdiagram_volume_u(p, alpha, beta, p.origin_vertex(beta));
}

Int subdiagram_volume_u(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t vertex)
{
    check_pair(p, alpha, beta, vertex);
    if (alpha == beta)
        return 1;
    return u_region_at(p, alpha, beta, vertex).volume;
}

Int face_index_i(const Polytope& p, std::size_t alpha, std::size_t beta)
{
    return face_index_i(p, alpha, beta, p.origin_vertex(beta));
}

Int face_index_i(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t vertex)
{
    return semigroup_presentation(p, alpha, beta, vertex).beta_chart.saturation_index();
}

std::vector<std::pair<std::size_t, std::size_t>> nested_pairs(const FaceLattice& faces)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < faces.size(); ++a)
        for (std::size_t b = 0; b < faces.size(); ++b)
            if (faces.precedes(b, a))
                out.emplace_back(a, b);
    return out;
}

PairTable compute_pair_table(const Polytope& p, PairKind kind, std::size_t max_dim, unsigned jobs)
{
    const auto pairs = nested_pairs(p.faces());
    std::vector<Int> values(pairs.size());
    auto evaluate = [&](std::size_t t) {
        auto [a, b] = pairs[t];
        switch (kind) {
        case PairKind::rsv:
            values[t] = rsv(p, a, b, max_dim);
            break;
        case PairKind::u:
            values[t] = subdiagram_volume_u(p, a, b);
            break;
        case PairKind::i:
            values[t] = face_index_i(p, a, b);
            break;
        }
    };

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(pairs.size())));
    if (jobs <= 1) {
        for (std::size_t t = 0; t < pairs.size(); ++t)
            evaluate(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t t = next++; t < pairs.size(); t = next++) {
                    try {
                        evaluate(t);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            });
        for (auto& w : workers)
            w.join();
        if (failure)
            std::rethrow_exception(failure);
    }

    PairTable table;
    for (std::size_t t = 0; t < pairs.size(); ++t)
        table.emplace(pairs[t], std::move(values[t]));
    return table;
}

const Int& pair_value(const PairTable& table, std::size_t alpha, std::size_t beta)
{
    auto it = table.find({alpha, beta});
    if (it == table.end())
        throw InternalInconsistency("pair table has no entry for faces " + std::to_string(alpha) + ", " +
                                    std::to_string(beta));
    return it->second;
}

bool is_normal_configuration(const Polytope& p, std::size_t max_dim)
{
    const auto& pts = p.points();
    for (std::size_t f : p.faces().of_dimension(0)) {
        std::size_t v = p.faces()[f].id.front();
        std::set<IntVector> shifted;
        std::vector<IntVector> gens;
        for (const auto& x : pts) {
            IntVector d = x - pts[v];
            if (!is_zero(d)) {
                gens.push_back(d);
                shifted.insert(d);
            }
        }
        RationalCone k = make_cone(gens, p.dim());
        for (const auto& h : hilbert_basis(k, max_dim))
            if (!shifted.count(h))
                return false;
    }
    return true;
}

} // namespace toric
