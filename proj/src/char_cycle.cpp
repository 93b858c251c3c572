#include "toric/char_cycle.hpp"

#include "toric/errors.hpp"

namespace toric {

namespace {

Int sign(std::size_t exponent)
{
    return exponent % 2 == 0 ? 1 : -1;
}

template <class Weight>
std::vector<Int> cycle(const Polytope& p, const ConstructibleData& rho, Weight&& weight)
{
    const auto& faces = p.faces();
    if (rho.rho.size() != faces.size())
        throw InvalidInput("constructible data does not cover every face");
    std::vector<Int> m(faces.size());
    for (std::size_t b = 0; b < faces.size(); ++b) {
        Int s = sign(faces[b].dim) * rho.rho[b];
        for (std::size_t a : faces.above(b))
            s += sign(faces[a].dim) * rho.rho[a] * weight(a, b);
        m[b] = s;
    }
    return m;
}

} // namespace

CharCycleResult cc_affine(const Polytope& p, const ConstructibleData& rho, const PairTable& rsv)
{
    return {cycle(p, rho, [&](std::size_t a, std::size_t b) { return pair_value(rsv, a, b); }), CycleContext::affine};
}

CharCycleResult cc_projective(const Polytope& p, const ConstructibleData& rho, const PairTable& u, const PairTable& i)
{
    if (p.mode() != Mode::polytope)
        throw InvalidInput("the projective context needs a polytope configuration");
    return {cycle(p, rho, [&](std::size_t a, std::size_t b) { return Int(pair_value(i, a, b) * pair_value(u, a, b)); }),
            CycleContext::projective};
}

ConstructibleData rho_from_cc(const Polytope& p, const CharCycleResult& cc, std::size_t max_dim)
{
    const auto& faces = p.faces();
    if (cc.m.size() != faces.size())
        throw InvalidInput("cycle does not cover every face");
    if (cc.context == CycleContext::projective && p.mode() != Mode::polytope)
        throw InvalidInput("the projective context needs a polytope configuration");
    const Route route = cc.context == CycleContext::projective ? Route::general : Route::normal;
    ConstructibleData out;
    out.rho.assign(faces.size(), 0);
    for (std::size_t a = 0; a < faces.size(); ++a) {
        if (sgn(cc.m[a]) == 0)
            continue;
        for (const auto& [b, eu] : closure_euler(p, a, route, max_dim))
            out.rho[b] += sign(faces[a].dim) * cc.m[a] * eu;
    }
    return out;
}

CharCycleResult ic_multiplicities(const Polytope& p, std::size_t n, const PairTable& rsv)
{
    if (n < 2 || n > 4)
        throw InvalidInput("IC multiplicities are available for n = 2, 3, 4 only");
    if (p.mode() != Mode::polytope || p.dim() != n)
        throw InvalidInput("IC multiplicities need a polytope of dimension " + std::to_string(n));
    const auto& faces = p.faces();
    const std::size_t top = faces.top();
    auto v = [&](std::size_t a, std::size_t b) { return pair_value(rsv, a, b); };
    auto sum_over = [&](std::size_t b, std::size_t dim, long shift) {
        Int s = 0;
        for (std::size_t a : faces.above(b))
            if (faces[a].dim == dim)
                s += v(a, b) + shift;
        return s;
    };

    CharCycleResult r{std::vector<Int>(faces.size()), CycleContext::projective};
    for (std::size_t b = 0; b < faces.size(); ++b) {
        const std::size_t d = faces[b].dim;
        if (b == top) {
            r.m[b] = 1;
        } else if (d + 1 == n) {
            r.m[b] = 0;
        } else if (d + 2 == n) {
            r.m[b] = v(top, b) - 1;
        } else if (n == 3) { // d == 0
            r.m[b] = v(top, b) - sum_over(b, 2, 0) + 2;
        } else if (d == 1) { // n == 4
            r.m[b] = v(top, b) - sum_over(b, 3, 0) + 2;
        } else { // n == 4, d == 0
            r.m[b] = v(top, b) - sum_over(b, 3, 1) + sum_over(b, 2, 0) + 1;
        }
    }
    return r;
}

SmoothnessReport smoothness_equivalence_n2(const Polytope& p, std::size_t max_dim)
{
    if (p.mode() != Mode::polytope || p.dim() != 2)
        throw InvalidInput("the smoothness check needs a lattice polygon");
    const auto& faces = p.faces();
    SmoothnessReport r;

    r.smooth = true;
    for (std::size_t f : faces.of_dimension(0)) {
        // The two edge directions at a vertex must form a lattice basis.
        std::size_t v = faces[f].id.front();
        std::vector<IntVector> rows;
        for (std::size_t e : faces.above(f)) {
            if (faces[e].dim != 1)
                continue;
            for (std::size_t w : faces[e].vertices)
                if (w != v)
                    rows.push_back(primitive(p.points()[w] - p.points()[v]));
        }
        if (abs(determinant(IntegerMatrix::from_rows(rows, 2))) != 1)
            r.smooth = false;
    }

    PairTable rsv_table = compute_pair_table(p, PairKind::rsv, max_dim);
    r.eu_all_one = euler_obstructions_normal(p, rsv_table).all_one();

    CharCycleResult ic = ic_multiplicities(p, 2, rsv_table);
    r.cc_irreducible = true;
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (f != faces.top() && sgn(ic.m[f]) != 0)
            r.cc_irreducible = false;

    if (!r.consistent())
        throw InternalInconsistency("smoothness, Eu = 1 and irreducibility of the IC cycle disagree");
    return r;
}

} // namespace toric
