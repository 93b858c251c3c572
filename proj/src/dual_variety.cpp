#include "toric/dual_variety.hpp"

#include "toric/errors.hpp"

namespace toric {

namespace {

Int sign(long exponent)
{
    return exponent % 2 == 0 ? 1 : -1;
}

void require_polytope(const Polytope& p, const std::vector<Int>& volumes, const EulerTable& eu)
{
    if (p.mode() != Mode::polytope)
        throw InvalidInput("discriminant data needs a polytope configuration");
    if (volumes.size() != p.faces().size())
        throw InvalidInput("volume table does not cover every face");
    if (eu.values.size() != p.faces().size())
        throw InvalidInput("Euler table does not cover every face");
}

} // namespace

Int generalized_binomial(const Int& p, unsigned long q)
{
    Int num = 1;
    for (unsigned long k = 0; k < q; ++k)
        num *= p - k;
    Int den;
    mpz_fac_ui(den.get_mpz_t(), q);
    return num / den;
}

std::vector<FaceTerm> face_terms(const Polytope& p, const std::vector<Int>& volumes, const EulerTable& eu)
{
    require_polytope(p, volumes, eu);
    std::vector<FaceTerm> out;
    for (std::size_t f = 0; f < p.faces().size(); ++f) {
        std::size_t d = p.faces()[f].dim;
        out.push_back(FaceTerm{f, d, p.dim() - d, volumes[f], eu[f]});
    }
    return out;
}

std::vector<Int> delta_sequence(const Polytope& p, const std::vector<Int>& volumes, const EulerTable& eu)
{
    const auto terms = face_terms(p, volumes, eu);
    const std::size_t m = p.input().size() - 1;
    std::vector<Int> deltas;
    for (std::size_t i = 1; i <= m; ++i) {
        Int delta = 0;
        for (const auto& t : terms) {
            Int bracket = generalized_binomial(Int(static_cast<long>(t.dim) - 1), i) +
                          sign(static_cast<long>(i) - 1) * Int(static_cast<long>(i) + 1);
            delta += sign(static_cast<long>(t.codim)) * bracket * t.volume * t.eu;
        }
        deltas.push_back(delta);
    }
    return deltas;
}

std::pair<std::size_t, Int> dual_dimension_degree(const std::vector<Int>& deltas)
{
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (sgn(deltas[i]) == 0)
            continue;
        if (sgn(deltas[i]) < 0)
            throw InternalInconsistency("first nonzero delta is negative");
        return {i + 1, deltas[i]};
    }
    throw InternalInconsistency("every delta_i vanishes; the dual variety cannot be located");
}

Int gkz_smooth_degree(const Polytope& p, const std::vector<Int>& volumes)
{
    if (volumes.size() != p.faces().size())
        throw InvalidInput("volume table does not cover every face");
    Int total = 0;
    for (std::size_t f = 0; f < p.faces().size(); ++f) {
        std::size_t d = p.faces()[f].dim;
        total += sign(static_cast<long>(p.dim() - d)) * Int(static_cast<long>(d) + 1) * volumes[f];
    }
    return total;
}

Int bkk_section_chi(std::size_t dim, const Int& volume, std::size_t p)
{
    if (p < 1 || p > dim)
        throw InvalidInput("number of sections must lie in 1..dim");
    return sign(static_cast<long>(dim - p)) * generalized_binomial(Int(static_cast<long>(dim) - 1), p - 1) * volume;
}

EulerIntegrals euler_integrals(const Polytope& p, const std::vector<Int>& volumes, const EulerTable& eu)
{
    const auto terms = face_terms(p, volumes, eu);
    const std::size_t m = p.input().size() - 1;
    EulerIntegrals out;
    out.projective = 0;
    out.hyperplane = 0;
    for (const auto& t : terms) {
        if (t.dim == 0)
            out.projective += t.eu;
        else
            out.hyperplane += bkk_section_chi(t.dim, t.volume, 1) * t.eu;
    }
    for (std::size_t i = 1; i <= m; ++i) {
        Int s = 0;
        for (const auto& t : terms)
            if (t.dim >= i + 1)
                s += bkk_section_chi(t.dim, t.volume, i + 1) * t.eu;
        out.sections.push_back(s);
    }
    return out;
}

std::vector<Int> recombine_delta(const EulerIntegrals& integrals, std::size_t n)
{
    std::vector<Int> out;
    for (std::size_t i = 1; i <= integrals.sections.size(); ++i) {
        Int li = static_cast<long>(i);
        Int inner = li * integrals.projective - (li + 1) * integrals.hyperplane + integrals.sections[i - 1];
        out.push_back(sign(static_cast<long>(n + i - 1)) * inner);
    }
    return out;
}

DiscriminantReport discriminant_report(const Polytope& p, const std::vector<Int>& volumes, const EulerTable& eu)
{
    DiscriminantReport r;
    r.m = p.input().size() - 1;
    r.per_face = face_terms(p, volumes, eu);
    r.deltas = delta_sequence(p, volumes, eu);
    std::tie(r.codim, r.degree) = dual_dimension_degree(r.deltas);
    r.dual_defect = r.codim - 1;
    return r;
}

} // namespace toric
