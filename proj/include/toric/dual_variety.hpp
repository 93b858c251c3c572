#pragma once

// Codimension and degree of the A-discriminant variety from face volumes and
// Euler obstructions.

#include "toric/euler.hpp"

#include <vector>

namespace toric {

/// p (p-1) ... (p-q+1) / q!
Int generalized_binomial(const Int& p, unsigned long q);

struct FaceTerm
{
    std::size_t face = 0;
    std::size_t dim = 0;
    std::size_t codim = 0;
    Int volume;
    Int eu;
};

std::vector<FaceTerm> face_terms(const Polytope& p, const std::vector<Int>& volumes, const EulerTable& eu);

/// delta_1 .. delta_m, m = #A - 1; codimensions are taken inside P.
std::vector<Int> delta_sequence(const Polytope& p, const std::vector<Int>& volumes, const EulerTable& eu);

/// r = first index with delta_r != 0 (1-based) and the degree delta_r.
/// Throws InternalInconsistency when every delta vanishes or delta_r < 0.
std::pair<std::size_t, Int> dual_dimension_degree(const std::vector<Int>& deltas);

/// Sum over faces of (-1)^codim (dim + 1) Vol. Preconditions (smooth X_A with
/// a hypersurface dual) are not checked.
Int gkz_smooth_degree(const Polytope& p, const std::vector<Int>& volumes);

/// Euler characteristic of p generic sections with Newton polytope of the
/// given dimension and volume: (-1)^(dim-p) binom(dim-1, p-1) Vol.
Int bkk_section_chi(std::size_t dim, const Int& volume, std::size_t p);

struct EulerIntegrals
{
    Int projective;
    Int hyperplane;
    /// sections[i-1] is the integral over a generic codimension-(i+1) plane, i = 1..m.
    std::vector<Int> sections;
};

EulerIntegrals euler_integrals(const Polytope& p, const std::vector<Int>& volumes, const EulerTable& eu);

/// (-1)^(n+i-1) { i * projective - (i+1) * hyperplane + sections[i-1] }.
std::vector<Int> recombine_delta(const EulerIntegrals& integrals, std::size_t n);

struct DiscriminantReport
{
    std::size_t m = 0;
    std::vector<Int> deltas;
    std::size_t codim = 0;
    Int degree;
    std::vector<FaceTerm> per_face;
    std::size_t dual_defect = 0;
};

DiscriminantReport discriminant_report(const Polytope& p, const std::vector<Int>& volumes, const EulerTable& eu);

} // namespace toric
