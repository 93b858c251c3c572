#pragma once

// Characteristic-cycle multiplicities of T-invariant constructible functions.

#include "toric/euler.hpp"

#include <vector>

namespace toric {

enum class CycleContext { affine, projective };

struct ConstructibleData
{
    /// rho on each face, indexed like Polytope::faces().
    std::vector<Int> rho;
};

struct CharCycleResult
{
    std::vector<Int> m;
    CycleContext context = CycleContext::projective;
};

/// m_beta = sum over alpha >= beta of (-1)^dim(alpha) rho_alpha RSV(alpha, beta).
CharCycleResult cc_affine(const Polytope& p, const ConstructibleData& rho, const PairTable& rsv);

/// The same sum weighted by i(alpha, beta) u(alpha, beta).
CharCycleResult cc_projective(const Polytope& p, const ConstructibleData& rho, const PairTable& u,
                              const PairTable& i);

/// rho_beta = sum over alpha >= beta of (-1)^dim(alpha) m_alpha Eu_alpha(beta),
/// where Eu_alpha is the Euler obstruction of the orbit closure of alpha.
ConstructibleData rho_from_cc(const Polytope& p, const CharCycleResult& cc, std::size_t max_dim = 4);

/// Characteristic cycle of IC_X[n] for X = X_P, n = dim P in {2, 3, 4}, written
/// in the RSV values V(alpha, beta).
CharCycleResult ic_multiplicities(const Polytope& p, std::size_t n, const PairTable& rsv);

struct SmoothnessReport
{
    bool smooth = false;
    bool eu_all_one = false;
    bool cc_irreducible = false;

    bool consistent() const { return smooth == eu_all_one && eu_all_one == cc_irreducible; }
};

/// For a lattice polygon P (A = P cap M): unimodular vertex cones, Eu = 1
/// everywhere, and an irreducible IC cycle. Throws InternalInconsistency when
/// the three disagree.
SmoothnessReport smoothness_equivalence_n2(const Polytope& p, std::size_t max_dim = 4);

} // namespace toric
