#pragma once

// Hilbert bases, subdiagram regions and the face-pair invariants RSV, u, i.

#include "toric/polyhedra.hpp"

#include <map>
#include <utility>
#include <vector>

namespace toric {

/// Minimal generating set of K cap Z^n (Z^n = the ambient lattice of K),
/// sorted. Throws GuardExceeded when dim K > max_dim.
std::vector<IntVector> hilbert_basis(const RationalCone& k, std::size_t max_dim = 4);

struct SubdiagramRegion
{
    RationalCone cone;
    std::vector<IntVector> generators;
    /// Point sets of the compact facets of K+ = conv(G) + K, sorted.
    std::vector<std::vector<IntVector>> bounded_facets;
    /// Vol_Z(K-) with respect to Z^n cap span(K).
    Int volume;
};

/// K- for the region K+ = conv(G) + K. G must consist of nonzero lattice
/// points of K that generate it. A zero-dimensional K has volume 1.
SubdiagramRegion subdiagram_region(const RationalCone& k, const std::vector<IntVector>& generators);

/// Independent recount of region.volume: each pyramid conv(0, F) is measured
/// by lattice-point counting (ehrhart_volume_oracle).
Int subdiagram_volume_oracle(const SubdiagramRegion& region, std::size_t max_dim = 4);

/// S_alpha / Delta_beta: images of A cap alpha - v in M_alpha / (M_alpha cap span beta).
struct SemigroupPresentation
{
    /// Chart of M_alpha (generated by A cap alpha - v).
    LatticeChart alpha_chart;
    /// Chart of the lattice generated by A cap beta - v, in M_alpha coordinates.
    LatticeChart beta_chart;
    /// Images of every point of A cap alpha, in input order of the face id.
    std::vector<IntVector> generators;
    std::size_t origin_vertex = 0;
};

SemigroupPresentation semigroup_presentation(const Polytope& p, std::size_t alpha, std::size_t beta,
                                             std::size_t vertex);

Int rsv(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t max_dim = 4);
Int rsv(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t vertex, std::size_t max_dim);
SubdiagramRegion rsv_region(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t max_dim = 4);

Int subdiagram_volume_u(const Polytope& p, std::size_t alpha, std::size_t beta);
Int subdiagram_volume_u(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t vertex);
SubdiagramRegion u_region(const Polytope& p, std::size_t alpha, std::size_t beta);

Int face_index_i(const Polytope& p, std::size_t alpha, std::size_t beta);
Int face_index_i(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t vertex);

/// (alpha, beta) -> value over all nested pairs beta <= alpha.
using PairTable = std::map<std::pair<std::size_t, std::size_t>, Int>;

std::vector<std::pair<std::size_t, std::size_t>> nested_pairs(const FaceLattice& faces);

enum class PairKind { rsv, u, i };

/// Evaluates one invariant on every nested pair, with `jobs` worker threads.
/// The result does not depend on the thread count.
PairTable compute_pair_table(const Polytope& p, PairKind kind, std::size_t max_dim = 4, unsigned jobs = 1);

const Int& pair_value(const PairTable& table, std::size_t alpha, std::size_t beta);

/// Every vertex semigroup N(A - v) is saturated in M(A) (X_A normal).
bool is_normal_configuration(const Polytope& p, std::size_t max_dim = 4);

} // namespace toric
