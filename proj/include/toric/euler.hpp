#pragma once

// Euler obstructions of toric varieties by induction on face codimension.

#include "toric/semigroup.hpp"

#include <map>
#include <vector>

namespace toric {

/// normal: RSV-weighted recursion (cones, normal X_A); general: i*u-weighted
/// recursion valid for any configuration.
enum class Route { normal, general };

struct EulerTable
{
    /// Indexed like Polytope::faces().
    std::vector<Int> values;
    Route source = Route::general;

    const Int& operator[](std::size_t face) const { return values[face]; }
    bool all_one() const;
};

/// (-1)^(dim alpha - dim beta - 1) times RSV (normal) or i * u (general).
Int linking_number(const Polytope& p, std::size_t alpha, std::size_t beta, Route route, std::size_t max_dim = 4);

EulerTable euler_obstructions_normal(const Polytope& p, const PairTable& rsv);
EulerTable euler_obstructions_general(const Polytope& p, const PairTable& u, const PairTable& i);

/// Computes the needed pair tables and runs the recursion.
EulerTable euler_obstructions(const Polytope& p, Route route, std::size_t max_dim = 4, unsigned jobs = 1);

/// Eu of the orbit closure of `alpha` on each face beta <= alpha, keyed by face
/// index of p. Polytope mode: the toric variety of A cap alpha; cone mode: the
/// affine toric variety of the face cone.
std::map<std::size_t, Int> closure_euler(const Polytope& p, std::size_t alpha, Route route, std::size_t max_dim = 4);

} // namespace toric
