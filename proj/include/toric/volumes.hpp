#pragma once

// Normalized lattice volumes, placing triangulations and an Ehrhart oracle.

#include "toric/lattice.hpp"
#include "toric/polyhedra.hpp"

#include <vector>

namespace toric {

struct Simplex
{
    /// Indices into the triangulated point list.
    std::vector<std::size_t> indices;
    /// The same vertices in local lattice coordinates of the affine hull.
    std::vector<IntVector> vertices;
};

/// Placing triangulation of conv(points) in input order. Points that are not
/// vertices of the running hull are skipped.
std::vector<Simplex> triangulate(const std::vector<IntVector>& points);

/// Vol_Z of conv(points) with respect to Z^k, k = length of the points;
/// 0 when the hull is lower-dimensional.
Int standard_volume(const std::vector<IntVector>& points);

/// Vol_Z of conv(points) with respect to the affine lattice L. Points must lie
/// in L; returns 0 when dim conv(points) < rank L.
Int normalized_volume(const std::vector<IntVector>& points, const AffineLattice& lattice);

/// Vol_Z of conv(points) with respect to M(points).
Int lattice_volume(const std::vector<IntVector>& points);

/// d! times the leading coefficient of the Ehrhart polynomial, from point
/// counts of k*K for k = 0..d. Throws GuardExceeded when d > max_dim.
Int ehrhart_volume_oracle(const std::vector<IntVector>& points, const AffineLattice& lattice,
                          std::size_t max_dim = 4);

/// All points of Z^n in conv(vertices), sorted.
std::vector<IntVector> lattice_points(const std::vector<IntVector>& vertices);

/// Vol_Z(face) with respect to M(A cap face) for every face (1 on vertices).
std::vector<Int> face_volumes(const Polytope& p);

} // namespace toric
