#pragma once

// Convex hulls and face lattices of lattice polytopes and pointed cones.

#include "toric/lattice.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toric {

/// The ordered point set A in Z^n. Points are pairwise distinct.
struct PointConfiguration
{
    PointConfiguration() = default;
    explicit PointConfiguration(std::vector<IntVector> points);

    std::size_t size() const { return points.size(); }

    std::size_t dim = 0;
    std::vector<IntVector> points;
};

/// <normal, x> >= offset
struct Halfspace
{
    IntVector normal;
    Int offset;

    bool contains(const IntVector& x) const { return dot(normal, x) >= offset; }
    bool tight(const IntVector& x) const { return dot(normal, x) == offset; }
};

/// Facet normals of cone(generators) in Z^dim, each primitive with <a, g> >= 0
/// on every generator, sorted. Requires a full-dimensional pointed cone.
std::vector<IntVector> cone_facets(const std::vector<IntVector>& generators, std::size_t dim);

/// Facets of conv(points) as primitive halfspaces in Z^dim, sorted. Requires
/// conv(points) to be full-dimensional.
std::vector<Halfspace> polytope_facets(const std::vector<IntVector>& points, std::size_t dim);

struct ConvexHull
{
    std::size_t dim = 0;
    std::vector<std::size_t> vertices;
    /// Facets lifted to ambient coordinates; on a lower-dimensional hull the
    /// normals are determined only up to the orthogonal of the affine hull.
    std::vector<Halfspace> facets;
};

ConvexHull convex_hull(const PointConfiguration& a);

struct Face
{
    /// Working-point indices of every configuration point on the face.
    std::vector<std::size_t> id;
    std::size_t dim = 0;
    /// Working-point indices of the vertices of the face.
    std::vector<std::size_t> vertices;
    /// M(A cap face) and its saturation, in working coordinates.
    AffineLattice lattice;
    AffineLattice span_lattice;
};

class FaceLattice
{
public:
    FaceLattice() = default;
    explicit FaceLattice(std::vector<Face> faces);

    std::size_t size() const { return faces_.size(); }
    const Face& operator[](std::size_t i) const { return faces_[i]; }
    const std::vector<Face>& faces() const { return faces_; }
    std::size_t top() const { return faces_.size() - 1; }

    /// beta is a face of alpha (non-strict).
    bool precedes(std::size_t beta, std::size_t alpha) const;
    /// Faces strictly containing beta, in canonical order.
    const std::vector<std::size_t>& above(std::size_t beta) const { return above_[beta]; }
    /// Faces strictly contained in alpha, in canonical order.
    const std::vector<std::size_t>& below(std::size_t alpha) const { return below_[alpha]; }
    /// All strict pairs (beta, alpha).
    std::vector<std::pair<std::size_t, std::size_t>> order() const;

    std::optional<std::size_t> find(const std::vector<std::size_t>& id) const;
    std::vector<std::size_t> of_dimension(std::size_t d) const;

private:
    std::vector<Face> faces_;
    std::vector<std::vector<std::size_t>> above_;
    std::vector<std::vector<std::size_t>> below_;
};

enum class Mode { polytope, cone };

/// Working model of conv(A) or of a cone. In polytope mode the points are
/// expressed in coordinates of M(A) = Z^d; in cone mode the working points are
/// the apex 0 (index 0) followed by the generators, in ambient Z^n, and only
/// faces through the apex are kept.
class Polytope
{
public:
    static Polytope from_points(PointConfiguration a);
    static Polytope from_cone(PointConfiguration generators);

    Mode mode() const { return mode_; }
    const PointConfiguration& input() const { return input_; }
    std::size_t dim() const { return dim_; }
    const std::vector<IntVector>& points() const { return points_; }
    const std::vector<Halfspace>& facets() const { return facets_; }
    const FaceLattice& faces() const { return faces_; }

    /// Comma-joined input indices of the points on a face.
    std::string label(std::size_t face) const;
    std::vector<std::size_t> input_indices(std::size_t face) const;
    std::optional<std::size_t> find_label(const std::vector<std::size_t>& input_ids) const;

    /// Working point of the chosen origin vertex of a face: the apex in cone
    /// mode, otherwise the vertex with lexicographically smallest input point.
    std::size_t origin_vertex(std::size_t face) const;

    /// Working coordinates to input coordinates and back (polytope mode).
    IntVector to_input(const IntVector& working) const;
    IntVector to_working(const IntVector& input_point) const;

private:
    Polytope() = default;
    void build_faces(bool through_apex);

    Mode mode_ = Mode::polytope;
    PointConfiguration input_;
    std::size_t dim_ = 0;
    LatticeChart chart_;
    std::vector<IntVector> points_;
    std::vector<Halfspace> facets_;
    FaceLattice faces_;
};

/// The face minimizing <u, .> for a covector u in input coordinates. In cone
/// mode u must lie in the dual cone.
std::size_t supporting_face(const Polytope& p, const IntVector& u);

struct RationalCone
{
    std::vector<IntVector> generators;
    std::size_t ambient_dim = 0;
    std::size_t dim = 0;
    bool pointed = true;
};

/// Computes dim and pointedness of cone(generators) in Z^ambient_dim.
RationalCone make_cone(std::vector<IntVector> generators, std::size_t ambient_dim);

/// Facet normals of a pointed cone inside Z^ambient_dim cap span, expressed in
/// saturated coordinates of the span (see LatticeChart).
struct ConeChart
{
    LatticeChart chart;
    std::vector<IntVector> generators;
    std::vector<IntVector> facets;
};
ConeChart cone_chart(const RationalCone& k);

/// The inner normal cone of every face, in working coordinates.
std::vector<std::pair<std::size_t, RationalCone>> normal_fan(const Polytope& p);

FaceLattice cone_face_lattice(const std::vector<IntVector>& generators);

/// K_{alpha,beta}: the image of (alpha - v) in M / (M cap span(beta - v)),
/// in saturated coordinates of its own span; dim = dim alpha - dim beta.
RationalCone project_cone_along_face(const Polytope& p, std::size_t alpha, std::size_t beta);
RationalCone project_cone_along_face(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t vertex);

} // namespace toric
