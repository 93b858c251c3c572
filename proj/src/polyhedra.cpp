#include "toric/polyhedra.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace toric {

PointConfiguration::PointConfiguration(std::vector<IntVector> pts) : points(std::move(pts))
{
    if (points.empty())
        throw InvalidInput("point configuration is empty");
    dim = points.front().size();
    std::set<IntVector> seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim)
            throw InvalidInput("point " + std::to_string(i) + " has dimension " + std::to_string(points[i].size()) +
                               ", expected " + std::to_string(dim));
        if (!seen.insert(points[i]).second)
            throw InvalidInput("duplicate point " + to_string(points[i]));
    }
}

// ---------------------------------------------------------------------------
// Double description

namespace {

struct Ray
{
    IntVector a;
    std::vector<std::size_t> tight; // sorted constraint indices
};

std::vector<std::size_t> intersect(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y)
{
    std::vector<std::size_t> out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

std::vector<IntVector> pick(const std::vector<IntVector>& all, const std::vector<std::size_t>& idx)
{
    std::vector<IntVector> out;
    out.reserve(idx.size());
    for (std::size_t i : idx)
        out.push_back(all[i]);
    return out;
}

void insert_sorted(std::vector<std::size_t>& v, std::size_t x)
{
    v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

} // namespace

std::vector<IntVector> cone_facets(const std::vector<IntVector>& generators, std::size_t dim)
{
    if (dim == 0)
        return {};
    if (rank(generators, dim) != dim)
        throw InvalidInput("cone_facets: generators do not span Z^" + std::to_string(dim));

    std::vector<std::size_t> basis;
    std::vector<IntVector> basis_rows;
    for (std::size_t i = 0; i < generators.size() && basis.size() < dim; ++i) {
        basis_rows.push_back(generators[i]);
        if (rank(basis_rows, dim) == basis_rows.size())
            basis.push_back(i);
        else
            basis_rows.pop_back();
    }

    // Initial simplicial cone {a : <g_i, a> >= 0, i in basis}: rays are the
    // columns of the inverse of the basis matrix.
    std::vector<std::vector<Rat>> aug(dim, std::vector<Rat>(2 * dim));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c)
            aug[r][c] = basis_rows[r][c];
        aug[r][dim + r] = 1;
    }
    for (std::size_t c = 0; c < dim; ++c) {
        std::size_t p = c;
        while (sgn(aug[p][c]) == 0)
            ++p;
        std::swap(aug[p], aug[c]);
        Rat pivot = aug[c][c];
        for (auto& x : aug[c])
            x /= pivot;
        for (std::size_t r = 0; r < dim; ++r)
            if (r != c && sgn(aug[r][c]) != 0) {
                Rat f = aug[r][c];
                for (std::size_t j = 0; j < 2 * dim; ++j)
                    aug[r][j] -= f * aug[c][j];
            }
    }
    std::vector<Ray> rays;
    for (std::size_t i = 0; i < dim; ++i) {
        Int l = 1;
        for (std::size_t r = 0; r < dim; ++r)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), aug[r][dim + i].get_den_mpz_t());
        IntVector a(dim);
        for (std::size_t r = 0; r < dim; ++r) {
            Rat x = aug[r][dim + i] * l;
            a[r] = x.get_num();
        }
        Ray ray{primitive(std::move(a)), {}};
        for (std::size_t j = 0; j < dim; ++j)
            if (j != i)
                ray.tight.push_back(basis[j]);
        std::sort(ray.tight.begin(), ray.tight.end());
        rays.push_back(std::move(ray));
    }

    std::vector<bool> in_basis(generators.size(), false);
    for (std::size_t b : basis)
        in_basis[b] = true;

    for (std::size_t g = 0; g < generators.size(); ++g) {
        if (in_basis[g])
            continue;
        std::vector<Int> s(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            s[i] = dot(generators[g], rays[i].a);
            if (sgn(s[i]) > 0)
                pos.push_back(i);
            else if (sgn(s[i]) < 0)
                neg.push_back(i);
        }
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (sgn(s[i]) < 0)
                continue;
            Ray r = rays[i];
            if (sgn(s[i]) == 0)
                insert_sorted(r.tight, g);
            next.push_back(std::move(r));
        }
        for (std::size_t p : pos)
            for (std::size_t n : neg) {
                std::vector<std::size_t> common = intersect(rays[p].tight, rays[n].tight);
                if (common.size() + 2 < dim)
                    continue;
                if (rank(pick(generators, common), dim) + 2 != dim)
                    continue;
                IntVector a = scaled(rays[n].a, s[p]) - scaled(rays[p].a, s[n]);
                insert_sorted(common, g);
                next.push_back(Ray{primitive(std::move(a)), std::move(common)});
            }
        rays = std::move(next);
    }

    std::vector<IntVector> facets;
    for (auto& r : rays)
        facets.push_back(std::move(r.a));
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    return facets;
}

std::vector<Halfspace> polytope_facets(const std::vector<IntVector>& points, std::size_t dim)
{
    std::vector<IntVector> lifted;
    lifted.reserve(points.size());
    for (const auto& p : points) {
        IntVector h(dim + 1);
        h[0] = 1;
        std::copy(p.begin(), p.end(), h.begin() + 1);
        lifted.push_back(std::move(h));
    }
    std::vector<Halfspace> out;
    for (const auto& f : cone_facets(lifted, dim + 1))
        out.push_back(Halfspace{IntVector(f.begin() + 1, f.end()), -f[0]});
    return out;
}

// ---------------------------------------------------------------------------
// FaceLattice

FaceLattice::FaceLattice(std::vector<Face> faces) : faces_(std::move(faces))
{
    const std::size_t n = faces_.size();
    above_.resize(n);
    below_.resize(n);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a)
            if (a != b && precedes(b, a)) {
                above_[b].push_back(a);
                below_[a].push_back(b);
            }
}

bool FaceLattice::precedes(std::size_t beta, std::size_t alpha) const
{
    const auto& x = faces_[alpha].id;
    const auto& y = faces_[beta].id;
    return std::includes(x.begin(), x.end(), y.begin(), y.end());
}

std::vector<std::pair<std::size_t, std::size_t>> FaceLattice::order() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t b = 0; b < size(); ++b)
        for (std::size_t a : above_[b])
            out.emplace_back(b, a);
    return out;
}

std::optional<std::size_t> FaceLattice::find(const std::vector<std::size_t>& id) const
{
    for (std::size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].id == id)
            return i;
    return std::nullopt;
}

std::vector<std::size_t> FaceLattice::of_dimension(std::size_t d) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].dim == d)
            out.push_back(i);
    return out;
}

// ---------------------------------------------------------------------------
// Polytope

Polytope Polytope::from_points(PointConfiguration a)
{
    Polytope p;
    p.mode_ = Mode::polytope;
    p.input_ = std::move(a);
    const auto& pts = p.input_.points;
    std::vector<IntVector> diffs;
    for (const auto& x : pts)
        diffs.push_back(x - pts.front());
    p.chart_ = LatticeChart(diffs, p.input_.dim);
    p.dim_ = p.chart_.rank();
    for (const auto& d : diffs)
        p.points_.push_back(p.chart_.coordinates(d));
    if (p.dim_ > 0)
        p.facets_ = polytope_facets(p.points_, p.dim_);
    p.build_faces(false);
    return p;
}

Polytope Polytope::from_cone(PointConfiguration generators)
{
    Polytope p;
    p.mode_ = Mode::cone;
    p.input_ = std::move(generators);
    const std::size_t n = p.input_.dim;
    if (n == 0)
        throw InvalidInput("cone generators must have positive dimension");
    for (const auto& g : p.input_.points)
        if (is_zero(g))
            throw InvalidInput("cone generator is zero");
    if (rank(p.input_.points, n) != n)
        throw InvalidInput("cone is not full-dimensional");
    p.dim_ = n;
    std::vector<IntVector> unit;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        unit.push_back(std::move(e));
    }
    p.chart_ = LatticeChart(unit, n);
    p.points_.push_back(IntVector(n));
    for (const auto& g : p.input_.points)
        p.points_.push_back(g);
    for (auto& f : polytope_facets(p.points_, n))
        if (sgn(f.offset) == 0)
            p.facets_.push_back(std::move(f));
    p.build_faces(true);
    if (!p.faces_.find({0}))
        throw InvalidInput("cone is not pointed");
    return p;
}

void Polytope::build_faces(bool through_apex)
{
    const std::size_t n = points_.size();
    std::vector<std::vector<std::size_t>> facet_sets;
    for (const auto& f : facets_) {
        std::vector<std::size_t> t;
        for (std::size_t j = 0; j < n; ++j)
            if (f.tight(points_[j]))
                t.push_back(j);
        facet_sets.push_back(std::move(t));
    }

    std::vector<std::size_t> all(n);
    for (std::size_t j = 0; j < n; ++j)
        all[j] = j;
    std::set<std::vector<std::size_t>> seen{all};
    std::deque<std::vector<std::size_t>> queue{all};
    while (!queue.empty()) {
        auto f = std::move(queue.front());
        queue.pop_front();
        for (const auto& t : facet_sets) {
            auto g = intersect(f, t);
            if (g.empty() || g.size() == f.size())
                continue;
            if (seen.insert(g).second)
                queue.push_back(std::move(g));
        }
    }

    std::vector<Face> faces;
    for (const auto& id : seen) {
        if (through_apex && id.front() != 0)
            continue;
        Face face;
        face.id = id;
        face.lattice = AffineLattice::of(pick(points_, id));
        face.dim = face.lattice.rank();
        face.span_lattice = face.lattice.saturation();
        faces.push_back(std::move(face));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& x, const Face& y) {
        return std::tie(x.dim, x.id) < std::tie(y.dim, y.id);
    });
    std::vector<std::size_t> vertex_points;
    for (const auto& f : faces)
        if (f.dim == 0)
            vertex_points.push_back(f.id.front());
    for (auto& f : faces)
        for (std::size_t v : vertex_points)
            if (std::binary_search(f.id.begin(), f.id.end(), v))
                f.vertices.push_back(v);
    faces_ = FaceLattice(std::move(faces));
}

std::vector<std::size_t> Polytope::input_indices(std::size_t face) const
{
    std::vector<std::size_t> out;
    for (std::size_t j : faces_[face].id) {
        if (mode_ == Mode::cone) {
            if (j > 0)
                out.push_back(j - 1);
        } else {
            out.push_back(j);
        }
    }
    return out;
}

std::string Polytope::label(std::size_t face) const
{
    std::string s;
    for (std::size_t j : input_indices(face)) {
        if (!s.empty())
            s += ',';
        s += std::to_string(j);
    }
    return s;
}

std::optional<std::size_t> Polytope::find_label(const std::vector<std::size_t>& input_ids) const
{
    std::vector<std::size_t> id;
    if (mode_ == Mode::cone)
        id.push_back(0);
    for (std::size_t j : input_ids)
        id.push_back(mode_ == Mode::cone ? j + 1 : j);
    std::sort(id.begin(), id.end());
    return faces_.find(id);
}

std::size_t Polytope::origin_vertex(std::size_t face) const
{
    if (mode_ == Mode::cone)
        return 0;
    const auto& vs = faces_[face].vertices;
    return *std::min_element(vs.begin(), vs.end(),
                             [&](std::size_t x, std::size_t y) { return input_.points[x] < input_.points[y]; });
}

IntVector Polytope::to_input(const IntVector& working) const
{
    if (mode_ == Mode::cone)
        return working;
    return input_.points.front() + chart_.from_coordinates(working);
}

IntVector Polytope::to_working(const IntVector& input_point) const
{
    if (mode_ == Mode::cone)
        return input_point;
    return chart_.coordinates(input_point - input_.points.front());
}

ConvexHull convex_hull(const PointConfiguration& a)
{
    Polytope p = Polytope::from_points(a);
    ConvexHull hull;
    hull.dim = p.dim();
    for (std::size_t f : p.faces().of_dimension(0))
        hull.vertices.push_back(p.faces()[f].id.front());
    std::vector<IntVector> diffs;
    for (const auto& x : a.points)
        diffs.push_back(x - a.points.front());
    LatticeChart chart(diffs, a.dim);
    for (const auto& f : p.facets()) {
        Halfspace h{chart.pullback(f.normal), 0};
        h.offset = dot(h.normal, a.points.front());
        for (const auto& x : a.points)
            h.offset = std::min(h.offset, Int(dot(h.normal, x)));
        hull.facets.push_back(std::move(h));
    }
    return hull;
}

std::size_t supporting_face(const Polytope& p, const IntVector& u)
{
    const auto& pts = p.input().points;
    if (u.size() != p.input().dim)
        throw InvalidInput("covector has the wrong dimension");
    std::vector<std::size_t> ids;
    if (p.mode() == Mode::cone) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            Int s = dot(u, pts[j]);
            if (sgn(s) < 0)
                throw InvalidInput("covector is unbounded below on the cone");
            if (sgn(s) == 0)
                ids.push_back(j);
        }
    } else {
        Int best = dot(u, pts.front());
        for (const auto& x : pts)
            best = std::min(best, Int(dot(u, x)));
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (dot(u, pts[j]) == best)
                ids.push_back(j);
    }
    auto f = p.find_label(ids);
    if (!f)
        throw InternalInconsistency("supporting set is not a face");
    return *f;
}

// ---------------------------------------------------------------------------
// Cones

RationalCone make_cone(std::vector<IntVector> generators, std::size_t ambient_dim)
{
    std::vector<IntVector> gens;
    for (auto& g : generators) {
        if (g.size() != ambient_dim)
            throw InvalidInput("cone generator has the wrong dimension");
        if (!is_zero(g))
            gens.push_back(std::move(g));
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    RationalCone k;
    k.ambient_dim = ambient_dim;
    k.dim = rank(gens, ambient_dim);
    k.generators = std::move(gens);
    if (k.dim == 0)
        return k;

    LatticeChart chart(k.generators, ambient_dim);
    std::vector<IntVector> pts{IntVector(k.dim)};
    for (const auto& g : k.generators)
        pts.push_back(chart.saturated_coordinates(g));
    std::vector<std::size_t> apex_set;
    bool first = true;
    for (const auto& f : polytope_facets(pts, k.dim)) {
        if (sgn(f.offset) != 0)
            continue;
        std::vector<std::size_t> t;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (f.tight(pts[j]))
                t.push_back(j);
        apex_set = first ? t : intersect(apex_set, t);
        first = false;
    }
    k.pointed = !first && apex_set == std::vector<std::size_t>{0};
    return k;
}

ConeChart cone_chart(const RationalCone& k)
{
    if (!k.pointed)
        throw InvalidInput("cone is not pointed");
    ConeChart c;
    c.chart = LatticeChart(k.generators, k.ambient_dim);
    for (const auto& g : k.generators)
        c.generators.push_back(c.chart.saturated_coordinates(g));
    c.facets = cone_facets(c.generators, k.dim);
    return c;
}

std::vector<std::pair<std::size_t, RationalCone>> normal_fan(const Polytope& p)
{
    const auto& faces = p.faces();
    std::vector<std::pair<std::size_t, RationalCone>> fan;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        std::vector<IntVector> gens;
        for (const auto& h : p.facets()) {
            bool contains = std::all_of(faces[f].id.begin(), faces[f].id.end(),
                                        [&](std::size_t j) { return h.tight(p.points()[j]); });
            if (contains)
                gens.push_back(h.normal);
        }
        fan.emplace_back(f, make_cone(std::move(gens), p.dim()));
    }
    return fan;
}

FaceLattice cone_face_lattice(const std::vector<IntVector>& generators)
{
    return Polytope::from_cone(PointConfiguration(generators)).faces();
}

RationalCone project_cone_along_face(const Polytope& p, std::size_t alpha, std::size_t beta)
{
    return project_cone_along_face(p, alpha, beta, p.origin_vertex(beta));
}

RationalCone project_cone_along_face(const Polytope& p, std::size_t alpha, std::size_t beta, std::size_t vertex)
{
    const auto& faces = p.faces();
    if (!faces.precedes(beta, alpha))
        throw InvalidInput("faces are not nested");
    const auto& vs = faces[beta].vertices;
    if (std::find(vs.begin(), vs.end(), vertex) == vs.end())
        throw InvalidInput("origin is not a vertex of the smaller face");
    const auto& pts = p.points();
    const IntVector& v = pts[vertex];

    std::vector<IntVector> killed;
    for (std::size_t j : faces[beta].id)
        killed.push_back(pts[j] - v);
    LatticeChart quotient(killed, p.dim());

    std::vector<IntVector> images;
    for (std::size_t j : faces[alpha].id) {
        IntVector q = quotient.quotient_coordinates(pts[j] - v);
        if (!is_zero(q))
            images.push_back(std::move(q));
    }
    const std::size_t k = faces[alpha].dim - faces[beta].dim;
    if (images.empty())
        return make_cone({}, k);
    LatticeChart span(images, p.dim() - quotient.rank());
    for (auto& g : images)
        g = span.saturated_coordinates(g);
    RationalCone cone = make_cone(std::move(images), span.rank());
    if (cone.dim != k || !cone.pointed)
        throw InternalInconsistency("projected face cone is degenerate");
    return cone;
}

} // namespace toric
