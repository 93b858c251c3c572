#include "toric/volumes.hpp"

#include "toric/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toric {

namespace {

std::size_t affine_rank(const std::vector<IntVector>& points)
{
    if (points.empty())
        return 0;
    std::vector<IntVector> diffs;
    for (const auto& p : points)
        diffs.push_back(p - points.front());
    return rank(diffs, points.front().size());
}

/// Points expressed in saturated coordinates of their affine hull.
std::vector<IntVector> local_coordinates(const std::vector<IntVector>& points)
{
    std::vector<IntVector> diffs;
    for (const auto& p : points)
        diffs.push_back(p - points.front());
    LatticeChart chart(diffs, points.front().size());
    std::vector<IntVector> out;
    for (const auto& d : diffs)
        out.push_back(chart.saturated_coordinates(d));
    return out;
}

Int orientation(const std::vector<IntVector>& pts, const std::vector<std::size_t>& facet, std::size_t q)
{
    const std::size_t d = facet.size();
    IntegerMatrix m(d, d);
    const IntVector& base = pts[facet[0]];
    for (std::size_t r = 1; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            m(r - 1, c) = pts[facet[r]][c] - base[c];
    for (std::size_t c = 0; c < d; ++c)
        m(d - 1, c) = pts[q][c] - base[c];
    return determinant(m);
}

Int simplex_volume(const std::vector<IntVector>& vertices)
{
    const std::size_t d = vertices.size() - 1;
    IntegerMatrix m(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            m(r, c) = vertices[r + 1][c] - vertices[0][c];
    return abs(determinant(m));
}

/// Iterates all integer points of the box [lo, hi] (inclusive).
template <class Visit>
void for_each_box_point(const IntVector& lo, const IntVector& hi, Visit&& visit)
{
    const std::size_t d = lo.size();
    for (std::size_t i = 0; i < d; ++i)
        if (lo[i] > hi[i])
            return;
    IntVector x = lo;
    for (;;) {
        visit(x);
        std::size_t i = 0;
        while (i < d && x[i] == hi[i]) {
            x[i] = lo[i];
            ++i;
        }
        if (i == d)
            return;
        ++x[i];
    }
}

/// Number of points of Z^d in k * conv(points) for a full-dimensional hull.
Int count_dilate(const std::vector<IntVector>& points, const std::vector<Halfspace>& facets, long k)
{
    const std::size_t d = points.front().size();
    IntVector lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        lo[i] = hi[i] = points.front()[i];
        for (const auto& p : points) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
        lo[i] *= k;
        hi[i] *= k;
    }
    Int count = 0;
    for_each_box_point(lo, hi, [&](const IntVector& x) {
        for (const auto& f : facets)
            if (dot(f.normal, x) < f.offset * k)
                return;
        ++count;
    });
    return count;
}

} // namespace

std::vector<Simplex> triangulate(const std::vector<IntVector>& input)
{
    if (input.empty())
        return {};
    const std::vector<IntVector> pts = local_coordinates(input);
    const std::size_t d = pts.front().size();

    std::vector<std::size_t> initial{0};
    {
        std::vector<IntVector> diffs;
        for (std::size_t j = 1; j < pts.size() && initial.size() < d + 1; ++j) {
            diffs.push_back(pts[j] - pts[0]);
            if (rank(diffs, d) == diffs.size())
                initial.push_back(j);
            else
                diffs.pop_back();
        }
    }

    auto make = [&](std::vector<std::size_t> idx) {
        std::sort(idx.begin(), idx.end());
        Simplex s;
        s.indices = idx;
        for (std::size_t j : idx)
            s.vertices.push_back(pts[j]);
        return s;
    };

    std::vector<Simplex> cells{make(initial)};
    if (d == 0)
        return cells;

    struct Boundary
    {
        std::vector<std::size_t> facet; // sorted
        std::size_t opposite;
    };
    std::vector<Boundary> boundary;
    for (std::size_t skip = 0; skip < initial.size(); ++skip) {
        Boundary b;
        for (std::size_t j = 0; j < initial.size(); ++j)
            if (j != skip)
                b.facet.push_back(initial[j]);
        b.opposite = initial[skip];
        boundary.push_back(std::move(b));
    }

    std::vector<bool> used(pts.size(), false);
    for (std::size_t j : initial)
        used[j] = true;

    for (std::size_t p = 0; p < pts.size(); ++p) {
        if (used[p])
            continue;
        std::vector<Boundary> kept;
        std::map<std::vector<std::size_t>, std::pair<std::size_t, int>> created;
        bool visible_any = false;
        for (auto& b : boundary) {
            int sp = sgn(orientation(pts, b.facet, p));
            int so = sgn(orientation(pts, b.facet, b.opposite));
            if (sp == 0 || sp == so) {
                kept.push_back(std::move(b));
                continue;
            }
            visible_any = true;
            std::vector<std::size_t> cell = b.facet;
            cell.push_back(p);
            cells.push_back(make(cell));
            for (std::size_t drop = 0; drop < b.facet.size(); ++drop) {
                std::vector<std::size_t> f;
                for (std::size_t j = 0; j < b.facet.size(); ++j)
                    if (j != drop)
                        f.push_back(b.facet[j]);
                f.push_back(p);
                std::sort(f.begin(), f.end());
                auto [it, fresh] = created.try_emplace(f, b.facet[drop], 0);
                ++it->second.second;
                (void)fresh;
            }
        }
        if (!visible_any) {
            boundary = std::move(kept);
            continue;
        }
        for (auto& [f, info] : created)
            if (info.second == 1)
                kept.push_back(Boundary{f, info.first});
        boundary = std::move(kept);
    }
    return cells;
}

Int standard_volume(const std::vector<IntVector>& points)
{
    if (points.empty())
        return 0;
    if (affine_rank(points) < points.front().size())
        return 0;
    Int total = 0;
    for (const auto& s : triangulate(points))
        total += simplex_volume(s.vertices);
    return total;
}

Int normalized_volume(const std::vector<IntVector>& points, const AffineLattice& lattice)
{
    if (points.empty())
        return 0;
    LatticeChart chart = lattice.chart();
    std::vector<IntVector> coords;
    for (const auto& p : points) {
        IntVector d = p - lattice.origin();
        if (!chart.in_lattice(d))
            throw InvalidInput("point " + to_string(p) + " is outside the volume lattice");
        coords.push_back(chart.coordinates(d));
    }
    return standard_volume(coords);
}

Int lattice_volume(const std::vector<IntVector>& points)
{
    return normalized_volume(points, AffineLattice::of(points));
}

Int ehrhart_volume_oracle(const std::vector<IntVector>& points, const AffineLattice& lattice, std::size_t max_dim)
{
    const std::size_t d = lattice.rank();
    if (d > max_dim)
        throw GuardExceeded("Ehrhart oracle dimension " + std::to_string(d) + " exceeds --max-dim " +
                            std::to_string(max_dim));
    if (points.empty())
        return 0;
    LatticeChart chart = lattice.chart();
    std::vector<IntVector> coords;
    for (const auto& p : points)
        coords.push_back(chart.coordinates(p - lattice.origin()));
    if (d == 0)
        return 1;
    if (affine_rank(coords) < d)
        return 0;
    auto facets = polytope_facets(coords, d);
    // d-th forward difference of the counts at 0 equals d! * leading coefficient.
    Int result = 0;
    Int binom = 1;
    for (std::size_t k = 0; k <= d; ++k) {
        Int term = binom * count_dilate(coords, facets, static_cast<long>(k));
        result += ((d - k) % 2 == 0) ? term : Int(-term);
        binom = binom * static_cast<long>(d - k) / static_cast<long>(k + 1);
    }
    return result;
}

std::vector<IntVector> lattice_points(const std::vector<IntVector>& vertices)
{
    if (vertices.empty())
        return {};
    std::vector<IntVector> diffs;
    for (const auto& p : vertices)
        diffs.push_back(p - vertices.front());
    LatticeChart chart(diffs, vertices.front().size());
    std::vector<IntVector> coords;
    for (const auto& d : diffs)
        coords.push_back(chart.saturated_coordinates(d));
    const std::size_t r = chart.rank();
    std::set<IntVector> out;
    if (r == 0)
        return {vertices.front()};
    auto facets = polytope_facets(coords, r);
    IntVector lo = coords.front(), hi = coords.front();
    for (const auto& c : coords)
        for (std::size_t i = 0; i < r; ++i) {
            lo[i] = std::min(lo[i], c[i]);
            hi[i] = std::max(hi[i], c[i]);
        }
    for_each_box_point(lo, hi, [&](const IntVector& x) {
        for (const auto& f : facets)
            if (!f.contains(x))
                return;
        out.insert(vertices.front() + chart.from_saturated_coordinates(x));
    });
    return {out.begin(), out.end()};
}

std::vector<Int> face_volumes(const Polytope& p)
{
    std::vector<Int> out;
    for (const auto& f : p.faces().faces()) {
        std::vector<IntVector> pts;
        for (std::size_t j : f.id)
            pts.push_back(p.points()[j]);
        out.push_back(normalized_volume(pts, f.lattice));
    }
    return out;
}

} // namespace toric
