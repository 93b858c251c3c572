#pragma once

// Shared configurations for unit and acceptance tests.

#include "toric/volumes.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace test {

using toric::IntVector;

struct Config
{
    std::string name;
    std::vector<IntVector> points;
};

inline IntVector v(std::initializer_list<long> xs)
{
    IntVector out;
    for (long x : xs)
        out.push_back(x);
    return out;
}

inline std::vector<IntVector> pts(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<IntVector> out;
    for (const auto& r : rows)
        out.push_back(v(r));
    return out;
}

/// {0, m1, m2, m3, 2 m3} in Z^3.
inline std::vector<IntVector> stretched_simplex()
{
    return pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 2}});
}

inline std::vector<IntVector> segment(long d)
{
    std::vector<IntVector> out;
    for (long k = 0; k <= d; ++k)
        out.push_back(v({k}));
    return out;
}

inline std::vector<IntVector> cusp() { return pts({{0}, {2}, {3}}); }

inline std::vector<IntVector> unit_square() { return pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

/// The lattice points of conv(vertices), i.e. A = P cap M.
inline std::vector<IntVector> lattice_polytope(std::initializer_list<std::initializer_list<long>> vertices)
{
    return toric::lattice_points(pts(vertices));
}

/// Lattice polygons A = P cap Z^2 together with whether X_P is smooth.
struct Polygon
{
    std::string name;
    std::vector<IntVector> points;
    bool smooth;
};

inline std::vector<Polygon> polygons()
{
    return {
        {"triangle", lattice_polytope({{0, 0}, {1, 0}, {0, 1}}), true},
        {"square", lattice_polytope({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), true},
        {"2-triangle", lattice_polytope({{0, 0}, {2, 0}, {0, 2}}), true},
        {"rectangle", lattice_polytope({{0, 0}, {2, 0}, {0, 1}, {2, 1}}), true},
        {"trapezoid", lattice_polytope({{0, 0}, {2, 0}, {1, 1}, {0, 1}}), true},
        {"hexagon", lattice_polytope({{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}), true},
        {"hirzebruch", lattice_polytope({{0, 0}, {3, 0}, {1, 1}, {0, 1}}), true},
        {"weighted-112", lattice_polytope({{0, 0}, {1, 0}, {1, 2}}), false},
        {"diamond", lattice_polytope({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), false},
        {"p2-mod-3", lattice_polytope({{1, 0}, {0, 1}, {-1, -1}}), false},
        {"kite", lattice_polytope({{0, 0}, {2, 1}, {1, 2}}), false},
        {"pentagon", lattice_polytope({{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 1}}), false},
    };
}

/// Very ample configurations A = P cap M in dimensions 2 and 3.
inline std::vector<Config> very_ample()
{
    std::vector<Config> out;
    for (auto& p : polygons())
        out.push_back({p.name, p.points});
    out.push_back({"simplex-3", lattice_polytope({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})});
    out.push_back({"cube", lattice_polytope({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1},
                                             {0, 1, 1}, {1, 1, 1}})});
    out.push_back({"segre-1-2", lattice_polytope({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1},
                                                  {0, 1, 1}})});
    out.push_back({"stretched-simplex", stretched_simplex()});
    out.push_back({"octahedron", lattice_polytope({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1},
                                                   {0, 0, -1}})});
    return out;
}

/// Everything the invariant criteria run over.
inline std::vector<Config> corpus()
{
    std::vector<Config> out;
    for (long d = 2; d <= 8; ++d)
        out.push_back({"segment-" + std::to_string(d), segment(d)});
    out.push_back({"cusp", cusp()});
    out.push_back({"gapped", pts({{0}, {3}, {5}})});
    for (auto& c : very_ample())
        out.push_back(std::move(c));
    out.push_back({"2-simplex-3", lattice_polytope({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}})});
    out.push_back({"sparse-square", pts({{0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 1}})});
    out.push_back({"skew-triangle", pts({{0, 0}, {3, 1}, {1, 3}})});
    out.push_back({"lifted-square", pts({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}})});
    return out;
}

inline std::vector<IntVector> named(const std::string& name)
{
    for (auto& c : corpus())
        if (c.name == name)
            return c.points;
    throw std::out_of_range("no corpus entry " + name);
}

} // namespace test
