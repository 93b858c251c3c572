#include "toric/euler.hpp"

#include "toric/errors.hpp"

#include <algorithm>

namespace toric {

namespace {

Int sign(std::size_t exponent)
{
    return exponent % 2 == 0 ? 1 : -1;
}

template <class Weight>
EulerTable recurse(const Polytope& p, Route route, Weight&& weight)
{
    const auto& faces = p.faces();
    EulerTable table;
    table.source = route;
    table.values.assign(faces.size(), 0);
    table.values[faces.top()] = 1;
    // Faces are sorted by dimension, so a reverse sweep sees every larger face first.
    for (std::size_t b = faces.top(); b-- > 0;) {
        Int eu = 0;
        for (std::size_t a : faces.above(b))
            eu += sign(faces[a].dim - faces[b].dim - 1) * weight(a, b) * table.values[a];
        table.values[b] = eu;
    }
    return table;
}

} // namespace

bool EulerTable::all_one() const
{
    return std::all_of(values.begin(), values.end(), [](const Int& x) { return x == 1; });
}

Int linking_number(const Polytope& p, std::size_t alpha, std::size_t beta, Route route, std::size_t max_dim)
{
    const auto& faces = p.faces();
    if (alpha == beta || !faces.precedes(beta, alpha))
        throw InvalidInput("linking number needs strictly nested faces");
    Int w = route == Route::normal ? rsv(p, alpha, beta, max_dim)
                                   : Int(face_index_i(p, alpha, beta) * subdiagram_volume_u(p, alpha, beta));
    return sign(faces[alpha].dim - faces[beta].dim - 1) * w;
}

EulerTable euler_obstructions_normal(const Polytope& p, const PairTable& rsv_table)
{
    return recurse(p, Route::normal, [&](std::size_t a, std::size_t b) { return pair_value(rsv_table, a, b); });
}

EulerTable euler_obstructions_general(const Polytope& p, const PairTable& u, const PairTable& i)
{
    return recurse(p, Route::general,
                   [&](std::size_t a, std::size_t b) { return Int(pair_value(i, a, b) * pair_value(u, a, b)); });
}

EulerTable euler_obstructions(const Polytope& p, Route route, std::size_t max_dim, unsigned jobs)
{
    if (route == Route::normal)
        return euler_obstructions_normal(p, compute_pair_table(p, PairKind::rsv, max_dim, jobs));
    return euler_obstructions_general(p, compute_pair_table(p, PairKind::u, max_dim, jobs),
                                      compute_pair_table(p, PairKind::i, max_dim, jobs));
}

std::map<std::size_t, Int> closure_euler(const Polytope& p, std::size_t alpha, Route route, std::size_t max_dim)
{
    const auto& face = p.faces()[alpha];
    std::map<std::size_t, Int> out;
    if (face.dim == 0) {
        out[alpha] = 1;
        return out;
    }
    std::vector<IntVector> pts;
    for (std::size_t j : face.id)
        pts.push_back(p.points()[j]);

    auto sub = [&] {
        if (p.mode() == Mode::polytope)
            return Polytope::from_points(PointConfiguration(pts));
        // Drop the apex and express the generators in saturated coordinates of their span.
        std::vector<IntVector> gens(pts.begin() + 1, pts.end());
        LatticeChart chart(gens, p.dim());
        for (auto& g : gens)
            g = chart.saturated_coordinates(g);
        return Polytope::from_cone(PointConfiguration(gens));
    }();

    EulerTable eu = euler_obstructions(sub, route, max_dim);
    for (std::size_t f = 0; f < sub.faces().size(); ++f) {
        std::vector<std::size_t> id;
        for (std::size_t t : sub.faces()[f].id)
            id.push_back(face.id[t]);
        auto g = p.faces().find(id);
        if (!g)
            throw InternalInconsistency("orbit-closure face does not match a face of the ambient polytope");
        out[*g] = eu[f];
    }
    if (out.size() != p.faces().below(alpha).size() + 1)
        throw InternalInconsistency("orbit-closure face lattice has the wrong size");
    return out;
}

} // namespace toric
