#include "doctest.h"

#include "corpus.hpp"
#include "generators.hpp"
#include "toric/char_cycle.hpp"
#include "toric/errors.hpp"

using namespace toric;
using test::pts;

namespace {

ConstructibleData random_rho(test::Rng& rng, std::size_t faces)
{
    ConstructibleData rho;
    for (std::size_t f = 0; f < faces; ++f)
        rho.rho.push_back(rng.uniform_long(-9, 9));
    return rho;
}

ConstructibleData constant(std::size_t faces, long value) { return {std::vector<Int>(faces, value)}; }

bool simple(const Polytope& p)
{
    for (std::size_t f : p.faces().of_dimension(0)) {
        std::size_t edges = 0;
        for (std::size_t g : p.faces().above(f))
            edges += p.faces()[g].dim == 1;
        if (edges != p.dim())
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("characteristic cycle of the constant function on a smooth variety")
{
    for (const auto& c : test::very_ample()) {
        Polytope p = Polytope::from_points(PointConfiguration(c.points));
        if (!euler_obstructions(p, Route::general).all_one())
            continue;
        const long sign = p.dim() % 2 == 0 ? 1 : -1;
        auto u = compute_pair_table(p, PairKind::u);
        auto i = compute_pair_table(p, PairKind::i);
        CharCycleResult cc = cc_projective(p, constant(p.faces().size(), 1), u, i);
        CharCycleResult shifted = cc_projective(p, constant(p.faces().size(), sign), u, i);
        for (std::size_t f = 0; f < p.faces().size(); ++f) {
            const bool top = f == p.faces().top();
            CHECK_MESSAGE(cc.m[f] == (top ? sign : 0), c.name);
            CHECK(shifted.m[f] == (top ? 1 : 0));
        }
    }
}

TEST_CASE("projective round trip")
{
    test::Rng rng(61);
    for (const auto& c : test::corpus()) {
        Polytope p = Polytope::from_points(PointConfiguration(c.points));
        auto u = compute_pair_table(p, PairKind::u);
        auto i = compute_pair_table(p, PairKind::i);
        for (int trial = 0; trial < 10; ++trial) {
            ConstructibleData rho = random_rho(rng, p.faces().size());
            CharCycleResult cc = cc_projective(p, rho, u, i);
            CHECK(cc.context == CycleContext::projective);
            CHECK_MESSAGE(rho_from_cc(p, cc).rho == rho.rho, c.name);
        }
    }
}

TEST_CASE("affine round trip on cones")
{
    test::Rng rng(62);
    const std::vector<std::vector<IntVector>> cones{
        pts({{1, 0}, {1, 2}}),
        pts({{1, 0}, {1, 5}}),
        pts({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, -1}}),
        pts({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}),
        pts({{1, 0, 0}, {1, 2, 0}, {1, 0, 2}, {1, 2, 2}}),
    };
    for (const auto& gens : cones) {
        Polytope k = Polytope::from_cone(PointConfiguration(gens));
        auto r = compute_pair_table(k, PairKind::rsv);
        for (int trial = 0; trial < 10; ++trial) {
            ConstructibleData rho = random_rho(rng, k.faces().size());
            CharCycleResult cc = cc_affine(k, rho, r);
            CHECK(cc.context == CycleContext::affine);
            CHECK(rho_from_cc(k, cc).rho == rho.rho);
        }
    }
}

TEST_CASE("affine cycle of the quadric cone")
{
    Polytope k = Polytope::from_cone(PointConfiguration(pts({{1, 0}, {1, 2}})));
    auto r = compute_pair_table(k, PairKind::rsv);
    CharCycleResult cc = cc_affine(k, constant(k.faces().size(), 1), r);
    // The apex carries 1 - 1 - 1 + RSV = 1; the rays carry 0; the open orbit carries 1.
    CHECK(cc.m[*k.find_label({})] == 1);
    CHECK(cc.m[*k.find_label({0})] == 0);
    CHECK(cc.m[*k.find_label({1})] == 0);
    CHECK(cc.m[k.faces().top()] == 1);
}

TEST_CASE("intersection cohomology of simple polytopes is constant")
{
    for (const auto& c : test::very_ample()) {
        Polytope p = Polytope::from_points(PointConfiguration(c.points));
        if (!simple(p))
            continue;
        auto r = compute_pair_table(p, PairKind::rsv);
        const long sign = p.dim() % 2 == 0 ? 1 : -1;
        CHECK_MESSAGE(ic_multiplicities(p, p.dim(), r).m == cc_affine(p, constant(p.faces().size(), sign), r).m,
                      c.name);
    }
}

TEST_CASE("intersection cohomology on a non-simple polytope")
{
    Polytope p = Polytope::from_points(PointConfiguration(test::named("octahedron")));
    auto r = compute_pair_table(p, PairKind::rsv);
    CharCycleResult ic = ic_multiplicities(p, 3, r);
    CHECK(ic.m[p.faces().top()] == 1);
    for (std::size_t f : p.faces().of_dimension(2))
        CHECK(ic.m[f] == 0);
    for (std::size_t f : p.faces().of_dimension(1))
        CHECK(ic.m[f] == r.at({p.faces().top(), f}) - 1);
}

TEST_CASE("IC multiplicities need the right dimension")
{
    Polytope p = Polytope::from_points(PointConfiguration(test::unit_square()));
    auto r = compute_pair_table(p, PairKind::rsv);
    CHECK_THROWS_AS(ic_multiplicities(p, 3, r), InvalidInput);
    CHECK_THROWS_AS(ic_multiplicities(p, 5, r), InvalidInput);
}

TEST_CASE("smoothness, trivial Euler obstruction and irreducible IC cycle agree on polygons")
{
    int singular = 0;
    for (const auto& poly : test::polygons()) {
        Polytope p = Polytope::from_points(PointConfiguration(poly.points));
        SmoothnessReport r = smoothness_equivalence_n2(p);
        CHECK_MESSAGE(r.consistent(), poly.name);
        CHECK_MESSAGE(r.smooth == poly.smooth, poly.name);
        singular += !r.smooth;
    }
    CHECK(singular >= 3);
}
