#include <doctest.h>

#include <random>

#include "checks.hpp"
#include "fixtures.hpp"
#include "wzz/engine.hpp"
#include "wzz/pivot_matrices.hpp"

using namespace wzz;

namespace {
const Simplex u{0}, v{1}, w{2}, uv{0, 1}, uw{0, 2}, vw{1, 2};

StepReport step_to(WiredZigzag& e, Index arrow)
{
    StepReport r;
    while (e.current_index() <= arrow) r = e.step();
    return r;
}

BirthKey hkey(Index i) { return {i, Module::H, Direction::Forward}; }
BirthKey bkey(Index i) { return {i, Module::B, Direction::Forward}; }
}  // namespace

TEST_CASE("reduce_boundary")
{
    auto f1 = wzz::testing::f1();
    WiredZigzag e1(f1);
    auto r = step_to(e1, 2);
    CHECK(r.reduction.z.size() == 2);
    CHECK(r.reduction.b.empty());

    auto f2 = wzz::testing::f2();
    WiredZigzag e2(f2);
    r = step_to(e2, 5);
    CHECK(r.reduction.z.empty());
    CHECK(r.reduction.b.size() == 2);

    MatrixTriple mx;
    auto red = mx.reduce_boundary({});
    CHECK(red.z.empty());
    CHECK(red.b.empty());
}

TEST_CASE("reduce_boundary reproduces the cycle exactly")
{
    MatrixTriple mx;
    mx.add_z_column({{1, 4}, hkey(1), Bundle{1}, 0});
    mx.restore_distinct_pivots();
    mx.add_z_column({{2, 5}, hkey(2), Bundle{2}, 0});
    mx.restore_distinct_pivots();
    mx.add_bc_column({{3, 6}, {7}, bkey(3), Bundle{3}, 0});
    mx.restore_distinct_pivots();
    auto red = mx.reduce_boundary({1, 3, 4, 6});
    CHECK(red.z.size() == 1);
    CHECK(red.b.size() == 1);
    CHECK_THROWS_AS(mx.reduce_boundary({1, 2}), InvariantError);
}

TEST_CASE("restore_distinct_pivots on hand-built columns")
{
    MatrixTriple mx;
    mx.add_z_column({{0, 2}, hkey(1), Bundle{1}, 0});
    CHECK(mx.restore_distinct_pivots().empty());

    // Z/Z: the earlier birth is summed into the later one.
    auto later = mx.add_z_column({{1, 2}, hkey(2), Bundle{2}, 0});
    auto ev = mx.restore_distinct_pivots();
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].target == ColumnRef{Family::Z, later});
    CHECK(ev[0].pivot == 2);
    CHECK(mx.z(later).chain == IdColumn{0, 1});
    CHECK(mx.z(later).bundle == Bundle{1, 2});
    CHECK(mx.pivots_distinct());

    // Z/B: B goes into Z whatever the indices.
    MatrixTriple m2;
    m2.add_bc_column({{0, 3}, {9}, bkey(5), Bundle{5}, 0});
    m2.restore_distinct_pivots();
    auto z = m2.add_z_column({{1, 3}, hkey(1), Bundle{1}, 0});
    ev = m2.restore_distinct_pivots();
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].target == ColumnRef{Family::Z, z});
    CHECK(ev[0].source.family == Family::B);
    CHECK(m2.z(z).bundle == Bundle{1, 5});
    CHECK(m2.pivots_distinct());

    CHECK_THROWS_AS(m2.add_z_column({{}, hkey(7), Bundle{7}, 0}), InvariantError);
}

TEST_CASE("Z and B sharing a pivot resolve with one Z += B")
{
    auto f = parse_filtration("i 4\ni 3\ni 1\ni 1 3\nd 1 3\ni 1 4\ni 2\ni 2 4\n");
    WiredZigzag e(f);
    auto r = step_to(e, 5);
    CHECK(r.kind == StepCase::ForwardDeath);
    REQUIRE(r.summations.size() == 1);
    CHECK(r.summations[0].target.family == Family::Z);
    CHECK(r.summations[0].source.family == Family::B);
    CHECK(e.matrices().pivots_distinct());
}

TEST_CASE("three cascading collisions")
{
    auto f = parse_filtration(
        "i 2\ni 4\ni 0\ni 0 2\ni 3\ni 0 3\ni 1\ni 1 3\ni 2 3\ni 1 4\ni 2 4\ni 3 4\n");
    REQUIRE(f.length() == 12);
    WiredZigzag e(f);
    auto r = step_to(e, 9);
    CHECK(r.kind == StepCase::ForwardDeath);
    REQUIRE(r.summations.size() == 3);
    for (std::size_t k = 1; k < r.summations.size(); ++k) CHECK(r.summations[k].pivot < r.summations[k - 1].pivot);
    for (const auto& s : r.summations) {
        CHECK(s.target.family == Family::B);
        CHECK(precedes(s.source_birth, s.target_birth));
    }
    CHECK(e.matrices().pivots_distinct());
    while (!e.done()) e.step();
    CHECK(e.matrices().pivots_distinct());
}

TEST_CASE("columns_containing")
{
    auto f = wzz::testing::f1();
    WiredZigzag e(f);
    step_to(e, 2);
    auto c = e.columns_containing(Family::C, uv);
    REQUIRE(c.size() == 1);
    CHECK(e.to_chain(e.matrices().bc(c[0]).cchain) == Chain{uv});
    CHECK(e.columns_containing(Family::Z, uv).empty());

    step_to(e, 3);
    auto z = e.columns_containing(Family::Z, v);
    REQUIRE(z.size() == 1);
    CHECK(e.to_chain(e.matrices().z(z[0]).chain) == Chain{u, v});
    CHECK(e.columns_containing(Family::C, uv).empty());  // uv is gone
}

TEST_CASE("B = dC, last cycles and a cycle basis after every arrow")
{
    std::mt19937_64 rng(1);
    for (auto f : {wzz::testing::f1(), wzz::testing::f2()}) {
        auto out = wzz::testing::run_trial(f, {}, rng);
        CHECK(out.structure);
        CHECK(out.all());
    }
    auto f = wzz::testing::f1();
    WiredZigzag e(f);
    for (Index i = 0; i < 5; ++i) {
        auto r = e.step();
        if (r.kind == StepCase::ForwardDeath) {
            bool found = false;
            for (auto s : e.matrices().bc_slots()) {
                const auto& col = e.matrices().bc(s);
                if (e.to_chain(col.cchain) == Chain{uv}) {
                    found = true;
                    CHECK(boundary(e.to_chain(col.cchain)) == e.to_chain(col.bchain));
                }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("deleting a column the next arrow needs is reported with the arrow")
{
    auto f = wzz::testing::f1();
    WiredZigzag e(f);
    e.step();
    e.step();
    e.matrices().delete_z_column(e.matrices().z_slots().front());
    try {
        e.step();
        FAIL("expected an invariant error");
    } catch (const InvariantError& err) {
        CHECK(err.arrow() == 2);
    }
}
