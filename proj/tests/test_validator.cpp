#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "random_filtration.hpp"
#include "wzz/engine.hpp"
#include "wzz/validator.hpp"

using namespace wzz;

namespace {
const Simplex u{0}, v{1}, w{2}, uv{0, 1}, uw{0, 2}, vw{1, 2}, uvw{0, 1, 2};
const Chain tri{uv, uw, vw};
const ZigzagFiltration kF1 = wzz::testing::f1();
const ZigzagFiltration kF2 = wzz::testing::f2();

ComplexState make(std::initializer_list<Simplex> ss)
{
    ComplexState k;
    Index id = 0;
    for (const auto& s : ss) k.insert(s, id++);
    return k;
}

Representative one_segment(Module m, int p, Index b, Index d, Chain c)
{
    return {m, p, b, d, {Segment{b, d, std::move(c)}}};
}

std::vector<BarEntry> sorted(std::vector<BarEntry> b)
{
    sort_barcode(b);
    return b;
}
}  // namespace

TEST_CASE("betti_numbers")
{
    auto b = betti_numbers(make({u}));
    CHECK(b.homology(0) == 1);
    CHECK(b.homology(1) == 0);
    CHECK(b.boundaries(0) == 0);

    b = betti_numbers(make({u, v, w, uv, uw, vw}));
    CHECK(b.homology(0) == 1);
    CHECK(b.homology(1) == 1);
    CHECK(b.boundaries(0) == 2);
    CHECK(b.cycles(1) == 1);

    b = betti_numbers(ComplexState{});
    CHECK(b.homology(0) == 0);
    CHECK(b.cycles(0) == 0);

    b = betti_numbers(make({u, v, w, uv, uw, vw, uvw}));
    CHECK(b.homology(1) == 0);
    CHECK(b.boundaries(1) == 1);
}

TEST_CASE("is_boundary")
{
    Oracle o(kF1);
    CHECK(is_boundary(o.complex(3), Chain{u, v}));
    CHECK_FALSE(is_boundary(o.complex(2), Chain{u, v}));
    CHECK(is_boundary(o.complex(2), Chain{}));
    CHECK_THROWS_AS(is_boundary(o.complex(1), Chain{u, v}), std::invalid_argument);
    CHECK_THROWS_AS(is_boundary(o.complex(3), Chain{uv}), std::invalid_argument);
    CHECK(o.in_boundaries(3, Chain{u, v}));
    CHECK_FALSE(o.in_boundaries(1, Chain{u, v}));
}

TEST_CASE("check_representative")
{
    Oracle o1(kF1);
    CHECK(check_representative(o1, one_segment(Module::H, 0, 2, 2, Chain{u, v})).ok());
    auto bad = check_representative(o1, one_segment(Module::H, 0, 2, 2, Chain{v}));
    CHECK_FALSE(bad.ok());
    REQUIRE(bad.first_failure());
    CHECK(bad.first_failure()->find("death") != std::string::npos);
    CHECK(check_representative(o1, one_segment(Module::H, 0, 1, 5, Chain{u})).ok());
    CHECK(check_representative(o1, one_segment(Module::B, 0, 3, 3, Chain{u, v})).ok());
    // u+v stops being homologous to itself-as-a-class once it bounds.
    CHECK_FALSE(check_representative(o1, one_segment(Module::H, 0, 2, 4, Chain{u, v})).ok());

    Oracle o2(kF2);
    CHECK(check_representative(o2, one_segment(Module::B, 1, 7, 7, tri)).ok());
    CHECK(check_representative(o2, one_segment(Module::H, 1, 6, 6, tri)).ok());
    CHECK(check_representative(o2, one_segment(Module::H, 1, 8, 8, tri)).ok());
    CHECK_FALSE(check_representative(o2, one_segment(Module::H, 1, 6, 7, tri)).ok());
}

TEST_CASE("index sets and pairing")
{
    Oracle o1(kF1);
    auto s = birth_death_sets(o1);
    CHECK(s.h_births[0] == std::vector<Index>{1, 2, 4});
    CHECK(s.h_deaths[0] == std::vector<Index>{2, 4, 5});
    CHECK(s.b_births[0] == std::vector<Index>{3});
    CHECK(s.b_deaths[0] == std::vector<Index>{3});

    auto r1 = run(wzz::testing::f1());
    CHECK(check_pairing(o1, bars(r1.intervals)).ok());
    CHECK(certify(o1, r1).ok());

    Oracle o2(kF2);
    auto s2 = birth_death_sets(o2);
    CHECK(s2.h_births[0] == std::vector<Index>{1, 2, 3});
    CHECK(s2.h_births[1] == std::vector<Index>{6, 8});
    CHECK(s2.b_births[0] == std::vector<Index>{4, 5});
    CHECK(s2.b_births[1] == std::vector<Index>{7});
    auto r2 = run(wzz::testing::f2());
    CHECK(check_pairing(o2, bars(r2.intervals)).ok());
    CHECK(certify(o2, r2).ok());
}

TEST_CASE("swapping the labels of [2,2] and [4,4] is caught")
{
    Oracle o(kF1);
    // Same birth and death multisets, wrong pairing: [2,4] and [4,2].
    std::vector<BarEntry> swapped{{Module::H, 0, 1, 5}, {Module::H, 0, 2, 4}, {Module::H, 0, 4, 2}, {Module::B, 0, 3, 3}};
    CHECK_FALSE(check_pairing(o, swapped).ok());
    CHECK_FALSE(check_representative(o, one_segment(Module::H, 0, 2, 4, Chain{u, v})).ok());

    std::vector<BarEntry> shifted{{Module::H, 0, 1, 5}, {Module::H, 0, 2, 3}, {Module::H, 0, 4, 4}, {Module::B, 0, 3, 3}};
    CHECK_FALSE(check_pairing(o, shifted).ok());
}

TEST_CASE("check_wire")
{
    auto f = wzz::testing::f1();
    Oracle o(f);
    auto res = run(f);
    const auto& table = res.wires.table();
    for (Index s : {1u, 2u, 3u, 4u}) CHECK(check_wire(o, res.wires.wire(s), table).ok());

    Wire w3 = res.wires.wire(3);
    w3.kind = WireKind::NonBoundary;
    CHECK_FALSE(check_wire(o, w3, table).ok());
    Wire w4 = res.wires.wire(4);
    w4.kind = WireKind::Boundary;
    CHECK_FALSE(check_wire(o, w4, table).ok());
    Wire w1 = res.wires.wire(1);
    w1.start = 2;  // {u} is old news at index 2
    CHECK_FALSE(check_wire(o, w1, table).ok());
}

TEST_CASE("classical_persistence")
{
    auto f2 = wzz::testing::f2();
    ZigzagFiltration first7(std::vector<FiltrationStep>(f2.steps().begin(), f2.steps().begin() + 7));
    CHECK(classical_persistence(first7) ==
          sorted({{Module::H, 0, 1, 7}, {Module::H, 0, 2, 3}, {Module::H, 0, 3, 4}, {Module::H, 1, 6, 6}}));
    CHECK(classical_persistence(parse_filtration("i 0\n")) == std::vector<BarEntry>{{Module::H, 0, 1, 1}});
    CHECK(classical_persistence(parse_filtration("i 0\ni 1\n")) ==
          sorted({{Module::H, 0, 1, 2}, {Module::H, 0, 2, 2}}));
    CHECK_THROWS_AS(classical_persistence(f2), std::invalid_argument);
}

TEST_CASE("order properties")
{
    using D = Direction;
    std::vector<BirthKey> keys{{1, Module::H, D::Forward}, {2, Module::H, D::Forward},
                               {4, Module::H, D::Backward}, {3, Module::B, D::Forward}};
    CHECK(check_order_properties(keys).ok());
    std::sort(keys.begin(), keys.end(), precedes);
    CHECK(keys[0].index == 3);
    CHECK(keys[1].index == 4);
    CHECK(keys[2].index == 1);
    CHECK(keys[3].index == 2);
    CHECK(check_order_properties({keys[0]}).ok());

    // Pool keys across runs. An index has one arrow direction within a
    // filtration, so keys that disagree on it are left out of the pool.
    std::mt19937_64 rng(50);
    std::vector<BirthKey> mixed;
    std::map<Index, Direction> dir;
    for (int t = 0; t < 50; ++t) {
        wzz::testing::RandomSpec spec;
        spec.max_length = 40;
        auto res = run(wzz::testing::random_filtration(rng, spec));
        for (const auto& iv : res.intervals) {
            auto k = iv.key();
            if (k.module == Module::H && dir.emplace(k.index, k.arrow_into).first->second != k.arrow_into) continue;
            if (std::find(mixed.begin(), mixed.end(), k) == mixed.end()) mixed.push_back(k);
        }
    }
    CHECK(mixed.size() > 20);
    CHECK_FALSE(check_order_properties({{5, Module::H, D::Forward}, {5, Module::H, D::Backward}}).ok());
    auto cert = check_order_properties(mixed);
    INFO(cert.first_failure().value_or(""));
    CHECK(cert.ok());
}

TEST_CASE("check_cycle_basis")
{
    Oracle o(kF1);
    CHECK(check_cycle_basis(o, 2, {Chain{u}, Chain{v}}, {}).ok());
    CHECK_FALSE(check_cycle_basis(o, 2, {Chain{u}, Chain{u}}, {}).ok());
    CHECK_FALSE(check_cycle_basis(o, 2, {Chain{u}}, {}).ok());
    CHECK(check_cycle_basis(o, 3, {Chain{u}}, {Chain{u, v}}).ok());
    CHECK_FALSE(check_cycle_basis(o, 3, {Chain{u}, Chain{v}}, {}).ok());
}

TEST_CASE("representative_sum")
{
    Oracle o(kF1);
    auto a = one_segment(Module::H, 0, 1, 2, Chain{u});
    auto b = one_segment(Module::H, 0, 2, 2, Chain{u, v});
    auto s = representative_sum(a, b);
    CHECK(s.birth == 2);
    CHECK(s.at(2) == Chain{v});
    CHECK(check_representative(o, s, 2).ok());
    CHECK_THROWS_AS(representative_sum(a, one_segment(Module::H, 0, 2, 3, Chain{u, v})), std::invalid_argument);
}

TEST_CASE("certificate text")
{
    Certificate c;
    c.pass("one");
    c.fail("two", "because");
    CHECK_FALSE(c.ok());
    CHECK(c.failures() == 1);
    CHECK(c.lines() == std::vector<std::string>{"PASS one", "FAIL two: because"});
    CHECK(c.first_failure() == "FAIL two: because");
}
