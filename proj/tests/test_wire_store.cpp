#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "wzz/engine.hpp"
#include "wzz/wire_store.hpp"

using namespace wzz;

namespace {
const Simplex u{0}, v{1}, w{2}, uv{0, 1}, uw{0, 2}, vw{1, 2};
const Chain tri{uv, uw, vw};
}  // namespace

TEST_CASE("register_wire")
{
    WireStore s;
    CHECK(s.register_wire(4, Chain{u, v}, WireKind::Boundary) == 4);
    CHECK_THROWS_AS(s.register_wire(4, Chain{u}, WireKind::NonBoundary), WireError);
    CHECK(s.register_wire(6, tri, WireKind::NonBoundary) == 6);
    CHECK(s.size() == 2);
    CHECK(s.wire(6).degree == 1);
    CHECK(s.wire(4).kind == WireKind::Boundary);
    CHECK(s.starts() == std::vector<Index>{4, 6});
    CHECK_THROWS_AS(s.register_wire(7, Chain{uv}, WireKind::NonBoundary), WireError);  // not a cycle
    CHECK_THROWS_AS(s.register_wire(8, Chain{}, WireKind::NonBoundary), WireError);
    CHECK_THROWS_AS(s.wire(5), WireError);
}

TEST_CASE("bundle_sum")
{
    CHECK(bundle_sum(Bundle{2, 5, 7}, Bundle{3, 7}) == Bundle{2, 3, 5});
    Bundle b{1, 4, 9};
    CHECK(bundle_sum(b, b).empty());
    CHECK(bundle_sum(Bundle{1}, Bundle{2}) == Bundle{1, 2});
    CHECK(bundle_sum(Bundle{}, b) == b);
    CHECK(Bundle{7, 3, 5}.wires == std::vector<Index>{3, 5, 7});
}

TEST_CASE("extract_representative on hand-built stores")
{
    WireStore s;
    s.register_wire(1, Chain{u}, WireKind::NonBoundary);
    s.register_wire(2, Chain{v}, WireKind::NonBoundary);

    auto r = s.extract_representative(Bundle{1, 2}, Module::H, 2, 2);
    REQUIRE(r.segments.size() == 1);
    CHECK(r.segments[0] == Segment{2, 2, Chain{u, v}});

    r = s.extract_representative(Bundle{1}, Module::H, 1, 5);
    REQUIRE(r.segments.size() == 1);
    CHECK(r.segments[0] == Segment{1, 5, Chain{u}});

    // A later wire opens a new segment.
    r = s.extract_representative(Bundle{1, 2}, Module::H, 1, 3);
    REQUIRE(r.segments.size() == 2);
    CHECK(r.segments[0] == Segment{1, 1, Chain{u}});
    CHECK(r.segments[1] == Segment{2, 3, Chain{u, v}});
    CHECK(r.at(3) == Chain{u, v});
    CHECK_THROWS_AS(r.at(4), std::out_of_range);

    // Wires starting after the death are ignored.
    r = s.extract_representative(Bundle{1, 2}, Module::H, 1, 1);
    REQUIRE(r.segments.size() == 1);
    CHECK(r.segments[0].cycle == Chain{u});

    CHECK_THROWS_AS(s.extract_representative(Bundle{2}, Module::H, 1, 1), WireError);

    WireStore t;
    t.register_wire(6, tri, WireKind::NonBoundary);
    r = t.extract_representative(Bundle{6}, Module::H, 6, 6);
    REQUIRE(r.segments.size() == 1);
    CHECK(r.segments[0] == Segment{6, 6, tri});
}

TEST_CASE("bundle_last_cycle")
{
    WireStore s;
    s.register_wire(1, Chain{u}, WireKind::NonBoundary);
    s.register_wire(2, Chain{v}, WireKind::NonBoundary);
    s.register_wire(6, tri, WireKind::NonBoundary);
    CHECK(s.bundle_last_cycle(Bundle{1, 2}, 2) == Chain{u, v});
    CHECK(s.bundle_last_cycle(Bundle{}, 4).empty());
    CHECK(s.bundle_last_cycle(Bundle{6}, 5).empty());
    CHECK(s.bundle_last_cycle(Bundle{6}, 6) == tri);
}

TEST_CASE("bundles of mixed degree are rejected")
{
    WireStore s;
    s.register_wire(1, Chain{u}, WireKind::NonBoundary);
    s.register_wire(6, tri, WireKind::NonBoundary);
    CHECK_THROWS_AS(s.extract_representative(Bundle{1, 6}, Module::H, 6, 6), WireError);
    CHECK_THROWS_AS(s.bundle_last_cycle(Bundle{1, 6}, 6), WireError);
}

TEST_CASE("engine wires on F1 and F2")
{
    auto r1 = run(wzz::testing::f1());
    REQUIRE(r1.wires.size() == 4);
    CHECK(r1.wires.table().to_chain(r1.wires.wire(3).cycle) == Chain{u, v});
    CHECK(r1.wires.wire(3).kind == WireKind::Boundary);
    CHECK(r1.wires.table().to_chain(r1.wires.wire(4).cycle) == Chain{u, v});
    CHECK(r1.wires.wire(4).kind == WireKind::NonBoundary);

    auto r2 = run(wzz::testing::f2());
    CHECK(r2.wires.table().to_chain(r2.wires.wire(6).cycle) == tri);
    CHECK(r2.wires.wire(6).kind == WireKind::NonBoundary);
}

TEST_CASE("representative file round trip")
{
    auto res = run(wzz::testing::f2());
    auto reps = res.representatives();
    REQUIRE(reps.size() == res.intervals.size());
    std::stringstream io;
    write_representatives(io, reps);
    CHECK(read_representatives(io) == reps);

    std::ostringstream one;
    write_representatives(one, {res.representative(res.intervals[0])});
    CHECK(one.str() == "R H 0 1 8 1\nS 1 8 1\n0\n");

    std::istringstream empty("");
    CHECK(read_representatives(empty).empty());
}

TEST_CASE("malformed representative files")
{
    auto bad = [](const char* text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_representatives(in), ParseError);
    };
    bad("R X 0 1 1 1\nS 1 1 1\n0\n");
    bad("R H 0 1 1 1\nS 1 1 2\n0\n");
    bad("R H 0 1 1 1\nS 1 1 1\n1 0\n");
    bad("Q H 0 1 1 0\n");
    bad("R H 0 1 1 1 9\nS 1 1 1\n0\n");
}
