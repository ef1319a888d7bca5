#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "random_filtration.hpp"
#include "wzz/filtration.hpp"

using namespace wzz;
using wzz::testing::f1;

TEST_CASE("parse")
{
    auto f = parse_filtration("i 0\ni 1\ni 0 1\n");
    REQUIRE(f.length() == 3);
    CHECK(f[0] == FiltrationStep{Op::Insert, Simplex{0}});
    CHECK(f[1] == FiltrationStep{Op::Insert, Simplex{1}});
    CHECK(f[2] == FiltrationStep{Op::Insert, Simplex{0, 1}});

    CHECK(parse_filtration("# comment\n\ni 0\n").length() == 1);
    CHECK(parse_filtration("").length() == 0);
}

TEST_CASE("parse errors carry the line")
{
    auto line_of = [](const char* text) -> std::size_t {
        try {
            parse_filtration(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("i 1 0\n") == 1);
    CHECK(line_of("i 0\nx 1\n") == 2);
    CHECK(line_of("i 0\ni -1\n") == 2);
    CHECK(line_of("i 0\ni a\n") == 2);
    CHECK(line_of("i\n") == 1);
    CHECK(line_of("# c\ni 0 0\n") == 2);
    // Single spaces and bare newlines only.
    CHECK(line_of("i  0\n") == 1);
    CHECK(line_of("i 0\r\n") == 1);
}

TEST_CASE("validate")
{
    auto r = validate(f1());
    CHECK(r.ok());
    CHECK(r.m == 5);
    CHECK(r.n == 3);

    auto bad = validate(parse_filtration("i 0 1\n"));
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error->arrow() == 0);
    CHECK(bad.error->reason().find("faces") != std::string::npos);

    bad = validate(parse_filtration("i 0\nd 0\nd 0\n"));
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error->arrow() == 2);
    CHECK(bad.error->reason().find("absent") != std::string::npos);

    bad = validate(parse_filtration("i 0\ni 0\n"));
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error->arrow() == 1);

    bad = validate(parse_filtration("i 0\ni 1\ni 0 1\nd 1\n"));
    REQUIRE_FALSE(bad.ok());
    CHECK(bad.error->arrow() == 3);
    CHECK(bad.error->reason().find("coface") != std::string::npos);

    CHECK_THROWS_AS(require_valid(parse_filtration("d 0\n")), FiltrationError);
}

TEST_CASE("complex_at")
{
    auto f = f1();
    CHECK(complex_at(f, 0).empty());
    auto k3 = complex_at(f, 3);
    CHECK(k3.simplices() == std::vector<Simplex>{Simplex{0}, Simplex{0, 1}, Simplex{1}});
    auto k5 = complex_at(f, 5);
    CHECK(k5.simplices() == std::vector<Simplex>{Simplex{0}});
    CHECK_THROWS_AS(complex_at(f, 6), std::out_of_range);
}

TEST_CASE("serialize")
{
    CHECK(serialize(ZigzagFiltration{}).empty());
    CHECK(serialize(f1()) == wzz::testing::kF1Text);
    CHECK(parse_filtration(serialize(wzz::testing::f2())) == wzz::testing::f2());
    CHECK(serialize(parse_filtration("# x\n\ni 0\n")) == "i 0\n");
}

TEST_CASE("replay changes one simplex per arrow and assigns arrow indices as ids")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
        auto f = wzz::testing::random_filtration(rng, {});
        REQUIRE(validate(f).ok());
        CHECK(parse_filtration(serialize(f)) == f);
        ComplexState k;
        for (std::size_t i = 0; i < f.length(); ++i) {
            std::size_t before = k.size();
            apply_step(f, i, k);
            if (f.forward(i)) {
                CHECK(k.size() == before + 1);
                CHECK(k.live_id(f[i].simplex) == static_cast<Index>(i));
            } else {
                CHECK(k.size() + 1 == before);
                CHECK_FALSE(k.contains(f[i].simplex));
            }
        }
        auto end = complex_at(f, f.length());
        CHECK(end.simplices() == k.simplices());
    }
}
