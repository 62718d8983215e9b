#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "retro/anf.hpp"
#include "retro/error.hpp"

#include <random>

using namespace retro;

namespace {

// Random formula over n variables with roughly `terms` monomials.
Formula random_formula(std::mt19937_64& rng, uint32_t n, int terms) {
    Formula f = Formula::zero();
    for (int t = 0; t < terms; ++t) {
        Formula m = Formula::one();
        for (uint32_t i = 0; i < n; ++i) {
            if (rng() & 1) m = m & Formula::var(i);
        }
        f = f ^ m;
    }
    return f;
}

} // namespace

TEST_SUITE("formula basics") {
    TEST_CASE("constants") {
        CHECK(Formula::zero().is_zero());
        CHECK(Formula::one().is_one());
        CHECK(Formula::zero().is_constant());
        CHECK(Formula::one().is_constant());
        CHECK(Formula::constant(true) == Formula::one());
        CHECK(Formula::constant(false) == Formula::zero());
        CHECK(Formula::zero().term_count() == 0);
        CHECK(Formula::one().term_count() == 1);
        CHECK(Formula::one().has_constant_term());
        CHECK_FALSE(Formula::var(3).has_constant_term());
        CHECK(Formula::zero().to_string() == "0");
        CHECK(Formula::one().to_string() == "1");
    }

    TEST_CASE("xor cancels in pairs") {
        Formula x = Formula::var(0);
        CHECK((x ^ x).is_zero());
        CHECK((x ^ Formula::zero()) == x);
        Formula y = Formula::var(1);
        CHECK(((x ^ y) ^ x) == y);
    }

    TEST_CASE("and absorbs and distributes") {
        Formula x = Formula::var(0), y = Formula::var(1), z = Formula::var(2);
        CHECK((x & x) == x);                       // idempotent
        CHECK((x & Formula::one()) == x);          // identity
        CHECK((x & Formula::zero()).is_zero());    // annihilator
        CHECK((x & y) == (y & x));                 // commutative
        CHECK(((x ^ y) & z) == ((x & z) ^ (y & z))); // distributive
    }

    TEST_CASE("negation") {
        Formula x = Formula::var(0);
        CHECK(~~x == x);
        CHECK((~x).has_constant_term());
        CHECK((~Formula::zero()).is_one());
        CHECK((~x ^ x).is_one());
    }

    TEST_CASE("degree and support") {
        Formula f = parse_formula("1 + x2 + x0x5x7");
        CHECK(f.degree() == 3);
        CHECK(f.support() == std::vector<uint32_t>{0, 2, 5, 7});
        CHECK(Formula::zero().degree() == 0);
        CHECK(Formula::one().degree() == 0);
        CHECK(Formula::zero().support().empty());
    }

    TEST_CASE("evaluate") {
        Formula f = parse_formula("x0x1 + x2");
        Assignment a{{0, true}, {1, true}, {2, false}};
        CHECK(f.evaluate(a));
        a[2] = true;
        CHECK_FALSE(f.evaluate(a));
        CHECK(f.evaluate_bits(0b011));
        CHECK(f.evaluate_bits(0b100));
        CHECK_FALSE(f.evaluate_bits(0b111));
        CHECK_FALSE(f.evaluate_bits(0));
        CHECK_THROWS_AS(f.evaluate(Assignment{{0, true}}), ValidationError);
    }

    TEST_CASE("min degree monomial prefers low degree then low indices") {
        Formula f = parse_formula("x1x2 + x3 + x0x4");
        CHECK(f.min_degree_monomial() == Monomial{{3}});
        Formula g = parse_formula("x1x2 + x0x3");
        // degree tie: {1,2} packs to 0b110, {0,3} to 0b1001; the smaller mask wins
        CHECK(g.min_degree_monomial() == Monomial{{1, 2}});
        CHECK(Formula::one().min_degree_monomial() == Monomial{});
        CHECK_THROWS_AS(Formula::zero().min_degree_monomial(), ValidationError);
    }
}

TEST_SUITE("formula printing and parsing") {
    TEST_CASE("graded lexicographic print order") {
        // lower degree first; within a degree, earlier variables first
        Formula f = Formula::var(2) ^ (Formula::var(0) & Formula::var(1)) ^ Formula::one() ^
                    Formula::var(0);
        CHECK(f.to_string() == "1 + x0 + x2 + x0x1");
        Formula g = (Formula::var(1) & Formula::var(2)) ^ (Formula::var(0) & Formula::var(3));
        // degree tie: the term holding the earliest differing variable leads,
        // matching the order min_degree_monomial does NOT use (that one takes
        // the smallest packed mask)
        CHECK(g.to_string() == "x0x3 + x1x2");
    }

    TEST_CASE("parse round trip") {
        for (const char* text : {"0", "1", "x0", "x12", "1 + x0", "x0 + x1 + x0x1",
                                 "x0x3 + x1x2", "1 + x0 + x2 + x0x1x5"}) {
            Formula f = parse_formula(text);
            CHECK(f.to_string() == text);
            CHECK(parse_formula(f.to_string()) == f);
        }
    }

    TEST_CASE("parse normalizes") {
        CHECK(parse_formula("x2x0x2") == parse_formula("x0x2"));  // dup vars collapse
        CHECK(parse_formula("x0 + x0").is_zero());                // terms cancel
        CHECK(parse_formula("  x0   +  x1 ") == parse_formula("x0 + x1"));
        CHECK(parse_formula("1 + 1").is_zero());
    }

    TEST_CASE("parse errors") {
        CHECK_THROWS_AS(parse_formula(""), ParseError);
        CHECK_THROWS_AS(parse_formula("x"), ParseError);
        CHECK_THROWS_AS(parse_formula("x0 +"), ParseError);
        CHECK_THROWS_AS(parse_formula("y1"), ParseError);
        CHECK_THROWS_AS(parse_formula("x0 x1"), ParseError);
        CHECK_THROWS_AS(parse_formula("0 + x1"), ParseError); // 0 stands alone
    }
}

TEST_SUITE("mobius interpolation") {
    TEST_CASE("known tables") {
        // AND
        CHECK(mobius({0, 0, 0, 1}) == parse_formula("x0x1"));
        // OR = x0 + x1 + x0x1
        CHECK(mobius({0, 1, 1, 1}) == parse_formula("x0 + x1 + x0x1"));
        // XOR
        CHECK(mobius({0, 1, 1, 0}) == parse_formula("x0 + x1"));
        // constants
        CHECK(mobius({0, 0, 0, 0}).is_zero());
        CHECK(mobius({1, 1, 1, 1}).is_one());
        // single entry tables are the 0-variable functions
        CHECK(mobius({1}).is_one());
        CHECK(mobius({0}).is_zero());
    }

    TEST_CASE("mobius inverts truth_table") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            Formula f = random_formula(rng, 6, 8);
            CHECK(mobius(truth_table(f, 6)) == f);
        }
    }

    TEST_CASE("truth_table inverts mobius") {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<uint8_t> table(32);
            for (auto& b : table) b = static_cast<uint8_t>(rng() & 1);
            CHECK(truth_table(mobius(table), 5) == table);
        }
    }

    TEST_CASE("rejects non power of two") {
        CHECK_THROWS_AS(mobius({0, 1, 0}), ValidationError);
        CHECK_THROWS_AS(mobius({}), ValidationError);
    }
}

TEST_SUITE("formula semantics against truth tables") {
    TEST_CASE("xor and and agree with pointwise ops") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 40; ++trial) {
            Formula f = random_formula(rng, 5, 6);
            Formula g = random_formula(rng, 5, 6);
            auto tf = truth_table(f, 5), tg = truth_table(g, 5);
            auto tx = truth_table(f ^ g, 5), ta = truth_table(f & g, 5);
            for (size_t i = 0; i < 32; ++i) {
                CHECK(tx[i] == (tf[i] ^ tg[i]));
                CHECK(ta[i] == (tf[i] & tg[i]));
            }
        }
    }

    TEST_CASE("equality is semantic") {
        // same function built two different ways
        Formula a = (Formula::var(0) ^ Formula::var(1)) & (Formula::var(0) ^ Formula::var(1));
        Formula b = Formula::var(0) ^ Formula::var(1);
        CHECK(a == b);
        Formula c = ~(Formula::var(0) & Formula::var(1));
        Formula d = parse_formula("1 + x0x1");
        CHECK(c == d);
    }
}

TEST_SUITE("wide formulas") {
    TEST_CASE("variables beyond 63 work") {
        Formula f = Formula::var(64) ^ Formula::var(0);
        CHECK(f.term_count() == 2);
        CHECK(f.support() == std::vector<uint32_t>{0, 64});
        CHECK(f.to_string() == "x0 + x64");
        CHECK(parse_formula("x0 + x64") == f);
    }

    TEST_CASE("products across the word boundary") {
        Formula f = Formula::var(10) & Formula::var(100);
        CHECK(f.degree() == 2);
        CHECK(f.to_string() == "x10x100");
        CHECK((f & f) == f);
        CHECK((f ^ f).is_zero());
        Assignment a{{10, true}, {100, true}};
        CHECK(f.evaluate(a));
        a[100] = false;
        CHECK_FALSE(f.evaluate(a));
    }

    TEST_CASE("wide terms demote when they cancel away") {
        Formula wide = Formula::var(0) & Formula::var(70);
        Formula f = Formula::var(1) ^ wide;
        Formula g = f ^ wide; // the only wide term cancels
        CHECK(g == Formula::var(1));
        CHECK(g.evaluate_bits(0b10)); // narrow fast path must be usable again
    }

    TEST_CASE("evaluate_bits refuses wide support") {
        Formula f = Formula::var(70);
        CHECK_THROWS_AS(f.evaluate_bits(1), ValidationError);
    }

    TEST_CASE("graded lex order spans both widths") {
        Formula f = Formula::var(70) ^ (Formula::var(0) & Formula::var(1)) ^ Formula::var(2);
        CHECK(f.to_string() == "x2 + x70 + x0x1");
        CHECK(f.min_degree_monomial() == Monomial{{2}});
    }

    TEST_CASE("thousand variable monomial") {
        Formula f = Formula::one();
        for (uint32_t i = 0; i < 1000; ++i) f = f & Formula::var(i);
        CHECK(f.term_count() == 1);
        CHECK(f.degree() == 1000);
        Assignment all;
        for (uint32_t i = 0; i < 1000; ++i) all[i] = true;
        CHECK(f.evaluate(all));
        all[999] = false;
        CHECK_FALSE(f.evaluate(all));
    }
}

TEST_SUITE("monomial views") {
    TEST_CASE("monomials match to_string order") {
        Formula f = parse_formula("1 + x3 + x0x2");
        auto ms = f.monomials();
        REQUIRE(ms.size() == 3);
        CHECK(ms[0] == Monomial{});
        CHECK(ms[1] == Monomial{{3}});
        CHECK(ms[2] == Monomial{{0, 2}});
        CHECK(Formula::from_monomials(ms) == f);
    }

    TEST_CASE("from_monomials cancels duplicates") {
        Monomial m{{1, 4}};
        CHECK(Formula::from_monomials({m, m}).is_zero());
        CHECK(Formula::from_monomials({m, m, m}) == Formula::from_monomials({m}));
    }
}
