#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "retro/algorithms.hpp"
#include "retro/arith.hpp"
#include "retro/error.hpp"
#include "retro/oracle.hpp"

#include <numeric>

using namespace retro;

TEST_SUITE("deutsch-jozsa") {
    TEST_CASE("constants") {
        CHECK(deutsch_jozsa({0, 0, 0, 0}).constant);
        CHECK(deutsch_jozsa({1, 1, 1, 1}).constant);
        CHECK(deutsch_jozsa({1, 1}).constant);
    }

    TEST_CASE("balanced") {
        DJResult r = deutsch_jozsa({0, 1, 1, 0}); // XOR
        CHECK_FALSE(r.constant);
        CHECK(r.formula == parse_formula("x0 + x1"));
        CHECK_FALSE(deutsch_jozsa({0, 0, 1, 1}).constant); // f = x1
        CHECK_FALSE(deutsch_jozsa({0, 1, 1, 0, 1, 0, 0, 1}).constant); // 3-way parity
    }

    TEST_CASE("formula is the exact ANF") {
        DJResult r = deutsch_jozsa({0, 0, 0, 1}); // AND
        CHECK(r.formula == parse_formula("x0x1"));
        CHECK(r.gate_count == 1);
    }

    TEST_CASE("table validation") {
        CHECK_THROWS_AS(deutsch_jozsa({0, 1, 1}), ValidationError);  // not a power of two
        CHECK_THROWS_AS(deutsch_jozsa({0}), ValidationError);        // no variables
        CHECK_THROWS_AS(deutsch_jozsa({}), ValidationError);
    }
}

TEST_SUITE("bernstein-vazirani") {
    TEST_CASE("recovers every secret at n=6") {
        for (uint64_t s = 0; s < 64; ++s) {
            CHECK(bernstein_vazirani(bv_oracle(6, s), 6) == s);
        }
    }

    TEST_CASE("rejects a non-linear oracle") {
        Circuit c = oracle_from_function(2, 1, {0, 0, 0, 1}); // AND has degree 2
        CHECK_THROWS_AS(bernstein_vazirani(c, 2), PromiseViolation);
        Circuit k = oracle_from_function(2, 1, {1, 0, 1, 0}); // affine, not linear
        CHECK_THROWS_AS(bernstein_vazirani(k, 2), PromiseViolation);
    }
}

TEST_SUITE("grover") {
    TEST_CASE("round trip for every u at small n") {
        for (uint32_t n : {2u, 3u, 6u}) {
            for (uint64_t u = 0; u < (uint64_t{1} << n); ++u) {
                GroverResult r = grover_search(n, grover_oracle(n, u));
                CHECK(r.value() == u);
            }
        }
    }

    TEST_CASE("formula matches the oracle function") {
        GroverResult r = grover_search(2, grover_oracle(2, uint64_t{2}));
        // marks exactly x = 2: f = (1+x0)x1
        CHECK(r.formula == parse_formula("x1 + x0x1"));
        CHECK(r.marked_indices == std::vector<uint32_t>{1});
    }

    TEST_CASE("huge n stays cheap for the all-ones element") {
        uint32_t n = 1000;
        std::vector<uint8_t> u(n, 1);
        GroverResult r = grover_search(n, grover_oracle(n, u));
        CHECK(r.marked_indices.size() == n);
        CHECK(r.formula.term_count() == 1);
    }

    TEST_CASE("empty oracle violates the promise") {
        Circuit c;
        c.width = 3;
        c.input = {0, 2};
        c.output = {2, 1};
        CHECK_THROWS_AS(grover_search(2, c), PromiseViolation);
    }
}

TEST_SUITE("simon") {
    TEST_CASE("table construction folds by the mask") {
        auto t = simon_table(3, 5);
        REQUIRE(t.size() == 8);
        for (uint64_t x = 0; x < 8; ++x) {
            CHECK(t[x] == t[x ^ 5]);          // constant on cosets
            CHECK(t[x] == std::min(x, x ^ 5)); // canonical representative
        }
    }

    TEST_CASE("recovers the mask") {
        for (uint32_t n : {2u, 3u, 4u}) {
            for (uint64_t a = 1; a < (uint64_t{1} << n); ++a) {
                Circuit c = oracle_from_function(n, n, simon_table(n, a));
                SimonResult r = simon(c, n);
                CHECK(r.mask == a);
            }
        }
    }

    TEST_CASE("equations are linear constraints") {
        Circuit c = oracle_from_function(3, 3, simon_table(3, 5));
        SimonResult r = simon(c, 3);
        CHECK(r.mask == 5);
        for (const Equation& e : r.equations) {
            CHECK(e.lhs.degree() <= 1);
        }
    }

    TEST_CASE("one-to-one oracle violates the promise") {
        std::vector<uint64_t> identity{0, 1, 2, 3};
        Circuit c = oracle_from_function(2, 2, identity);
        CHECK_THROWS_AS(simon(c, 2), PromiseViolation);
    }
}

TEST_SUITE("period finding") {
    TEST_CASE("periods modulo fifteen match the multiplicative orders") {
        // ord_15: 2,7,8,13 -> 4; 4,11,14 -> 2
        for (uint64_t a : {2ull, 7ull, 8ull, 13ull}) {
            PeriodResult r = shor_period(a, 15);
            CHECK(r.period == 4);
            CHECK(r.solved_by == PeriodMethod::equation_structure);
        }
        for (uint64_t a : {4ull, 11ull, 14ull}) {
            PeriodResult r = shor_period(a, 15);
            CHECK(r.period == 2);
            CHECK(r.solved_by == PeriodMethod::equation_structure);
        }
    }

    TEST_CASE("non power-of-two period falls back to enumeration") {
        PeriodResult r = shor_period(4, 21);
        CHECK(r.period == 3);
        CHECK(r.solved_by == PeriodMethod::brute_force);
        CHECK(to_string(r.solved_by) == std::string("brute-force"));
    }

    TEST_CASE("order one base") {
        PeriodResult r = shor_period(1, 15);
        CHECK(r.period == 1);
    }

    TEST_CASE("periods are honest: a^r = 1 and no smaller power is") {
        for (uint64_t N : {15ull, 21ull}) {
            for (uint64_t a = 2; a < N; ++a) {
                if (std::gcd(a, N) != 1) continue;
                uint64_t r = shor_period(a, N).period;
                CHECK(powmod(a, r, N) == 1);
                for (uint64_t k = 1; k < r; ++k) CHECK(powmod(a, k, N) != 1);
            }
        }
    }

    TEST_CASE("rejects non-coprime base") {
        CHECK_THROWS_AS(shor_period(3, 15), ValidationError);
    }
}

TEST_SUITE("factoring") {
    TEST_CASE("fifteen factors with a good base") {
        FactorResult r = factor(15, 7);
        REQUIRE(r.ok);
        CHECK(r.p * r.q == 15);
        CHECK(r.period.period == 4);
        FactorResult r2 = factor(15, 2);
        REQUIRE(r2.ok);
        CHECK(r2.p * r2.q == 15);
    }

    TEST_CASE("retry cases are reported, not failed") {
        // a = 14: period 2 but 14 = -1 mod 15, so the square root is trivial
        FactorResult r = factor(15, 14);
        CHECK_FALSE(r.ok);
        CHECK(r.period.period == 2);
        // a = 4 mod 21: period 3 is odd
        FactorResult odd = factor(21, 4);
        CHECK_FALSE(odd.ok);
        CHECK(odd.period.period == 3);
    }

    TEST_CASE("twenty-one factors with base 2") {
        FactorResult r = factor(21, 2); // ord 6, 2^3 = 8, gcd(7,21)=7, gcd(9,21)=3
        REQUIRE(r.ok);
        CHECK(r.p * r.q == 21);
    }

    TEST_CASE("input validation") {
        CHECK_THROWS_AS(factor(15, 5), ValidationError);  // gcd != 1
        CHECK_THROWS_AS(factor(16, 3), ValidationError);  // even
        CHECK_THROWS_AS(factor(15, 1), ValidationError);  // a too small
        CHECK_THROWS_AS(factor(15, 15), ValidationError); // a too large
    }
}
