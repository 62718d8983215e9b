#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "retro/arith.hpp"
#include "retro/error.hpp"
#include "retro/eval.hpp"
#include "retro/oracle.hpp"

#include <numeric>

using namespace retro;

namespace {

// Runs a circuit on concrete register values laid out from the low wire up:
// the caller lists (value, bit-count) pairs covering the full width.
uint64_t run_registers(const Circuit& c,
                       std::initializer_list<std::pair<uint64_t, uint32_t>> regs,
                       uint32_t out_lo, uint32_t out_bits,
                       std::vector<uint8_t>* final_state = nullptr) {
    std::vector<uint8_t> state;
    for (auto [value, count] : regs) {
        auto bits = bits_of(value, count);
        state.insert(state.end(), bits.begin(), bits.end());
    }
    REQUIRE(state.size() == c.width);
    std::vector<uint8_t> out = simulate_concrete(c, state);
    if (final_state != nullptr) *final_state = out;
    return value_of(std::vector<uint8_t>(out.begin() + out_lo, out.begin() + out_lo + out_bits));
}

} // namespace

TEST_SUITE("modular scalar helpers") {
    TEST_CASE("mulmod survives large operands") {
        CHECK(mulmod(3, 4, 5) == 2);
        uint64_t big = 0xffffffffffffull;
        CHECK(mulmod(big, big, 1000000007ull) ==
              static_cast<uint64_t>((__uint128_t(big) * big) % 1000000007ull));
    }

    TEST_CASE("powmod") {
        CHECK(powmod(7, 0, 15) == 1);
        CHECK(powmod(7, 1, 15) == 7);
        CHECK(powmod(7, 2, 15) == 4);
        CHECK(powmod(7, 3, 15) == 13);
        CHECK(powmod(2, 10, 1000) == 24);
    }

    TEST_CASE("modinv") {
        CHECK(modinv(7, 15) == 13);
        CHECK(modinv(4, 15) == 4);
        CHECK(modinv(1, 2) == 1);
        for (uint64_t a : {2ull, 4ull, 7ull, 8ull, 11ull, 13ull, 14ull}) {
            CHECK(mulmod(a, modinv(a, 15), 15) == 1);
        }
        CHECK_THROWS_AS(modinv(3, 15), ValidationError);
        CHECK_THROWS_AS(modinv(0, 7), ValidationError);
    }
}

TEST_SUITE("plain adder") {
    TEST_CASE("gate count is 8n-2") {
        for (uint32_t n : {1u, 2u, 3u, 5u}) {
            CHECK(adder(n).gate_count() == 8u * n - 2);
        }
    }

    TEST_CASE("adds exhaustively for small widths") {
        for (uint32_t n : {1u, 2u, 3u, 4u}) {
            Circuit c = adder(n);
            c.validate();
            CHECK(c.width == 3 * n + 1);
            for (uint64_t a = 0; a < (uint64_t{1} << n); ++a) {
                for (uint64_t b = 0; b < (uint64_t{1} << n); ++b) {
                    std::vector<uint8_t> fin;
                    uint64_t sum = run_registers(
                        c, {{a, n}, {b, n + 1}, {0, n}}, n, n + 1, &fin);
                    CHECK(sum == a + b);
                    // a preserved, carries restored to zero
                    CHECK(value_of({fin.begin(), fin.begin() + n}) == a);
                    CHECK(value_of({fin.begin() + 2 * n + 1, fin.end()}) == 0);
                }
            }
        }
    }

    TEST_CASE("adder is reversible: subtracting back") {
        uint32_t n = 3;
        Circuit c = adder(n);
        Circuit back = c.reversed();
        for (uint64_t a = 0; a < 8; ++a) {
            for (uint64_t b = 0; b < 8; ++b) {
                uint64_t diff = run_registers(back, {{a, n}, {a + b, n + 1}, {0, n}}, n, n + 1);
                CHECK(diff == b);
            }
        }
    }
}

TEST_SUITE("modular adder") {
    TEST_CASE("matches (a+p) mod N exhaustively") {
        for (uint64_t N : {3ull, 5ull, 7ull, 11ull, 15ull}) {
            uint32_t n = 0;
            while ((uint64_t{1} << n) <= N - 1) ++n;
            Circuit c = modular_adder(n, N);
            c.validate();
            CHECK(c.width == 4 * n + 2);
            for (uint64_t a = 0; a < N; ++a) {
                for (uint64_t p = 0; p < N; ++p) {
                    std::vector<uint8_t> fin;
                    uint64_t got = run_registers(
                        c, {{a, n}, {p, n}, {0, 2 * n + 2}}, n, n, &fin);
                    CHECK(got == (a + p) % N);
                    // inputs preserved, every ancilla restored
                    CHECK(value_of({fin.begin(), fin.begin() + n}) == a);
                    CHECK(value_of({fin.begin() + 2 * n, fin.end()}) == 0);
                }
            }
        }
    }

    TEST_CASE("rejects bad parameters") {
        CHECK_THROWS_AS(modular_adder(2, 5), ValidationError); // N needs 3 bits
        CHECK_THROWS_AS(modular_adder(4, 0), ValidationError);
        CHECK_THROWS_AS(modular_adder(4, 1), ValidationError);
    }
}

TEST_SUITE("controlled modular multiply") {
    TEST_CASE("control off leaves the value register alone") {
        uint32_t n = 4;
        uint64_t N = 15;
        Circuit c = controlled_modmul(n, N, 7);
        c.validate();
        CHECK(c.width == 5 * n + 3);
        for (uint64_t v = 0; v < N; ++v) {
            std::vector<uint8_t> fin;
            uint64_t got = run_registers(c, {{0, 1}, {v, n}, {0, 4 * n + 2}}, 1, n, &fin);
            CHECK(got == v);
            CHECK(value_of({fin.begin() + n + 1, fin.end()}) == 0);
        }
    }

    TEST_CASE("control on multiplies modulo N") {
        for (uint64_t N : {15ull, 21ull}) {
            uint32_t n = 0;
            while ((uint64_t{1} << n) <= N - 1) ++n;
            for (uint64_t k : {2ull, 4ull, 5ull}) {
                if (std::gcd(k, N) != 1) continue;
                Circuit c = controlled_modmul(n, N, k);
                for (uint64_t v = 0; v < N; ++v) {
                    std::vector<uint8_t> fin;
                    uint64_t got =
                        run_registers(c, {{1, 1}, {v, n}, {0, 4 * n + 2}}, 1, n, &fin);
                    CHECK(got == mulmod(k, v, N));
                    CHECK(value_of({fin.begin() + n + 1, fin.end()}) == 0);
                }
            }
        }
    }

    TEST_CASE("rejects non-coprime multiplier") {
        CHECK_THROWS_AS(controlled_modmul(4, 15, 3), ValidationError);
        CHECK_THROWS_AS(controlled_modmul(4, 15, 0), ValidationError);
    }
}

TEST_SUITE("modular exponentiation circuit") {
    TEST_CASE("spec defaults") {
        ModExpSpec s = make_modexp_spec(7, 15);
        CHECK(s.exp_bits == 8); // ceil(log2(15^2)) = 8
        CHECK(s.val_bits == 4);
        CHECK(make_modexp_spec(4, 21).exp_bits == 9);
        CHECK(make_modexp_spec(4, 21).val_bits == 5);
        CHECK(make_modexp_spec(4, 15, 9).exp_bits == 9);
        CHECK_THROWS_AS(make_modexp_spec(3, 15), ValidationError);  // gcd != 1
        CHECK_THROWS_AS(make_modexp_spec(7, 1), ValidationError);   // modulus too small
        CHECK_THROWS_AS(make_modexp_spec(7, 0), ValidationError);
    }

    TEST_CASE("computes a^x for every exponent") {
        for (auto [a, N] : {std::pair<uint64_t, uint64_t>{7, 15}, {2, 15}, {4, 21}}) {
            uint32_t e = 5;
            ModExpSpec spec = make_modexp_spec(a, N, e);
            Circuit c = modexp_circuit(spec);
            c.validate();
            CHECK(c.width == e + 5 * spec.val_bits + 2);
            CHECK(c.input == Span{0, e});
            CHECK(c.output == Span{e, spec.val_bits});
            for (uint64_t x = 0; x < (uint64_t{1} << e); ++x) {
                // circuit_function seeds the output register with the given 1
                CHECK(circuit_function(c, x, 1) == powmod(a, x, N));
            }
        }
    }

    TEST_CASE("ancillas and exponent are always restored") {
        ModExpSpec spec = make_modexp_spec(7, 15, 4);
        Circuit c = modexp_circuit(spec);
        for (uint64_t x = 0; x < 16; ++x) {
            std::vector<uint8_t> state(c.width, 0);
            auto xb = bits_of(x, 4);
            std::copy(xb.begin(), xb.end(), state.begin());
            state[c.output.lo] = 1; // seed the value register with 1
            std::vector<uint8_t> fin = simulate_concrete(c, state);
            CHECK(value_of({fin.begin(), fin.begin() + 4}) == x);
            CHECK(value_of({fin.begin() + c.ancilla.lo, fin.end()}) == 0);
        }
    }

    TEST_CASE("only arities 0 through 2 appear") {
        Circuit c = modexp_circuit(make_modexp_spec(7, 15, 3));
        for (auto& [arity, count] : histogram(c)) {
            CHECK(arity <= 2);
        }
    }
}
