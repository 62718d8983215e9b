#pragma once

#include "retro/anf.hpp"
#include "retro/circuit.hpp"
#include "retro/eval.hpp"

#include <cstdint>
#include <vector>

namespace retro {

struct DJResult {
    bool constant = false; // else balanced (under the promise)
    Formula formula;       // the symbolic output-wire formula
    uint64_t gate_count = 0;
};

// Classifies a promised constant-or-balanced truth table (2^n entries of
// 0/1) by building its XOR oracle and reading the symbolic output formula:
// constant iff the formula is 0 or 1.
DJResult deutsch_jozsa(const std::vector<uint8_t>& table);

// Recovers the secret s of a parity oracle f(x) = s.x mod 2: s has a 1
// exactly at the variable indices of the (degree <= 1, constant-free)
// output formula.  A nonlinear or affine formula violates the promise.
uint64_t bernstein_vazirani(const Circuit& oracle, uint32_t n);

struct GroverResult {
    std::vector<uint32_t> marked_indices; // set bit positions of u
    Formula formula;                      // full symbolic output formula
    uint64_t gate_count = 0;

    // u as an integer; errors when an index needs more than 64 bits.
    uint64_t value() const;
};

// Reads the marked element off the oracle's output formula: u = sum of 2^i
// over the indices of the minimum-degree monomial (the constant monomial 1
// means u = 0).  Errors if the formula is zero (nothing marked).
GroverResult grover_search(uint32_t n, const Circuit& oracle);

// Builds the canonical 2-to-1 table f(x) = min(x, x XOR a) used by the
// Simon driver tests; a = 0 yields the identity (a promise violation).
std::vector<uint64_t> simon_table(uint32_t n, uint64_t a);

struct SimonResult {
    uint64_t mask = 0; // the recovered a
    std::vector<Equation> equations;
    uint64_t gate_count = 0;
};

// Recovers the XOR mask of a promised 2-to-1 oracle: runs retrodictively
// from w = f(0), enumerates the satisfying assignments of the equations,
// and XORs the (exactly two) solutions.  n is capped at 16.
SimonResult simon(const Circuit& oracle, uint32_t n);

enum class PeriodMethod : uint8_t {
    equation_structure,
    brute_force,
};

const char* to_string(PeriodMethod m);

struct PeriodResult {
    uint64_t period = 0;
    PeriodMethod solved_by = PeriodMethod::brute_force;
    std::vector<Equation> equations;
    uint64_t gate_count = 0;
    uint32_t exp_bits = 0;
};

// Order finding from retrodictive equations of the modular-exponentiation
// circuit with observed value 1.  When the equations just pin the k lowest
// exponent bits to zero (checked structurally), the period is 2^k;
// otherwise the satisfying assignments {0, r, 2r, ...} are enumerated and
// the smallest nonzero one is returned.  exp_bits == 0 uses the default
// register size ceil(log2(N^2)).
PeriodResult shor_period(uint64_t a, uint64_t N, uint32_t exp_bits = 0);

struct FactorResult {
    bool ok = false;   // false = retry with another base
    uint64_t p = 0;
    uint64_t q = 0;
    PeriodResult period;
};

// Classical post-processing: succeeds when the period is even and
// a^(r/2) is not -1 mod N, yielding gcd(a^(r/2) +- 1, N).
FactorResult factor(uint64_t N, uint64_t a);

} // namespace retro
