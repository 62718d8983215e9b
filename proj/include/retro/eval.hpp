#pragma once

#include "retro/anf.hpp"
#include "retro/circuit.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace retro {

// One formula per wire.  Concrete runs are the special case where every
// formula is a constant.
struct SymState {
    std::vector<Formula> wires;

    static SymState zeros(uint32_t width) { return SymState{std::vector<Formula>(width)}; }
    uint32_t width() const { return static_cast<uint32_t>(wires.size()); }
};

enum class Direction : uint8_t {
    forward,
    retrodictive, // gates applied in reverse order
};

// target ^= product of control factors (wire formula for +, its negation
// for -).  A constant-zero factor short-circuits the whole gate.
void apply_gate(SymState& state, const Gate& gate);

// Applies every gate exactly once in the requested order; returns the
// number of gate applications (== c.gates.size()).
uint64_t run(const Circuit& c, SymState& state, Direction direction);

// A requirement "lhs = rhs" produced by comparing a wire's symbolic formula
// against a known bit.  Stored raw, exactly as read off the wire.
struct Equation {
    Formula lhs;
    bool rhs = false;

    // lhs XOR rhs, i.e. the formula that must vanish for the equation to
    // hold.  Two equations constrain identically iff their residuals match.
    Formula residual() const { return rhs ? ~lhs : lhs; }
    std::string to_string() const;

    bool operator==(const Equation&) const = default;
};

// Renders like "1 + x0 = 1"; parse accepts the same shape.
Equation parse_equation(std::string_view text);

// Drops repeated equations, keeping first occurrences in order.  The
// engine reports one equation per reconciled wire, so the same constraint
// can appear several times; printed output uses the deduplicated list.
std::vector<Equation> dedup_equations(const std::vector<Equation>& eqs);

// Compares each wire of `span` against the expected bits (expected[i] goes
// with wire span.lo+i).  Wires whose formula already equals the expected
// constant contribute nothing; every other wire yields one equation, in
// ascending wire order.  Contradictions like "1 = 0" are kept.
std::vector<Equation> reconcile(const SymState& state, Span span,
                                const std::vector<uint8_t>& expected);

struct RetroResult {
    std::vector<Equation> equations;
    uint64_t gates_applied = 0;
    SymState state; // full symbolic state after the backward run
};

// Symbolic backward run: the input register carries fresh variables (wire
// input.lo+j gets x_j), the output register carries the observed bits, and
// ancillas carry their assumed-restored initial bits.  After running the
// gates in reverse, output and ancilla wires are reconciled against
// `initial`, whose layout is the output bits followed by the ancilla bits.
RetroResult retrodictive_equations(const Circuit& c, const std::vector<uint8_t>& observed,
                                   const std::vector<uint8_t>& initial);

// Little-endian bit helpers for register-sized values.
std::vector<uint8_t> bits_of(uint64_t value, uint32_t count);
uint64_t value_of(const std::vector<uint8_t>& bits);

} // namespace retro
