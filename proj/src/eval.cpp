#include "retro/eval.hpp"

#include "retro/error.hpp"

#include <utility>

namespace retro {

void apply_gate(SymState& state, const Gate& gate) {
    Formula product = Formula::one();
    for (const Control& c : gate.controls) {
        const Formula& w = state.wires[c.wire];
        if (c.polarity == Polarity::positive) {
            if (w.is_zero()) return; // factor 0: gate never fires
            if (w.is_one()) continue;
            product = product.is_one() ? w : (product & w);
        } else {
            if (w.is_one()) return;
            if (w.is_zero()) continue;
            Formula factor = ~w;
            product = product.is_one() ? std::move(factor) : (product & factor);
        }
    }
    state.wires[gate.target] = state.wires[gate.target] ^ product;
}

uint64_t run(const Circuit& c, SymState& state, Direction direction) {
    if (state.width() != c.width) {
        throw ValidationError("state width " + std::to_string(state.width()) +
                              " does not match circuit width " + std::to_string(c.width));
    }
    uint64_t applied = 0;
    if (direction == Direction::forward) {
        for (const Gate& g : c.gates) {
            apply_gate(state, g);
            ++applied;
        }
    } else {
        for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
            apply_gate(state, *it);
            ++applied;
        }
    }
    return applied;
}

std::string Equation::to_string() const {
    return lhs.to_string() + " = " + (rhs ? "1" : "0");
}

Equation parse_equation(std::string_view text) {
    size_t eq = text.rfind('=');
    if (eq == std::string_view::npos) {
        throw ParseError("equation is missing '=': \"" + std::string(text.substr(0, 80)) + "\"");
    }
    std::string_view rhs_text = text.substr(eq + 1);
    size_t b = rhs_text.find_first_not_of(" \t");
    size_t e = rhs_text.find_last_not_of(" \t");
    if (b == std::string_view::npos || rhs_text.substr(b, e - b + 1).size() != 1 ||
        (rhs_text[b] != '0' && rhs_text[b] != '1')) {
        throw ParseError("equation right-hand side must be 0 or 1");
    }
    Equation out;
    out.lhs = parse_formula(text.substr(0, eq));
    out.rhs = rhs_text[b] == '1';
    return out;
}

std::vector<Equation> dedup_equations(const std::vector<Equation>& eqs) {
    std::vector<Equation> out;
    for (const Equation& e : eqs) {
        bool seen = false;
        for (const Equation& have : out) {
            if (have == e) {
                seen = true;
                break;
            }
        }
        if (!seen) out.push_back(e);
    }
    return out;
}

std::vector<Equation> reconcile(const SymState& state, Span span,
                                const std::vector<uint8_t>& expected) {
    if (expected.size() != span.count) {
        throw ValidationError("expected " + std::to_string(span.count) + " bits, got " +
                              std::to_string(expected.size()));
    }
    if (span.count > 0 && span.hi() > state.width()) {
        throw ValidationError("span exceeds state width");
    }
    std::vector<Equation> eqs;
    for (uint32_t i = 0; i < span.count; ++i) {
        const Formula& f = state.wires[span.lo + i];
        bool want = expected[i] != 0;
        if (f == Formula::constant(want)) continue; // tautology: drop
        eqs.push_back(Equation{f, want});
    }
    return eqs;
}

RetroResult retrodictive_equations(const Circuit& c, const std::vector<uint8_t>& observed,
                                   const std::vector<uint8_t>& initial) {
    c.validate();
    if (observed.size() != c.output.count) {
        throw ValidationError("observed bits (" + std::to_string(observed.size()) +
                              ") must match the output register size (" +
                              std::to_string(c.output.count) + ")");
    }
    if (initial.size() != c.output.count + c.ancilla.count) {
        throw ValidationError("initial bits (" + std::to_string(initial.size()) +
                              ") must cover output plus ancilla (" +
                              std::to_string(c.output.count + c.ancilla.count) + ")");
    }
    SymState s = SymState::zeros(c.width);
    for (uint32_t j = 0; j < c.input.count; ++j) {
        s.wires[c.input.lo + j] = Formula::var(j);
    }
    for (uint32_t j = 0; j < c.output.count; ++j) {
        s.wires[c.output.lo + j] = Formula::constant(observed[j] != 0);
    }
    // Ancillas are assumed returned to their initial bits at the end of the
    // forward run, so the backward run starts them there too.
    for (uint32_t j = 0; j < c.ancilla.count; ++j) {
        s.wires[c.ancilla.lo + j] = Formula::constant(initial[c.output.count + j] != 0);
    }
    RetroResult r;
    r.gates_applied = run(c, s, Direction::retrodictive);
    std::vector<uint8_t> out_bits(initial.begin(), initial.begin() + c.output.count);
    std::vector<uint8_t> anc_bits(initial.begin() + c.output.count, initial.end());
    r.equations = reconcile(s, c.output, out_bits);
    std::vector<Equation> anc_eqs = reconcile(s, c.ancilla, anc_bits);
    r.equations.insert(r.equations.end(), anc_eqs.begin(), anc_eqs.end());
    r.state = std::move(s);
    return r;
}

std::vector<uint8_t> bits_of(uint64_t value, uint32_t count) {
    std::vector<uint8_t> bits(count);
    for (uint32_t i = 0; i < count; ++i) bits[i] = (value >> i) & 1;
    if (count < 64 && (value >> count) != 0) {
        throw ValidationError("value " + std::to_string(value) + " does not fit in " +
                              std::to_string(count) + " bits");
    }
    return bits;
}

uint64_t value_of(const std::vector<uint8_t>& bits) {
    if (bits.size() > 64) throw ValidationError("more than 64 bits");
    uint64_t v = 0;
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1) throw ValidationError("bit values must be 0 or 1");
        if (bits[i]) v |= uint64_t{1} << i;
    }
    return v;
}

} // namespace retro
