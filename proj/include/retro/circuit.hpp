#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace retro {

enum class Polarity : uint8_t {
    positive, // control fires on 1
    negative, // control fires on 0
};

struct Control {
    uint32_t wire = 0;
    Polarity polarity = Polarity::positive;

    bool operator==(const Control&) const = default;
};

// A generalized Toffoli gate: flips `target` when every control matches its
// polarity.  Zero controls is a plain NOT.  Every such gate is self-inverse.
struct Gate {
    std::vector<Control> controls;
    uint32_t target = 0;

    uint32_t arity() const { return static_cast<uint32_t>(controls.size()); }
    bool operator==(const Gate&) const = default;
};

// A contiguous wire range [lo, lo+count).  count == 0 means an empty span.
struct Span {
    uint32_t lo = 0;
    uint32_t count = 0;

    uint32_t hi() const { return lo + count; } // one past the end
    bool contains(uint32_t w) const { return w >= lo && w < hi(); }
    bool operator==(const Span&) const = default;
};

struct Circuit {
    uint32_t width = 0;
    Span input;
    Span output;
    Span ancilla;
    std::vector<Gate> gates;

    uint64_t gate_count() const { return gates.size(); }
    // Gate list in reverse order; same registers.  Runs the inverse map.
    Circuit reversed() const;
    // Throws ValidationError unless every wire reference is in range,
    // no gate lists a wire twice, and the spans fit the width.
    void validate() const;
};

// Counts gates by control arity (number of controls -> how many gates).
using GateHistogram = std::map<uint32_t, uint64_t>;
GateHistogram histogram(const Circuit& c);

// Builds the reversible wrapper of an arbitrary boolean function:
// |x, y> -> |x, f(x) XOR y> over n_in input wires followed by n_out output
// wires.  table[x] holds the n_out-bit value f(x).  Each output bit gets one
// positive-control gate per monomial of its interpolated formula, so the
// construction is canonical (no two different functions share a circuit).
Circuit oracle_from_function(uint32_t n_in, uint32_t n_out, const std::vector<uint64_t>& table);

// Single-gate marker oracle: flips the output wire exactly on input u.
// Control i is positive where bit i of u is 1 and negative where it is 0.
Circuit grover_oracle(uint32_t n, uint64_t u);
// Same, with u given as little-endian bits so n may exceed 64.
Circuit grover_oracle(uint32_t n, const std::vector<uint8_t>& u_bits);

// Parity oracle f(x) = s.x mod 2: one CX per set bit of s.
Circuit bv_oracle(uint32_t n, uint64_t s);

// ---- text format -----------------------------------------------------------
//
//   # comment
//   width 6
//   registers input 0..2 output 3..5 ancilla none
//   gate [+0 -3] 5
//   gate [] 2
//
// Controls are +w (positive) or -w (negative); the bracket list may be
// empty.  Empty spans read and print as "none".
std::string print_circuit(const Circuit& c);
Circuit parse_circuit(std::string_view text);
Circuit read_circuit_file(const std::string& path);
void write_circuit_file(const Circuit& c, const std::string& path);

} // namespace retro
