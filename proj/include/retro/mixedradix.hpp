#pragma once

#include "retro/circuit.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace retro {

// The three qutrit gates of the base-3 model.  All act modulo 3:
//   X:   target += 1
//   SUM: target += control (control unchanged)
//   CX:  target += 1, but only when the control reads 2
enum class QutritKind : uint8_t { x, sum, cx };

struct QutritGate {
    QutritKind kind = QutritKind::x;
    uint32_t control = 0; // unused for X
    uint32_t target = 0;

    bool operator==(const QutritGate&) const = default;
};

struct QutritCircuit {
    uint32_t width = 0;
    Span input;
    Span output;
    Span ancilla;
    std::vector<QutritGate> gates;

    void validate() const;
};

// Concrete forward evaluation; trits holds one base-3 digit per wire.
std::vector<uint8_t> eval_qutrit(const QutritCircuit& c, const std::vector<uint8_t>& trits);

struct QutritPeriod {
    uint64_t period = 0;
    std::vector<uint64_t> solutions; // input values whose output matches
};

// Finds the period of the function computed into the output register:
// enumerates every input-register value (non-input wires start at 0),
// keeps those whose output trits match `observed`, and requires the
// solution set to be exactly {0, r, 2r, ...}.  Input register capped at
// 8 trits.
QutritPeriod qutrit_period(const QutritCircuit& c, const std::vector<uint8_t>& observed);

// Little-endian base-3 digit helpers.
std::vector<uint8_t> trits_of(uint64_t value, uint32_t count);
uint64_t value_of_trits(const std::vector<uint8_t>& trits);

// Text format mirrors the binary circuits:
//   qwidth 5
//   qregisters input 0..1 output 2..4 ancilla none
//   qgate X 2
//   qgate SUM 0 3
//   qgate CX 0 4
std::string print_qutrit(const QutritCircuit& c);
QutritCircuit parse_qutrit(std::string_view text);
QutritCircuit read_qutrit_file(const std::string& path);

} // namespace retro
