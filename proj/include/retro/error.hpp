#pragma once

#include <stdexcept>
#include <string>

namespace retro {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input (formulas, circuit files, equations).
// Carries a human-readable position in the message.
struct ParseError : Error {
    using Error::Error;
};

// Structurally invalid values or calls: bad gate wiring, register layouts,
// out-of-range arguments, assignments that miss variables, and so on.
struct ValidationError : Error {
    using Error::Error;
};

// An algorithm's input promise does not hold (e.g. a Bernstein-Vazirani
// oracle whose formula is nonlinear, or a Simon function that is not 2-to-1).
struct PromiseViolation : Error {
    using Error::Error;
};

} // namespace retro
