#pragma once

#include "retro/circuit.hpp"
#include "retro/eval.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace retro {

// Ground-truth executor: applies each gate classically to a full-width bit
// vector (flip target iff every control matches its polarity).
std::vector<uint8_t> simulate_concrete(const Circuit& c, const std::vector<uint8_t>& input);

// Full-width state with the input register loaded from x (little-endian),
// the output register from out_seed, and everything else zero.
std::vector<uint8_t> seeded_input(const Circuit& c, uint64_t x, uint64_t out_seed = 0);

// Forward-runs the circuit on seeded_input and reads the output register as
// an integer.  out_seed = 1 turns a modular-exponentiation circuit into the
// function x -> a^x mod N; out_seed = 0 reads f(x) off an XOR oracle.
uint64_t circuit_function(const Circuit& c, uint64_t x, uint64_t out_seed = 0);

using IntFunction = std::function<uint64_t(uint64_t)>;

// {x in [0, 2^n) : f(x) = y}, ascending.  The unsuffixed kernels run the
// enumeration OpenMP-parallel; the _serial twins are the reference
// implementations the benchmark target compares against.
std::vector<uint64_t> preimage(const IntFunction& f, uint64_t y, uint32_t n_bits);
std::vector<uint64_t> preimage_serial(const IntFunction& f, uint64_t y, uint32_t n_bits);

// True iff for every x < 2^n: (all equations hold at x) <=> f(x) == w.
// Variables the equations do not mention are unconstrained; n_bits <= 24.
bool verify_equations(const std::vector<Equation>& eqs, const IntFunction& f, uint64_t w,
                      uint32_t n_bits);
bool verify_equations_serial(const std::vector<Equation>& eqs, const IntFunction& f, uint64_t w,
                             uint32_t n_bits);

// A uniform-amplitude, phase-free superposition given by the set of basis
// states it contains.  Site i holds a digit of radix dims[i]; basis index
// m encodes digits little-endian: m = sum_i digit_i * prod_{j<i} dims[j].
struct SupportState {
    std::vector<uint64_t> support;
    std::vector<uint32_t> dims;

    void validate() const; // throws ValidationError on malformed states
};

// P = (1/n) sum over sites i and axes mu in {x,y,z} of <Psi|sigma^mu_i|Psi>^2,
// with |Psi> normalized first.  1 for product states, 0 when maximally
// entangled.  Requires all dims == 2.
double purity_qubit(const SupportState& state);

// True iff the support set equals the Cartesian product of its per-site
// digit projections, i.e. the state factorizes site by site.
bool is_product_mixed_radix(const SupportState& state);

} // namespace retro
