#pragma once

#include "retro/circuit.hpp"

#include <cstdint>

namespace retro {

// Overflow-safe (a * b) % mod.
uint64_t mulmod(uint64_t a, uint64_t b, uint64_t mod);
// (base ^ exp) % mod by square-and-multiply.
uint64_t powmod(uint64_t base, uint64_t exp, uint64_t mod);
// Multiplicative inverse of a modulo n; errors when gcd(a, n) != 1.
uint64_t modinv(uint64_t a, uint64_t n);

// Ripple-carry adder: |a, b, 0> -> |a, a+b, 0>.
// Layout: a = wires 0..n-1 (input), b = wires n..2n (output; wire 2n is the
// carry-out, so b holds an (n+1)-bit sum), carries = wires 2n+1..3n
// (ancilla, restored to 0).  8n-2 gates.
Circuit adder(uint32_t n_bits);

// Modular adder: |a, p, 0> -> |a, (a+p) mod N, 0> for a, p < N.
// Layout: a = wires 0..n-1 (input), p = wires n..2n-1 (output) with its
// overflow wire at 2n, then carries, a scratch flag, and a register that
// temporarily holds N (all ancilla, restored).  Width 4n+2.
Circuit modular_adder(uint32_t n_bits, uint64_t modulus);

// Controlled in-place multiply: |c, v, 0> -> |c, c ? k*v mod N : v, 0>
// for v < N and gcd(k, N) = 1.  Layout: control = wire 0, v = wires 1..n,
// everything after is ancilla (product accumulator, carries, flag, modulus
// scratch, multiple scratch).  Width 5n+3.
Circuit controlled_modmul(uint32_t n_bits, uint64_t modulus, uint64_t multiplier);

struct ModExpSpec {
    uint64_t base = 0;    // a
    uint64_t modulus = 0; // N
    uint32_t exp_bits = 0;
    uint32_t val_bits = 0;
};

// exp_bits == 0 picks the classic default ceil(log2(N^2)).
ModExpSpec make_modexp_spec(uint64_t base, uint64_t modulus, uint32_t exp_bits = 0);

// Modular exponentiation |x, 1, 0> -> |x, a^x mod N, 0>: a cascade of
// controlled multiplies by a^(2^i) mod N, one per exponent wire.  The value
// register must be seeded with 1 by the caller; the circuit never sets it.
// Layout: exponent = wires 0..e-1 (input), value = e..e+n-1 (output),
// ancilla = the rest.  Width e + 5n + 2.
Circuit modexp_circuit(const ModExpSpec& spec);

} // namespace retro
