#include "retro/arith.hpp"

#include "retro/error.hpp"

#include <bit>
#include <cassert>
#include <numeric>
#include <utility>

namespace retro {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t mod) {
    if (mod == 0) throw ValidationError("mulmod by zero");
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % mod);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t mod) {
    if (mod == 0) throw ValidationError("powmod by zero");
    uint64_t r = 1 % mod;
    uint64_t b = base % mod;
    while (exp != 0) {
        if (exp & 1) r = mulmod(r, b, mod);
        b = mulmod(b, b, mod);
        exp >>= 1;
    }
    return r;
}

uint64_t modinv(uint64_t a, uint64_t n) {
    if (n < 2) throw ValidationError("modinv needs modulus >= 2");
    int64_t t = 0, new_t = 1;
    int64_t r = static_cast<int64_t>(n), new_r = static_cast<int64_t>(a % n);
    while (new_r != 0) {
        int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) {
        throw ValidationError(std::to_string(a) + " has no inverse modulo " + std::to_string(n));
    }
    return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(n) : t);
}

namespace {

Gate x_gate(uint32_t target) { return Gate{{}, target}; }

Gate cx(uint32_t control, uint32_t target, Polarity pol = Polarity::positive) {
    return Gate{{Control{control, pol}}, target};
}

Gate ccx(uint32_t c1, uint32_t c2, uint32_t target) {
    return Gate{{Control{c1, Polarity::positive}, Control{c2, Polarity::positive}}, target};
}

std::vector<uint32_t> wire_range(uint32_t lo, uint32_t count) {
    std::vector<uint32_t> w(count);
    for (uint32_t i = 0; i < count; ++i) w[i] = lo + i;
    return w;
}

// |a, b, 0> -> |a, a+b, 0> over wire groups: a (n wires), b (n+1 wires,
// top wire is the carry-out), carry scratch (n wires, restored).
void emit_adder(std::vector<Gate>& g, const std::vector<uint32_t>& a,
                const std::vector<uint32_t>& b, const std::vector<uint32_t>& carry) {
    const size_t n = a.size();
    assert(n >= 1 && b.size() == n + 1 && carry.size() == n);
    auto fwd_carry = [&](uint32_t ci, uint32_t ai, uint32_t bi, uint32_t nxt) {
        g.push_back(ccx(ai, bi, nxt));
        g.push_back(cx(ai, bi));
        g.push_back(ccx(ci, bi, nxt));
    };
    auto rev_carry = [&](uint32_t ci, uint32_t ai, uint32_t bi, uint32_t nxt) {
        g.push_back(ccx(ci, bi, nxt));
        g.push_back(cx(ai, bi));
        g.push_back(ccx(ai, bi, nxt));
    };
    auto sum = [&](uint32_t ci, uint32_t ai, uint32_t bi) {
        g.push_back(cx(ai, bi));
        g.push_back(cx(ci, bi));
    };
    for (size_t i = 0; i < n; ++i) {
        fwd_carry(carry[i], a[i], b[i], i + 1 < n ? carry[i + 1] : b[n]);
    }
    g.push_back(cx(a[n - 1], b[n - 1]));
    sum(carry[n - 1], a[n - 1], b[n - 1]);
    for (size_t i = n - 1; i-- > 0;) {
        rev_carry(carry[i], a[i], b[i], carry[i + 1]);
        sum(carry[i], a[i], b[i]);
    }
}

void append_reversed(std::vector<Gate>& g, const std::vector<Gate>& block) {
    g.insert(g.end(), block.rbegin(), block.rend());
}

// p := (p + value-of-kr) mod N, where p spans n+1 wires (top = overflow,
// in and out 0), kr spans n wires and holds a value < N, and N < 2^n.
// Scratch: carry (n wires), flag wire t, modulus register nr (n wires).
void emit_modadd(std::vector<Gate>& g, const std::vector<uint32_t>& kr,
                 const std::vector<uint32_t>& p, const std::vector<uint32_t>& carry,
                 uint32_t t, const std::vector<uint32_t>& nr, uint64_t modulus) {
    const size_t n = kr.size();
    assert(p.size() == n + 1 && carry.size() == n && nr.size() == n);
    const uint32_t overflow = p.back();

    std::vector<Gate> add_kr;
    emit_adder(add_kr, kr, p, carry);
    std::vector<Gate> add_nr;
    emit_adder(add_nr, nr, p, carry);

    // p += kr
    g.insert(g.end(), add_kr.begin(), add_kr.end());
    // p -= N: load N, subtract; overflow now records p + kr < N
    for (size_t i = 0; i < n; ++i) {
        if ((modulus >> i) & 1) g.push_back(x_gate(nr[i]));
    }
    append_reversed(g, add_nr);
    g.push_back(cx(overflow, t));
    // nr := t ? N : 0, then add it back, then clear nr
    for (size_t i = 0; i < n; ++i) {
        if ((modulus >> i) & 1) g.push_back(cx(t, nr[i], Polarity::negative));
    }
    g.insert(g.end(), add_nr.begin(), add_nr.end());
    for (size_t i = 0; i < n; ++i) {
        if ((modulus >> i) & 1) g.push_back(cx(t, nr[i]));
    }
    // Uncompute t: subtracting kr underflows exactly when the reduction
    // wrapped, so the overflow wire now reads NOT t.
    append_reversed(g, add_kr);
    g.push_back(cx(overflow, t, Polarity::negative));
    g.insert(g.end(), add_kr.begin(), add_kr.end());
}

struct ModMulWires {
    uint32_t ctrl;
    std::vector<uint32_t> v;     // n
    std::vector<uint32_t> p;     // n+1
    std::vector<uint32_t> carry; // n
    uint32_t t;
    std::vector<uint32_t> nr;    // n
    std::vector<uint32_t> kr;    // n
};

// |c, v, 0> -> |c, c ? k*v mod N : v, 0>.
void emit_ctrl_modmul(std::vector<Gate>& g, const ModMulWires& w, uint64_t modulus,
                      uint64_t multiplier) {
    const size_t n = w.v.size();
    auto maccum = [&](std::vector<Gate>& out, uint64_t k) {
        // out: p += (c AND v) * k mod N, accumulated via shifted multiples.
        uint64_t shifted = k % modulus;
        for (size_t i = 0; i < n; ++i) {
            std::vector<Gate> load;
            for (size_t j = 0; j < n; ++j) {
                if ((shifted >> j) & 1) load.push_back(ccx(w.ctrl, w.v[i], w.kr[j]));
            }
            out.insert(out.end(), load.begin(), load.end());
            emit_modadd(out, w.kr, w.p, w.carry, w.t, w.nr, modulus);
            out.insert(out.end(), load.begin(), load.end());
            shifted = mulmod(shifted, 2, modulus);
        }
    };
    // p := c ? k*v mod N : 0
    maccum(g, multiplier % modulus);
    // controlled swap of v and the low half of p
    for (size_t i = 0; i < n; ++i) {
        g.push_back(cx(w.p[i], w.v[i]));
        g.push_back(ccx(w.ctrl, w.v[i], w.p[i]));
        g.push_back(cx(w.p[i], w.v[i]));
    }
    // p -= c ? kinv * v' mod N : 0, clearing the accumulator
    std::vector<Gate> unaccum;
    maccum(unaccum, modinv(multiplier, modulus));
    append_reversed(g, unaccum);
}

uint32_t checked_val_bits(uint64_t modulus) {
    if (modulus < 2) throw ValidationError("modulus must be at least 2");
    uint32_t n = std::bit_width(modulus);
    if (n > 31) throw ValidationError("modulus too large for circuit synthesis");
    return n;
}

} // namespace

Circuit adder(uint32_t n_bits) {
    if (n_bits < 1) throw ValidationError("adder needs at least 1 bit");
    Circuit c;
    c.width = 3 * n_bits + 1;
    c.input = Span{0, n_bits};
    c.output = Span{n_bits, n_bits + 1};
    c.ancilla = Span{2 * n_bits + 1, n_bits};
    emit_adder(c.gates, wire_range(0, n_bits), wire_range(n_bits, n_bits + 1),
               wire_range(2 * n_bits + 1, n_bits));
    c.validate();
    return c;
}

Circuit modular_adder(uint32_t n_bits, uint64_t modulus) {
    uint32_t need = checked_val_bits(modulus);
    if (n_bits < need) {
        throw ValidationError("modulus needs " + std::to_string(need) + " bits, register has " +
                              std::to_string(n_bits));
    }
    const uint32_t n = n_bits;
    Circuit c;
    c.width = 4 * n + 2;
    c.input = Span{0, n};
    c.output = Span{n, n};
    c.ancilla = Span{2 * n, 2 * n + 2}; // overflow, carries, flag, modulus scratch
    emit_modadd(c.gates, wire_range(0, n), wire_range(n, n + 1), wire_range(2 * n + 1, n),
                3 * n + 1, wire_range(3 * n + 2, n), modulus);
    c.validate();
    return c;
}

Circuit controlled_modmul(uint32_t n_bits, uint64_t modulus, uint64_t multiplier) {
    uint32_t need = checked_val_bits(modulus);
    if (n_bits < need) {
        throw ValidationError("modulus needs " + std::to_string(need) + " bits, register has " +
                              std::to_string(n_bits));
    }
    modinv(multiplier, modulus); // reject non-coprime multipliers up front
    const uint32_t n = n_bits;
    Circuit c;
    c.width = 5 * n + 3;
    c.input = Span{0, n + 1};
    c.output = Span{1, n};
    c.ancilla = Span{n + 1, 4 * n + 2};
    ModMulWires w{0,
                  wire_range(1, n),
                  wire_range(n + 1, n + 1),
                  wire_range(2 * n + 2, n),
                  3 * n + 2,
                  wire_range(3 * n + 3, n),
                  wire_range(4 * n + 3, n)};
    emit_ctrl_modmul(c.gates, w, modulus, multiplier);
    c.validate();
    return c;
}

ModExpSpec make_modexp_spec(uint64_t base, uint64_t modulus, uint32_t exp_bits) {
    uint32_t n = checked_val_bits(modulus);
    if (base % modulus == 0 || std::gcd(base, modulus) != 1) {
        throw ValidationError("base " + std::to_string(base) + " is not coprime to " +
                              std::to_string(modulus));
    }
    ModExpSpec s;
    s.base = base % modulus;
    s.modulus = modulus;
    s.val_bits = n;
    // Default exponent width: enough to see at least N full periods,
    // i.e. ceil(log2(N^2)).
    s.exp_bits = exp_bits != 0 ? exp_bits : std::bit_width(modulus * modulus - 1);
    if (s.exp_bits < 1) throw ValidationError("exponent register needs at least 1 bit");
    return s;
}

Circuit modexp_circuit(const ModExpSpec& spec) {
    const uint32_t n = spec.val_bits;
    const uint32_t e = spec.exp_bits;
    if (n == 0 || e == 0 || spec.modulus < 2 || std::bit_width(spec.modulus) != n) {
        throw ValidationError("malformed modexp spec");
    }
    if (spec.base == 0 || std::gcd(spec.base, spec.modulus) != 1) {
        throw ValidationError("modexp base must be coprime to the modulus");
    }
    Circuit c;
    c.width = e + 5 * n + 2;
    c.input = Span{0, e};
    c.output = Span{e, n};
    c.ancilla = Span{e + n, 4 * n + 2};
    ModMulWires w{0, // filled per stage below
                  wire_range(e, n),
                  wire_range(e + n, n + 1),
                  wire_range(e + 2 * n + 1, n),
                  e + 3 * n + 1,
                  wire_range(e + 3 * n + 2, n),
                  wire_range(e + 4 * n + 2, n)};
    uint64_t k = spec.base % spec.modulus;
    for (uint32_t i = 0; i < e; ++i) {
        w.ctrl = i;
        emit_ctrl_modmul(c.gates, w, spec.modulus, k);
        k = mulmod(k, k, spec.modulus);
    }
    c.validate();
    return c;
}

} // namespace retro
