#include "retro/algorithms.hpp"

#include "retro/arith.hpp"
#include "retro/error.hpp"
#include "retro/oracle.hpp"

#include <bit>
#include <numeric>

namespace retro {

namespace {

// Symbolic run of an XOR oracle |x, y> -> |x, f(x) XOR y> with y = 0:
// afterwards the output wire(s) carry the ANF of f directly.  The direction
// is irrelevant for these circuits; the backward pass mirrors the way the
// drivers below are phrased.
SymState symbolic_oracle_run(const Circuit& oracle, Direction direction, uint64_t& gates) {
    oracle.validate();
    SymState s = SymState::zeros(oracle.width);
    for (uint32_t j = 0; j < oracle.input.count; ++j) {
        s.wires[oracle.input.lo + j] = Formula::var(j);
    }
    gates = run(oracle, s, direction);
    return s;
}

} // namespace

DJResult deutsch_jozsa(const std::vector<uint8_t>& table) {
    size_t size = table.size();
    if (size < 2 || (size & (size - 1)) != 0) {
        throw ValidationError("table size must be a power of two and at least 2");
    }
    uint32_t n = static_cast<uint32_t>(std::countr_zero(size));
    std::vector<uint64_t> wide_table(table.begin(), table.end());
    Circuit oracle = oracle_from_function(n, 1, wide_table);
    DJResult r;
    SymState s = symbolic_oracle_run(oracle, Direction::retrodictive, r.gate_count);
    r.formula = s.wires[oracle.output.lo];
    r.constant = r.formula.is_constant();
    return r;
}

uint64_t bernstein_vazirani(const Circuit& oracle, uint32_t n) {
    if (oracle.input.count != n) {
        throw ValidationError("oracle input register does not have n wires");
    }
    if (oracle.output.count != 1) {
        throw ValidationError("oracle must have a single output wire");
    }
    if (n > 63) throw ValidationError("secret recovery limited to 63 bits");
    uint64_t gates = 0;
    SymState s = symbolic_oracle_run(oracle, Direction::retrodictive, gates);
    const Formula& f = s.wires[oracle.output.lo];
    if (f.degree() > 1 || f.has_constant_term()) {
        throw PromiseViolation("oracle formula is not linear: " + f.to_string());
    }
    uint64_t secret = 0;
    for (uint32_t i : f.support()) secret |= uint64_t{1} << i;
    return secret;
}

uint64_t GroverResult::value() const {
    uint64_t u = 0;
    for (uint32_t i : marked_indices) {
        if (i > 63) throw ValidationError("marked element does not fit in 64 bits");
        u |= uint64_t{1} << i;
    }
    return u;
}

GroverResult grover_search(uint32_t n, const Circuit& oracle) {
    if (oracle.input.count != n) {
        throw ValidationError("oracle input register does not have n wires");
    }
    if (oracle.output.count != 1) {
        throw ValidationError("oracle must have a single output wire");
    }
    GroverResult r;
    // One forward pass with the output wire at 0 leaves f's ANF on it.
    SymState s = symbolic_oracle_run(oracle, Direction::forward, r.gate_count);
    r.formula = s.wires[oracle.output.lo];
    if (r.formula.is_zero()) {
        throw PromiseViolation("oracle marks no element: output formula is 0");
    }
    r.marked_indices = r.formula.min_degree_monomial().indices;
    return r;
}

std::vector<uint64_t> simon_table(uint32_t n, uint64_t a) {
    if (n > 20) throw ValidationError("simon_table limited to 20 bits");
    if (n < 64 && a >= (uint64_t{1} << n)) {
        throw ValidationError("mask does not fit in n bits");
    }
    std::vector<uint64_t> table(size_t{1} << n);
    for (uint64_t x = 0; x < table.size(); ++x) table[x] = std::min(x, x ^ a);
    return table;
}

SimonResult simon(const Circuit& oracle, uint32_t n) {
    if (n > 16) throw ValidationError("simon enumeration capped at n = 16");
    if (oracle.input.count != n) {
        throw ValidationError("oracle input register does not have n wires");
    }
    // w = f(0) from a concrete run, then equations for "output == w".
    std::vector<uint8_t> zero_run = simulate_concrete(oracle, std::vector<uint8_t>(oracle.width, 0));
    std::vector<uint8_t> observed(zero_run.begin() + oracle.output.lo,
                                  zero_run.begin() + oracle.output.lo + oracle.output.count);
    std::vector<uint8_t> initial(oracle.output.count + oracle.ancilla.count, 0);
    RetroResult retro = retrodictive_equations(oracle, observed, initial);
    std::vector<Formula> residuals;
    residuals.reserve(retro.equations.size());
    for (const Equation& e : retro.equations) residuals.push_back(e.residual());
    std::vector<uint64_t> solutions;
    for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
        bool sat = true;
        for (const Formula& r : residuals) {
            if (r.evaluate_bits(x)) {
                sat = false;
                break;
            }
        }
        if (sat) solutions.push_back(x);
    }
    if (solutions.size() != 2) {
        throw PromiseViolation("oracle is not 2-to-1: preimage of f(0) has " +
                               std::to_string(solutions.size()) + " elements");
    }
    SimonResult r;
    r.mask = solutions[0] ^ solutions[1];
    r.equations = std::move(retro.equations);
    r.gate_count = retro.gates_applied;
    return r;
}

const char* to_string(PeriodMethod m) {
    return m == PeriodMethod::equation_structure ? "equation-structure" : "brute-force";
}

PeriodResult shor_period(uint64_t a, uint64_t N, uint32_t exp_bits) {
    ModExpSpec spec = make_modexp_spec(a, N, exp_bits);
    Circuit c = modexp_circuit(spec);
    std::vector<uint8_t> observed = bits_of(1, spec.val_bits);
    std::vector<uint8_t> initial = observed;
    initial.resize(spec.val_bits + c.ancilla.count, 0);
    RetroResult retro = retrodictive_equations(c, observed, initial);

    PeriodResult result;
    result.equations = std::move(retro.equations);
    result.gate_count = retro.gates_applied;
    result.exp_bits = spec.exp_bits;

    std::vector<Formula> residuals;
    residuals.reserve(result.equations.size());
    uint32_t max_var = 0;
    bool any_var = false;
    for (const Equation& e : result.equations) {
        residuals.push_back(e.residual());
        std::vector<uint32_t> sup = residuals.back().support();
        if (!sup.empty()) {
            any_var = true;
            max_var = std::max(max_var, sup.back());
        }
    }
    auto satisfied = [&](uint64_t x) {
        for (const Formula& r : residuals) {
            if (r.evaluate_bits(x)) return false;
        }
        return true;
    };

    // Structural fast path: the equations mention only the k lowest exponent
    // bits and admit exactly the all-zero assignment, so the solutions are
    // the multiples of 2^k and the period is 2^k.
    if (result.equations.empty()) {
        result.period = 1;
        result.solved_by = PeriodMethod::equation_structure;
        return result;
    }
    if (any_var && max_var + 1 <= 20 && max_var + 1 <= spec.exp_bits) {
        const uint32_t k = max_var + 1;
        bool zero_only = satisfied(0);
        if (zero_only) {
            for (uint64_t m = 1; m < (uint64_t{1} << k); ++m) {
                if (satisfied(m)) {
                    zero_only = false;
                    break;
                }
            }
        }
        if (zero_only) {
            result.period = uint64_t{1} << k;
            result.solved_by = PeriodMethod::equation_structure;
            return result;
        }
    }

    // Fallback: enumerate the full exponent range and read the stride.
    if (spec.exp_bits > 24) {
        throw ValidationError("period extraction needs enumeration over 2^" +
                              std::to_string(spec.exp_bits) + " exponents; beyond desk scale");
    }
    std::vector<uint64_t> solutions;
    for (uint64_t x = 0; x < (uint64_t{1} << spec.exp_bits); ++x) {
        if (satisfied(x)) solutions.push_back(x);
    }
    if (solutions.empty() || solutions[0] != 0) {
        throw Error("retrodictive equations exclude x=0, which always satisfies a^0 = 1");
    }
    if (solutions.size() < 2) {
        throw PromiseViolation("no nonzero solution within the exponent range; "
                               "increase exp_bits");
    }
    uint64_t r = solutions[1];
    for (size_t i = 0; i < solutions.size(); ++i) {
        if (solutions[i] != i * r) {
            throw PromiseViolation("solution set is not an arithmetic progression");
        }
    }
    if (solutions.size() != ((uint64_t{1} << spec.exp_bits) - 1) / r + 1) {
        throw PromiseViolation("solution set is not an arithmetic progression");
    }
    result.period = r;
    result.solved_by = PeriodMethod::brute_force;
    return result;
}

FactorResult factor(uint64_t N, uint64_t a) {
    if (N < 3 || N % 2 == 0) {
        throw ValidationError("factoring driver expects an odd N >= 3");
    }
    if (a < 2 || a >= N) throw ValidationError("base must satisfy 2 <= a < N");
    if (std::gcd(a, N) != 1) {
        throw ValidationError("base shares a factor with N; pick a coprime base");
    }
    FactorResult f;
    f.period = shor_period(a, N, 0);
    uint64_t r = f.period.period;
    if (r % 2 != 0) return f; // odd period: retry with another base
    uint64_t h = powmod(a, r / 2, N);
    if (h == N - 1) return f; // a^(r/2) = -1: retry
    f.p = std::gcd(h - 1, N);
    f.q = std::gcd(h + 1, N);
    f.ok = true;
    return f;
}

} // namespace retro
