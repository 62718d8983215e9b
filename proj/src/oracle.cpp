#include "retro/oracle.hpp"

#include "retro/error.hpp"

#include <algorithm>
#include <atomic>
#include <complex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace retro {

std::vector<uint8_t> simulate_concrete(const Circuit& c, const std::vector<uint8_t>& input) {
    if (input.size() != c.width) {
        throw ValidationError("input has " + std::to_string(input.size()) + " bits, circuit width is " +
                              std::to_string(c.width));
    }
    std::vector<uint8_t> bits = input;
    for (uint8_t b : bits) {
        if (b > 1) throw ValidationError("input bits must be 0 or 1");
    }
    for (const Gate& g : c.gates) {
        bool fire = true;
        for (const Control& ctl : g.controls) {
            bool want = ctl.polarity == Polarity::positive;
            if ((bits[ctl.wire] != 0) != want) {
                fire = false;
                break;
            }
        }
        if (fire) bits[g.target] ^= 1;
    }
    return bits;
}

std::vector<uint8_t> seeded_input(const Circuit& c, uint64_t x, uint64_t out_seed) {
    std::vector<uint8_t> bits(c.width, 0);
    std::vector<uint8_t> in_bits = bits_of(x, c.input.count);
    for (uint32_t i = 0; i < c.input.count; ++i) bits[c.input.lo + i] = in_bits[i];
    std::vector<uint8_t> out_bits = bits_of(out_seed, c.output.count);
    for (uint32_t i = 0; i < c.output.count; ++i) bits[c.output.lo + i] = out_bits[i];
    return bits;
}

uint64_t circuit_function(const Circuit& c, uint64_t x, uint64_t out_seed) {
    std::vector<uint8_t> final_bits = simulate_concrete(c, seeded_input(c, x, out_seed));
    std::vector<uint8_t> out(final_bits.begin() + c.output.lo,
                             final_bits.begin() + c.output.lo + c.output.count);
    return value_of(out);
}

namespace {

void check_enumeration_bound(uint32_t n_bits, uint32_t limit, const char* what) {
    if (n_bits > limit) {
        throw ValidationError(std::string(what) + " enumerates 2^n inputs; n must be <= " +
                              std::to_string(limit) + ", got " + std::to_string(n_bits));
    }
}

} // namespace

std::vector<uint64_t> preimage_serial(const IntFunction& f, uint64_t y, uint32_t n_bits) {
    check_enumeration_bound(n_bits, 30, "preimage");
    std::vector<uint64_t> out;
    const uint64_t total = uint64_t{1} << n_bits;
    for (uint64_t x = 0; x < total; ++x) {
        if (f(x) == y) out.push_back(x);
    }
    return out;
}

std::vector<uint64_t> preimage(const IntFunction& f, uint64_t y, uint32_t n_bits) {
    check_enumeration_bound(n_bits, 30, "preimage");
    const int64_t total = int64_t{1} << n_bits;
    std::vector<std::vector<uint64_t>> parts;
#ifdef _OPENMP
    parts.resize(static_cast<size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
        std::vector<uint64_t>& mine = parts[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (int64_t x = 0; x < total; ++x) {
            if (f(static_cast<uint64_t>(x)) == y) mine.push_back(static_cast<uint64_t>(x));
        }
    }
#else
    parts.push_back(preimage_serial(f, y, n_bits));
    (void)total;
#endif
    std::vector<uint64_t> out;
    for (const std::vector<uint64_t>& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<Formula> residuals_of(const std::vector<Equation>& eqs) {
    std::vector<Formula> res;
    res.reserve(eqs.size());
    for (const Equation& e : eqs) res.push_back(e.residual());
    return res;
}

bool residuals_hold(const std::vector<Formula>& res, uint64_t x) {
    for (const Formula& r : res) {
        if (r.evaluate_bits(x)) return false;
    }
    return true;
}

} // namespace

bool verify_equations_serial(const std::vector<Equation>& eqs, const IntFunction& f, uint64_t w,
                             uint32_t n_bits) {
    check_enumeration_bound(n_bits, 24, "verify_equations");
    std::vector<Formula> res = residuals_of(eqs);
    const uint64_t total = uint64_t{1} << n_bits;
    for (uint64_t x = 0; x < total; ++x) {
        if (residuals_hold(res, x) != (f(x) == w)) return false;
    }
    return true;
}

bool verify_equations(const std::vector<Equation>& eqs, const IntFunction& f, uint64_t w,
                      uint32_t n_bits) {
    check_enumeration_bound(n_bits, 24, "verify_equations");
    std::vector<Formula> res = residuals_of(eqs);
    const int64_t total = int64_t{1} << n_bits;
    std::atomic<bool> ok{true};
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int64_t x = 0; x < total; ++x) {
        if (!ok.load(std::memory_order_relaxed)) continue;
        if (residuals_hold(res, static_cast<uint64_t>(x)) !=
            (f(static_cast<uint64_t>(x)) == w)) {
            ok.store(false, std::memory_order_relaxed);
        }
    }
    return ok.load();
}

// ---- support states ---------------------------------------------------------

void SupportState::validate() const {
    if (dims.empty()) throw ValidationError("support state needs at least one site");
    if (support.empty()) throw ValidationError("support must be non-empty");
    __uint128_t space = 1;
    for (uint32_t d : dims) {
        if (d < 2) throw ValidationError("site radix must be at least 2");
        space *= d;
        if (space > (__uint128_t{1} << 64)) {
            throw ValidationError("state space too large");
        }
    }
    std::vector<uint64_t> sorted = support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("support contains a repeated basis state");
    }
    if (static_cast<__uint128_t>(sorted.back()) >= space) {
        throw ValidationError("basis state " + std::to_string(sorted.back()) +
                              " outside the state space");
    }
}

double purity_qubit(const SupportState& state) {
    state.validate();
    for (uint32_t d : state.dims) {
        if (d != 2) throw ValidationError("purity_qubit requires every site to be a qubit");
    }
    const uint32_t n = static_cast<uint32_t>(state.dims.size());
    std::vector<uint64_t> sorted = state.support;
    std::sort(sorted.begin(), sorted.end());
    auto contains = [&](uint64_t m) {
        return std::binary_search(sorted.begin(), sorted.end(), m);
    };
    using cd = std::complex<double>;
    const cd i{0.0, 1.0};
    // Pauli matrices, indexed [row][col].
    const cd sigma[3][2][2] = {
        {{cd{0}, cd{1}}, {cd{1}, cd{0}}},   // x
        {{cd{0}, -i}, {i, cd{0}}},          // y
        {{cd{1}, cd{0}}, {cd{0}, cd{-1}}},  // z
    };
    const double norm_sq = static_cast<double>(sorted.size());
    double total = 0.0;
    for (uint32_t site = 0; site < n; ++site) {
        const uint64_t flip = uint64_t{1} << site;
        for (const auto& m : sigma) {
            cd acc{0.0, 0.0};
            for (uint64_t s : sorted) {
                const int b = (s >> site) & 1;
                acc += m[b][b];
                if (contains(s ^ flip)) acc += m[b][1 - b];
            }
            acc /= norm_sq;
            total += std::norm(acc);
        }
    }
    return total / n;
}

bool is_product_mixed_radix(const SupportState& state) {
    state.validate();
    const size_t n = state.dims.size();
    std::vector<std::vector<uint8_t>> seen(n);
    for (size_t site = 0; site < n; ++site) seen[site].assign(state.dims[site], 0);
    for (uint64_t m : state.support) {
        uint64_t rest = m;
        for (size_t site = 0; site < n; ++site) {
            seen[site][rest % state.dims[site]] = 1;
            rest /= state.dims[site];
        }
    }
    // The support always embeds into the product of its projections, so it
    // equals the product exactly when the sizes agree.
    __uint128_t product = 1;
    for (size_t site = 0; site < n; ++site) {
        uint64_t count = 0;
        for (uint8_t s : seen[site]) count += s;
        product *= count;
        if (product > state.support.size()) return false;
    }
    return product == state.support.size();
}

} // namespace retro
