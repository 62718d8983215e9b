#include "retro/anf.hpp"

#include "retro/error.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <charconv>
#include <cstddef>

namespace retro {

namespace {

// ---- shared helpers on sorted term vectors ------------------------------

// XOR of two canonical term lists: a sorted merge where equal terms cancel.
template <class T, class Less>
std::vector<T> xor_merge(const std::vector<T>& a, const std::vector<T>& b, Less less) {
    std::vector<T> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (less(a[i], b[j])) {
            out.push_back(a[i++]);
        } else if (less(b[j], a[i])) {
            out.push_back(b[j++]);
        } else {
            ++i; // equal terms cancel
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

// Sorts and cancels equal terms in pairs (XOR semantics).
template <class T, class Less>
void sort_and_cancel(std::vector<T>& terms, Less less) {
    std::sort(terms.begin(), terms.end(), less);
    size_t write = 0;
    size_t i = 0;
    while (i < terms.size()) {
        size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) & 1) {
            if (write != i) terms[write] = std::move(terms[i]);
            ++write;
        }
        i = j;
    }
    terms.resize(write);
}

// ---- narrow (single-word mask) helpers ----------------------------------

bool narrow_less(uint64_t a, uint64_t b) { return a < b; }

// Multiplies every term by the monomial m.  When m's lowest variable sits
// above every variable of `terms`, OR-ing m in preserves order and
// distinctness; otherwise the products are re-sorted and cancelled.
std::vector<uint64_t> mono_product(const std::vector<uint64_t>& terms, uint64_t m) {
    std::vector<uint64_t> out;
    out.reserve(terms.size());
    for (uint64_t t : terms) out.push_back(t | m);
    if (m != 0 && !(terms.empty() || terms.back() < (m & (~m + 1)))) {
        sort_and_cancel(out, narrow_less);
    }
    return out;
}

// Graded lexicographic order on packed monomials: lower degree first; at
// equal degree the monomial containing the earliest differing variable wins.
bool narrow_graded_lex_less(uint64_t a, uint64_t b) {
    int da = std::popcount(a);
    int db = std::popcount(b);
    if (da != db) return da < db;
    uint64_t d = a ^ b;
    if (d == 0) return false;
    return (a & (d & (~d + 1))) != 0;
}

// ---- wide (multi-word mask) helpers --------------------------------------

using Wide = std::vector<uint64_t>;

// Numeric order on trimmed word vectors.
bool wide_less(const Wide& a, const Wide& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t w = a.size(); w-- > 0;) {
        if (a[w] != b[w]) return a[w] < b[w];
    }
    return false;
}

uint32_t wide_degree(const Wide& t) {
    uint32_t d = 0;
    for (uint64_t w : t) d += static_cast<uint32_t>(std::popcount(w));
    return d;
}

bool wide_graded_lex_less(const Wide& a, const Wide& b) {
    uint32_t da = wide_degree(a);
    uint32_t db = wide_degree(b);
    if (da != db) return da < db;
    size_t common = std::min(a.size(), b.size());
    for (size_t w = 0; w < common; ++w) {
        uint64_t d = a[w] ^ b[w];
        if (d != 0) return (a[w] & (d & (~d + 1))) != 0;
    }
    // One is a prefix of the other: the longer one has an extra higher
    // variable, so the shorter one holds the earlier difference... but at
    // equal degree a strict prefix is impossible unless equal.
    return false;
}

Wide wide_or(const Wide& a, const Wide& b) {
    const Wide& lo = a.size() <= b.size() ? a : b;
    const Wide& hi = a.size() <= b.size() ? b : a;
    Wide out = hi;
    for (size_t w = 0; w < lo.size(); ++w) out[w] |= lo[w];
    return out;
}

std::vector<Wide> wide_mono_product(const std::vector<Wide>& terms, const Wide& m) {
    std::vector<Wide> out;
    out.reserve(terms.size());
    for (const Wide& t : terms) out.push_back(wide_or(t, m));
    sort_and_cancel(out, wide_less);
    return out;
}

Wide widen(uint64_t mask) {
    Wide w;
    if (mask != 0) w.push_back(mask);
    return w;
}

void append_indices(uint64_t word, uint32_t base, std::vector<uint32_t>& out) {
    while (word != 0) {
        uint32_t bit = static_cast<uint32_t>(std::countr_zero(word));
        out.push_back(base + bit);
        word &= word - 1;
    }
}

std::vector<uint32_t> wide_indices(const Wide& t) {
    std::vector<uint32_t> out;
    for (size_t w = 0; w < t.size(); ++w) {
        append_indices(t[w], static_cast<uint32_t>(w) * 64, out);
    }
    return out;
}

} // namespace

// ---- Monomial -------------------------------------------------------------

std::string Monomial::to_string() const {
    if (indices.empty()) return "1";
    std::string s;
    for (uint32_t i : indices) {
        s += 'x';
        s += std::to_string(i);
    }
    return s;
}

// ---- Formula factories ----------------------------------------------------

Formula Formula::one() {
    Formula f;
    f.narrow_ = {0};
    return f;
}

Formula Formula::var(uint32_t index) {
    Formula f;
    if (index < 64) {
        f.narrow_ = {uint64_t{1} << index};
    } else {
        Wide t(index / 64 + 1, 0);
        t[index / 64] = uint64_t{1} << (index % 64);
        f.wide_ = {std::move(t)};
    }
    return f;
}

Formula Formula::from_monomials(const std::vector<Monomial>& monomials) {
    std::vector<uint64_t> narrow_terms;
    std::vector<Wide> wide_terms;
    for (const Monomial& m : monomials) {
        uint32_t top = 0;
        for (size_t k = 0; k < m.indices.size(); ++k) {
            if (k > 0 && m.indices[k] <= m.indices[k - 1]) {
                throw ValidationError("monomial indices must be strictly increasing");
            }
            top = m.indices[k];
        }
        if (m.indices.empty() || top < 64) {
            uint64_t mask = 0;
            for (uint32_t i : m.indices) mask |= uint64_t{1} << i;
            narrow_terms.push_back(mask);
        } else {
            Wide t(top / 64 + 1, 0);
            for (uint32_t i : m.indices) t[i / 64] |= uint64_t{1} << (i % 64);
            wide_terms.push_back(std::move(t));
        }
    }
    Formula f;
    f.canonicalize_from_raw(std::move(narrow_terms), std::move(wide_terms));
    return f;
}

void Formula::canonicalize_from_raw(std::vector<uint64_t>&& narrow_terms,
                                    std::vector<Wide>&& wide_terms) {
    if (wide_terms.empty()) {
        sort_and_cancel(narrow_terms, narrow_less);
        narrow_ = std::move(narrow_terms);
        wide_.clear();
        return;
    }
    // Mixed input: fold everything into the wide order, then demote if the
    // survivors all fit in one word.
    for (uint64_t m : narrow_terms) wide_terms.push_back(widen(m));
    sort_and_cancel(wide_terms, wide_less);
    narrow_.clear();
    wide_ = std::move(wide_terms);
    demote_if_narrow();
}

void Formula::demote_if_narrow() {
    for (const Wide& t : wide_) {
        if (t.size() > 1) return;
    }
    narrow_.reserve(wide_.size());
    for (const Wide& t : wide_) narrow_.push_back(t.empty() ? 0 : t[0]);
    wide_.clear();
    // wide order restricted to single-word terms is plain numeric order, so
    // the result is already sorted.
    assert(std::is_sorted(narrow_.begin(), narrow_.end()));
}

// ---- Formula queries ------------------------------------------------------

bool Formula::has_constant_term() const {
    // The constant term is the smallest possible term, so if present it is
    // first; in wide storage it is the empty word vector.
    if (!wide_.empty()) return wide_.front().empty();
    return !narrow_.empty() && narrow_.front() == 0;
}

uint32_t Formula::degree() const {
    uint32_t d = 0;
    for (uint64_t t : narrow_) d = std::max(d, static_cast<uint32_t>(std::popcount(t)));
    for (const Wide& t : wide_) d = std::max(d, wide_degree(t));
    return d;
}

std::vector<uint32_t> Formula::support() const {
    Wide acc;
    for (uint64_t t : narrow_) {
        if (acc.empty()) acc.push_back(0);
        acc[0] |= t;
    }
    for (const Wide& t : wide_) {
        if (acc.size() < t.size()) acc.resize(t.size(), 0);
        for (size_t w = 0; w < t.size(); ++w) acc[w] |= t[w];
    }
    return wide_indices(acc);
}

bool Formula::evaluate(const Assignment& assignment) const {
    auto bit = [&](uint32_t i) -> bool {
        auto it = assignment.find(i);
        if (it == assignment.end()) {
            throw ValidationError("assignment does not bind variable x" + std::to_string(i));
        }
        return it->second;
    };
    bool parity = false;
    for (uint64_t t : narrow_) {
        bool all = true;
        uint64_t rest = t;
        while (rest != 0) {
            uint32_t i = static_cast<uint32_t>(std::countr_zero(rest));
            rest &= rest - 1;
            if (!bit(i)) {
                all = false;
                break;
            }
        }
        parity ^= all;
    }
    for (const Wide& t : wide_) {
        bool all = true;
        for (uint32_t i : wide_indices(t)) {
            if (!bit(i)) {
                all = false;
                break;
            }
        }
        parity ^= all;
    }
    return parity;
}

bool Formula::evaluate_bits(uint64_t x) const {
    if (!wide_.empty()) {
        throw ValidationError("evaluate_bits requires all variables below x64");
    }
    bool parity = false;
    for (uint64_t t : narrow_) {
        parity ^= ((t & ~x) == 0);
    }
    return parity;
}

Monomial Formula::min_degree_monomial() const {
    if (is_zero()) {
        throw ValidationError("min_degree_monomial of the zero formula");
    }
    // Ties at equal degree go to the smallest packed mask value.
    bool have = false;
    uint64_t best_narrow = 0;
    for (uint64_t t : narrow_) {
        if (!have || std::popcount(t) < std::popcount(best_narrow) ||
            (std::popcount(t) == std::popcount(best_narrow) && t < best_narrow)) {
            best_narrow = t;
            have = true;
        }
    }
    const Wide* best_wide = nullptr;
    for (const Wide& t : wide_) {
        if (best_wide == nullptr || wide_degree(t) < wide_degree(*best_wide) ||
            (wide_degree(t) == wide_degree(*best_wide) && wide_less(t, *best_wide))) {
            best_wide = &t;
        }
    }
    Monomial m;
    if (best_wide != nullptr &&
        (!have ||
         wide_degree(*best_wide) < static_cast<uint32_t>(std::popcount(best_narrow)) ||
         (static_cast<int>(wide_degree(*best_wide)) == std::popcount(best_narrow) &&
          wide_less(*best_wide, widen(best_narrow))))) {
        m.indices = wide_indices(*best_wide);
    } else {
        m.indices = wide_indices(widen(best_narrow));
    }
    return m;
}

std::vector<Monomial> Formula::monomials() const {
    std::vector<Monomial> out;
    out.reserve(term_count());
    if (wide_.empty()) {
        std::vector<uint64_t> sorted = narrow_;
        std::sort(sorted.begin(), sorted.end(), narrow_graded_lex_less);
        for (uint64_t t : sorted) out.push_back(Monomial{wide_indices(widen(t))});
        return out;
    }
    std::vector<Wide> all;
    all.reserve(term_count());
    for (uint64_t t : narrow_) all.push_back(widen(t));
    for (const Wide& t : wide_) all.push_back(t);
    std::sort(all.begin(), all.end(), wide_graded_lex_less);
    for (const Wide& t : all) out.push_back(Monomial{wide_indices(t)});
    return out;
}

std::string Formula::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const Monomial& m : monomials()) {
        if (!first) s += " + ";
        s += m.to_string();
        first = false;
    }
    return s;
}

// ---- Formula algebra ------------------------------------------------------

Formula operator^(const Formula& f, const Formula& g) {
    Formula out;
    if (f.wide_.empty() && g.wide_.empty()) {
        out.narrow_ = xor_merge(f.narrow_, g.narrow_, narrow_less);
        return out;
    }
    std::vector<Wide> a;
    a.reserve(f.term_count());
    for (uint64_t t : f.narrow_) a.push_back(widen(t));
    a.insert(a.end(), f.wide_.begin(), f.wide_.end());
    std::sort(a.begin(), a.end(), wide_less);
    std::vector<Wide> b;
    b.reserve(g.term_count());
    for (uint64_t t : g.narrow_) b.push_back(widen(t));
    b.insert(b.end(), g.wide_.begin(), g.wide_.end());
    std::sort(b.begin(), b.end(), wide_less);
    out.wide_ = xor_merge(a, b, wide_less);
    out.demote_if_narrow();
    return out;
}

namespace {

// AND of two narrow canonical term lists, folding single-monomial products
// into a running XOR so no |f|*|g| intermediate is ever materialized.
std::vector<uint64_t> and_narrow(const std::vector<uint64_t>& small,
                                 const std::vector<uint64_t>& big) {
    // (1 xor x_i) * big is a plain merge of big with big*x_i.
    if (small.size() == 2 && small[0] == 0 && std::popcount(small[1]) == 1) {
        return xor_merge(big, mono_product(big, small[1]), narrow_less);
    }
    std::vector<uint64_t> acc = mono_product(big, small[0]);
    for (size_t j = 1; j < small.size(); ++j) {
        acc = xor_merge(acc, mono_product(big, small[j]), narrow_less);
    }
    return acc;
}

std::vector<Wide> and_wide(const std::vector<Wide>& small, const std::vector<Wide>& big) {
    std::vector<Wide> acc = wide_mono_product(big, small[0]);
    for (size_t j = 1; j < small.size(); ++j) {
        acc = xor_merge(acc, wide_mono_product(big, small[j]), wide_less);
    }
    return acc;
}

} // namespace

Formula operator&(const Formula& f, const Formula& g) {
    if (f.is_zero() || g.is_zero()) return Formula::zero();
    if (f.is_one()) return g;
    if (g.is_one()) return f;
    Formula out;
    if (f.wide_.empty() && g.wide_.empty()) {
        const std::vector<uint64_t>& small =
            f.narrow_.size() <= g.narrow_.size() ? f.narrow_ : g.narrow_;
        const std::vector<uint64_t>& big =
            f.narrow_.size() <= g.narrow_.size() ? g.narrow_ : f.narrow_;
        out.narrow_ = and_narrow(small, big);
        return out;
    }
    auto widen_all = [](const Formula& h) {
        std::vector<Wide> v;
        v.reserve(h.term_count());
        for (uint64_t t : h.narrow_) v.push_back(widen(t));
        v.insert(v.end(), h.wide_.begin(), h.wide_.end());
        std::sort(v.begin(), v.end(), wide_less);
        return v;
    };
    std::vector<Wide> a = widen_all(f);
    std::vector<Wide> b = widen_all(g);
    out.wide_ = a.size() <= b.size() ? and_wide(a, b) : and_wide(b, a);
    out.demote_if_narrow();
    return out;
}

Formula Formula::operator~() const {
    return one() ^ *this;
}

// ---- parsing --------------------------------------------------------------

namespace {

[[noreturn]] void parse_fail(std::string_view text, size_t pos, const std::string& why) {
    throw ParseError("formula parse error at offset " + std::to_string(pos) + ": " + why +
                     " (input: \"" + std::string(text.substr(0, 80)) + "\")");
}

} // namespace

Formula parse_formula(std::string_view text) {
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    std::vector<uint64_t> narrow_terms;
    std::vector<Wide> wide_terms;

    skip_ws();
    if (pos >= text.size()) parse_fail(text, pos, "empty formula");

    bool saw_zero = false;
    while (true) {
        skip_ws();
        if (pos >= text.size()) parse_fail(text, pos, "expected a term");
        if (text[pos] == '0') {
            ++pos;
            saw_zero = true;
        } else if (text[pos] == '1') {
            ++pos;
            narrow_terms.push_back(0);
        } else if (text[pos] == 'x') {
            uint64_t mask = 0;
            Wide wide_mask;
            bool is_wide = false;
            while (pos < text.size() && text[pos] == 'x') {
                ++pos;
                uint32_t index = 0;
                auto [next, ec] =
                    std::from_chars(text.data() + pos, text.data() + text.size(), index);
                if (ec != std::errc() || next == text.data() + pos) {
                    parse_fail(text, pos, "expected a variable index after 'x'");
                }
                pos = static_cast<size_t>(next - text.data());
                if (index < 64 && !is_wide) {
                    mask |= uint64_t{1} << index;
                } else {
                    if (!is_wide) {
                        wide_mask = widen(mask);
                        is_wide = true;
                    }
                    if (wide_mask.size() <= index / 64) wide_mask.resize(index / 64 + 1, 0);
                    wide_mask[index / 64] |= uint64_t{1} << (index % 64);
                }
            }
            if (is_wide) {
                wide_terms.push_back(std::move(wide_mask));
            } else {
                narrow_terms.push_back(mask);
            }
        } else {
            parse_fail(text, pos, "expected '0', '1', or a variable");
        }
        skip_ws();
        if (pos >= text.size()) break;
        if (text[pos] != '+') parse_fail(text, pos, "expected '+' between terms");
        ++pos;
    }

    if (saw_zero && (narrow_terms.size() + wide_terms.size() > 0)) {
        parse_fail(text, 0, "'0' must stand alone");
    }
    Formula f;
    f.canonicalize_from_raw(std::move(narrow_terms), std::move(wide_terms));
    return f;
}

// ---- truth tables ---------------------------------------------------------

Formula mobius(const std::vector<uint8_t>& table) {
    size_t n = table.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw ValidationError("truth table size must be a power of two");
    }
    for (uint8_t v : table) {
        if (v > 1) throw ValidationError("truth table entries must be 0 or 1");
    }
    std::vector<uint8_t> t = table;
    // XOR butterfly: fold each variable's lower half into its upper half.
    for (size_t bit = 1; bit < n; bit <<= 1) {
        for (size_t x = 0; x < n; ++x) {
            if (x & bit) t[x] ^= t[x ^ bit];
        }
    }
    std::vector<uint64_t> terms;
    for (size_t x = 0; x < n; ++x) {
        if (t[x]) terms.push_back(static_cast<uint64_t>(x));
    }
    Formula f;
    f.canonicalize_from_raw(std::move(terms), {});
    return f;
}

std::vector<uint8_t> truth_table(const Formula& f, uint32_t n_vars) {
    if (n_vars > 24) throw ValidationError("truth_table limited to 24 variables");
    std::vector<uint32_t> sup = f.support();
    if (!sup.empty() && sup.back() >= n_vars) {
        throw ValidationError("formula mentions x" + std::to_string(sup.back()) +
                              " beyond the " + std::to_string(n_vars) + "-variable table");
    }
    std::vector<uint8_t> out(size_t{1} << n_vars);
    for (uint64_t x = 0; x < out.size(); ++x) {
        out[x] = f.evaluate_bits(x) ? 1 : 0;
    }
    return out;
}

} // namespace retro
