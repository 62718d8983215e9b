#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace retro {

// A product of distinct variables, kept as a strictly increasing index list.
// The empty product is the constant 1.
struct Monomial {
    std::vector<uint32_t> indices;

    uint32_t degree() const { return static_cast<uint32_t>(indices.size()); }
    bool is_constant_one() const { return indices.empty(); }
    std::string to_string() const;

    bool operator==(const Monomial&) const = default;
};

// Variable index -> boolean value.
using Assignment = std::map<uint32_t, bool>;

// A boolean function in algebraic normal form: an XOR of AND-monomials.
//
// The term set is kept canonical (sorted, duplicate-free), so structural
// equality coincides with semantic equality and `==` compares functions.
//
// Storage is split by variable range.  Formulas touching only variables
// x0..x63 pack each monomial into one 64-bit mask ("narrow"); anything
// wider stores each monomial as a trimmed little-endian word vector
// ("wide").  A formula is wide exactly when some term needs more than one
// word, so the two representations never alias one function.
class Formula {
public:
    Formula() = default; // the zero formula

    static Formula zero() { return Formula(); }
    static Formula one();
    static Formula var(uint32_t index);
    static Formula constant(bool bit) { return bit ? one() : zero(); }

    // Builds a formula from monomials; repeated monomials cancel in pairs.
    static Formula from_monomials(const std::vector<Monomial>& monomials);

    bool is_zero() const { return narrow_.empty() && wide_.empty(); }
    bool is_one() const { return wide_.empty() && narrow_.size() == 1 && narrow_[0] == 0; }
    bool is_constant() const { return is_zero() || is_one(); }
    // True when the constant monomial 1 appears among the terms.
    bool has_constant_term() const;

    size_t term_count() const { return narrow_.size() + wide_.size(); }
    uint32_t degree() const;
    // Sorted union of all variable indices that occur in some term.
    std::vector<uint32_t> support() const;

    // Requires every support variable to be bound; extra bindings are fine.
    bool evaluate(const Assignment& assignment) const;
    // Fast path: variable i reads bit i of x.  Narrow formulas only.
    bool evaluate_bits(uint64_t x) const;

    // The monomial with the fewest variables; ties broken by the smallest
    // variable-index set, compared as packed masks.  Errors on zero.
    Monomial min_degree_monomial() const;

    // All terms in graded lexicographic order (degree first, then earliest
    // differing variable), the order used by to_string().
    std::vector<Monomial> monomials() const;

    std::string to_string() const;

    friend Formula operator^(const Formula& f, const Formula& g);
    friend Formula operator&(const Formula& f, const Formula& g);
    // 1 XOR f (boolean negation).
    Formula operator~() const;

    bool operator==(const Formula&) const = default;

private:
    using Wide = std::vector<uint64_t>; // trimmed: no trailing zero words

    std::vector<uint64_t> narrow_;   // sorted ascending, distinct
    std::vector<Wide> wide_;         // sorted by numeric value, distinct

    void canonicalize_from_raw(std::vector<uint64_t>&& narrow_terms,
                               std::vector<Wide>&& wide_terms);
    void demote_if_narrow();

    friend Formula parse_formula(std::string_view text);
    friend Formula mobius(const std::vector<uint8_t>& table);
};

// Grammar: "0" | terms, terms := term (" + " term)*, term := "1" | ("x" digits)+.
// Whitespace around '+' is flexible; "x2x0x2" normalizes to x0x2.
Formula parse_formula(std::string_view text);

// Interpolation: turns a truth table over n variables (table.size() == 2^n,
// entry x = f(x) with variable i reading bit i of x) into its unique ANF.
Formula mobius(const std::vector<uint8_t>& table);

// Inverse of mobius: tabulates f over all 2^n inputs.  Support must fit.
std::vector<uint8_t> truth_table(const Formula& f, uint32_t n_vars);

} // namespace retro
