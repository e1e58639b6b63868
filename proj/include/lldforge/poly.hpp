#ifndef LLDFORGE_POLY_HPP
#define LLDFORGE_POLY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lldforge/field.hpp"

namespace lldforge {

// Exponent vector of a monomial; compared in graded lexicographic order.
using Exponents = std::vector<std::uint32_t>;

struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

std::uint32_t total_degree(const Exponents& e);

// Sparse multivariate polynomial over Q or F_p with a fixed variable count.
// No zero coefficients are ever stored.
class MultiPoly {
public:
    MultiPoly() = default;
    MultiPoly(std::size_t nvars, std::uint64_t base_p) : nvars_(nvars), p_(base_p) {}

    static MultiPoly constant(std::size_t nvars, BaseElem c);
    static MultiPoly variable(std::size_t nvars, std::uint64_t base_p, std::size_t index);

    std::size_t nvars() const { return nvars_; }
    std::uint64_t base_modulus() const { return p_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    BaseElem constant_value() const;  // requires is_constant()
    std::uint32_t degree() const;     // total degree; 0 for the zero polynomial
    bool is_homogeneous(std::uint32_t d) const;
    std::size_t term_count() const { return terms_.size(); }

    const std::map<Exponents, BaseElem, GrlexLess>& terms() const { return terms_; }
    void add_term(const Exponents& e, const BaseElem& c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scaled(const BaseElem& c) const;
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // leading term in graded lex order; requires a nonzero polynomial
    const Exponents& lead_exponents() const;
    const BaseElem& lead_coeff() const;

    // exact division: requires that `d` divides this polynomial
    MultiPoly divexact(const MultiPoly& d) const;
    bool divisible_by(const MultiPoly& d) const;

    // divide all coefficients so that content is 1 (Q: integer content and
    // positive lead; F_p: lead coefficient 1); returns the removed factor
    BaseElem normalize_content();
    // largest monomial dividing every term (zero exponents for 0)
    Exponents common_monomial() const;
    void shift_down(const Exponents& e);  // divide by x^e; must divide

    BaseElem eval(const std::vector<BaseElem>& point) const;
    // substitute a subset of variables by base values, renumbering the
    // remaining variables onto 0..k-1 in `keep` order
    MultiPoly substitute(const std::vector<std::optional<BaseElem>>& assign,
                         const std::vector<std::size_t>& keep) const;
    // reinterpret in a larger variable set: old var i becomes var map[i]
    MultiPoly embed(std::size_t new_nvars, const std::vector<std::size_t>& map) const;

    std::string to_string(const std::vector<std::string>& names) const;

private:
    std::size_t nvars_ = 0;
    std::uint64_t p_ = 0;
    std::map<Exponents, BaseElem, GrlexLess> terms_;

    void check(const MultiPoly& o) const {
        if (nvars_ != o.nvars_ || p_ != o.p_)
            fail(Errc::DescriptorMismatch, "mixed polynomial rings");
    }
};

// Total-degree cap on function-field numerators and denominators; fraction
// arithmetic beyond it reports DegreeCapExceeded rather than running away.
inline constexpr std::uint32_t kFracDegreeCap = 64;

// Quotient of two polynomials, den != 0. Fractions are reduced by base
// content and common monomial factors only; equality is decided by
// cross-multiplication.
class FuncFrac {
public:
    FuncFrac() = default;
    FuncFrac(MultiPoly num, MultiPoly den);
    static FuncFrac of_poly(MultiPoly p);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.is_constant(); }

    FuncFrac operator+(const FuncFrac& o) const;
    FuncFrac operator-(const FuncFrac& o) const;
    FuncFrac operator*(const FuncFrac& o) const;
    FuncFrac operator/(const FuncFrac& o) const;
    FuncFrac operator-() const;
    FuncFrac inv() const;
    bool operator==(const FuncFrac& o) const;
    bool operator!=(const FuncFrac& o) const { return !(*this == o); }

    std::string to_string(const std::vector<std::string>& names) const;

private:
    MultiPoly num_;
    MultiPoly den_;  // nonzero; content-normalized

    void reduce();
};

} // namespace lldforge

#endif
