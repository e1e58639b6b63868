#ifndef LLDFORGE_FIELD_HPP
#define LLDFORGE_FIELD_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lldforge/error.hpp"

namespace lldforge {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class FieldKind { Rationals, PrimeField, FunctionField };

// Description of one of the supported coefficient fields: Q, F_p, or a
// rational function field over Q or F_p in named variables.
struct FieldDescriptor {
    FieldKind kind = FieldKind::Rationals;
    std::uint64_t p = 0;            // modulus; 0 means the base is Q
    std::vector<std::string> vars;  // function-field variables, ordered

    bool is_function_field() const { return kind == FieldKind::FunctionField; }
    bool is_finite() const { return kind == FieldKind::PrimeField; }
    // characteristic of the field (0 for Q and Q(vars))
    std::uint64_t characteristic() const { return p; }
    std::size_t var_count() const { return vars.size(); }
    std::optional<std::size_t> var_index(const std::string& name) const;

    bool operator==(const FieldDescriptor& o) const {
        return kind == o.kind && p == o.p && vars == o.vars;
    }
    std::string to_string() const;
};

using FieldPtr = std::shared_ptr<const FieldDescriptor>;

bool is_prime(std::uint64_t n);

FieldPtr field_Q();
FieldPtr field_Fp(std::uint64_t p);
// base: Q (p = 0) or F_p; vars must be distinct, nonempty names
FieldPtr field_functions(std::uint64_t base_p, std::vector<std::string> vars);
// the base field underlying a function field (Q or F_p)
FieldPtr base_field(const FieldPtr& f);
// extend a field with extra function-field variables (names must be fresh)
FieldPtr extend_with_vars(const FieldPtr& f, const std::vector<std::string>& fresh);

inline void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (!(*a == *b)) fail(Errc::DescriptorMismatch, a->to_string() + " vs " + b->to_string());
}

// ---------------------------------------------------------------------------
// BaseElem: an element of Q or F_p, the coefficient domain of polynomials.
// p == 0 encodes Q. All binary operations require matching moduli.

class BaseElem {
public:
    BaseElem() = default;
    static BaseElem zero(std::uint64_t p) { return p == 0 ? BaseElem(Rational(0)) : BaseElem(0, p); }
    static BaseElem one(std::uint64_t p) { return p == 0 ? BaseElem(Rational(1)) : BaseElem(1 % p, p); }
    explicit BaseElem(Rational q) : q_(std::move(q)) {}
    BaseElem(std::uint64_t r, std::uint64_t p) : p_(p), r_(r % p) {}
    static BaseElem from_int(long long v, std::uint64_t p);

    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return p_ == 0 ? q_.is_zero() : r_ == 0; }
    bool is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1 % p_; }
    const Rational& rat() const { return q_; }
    std::uint64_t residue() const { return r_; }

    BaseElem operator+(const BaseElem& o) const;
    BaseElem operator-(const BaseElem& o) const;
    BaseElem operator*(const BaseElem& o) const;
    BaseElem operator/(const BaseElem& o) const;
    BaseElem operator-() const;
    BaseElem inv() const;
    bool operator==(const BaseElem& o) const;
    bool operator!=(const BaseElem& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    std::uint64_t p_ = 0;
    Rational q_;
    std::uint64_t r_ = 0;

    void check(const BaseElem& o) const {
        if (p_ != o.p_) fail(Errc::DescriptorMismatch, "mixed base-field moduli");
    }
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);

} // namespace lldforge

#endif
