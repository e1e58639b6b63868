#ifndef LLDFORGE_SCALAR_HPP
#define LLDFORGE_SCALAR_HPP

#include <string>
#include <variant>

#include "lldforge/poly.hpp"

namespace lldforge {

// An exact element of one of the supported fields. Immutable in spirit:
// operations return fresh values.
class Scalar {
public:
    Scalar() = default;

    static Scalar zero(const FieldPtr& f);
    static Scalar one(const FieldPtr& f);
    static Scalar of_int(const FieldPtr& f, long long v);
    static Scalar of_rational(const FieldPtr& f, const Rational& q);  // Q / Q(vars)
    static Scalar of_base(const FieldPtr& f, const BaseElem& b);
    static Scalar of_frac(const FieldPtr& f, FuncFrac fr);
    static Scalar var(const FieldPtr& f, std::size_t index);
    static Scalar var(const FieldPtr& f, const std::string& name);

    const FieldPtr& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inv() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar pow(std::uint32_t e) const;

    const Rational& rat() const { return std::get<Rational>(v_); }
    std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }
    const FuncFrac& frac() const { return std::get<FuncFrac>(v_); }

    // embed this scalar into a function field extending its own field
    Scalar widened(const FieldPtr& wider) const;

    std::string to_string() const;

private:
    FieldPtr field_;
    std::variant<Rational, std::uint64_t, FuncFrac> v_;

    Scalar(FieldPtr f, std::variant<Rational, std::uint64_t, FuncFrac> v)
        : field_(std::move(f)), v_(std::move(v)) {}
};

// Parse a scalar token: a +,-,*,/,^ expression over integers and the field's
// variables, e.g. "-5/7", "3", "t1^2+2*t1*t2", "(t1+t2)/(t1-t2)".
Scalar parse_scalar(const FieldPtr& f, const std::string& text);

} // namespace lldforge

#endif
