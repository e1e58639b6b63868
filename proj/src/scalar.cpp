#include "lldforge/scalar.hpp"

#include <cctype>
#include <sstream>

namespace lldforge {

Scalar Scalar::zero(const FieldPtr& f) {
    switch (f->kind) {
        case FieldKind::Rationals: return Scalar(f, Rational(0));
        case FieldKind::PrimeField: return Scalar(f, std::uint64_t{0});
        case FieldKind::FunctionField:
            return Scalar(f, FuncFrac::of_poly(MultiPoly(f->var_count(), f->p)));
    }
    fail(Errc::UsageError, "bad field kind");
}

Scalar Scalar::one(const FieldPtr& f) { return of_int(f, 1); }

Scalar Scalar::of_int(const FieldPtr& f, long long v) {
    switch (f->kind) {
        case FieldKind::Rationals: return Scalar(f, Rational(v));
        case FieldKind::PrimeField: {
            long long m = v % static_cast<long long>(f->p);
            if (m < 0) m += static_cast<long long>(f->p);
            return Scalar(f, static_cast<std::uint64_t>(m));
        }
        case FieldKind::FunctionField:
            return Scalar(f, FuncFrac::of_poly(MultiPoly::constant(
                                 f->var_count(), BaseElem::from_int(v, f->p))));
    }
    fail(Errc::UsageError, "bad field kind");
}

Scalar Scalar::of_rational(const FieldPtr& f, const Rational& q) {
    switch (f->kind) {
        case FieldKind::Rationals: return Scalar(f, q);
        case FieldKind::PrimeField:
            fail(Errc::DescriptorMismatch, "rational literal in a prime field");
        case FieldKind::FunctionField: {
            if (f->p != 0) fail(Errc::DescriptorMismatch, "rational literal over F_p base");
            return Scalar(f, FuncFrac::of_poly(MultiPoly::constant(f->var_count(), BaseElem(q))));
        }
    }
    fail(Errc::UsageError, "bad field kind");
}

Scalar Scalar::of_base(const FieldPtr& f, const BaseElem& b) {
    switch (f->kind) {
        case FieldKind::Rationals: return Scalar(f, b.rat());
        case FieldKind::PrimeField: return Scalar(f, b.residue());
        case FieldKind::FunctionField:
            return Scalar(f, FuncFrac::of_poly(MultiPoly::constant(f->var_count(), b)));
    }
    fail(Errc::UsageError, "bad field kind");
}

Scalar Scalar::of_frac(const FieldPtr& f, FuncFrac fr) {
    if (!f->is_function_field()) fail(Errc::DescriptorMismatch, "fraction in a base field");
    return Scalar(f, std::move(fr));
}

Scalar Scalar::var(const FieldPtr& f, std::size_t index) {
    if (!f->is_function_field()) fail(Errc::DescriptorMismatch, "variable in a base field");
    return Scalar(f, FuncFrac::of_poly(MultiPoly::variable(f->var_count(), f->p, index)));
}

Scalar Scalar::var(const FieldPtr& f, const std::string& name) {
    auto i = f->var_index(name);
    if (!i) fail(Errc::UsageError, "unknown variable " + name);
    return var(f, *i);
}

bool Scalar::is_zero() const {
    switch (field_->kind) {
        case FieldKind::Rationals: return rat().is_zero();
        case FieldKind::PrimeField: return residue() == 0;
        case FieldKind::FunctionField: return frac().is_zero();
    }
    return false;
}

bool Scalar::is_one() const { return *this == one(field_); }

#define LLDFORGE_SCALAR_BINOP(op)                                            \
    Scalar Scalar::operator op(const Scalar& o) const {                      \
        require_same_field(field_, o.field_);                                \
        switch (field_->kind) {                                              \
            case FieldKind::Rationals: return Scalar(field_, rat() op o.rat()); \
            case FieldKind::PrimeField: break;                               \
            case FieldKind::FunctionField:                                   \
                return Scalar(field_, frac() op o.frac());                   \
        }                                                                    \
        BaseElem a(residue(), field_->p), b(o.residue(), field_->p);         \
        return Scalar(field_, (a op b).residue());                           \
    }

LLDFORGE_SCALAR_BINOP(+)
LLDFORGE_SCALAR_BINOP(-)
LLDFORGE_SCALAR_BINOP(*)
#undef LLDFORGE_SCALAR_BINOP

Scalar Scalar::operator/(const Scalar& o) const {
    require_same_field(field_, o.field_);
    if (o.is_zero()) fail(Errc::DivisionByZero, "scalar division by zero");
    switch (field_->kind) {
        case FieldKind::Rationals: return Scalar(field_, rat() / o.rat());
        case FieldKind::PrimeField: {
            BaseElem a(residue(), field_->p), b(o.residue(), field_->p);
            return Scalar(field_, (a / b).residue());
        }
        case FieldKind::FunctionField: return Scalar(field_, frac() / o.frac());
    }
    fail(Errc::UsageError, "bad field kind");
}

Scalar Scalar::operator-() const {
    switch (field_->kind) {
        case FieldKind::Rationals: return Scalar(field_, -rat());
        case FieldKind::PrimeField:
            return Scalar(field_, residue() == 0 ? std::uint64_t{0} : field_->p - residue());
        case FieldKind::FunctionField: return Scalar(field_, -frac());
    }
    fail(Errc::UsageError, "bad field kind");
}

Scalar Scalar::inv() const { return one(field_) / *this; }

bool Scalar::operator==(const Scalar& o) const {
    require_same_field(field_, o.field_);
    switch (field_->kind) {
        case FieldKind::Rationals: return rat() == o.rat();
        case FieldKind::PrimeField: return residue() == o.residue();
        case FieldKind::FunctionField: return frac() == o.frac();
    }
    return false;
}

Scalar Scalar::pow(std::uint32_t e) const {
    Scalar acc = one(field_);
    for (std::uint32_t i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

Scalar Scalar::widened(const FieldPtr& wider) const {
    if (*wider == *field_) return *this;
    if (!wider->is_function_field() || wider->p != field_->characteristic())
        fail(Errc::DescriptorMismatch, "cannot widen " + field_->to_string() + " into " + wider->to_string());
    std::vector<std::size_t> map;
    for (const auto& v : field_->vars) {
        auto idx = wider->var_index(v);
        if (!idx) fail(Errc::DescriptorMismatch, "missing variable " + v + " in wider field");
        map.push_back(*idx);
    }
    switch (field_->kind) {
        case FieldKind::Rationals:
            return of_base(wider, BaseElem(rat()));
        case FieldKind::PrimeField:
            return of_base(wider, BaseElem(residue(), field_->p));
        case FieldKind::FunctionField: {
            MultiPoly n = frac().num().embed(wider->var_count(), map);
            MultiPoly d = frac().den().embed(wider->var_count(), map);
            return Scalar(wider, FuncFrac(std::move(n), std::move(d)));
        }
    }
    fail(Errc::UsageError, "bad field kind");
}

std::string Scalar::to_string() const {
    switch (field_->kind) {
        case FieldKind::Rationals: {
            std::ostringstream os;
            os << rat();
            return os.str();
        }
        case FieldKind::PrimeField: return std::to_string(residue());
        case FieldKind::FunctionField: return frac().to_string(field_->vars);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// scalar expression parser

namespace {

struct ScalarParser {
    const FieldPtr& f;
    const std::string& s;
    std::size_t pos = 0;

    [[noreturn]] void bad(const std::string& what) const {
        fail(Errc::ParseError, what + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    Scalar parse() {
        Scalar v = expr();
        skip_ws();
        if (pos != s.size()) bad("trailing input");
        return v;
    }

    Scalar expr() {
        Scalar v = term();
        for (;;) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }

    Scalar term() {
        Scalar v = factor();
        for (;;) {
            if (eat('*'))
                v = v * factor();
            else if (eat('/'))
                v = v / factor();
            else
                return v;
        }
    }

    Scalar factor() {
        bool neg = false;
        for (;;) {
            if (eat('-'))
                neg = !neg;
            else if (eat('+'))
                ;
            else
                break;
        }
        Scalar v = atom();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) bad("expected exponent");
            v = v.pow(static_cast<std::uint32_t>(std::stoul(s.substr(start, pos - start))));
        }
        return neg ? -v : v;
    }

    Scalar atom() {
        skip_ws();
        if (pos >= s.size()) bad("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Scalar v = expr();
            if (!eat(')')) bad("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            Int n(s.substr(start, pos - start));
            if (f->kind == FieldKind::PrimeField) {
                Int m = n % f->p;
                return Scalar::of_int(f, static_cast<long long>(static_cast<std::uint64_t>(m)));
            }
            if (f->kind == FieldKind::FunctionField && f->p != 0) {
                Int m = n % f->p;
                return Scalar::of_base(f, BaseElem(static_cast<std::uint64_t>(m), f->p));
            }
            return Scalar::of_rational(f, Rational(n));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            auto idx = f->var_index(name);
            if (!idx) bad("unknown variable '" + name + "'");
            return Scalar::var(f, *idx);
        }
        bad(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

Scalar parse_scalar(const FieldPtr& f, const std::string& text) {
    ScalarParser p{f, text};
    return p.parse();
}

} // namespace lldforge
