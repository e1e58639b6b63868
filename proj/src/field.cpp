#include "lldforge/field.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lldforge {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::DescriptorMismatch: return "DescriptorMismatch";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::PoleAtPoint: return "PoleAtPoint";
        case Errc::NotSquare: return "NotSquare";
        case Errc::NotAlternating: return "NotAlternating";
        case Errc::NotInvertible: return "NotInvertible";
        case Errc::EmptyBasis: return "EmptyBasis";
        case Errc::EnumerationTooLarge: return "EnumerationTooLarge";
        case Errc::SingularTransform: return "SingularTransform";
        case Errc::PatternViolation: return "PatternViolation";
        case Errc::PreconditionFailed: return "PreconditionFailed";
        case Errc::Undecided: return "Undecided";
        case Errc::IsotropicAxis: return "IsotropicAxis";
        case Errc::AxisInsideK2: return "AxisInsideK2";
        case Errc::NotAnIsometry: return "NotAnIsometry";
        case Errc::IncompatibleValues: return "IncompatibleValues";
        case Errc::DegeneratePlane: return "DegeneratePlane";
        case Errc::CharMismatch: return "CharMismatch";
        case Errc::NotScalarComposite: return "NotScalarComposite";
        case Errc::ReducibilityDetected: return "ReducibilityDetected";
        case Errc::IsotropicNorm: return "IsotropicNorm";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::DegreeCapExceeded: return "DegreeCapExceeded";
        case Errc::AlphaInRange: return "AlphaInRange";
        case Errc::CertificateMissing: return "CertificateMissing";
        case Errc::NotStabilized: return "NotStabilized";
        case Errc::StrataCheckFailed: return "StrataCheckFailed";
        case Errc::DichotomyViolated: return "DichotomyViolated";
        case Errc::IdentityViolated: return "IdentityViolated";
        case Errc::NotAnEquivalence: return "NotAnEquivalence";
        case Errc::NoWitnessFound: return "NoWitnessFound";
        case Errc::ParseError: return "ParseError";
        case Errc::UsageError: return "UsageError";
    }
    return "UnknownError";
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::optional<std::size_t> FieldDescriptor::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return i;
    return std::nullopt;
}

std::string FieldDescriptor::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case FieldKind::Rationals: os << "Q"; break;
        case FieldKind::PrimeField: os << "F" << p; break;
        case FieldKind::FunctionField:
            if (p == 0)
                os << "Q(";
            else
                os << "F" << p << "(";
            for (std::size_t i = 0; i < vars.size(); ++i) os << (i ? "," : "") << vars[i];
            os << ")";
            break;
    }
    return os.str();
}

FieldPtr field_Q() {
    static FieldPtr q = std::make_shared<FieldDescriptor>();
    return q;
}

FieldPtr field_Fp(std::uint64_t p) {
    if (!is_prime(p)) fail(Errc::UsageError, "modulus " + std::to_string(p) + " is not prime");
    if (p > (1ull << 31)) fail(Errc::CapExceeded, "prime field modulus must be word-sized");
    auto f = std::make_shared<FieldDescriptor>();
    f->kind = FieldKind::PrimeField;
    f->p = p;
    return f;
}

FieldPtr field_functions(std::uint64_t base_p, std::vector<std::string> vars) {
    if (vars.empty()) fail(Errc::UsageError, "function field needs at least one variable");
    std::set<std::string> seen;
    for (const auto& v : vars) {
        if (v.empty()) fail(Errc::UsageError, "empty variable name");
        if (!seen.insert(v).second) fail(Errc::UsageError, "duplicate variable " + v);
    }
    if (base_p != 0 && !is_prime(base_p))
        fail(Errc::UsageError, "base modulus is not prime");
    auto f = std::make_shared<FieldDescriptor>();
    f->kind = FieldKind::FunctionField;
    f->p = base_p;
    f->vars = std::move(vars);
    return f;
}

FieldPtr base_field(const FieldPtr& f) {
    if (!f->is_function_field()) return f;
    return f->p == 0 ? field_Q() : field_Fp(f->p);
}

FieldPtr extend_with_vars(const FieldPtr& f, const std::vector<std::string>& fresh) {
    std::vector<std::string> vars = f->vars;
    for (const auto& v : fresh) {
        if (f->var_index(v)) fail(Errc::UsageError, "variable " + v + " already present");
        vars.push_back(v);
    }
    return field_functions(f->p, std::move(vars));
}

// ---------------------------------------------------------------------------

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (static_cast<unsigned __int128>(a) * b) % p;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) fail(Errc::DivisionByZero, "inverse of zero residue");
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt; nt = tmp;
        tmp = r - q * nr;
        r = nr; nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

BaseElem BaseElem::from_int(long long v, std::uint64_t p) {
    if (p == 0) return BaseElem(Rational(v));
    long long m = v % static_cast<long long>(p);
    if (m < 0) m += static_cast<long long>(p);
    return BaseElem(static_cast<std::uint64_t>(m), p);
}

BaseElem BaseElem::operator+(const BaseElem& o) const {
    check(o);
    if (p_ == 0) return BaseElem(q_ + o.q_);
    return BaseElem((r_ + o.r_) % p_, p_);
}

BaseElem BaseElem::operator-(const BaseElem& o) const {
    check(o);
    if (p_ == 0) return BaseElem(q_ - o.q_);
    return BaseElem((r_ + p_ - o.r_) % p_, p_);
}

BaseElem BaseElem::operator*(const BaseElem& o) const {
    check(o);
    if (p_ == 0) return BaseElem(q_ * o.q_);
    return BaseElem(mod_mul(r_, o.r_, p_), p_);
}

BaseElem BaseElem::operator/(const BaseElem& o) const {
    check(o);
    if (o.is_zero()) fail(Errc::DivisionByZero, "base element division by zero");
    if (p_ == 0) return BaseElem(q_ / o.q_);
    return BaseElem(mod_mul(r_, mod_inverse(o.r_, p_), p_), p_);
}

BaseElem BaseElem::operator-() const {
    if (p_ == 0) return BaseElem(-q_);
    return BaseElem(r_ == 0 ? 0 : p_ - r_, p_);
}

BaseElem BaseElem::inv() const { return one(p_) / *this; }

bool BaseElem::operator==(const BaseElem& o) const {
    check(o);
    return p_ == 0 ? q_ == o.q_ : r_ == o.r_;
}

std::string BaseElem::to_string() const {
    if (p_ == 0) {
        std::ostringstream os;
        os << q_;
        return os.str();
    }
    return std::to_string(r_);
}

} // namespace lldforge
