#include "lldforge/poly.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lldforge {

std::uint32_t total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    std::uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly MultiPoly::constant(std::size_t nvars, BaseElem c) {
    MultiPoly p(nvars, c.modulus());
    if (!c.is_zero()) p.terms_.emplace(Exponents(nvars, 0), std::move(c));
    return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::uint64_t base_p, std::size_t index) {
    MultiPoly p(nvars, base_p);
    Exponents e(nvars, 0);
    e.at(index) = 1;
    p.terms_.emplace(std::move(e), BaseElem::one(base_p));
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

BaseElem MultiPoly::constant_value() const {
    if (terms_.empty()) return BaseElem::zero(p_);
    return terms_.begin()->second;
}

std::uint32_t MultiPoly::degree() const {
    if (terms_.empty()) return 0;
    return total_degree(terms_.rbegin()->first);
}

bool MultiPoly::is_homogeneous(std::uint32_t d) const {
    for (const auto& [e, c] : terms_)
        if (total_degree(e) != d) return false;
    return true;
}

void MultiPoly::add_term(const Exponents& e, const BaseElem& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    check(o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    check(o);
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    check(o);
    MultiPoly r(nvars_, p_);
    Exponents e(nvars_, 0);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_, p_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MultiPoly MultiPoly::scaled(const BaseElem& c) const {
    MultiPoly r(nvars_, p_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    check(o);
    return terms_ == o.terms_;
}

const Exponents& MultiPoly::lead_exponents() const { return terms_.rbegin()->first; }
const BaseElem& MultiPoly::lead_coeff() const { return terms_.rbegin()->second; }

namespace {
bool exp_divides(const Exponents& d, const Exponents& e) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > e[i]) return false;
    return true;
}
} // namespace

MultiPoly MultiPoly::divexact(const MultiPoly& d) const {
    check(d);
    if (d.is_zero()) fail(Errc::DivisionByZero, "polynomial division by zero");
    MultiPoly rem = *this;
    MultiPoly quo(nvars_, p_);
    const Exponents& dl = d.lead_exponents();
    const BaseElem& dc = d.lead_coeff();
    Exponents q(nvars_, 0);
    while (!rem.is_zero()) {
        const Exponents& rl = rem.lead_exponents();
        if (!exp_divides(dl, rl))
            fail(Errc::NotInvertible, "inexact polynomial division");
        for (std::size_t i = 0; i < nvars_; ++i) q[i] = rl[i] - dl[i];
        BaseElem qc = rem.lead_coeff() / dc;
        quo.add_term(q, qc);
        MultiPoly t(nvars_, p_);
        t.terms_.emplace(q, qc);
        rem = rem - t * d;
    }
    return quo;
}

bool MultiPoly::divisible_by(const MultiPoly& d) const {
    if (d.is_zero()) return is_zero();
    MultiPoly rem = *this;
    const Exponents& dl = d.lead_exponents();
    const BaseElem& dc = d.lead_coeff();
    Exponents q(nvars_, 0);
    while (!rem.is_zero()) {
        const Exponents& rl = rem.lead_exponents();
        if (!exp_divides(dl, rl)) return false;
        for (std::size_t i = 0; i < nvars_; ++i) q[i] = rl[i] - dl[i];
        BaseElem qc = rem.lead_coeff() / dc;
        MultiPoly t(nvars_, p_);
        t.terms_.emplace(q, qc);
        rem = rem - t * d;
    }
    return true;
}

BaseElem MultiPoly::normalize_content() {
    if (terms_.empty()) return BaseElem::one(p_);
    BaseElem factor = BaseElem::one(p_);
    if (p_ != 0) {
        factor = lead_coeff();
    } else {
        // integer content with the sign of the leading coefficient
        Int num_gcd = 0, den_lcm = 1;
        for (const auto& [e, c] : terms_) {
            num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(c.rat()));
            den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c.rat()));
        }
        Rational content(num_gcd, den_lcm);
        if (lead_coeff().rat() < 0) content = -content;
        factor = BaseElem(content);
    }
    if (!factor.is_one()) {
        BaseElem inv = factor.inv();
        for (auto& [e, c] : terms_) c = c * inv;
    }
    return factor;
}

Exponents MultiPoly::common_monomial() const {
    Exponents m(nvars_, 0);
    if (terms_.empty()) return m;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (first) {
            m = e;
            first = false;
        } else {
            for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
        }
        if (total_degree(m) == 0) break;
    }
    return m;
}

void MultiPoly::shift_down(const Exponents& shift) {
    if (total_degree(shift) == 0) return;
    std::map<Exponents, BaseElem, GrlexLess> out;
    for (auto& [e, c] : terms_) {
        Exponents ne(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) ne[i] = e[i] - shift[i];
        out.emplace(std::move(ne), std::move(c));
    }
    terms_ = std::move(out);
}

BaseElem MultiPoly::eval(const std::vector<BaseElem>& point) const {
    BaseElem acc = BaseElem::zero(p_);
    for (const auto& [e, c] : terms_) {
        BaseElem t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t = t * point[i];
        acc = acc + t;
    }
    return acc;
}

MultiPoly MultiPoly::substitute(const std::vector<std::optional<BaseElem>>& assign,
                                const std::vector<std::size_t>& keep) const {
    MultiPoly out(keep.size(), p_);
    Exponents ne(keep.size(), 0);
    for (const auto& [e, c] : terms_) {
        BaseElem t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (assign[i]) {
                for (std::uint32_t k = 0; k < e[i]; ++k) t = t * *assign[i];
            }
        }
        for (std::size_t j = 0; j < keep.size(); ++j) ne[j] = e[keep[j]];
        out.add_term(ne, t);
    }
    return out;
}

MultiPoly MultiPoly::embed(std::size_t new_nvars, const std::vector<std::size_t>& map) const {
    MultiPoly out(new_nvars, p_);
    Exponents ne(new_nvars, 0);
    for (const auto& [e, c] : terms_) {
        std::fill(ne.begin(), ne.end(), 0);
        for (std::size_t i = 0; i < nvars_; ++i) ne[map[i]] = e[i];
        out.terms_.emplace(ne, c);
    }
    return out;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print in descending graded-lex order
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string cs = c.to_string();
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        os << (first ? (neg ? "-" : "") : (neg ? "-" : "+"));
        first = false;
        bool has_vars = total_degree(e) > 0;
        bool coeff_is_one = (cs == "1");
        if (!coeff_is_one || !has_vars) os << cs;
        bool need_star = !coeff_is_one && has_vars;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << "*";
            need_star = true;
            os << names[i];
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

FuncFrac FuncFrac::of_poly(MultiPoly p) {
    MultiPoly one = MultiPoly::constant(p.nvars(), BaseElem::one(p.base_modulus()));
    return FuncFrac(std::move(p), std::move(one));
}

FuncFrac::FuncFrac(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(Errc::DivisionByZero, "zero denominator");
    reduce();
}

void FuncFrac::reduce() {
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(den_.nvars(), BaseElem::one(den_.base_modulus()));
        return;
    }
    // common monomial factor
    Exponents m = num_.common_monomial();
    const Exponents dm = den_.common_monomial();
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], dm[i]);
    num_.shift_down(m);
    den_.shift_down(m);
    // make the denominator monic (F_p) / primitive with positive lead (Q),
    // folding the factor into the numerator so the value is unchanged
    BaseElem f = den_.normalize_content();
    num_ = num_.scaled(f.inv());
    if (den_.is_constant()) {
        den_ = MultiPoly::constant(den_.nvars(), BaseElem::one(den_.base_modulus()));
    }
    if (num_.degree() > kFracDegreeCap || den_.degree() > kFracDegreeCap)
        fail(Errc::DegreeCapExceeded, "fraction degree exceeds cap of " +
                                          std::to_string(kFracDegreeCap));
}

FuncFrac FuncFrac::operator+(const FuncFrac& o) const {
    return FuncFrac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FuncFrac FuncFrac::operator-(const FuncFrac& o) const { return *this + (-o); }

FuncFrac FuncFrac::operator*(const FuncFrac& o) const {
    return FuncFrac(num_ * o.num_, den_ * o.den_);
}

FuncFrac FuncFrac::operator/(const FuncFrac& o) const {
    if (o.is_zero()) fail(Errc::DivisionByZero, "fraction division by zero");
    return FuncFrac(num_ * o.den_, den_ * o.num_);
}

FuncFrac FuncFrac::operator-() const {
    FuncFrac r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

FuncFrac FuncFrac::inv() const {
    if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero fraction");
    return FuncFrac(den_, num_);
}

bool FuncFrac::operator==(const FuncFrac& o) const {
    return num_ * o.den_ == o.num_ * den_;
}

std::string FuncFrac::to_string(const std::vector<std::string>& names) const {
    if (is_poly()) {
        if (den_.constant_value().is_one()) return num_.to_string(names);
        // constant but non-unit denominator can only happen over Q mid-reduction
        return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
    }
    return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

} // namespace lldforge
