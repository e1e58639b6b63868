#include "lldforge/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace lldforge {

Mat Mat::identity(const FieldPtr& f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Mat Mat::zero(const FieldPtr& f, std::size_t rows, std::size_t cols) { return Mat(f, rows, cols); }

Mat Mat::unit(const FieldPtr& f, std::size_t rows, std::size_t cols, std::size_t i,
              std::size_t j) {
    Mat m(f, rows, cols);
    m.at(i, j) = Scalar::one(f);
    return m;
}

Mat Mat::from_strings(const FieldPtr& f, const std::vector<std::vector<std::string>>& rows) {
    Mat m(f, rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) fail(Errc::DimensionMismatch, "ragged matrix literal");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = parse_scalar(f, rows[i][j]);
    }
    return m;
}

Mat Mat::from_ints(const FieldPtr& f, const std::vector<std::vector<long long>>& rows) {
    Mat m(f, rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) fail(Errc::DimensionMismatch, "ragged matrix literal");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = Scalar::of_int(f, rows[i][j]);
    }
    return m;
}

Mat Mat::col_vector(const FieldPtr& f, const std::vector<Scalar>& v) {
    Mat m(f, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    require_same_field(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::DimensionMismatch, "matrix add");
    Mat r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    require_same_field(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::DimensionMismatch, "matrix sub");
    Mat r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    require_same_field(field_, o.field_);
    if (cols_ != o.rows_) fail(Errc::DimensionMismatch, "matrix mul");
    Mat r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& x = at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) = r.at(i, j) + x * o.at(k, j);
            }
        }
    return r;
}

Mat Mat::scaled(const Scalar& c) const {
    Mat r = *this;
    for (auto& x : r.a_) x = x * c;
    return r;
}

Mat Mat::operator-() const {
    Mat r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

bool Mat::operator==(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t k = 0; k < a_.size(); ++k)
        if (a_[k] != o.a_[k]) return false;
    return true;
}

Mat Mat::transpose() const {
    Mat r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Mat::is_identity() const {
    if (!is_square()) return false;
    return *this == identity(field_, rows_);
}

bool Mat::is_alternating() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (!at(i, i).is_zero()) return false;
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != -at(j, i)) return false;
    }
    return true;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Mat r(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
    return r;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) fail(Errc::DimensionMismatch, "hstack");
    Mat r(a.field(), a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) fail(Errc::DimensionMismatch, "vstack");
    Mat r(a.field(), a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

Mat Mat::col(std::size_t j) const { return block(0, j, rows_, 1); }
Mat Mat::row(std::size_t i) const { return block(i, 0, 1, cols_); }

Mat Mat::widened(const FieldPtr& wider) const {
    Mat r(wider, rows_, cols_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k].widened(wider);
    return r;
}

std::string Mat::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).to_string();
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// elimination kernels

namespace {

// Row-reduce over the field, in place; returns pivot columns. Pivot choice
// prefers low-degree entries over function fields to limit fraction growth.
std::vector<std::size_t> row_echelon(Mat& m) {
    const FieldPtr& f = m.field();
    const bool ff = f->is_function_field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t best = m.rows();
        std::uint64_t best_deg = ~0ull;
        for (std::size_t i = r; i < m.rows(); ++i) {
            if (m.at(i, c).is_zero()) continue;
            if (!ff) {
                best = i;
                break;
            }
            const FuncFrac& fr = m.at(i, c).frac();
            std::uint64_t deg = fr.num().degree() + fr.den().degree();
            std::uint64_t size = fr.num().term_count() + fr.den().term_count();
            std::uint64_t score = (deg << 20) + size;
            if (score < best_deg) {
                best_deg = score;
                best = i;
            }
        }
        if (best == m.rows()) continue;
        if (best != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(best, j));
        Scalar inv = m.at(r, c).inv();
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar factor = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - factor * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

struct PolyGrid {
    std::vector<std::vector<MultiPoly>> a;
    std::size_t rows, cols;
};

// clear denominators row-wise, returning a polynomial matrix with the same
// rank and, per row, the polynomial the row was multiplied by
PolyGrid clear_denominators(const Mat& m, std::vector<MultiPoly>* row_factors) {
    const FieldPtr& f = m.field();
    PolyGrid g{{}, m.rows(), m.cols()};
    g.a.assign(m.rows(), std::vector<MultiPoly>(m.cols(), MultiPoly(f->var_count(), f->p)));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        MultiPoly mult = MultiPoly::constant(f->var_count(), BaseElem::one(f->p));
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const FuncFrac& fr = m.at(i, j).frac();
            if (!fr.den().is_constant() && !fr.num().is_zero()) mult = mult * fr.den();
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const FuncFrac& fr = m.at(i, j).frac();
            if (fr.num().is_zero()) continue;
            g.a[i][j] = fr.num() * mult.divexact(fr.den());
        }
        if (row_factors) row_factors->push_back(mult);
    }
    return g;
}

// Two-step fraction-free (Bareiss) elimination on a polynomial grid.
// Returns the rank; when `det_out` is non-null the grid must be square and
// the signed last pivot (the determinant) is stored there.
std::size_t bareiss_rank(PolyGrid& g, MultiPoly* det_out) {
    const std::size_t rows = g.rows, cols = g.cols;
    MultiPoly prev;  // previous pivot; empty means 1
    bool have_prev = false;
    int sign = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // lowest-degree pivot in column c
        std::size_t best = rows;
        std::uint64_t best_score = ~0ull;
        for (std::size_t i = r; i < rows; ++i) {
            if (g.a[i][c].is_zero()) continue;
            std::uint64_t score =
                (static_cast<std::uint64_t>(g.a[i][c].degree()) << 20) + g.a[i][c].term_count();
            if (score < best_score) {
                best_score = score;
                best = i;
            }
        }
        if (best == rows) {
            if (det_out) {
                *det_out = MultiPoly(g.a[0][0].nvars(), g.a[0][0].base_modulus());
                det_out = nullptr;
            }
            continue;
        }
        if (best != r) {
            std::swap(g.a[best], g.a[r]);
            sign = -sign;
        }
        const MultiPoly pivot = g.a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                MultiPoly t = g.a[i][j] * pivot - g.a[i][c] * g.a[r][j];
                g.a[i][j] = have_prev ? t.divexact(prev) : std::move(t);
            }
            g.a[i][c] = MultiPoly(g.a[i][c].nvars(), g.a[i][c].base_modulus());
        }
        prev = pivot;
        have_prev = true;
        ++r;
    }
    if (det_out) {
        if (r == rows && rows == cols) {
            *det_out = sign < 0 ? -prev : prev;
        } else {
            *det_out = MultiPoly(g.a.empty() ? 0 : g.a[0][0].nvars(),
                                 g.a.empty() ? 0 : g.a[0][0].base_modulus());
        }
    }
    return r;
}

} // namespace

std::size_t rank(const Mat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (m.field()->is_function_field()) {
        PolyGrid g = clear_denominators(m, nullptr);
        return bareiss_rank(g, nullptr);
    }
    Mat work = m;
    return row_echelon(work).size();
}

std::vector<Mat> kernel_basis(const Mat& m) {
    const FieldPtr& f = m.field();
    Mat work = m;
    std::vector<std::size_t> pivots = row_echelon(work);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<Mat> basis;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        Mat v(f, m.cols(), 1);
        v.at(c, 0) = Scalar::one(f);
        for (std::size_t k = 0; k < pivots.size(); ++k) v.at(pivots[k], 0) = -work.at(k, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

Scalar det(const Mat& m) {
    if (!m.is_square()) fail(Errc::NotSquare, "determinant of a non-square matrix");
    const FieldPtr& f = m.field();
    if (m.rows() == 0) return Scalar::one(f);
    if (f->is_function_field()) {
        std::vector<MultiPoly> factors;
        PolyGrid g = clear_denominators(m, &factors);
        MultiPoly d(f->var_count(), f->p);
        bareiss_rank(g, &d);
        FuncFrac result = FuncFrac::of_poly(d);
        for (const MultiPoly& mult : factors)
            result = result / FuncFrac::of_poly(mult);
        return Scalar::of_frac(f, result);
    }
    Mat work = m;
    Scalar d = Scalar::one(f);
    std::size_t r = 0;
    for (std::size_t c = 0; c < work.cols(); ++c) {
        std::size_t piv = work.rows();
        for (std::size_t i = r; i < work.rows(); ++i)
            if (!work.at(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv == work.rows()) return Scalar::zero(f);
        if (piv != r) {
            for (std::size_t j = 0; j < work.cols(); ++j) std::swap(work.at(r, j), work.at(piv, j));
            d = -d;
        }
        d = d * work.at(r, c);
        Scalar inv = work.at(r, c).inv();
        for (std::size_t i = r + 1; i < work.rows(); ++i) {
            if (work.at(i, c).is_zero()) continue;
            Scalar factor = work.at(i, c) * inv;
            for (std::size_t j = c; j < work.cols(); ++j)
                work.at(i, j) = work.at(i, j) - factor * work.at(r, j);
        }
        ++r;
    }
    return d;
}

namespace {
Scalar pfaffian_rec(const Mat& m, std::vector<std::size_t>& idx) {
    const FieldPtr& f = m.field();
    if (idx.empty()) return Scalar::one(f);
    if (idx.size() == 2) return m.at(idx[0], idx[1]);
    Scalar acc = Scalar::zero(f);
    std::size_t i0 = idx[0];
    for (std::size_t k = 1; k < idx.size(); ++k) {
        const Scalar& c = m.at(i0, idx[k]);
        if (c.is_zero()) continue;
        std::vector<std::size_t> rest;
        rest.reserve(idx.size() - 2);
        for (std::size_t t = 1; t < idx.size(); ++t)
            if (t != k) rest.push_back(idx[t]);
        Scalar term = c * pfaffian_rec(m, rest);
        // expansion along the first retained row: signs alternate +,-,+,...
        if (k % 2 == 0) term = -term;
        acc = acc + term;
    }
    return acc;
}
} // namespace

Scalar pfaffian(const Mat& m) {
    if (!m.is_square()) fail(Errc::NotSquare, "pfaffian of a non-square matrix");
    if (m.rows() % 2 != 0) fail(Errc::NotSquare, "pfaffian needs even dimension");
    if (!m.is_alternating()) fail(Errc::NotAlternating, "pfaffian of a non-alternating matrix");
    std::vector<std::size_t> idx(m.rows());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return pfaffian_rec(m, idx);
}

std::optional<Mat> inverse(const Mat& m) {
    if (!m.is_square()) fail(Errc::NotSquare, "inverse of a non-square matrix");
    Mat aug = Mat::hstack(m, Mat::identity(m.field(), m.rows()));
    std::vector<std::size_t> pivots = row_echelon(aug);
    if (pivots.size() != m.rows() || (m.rows() > 0 && pivots.back() >= m.rows()))
        return std::nullopt;
    return aug.block(0, m.cols(), m.rows(), m.cols());
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) fail(Errc::DimensionMismatch, "solve");
    Mat aug = Mat::hstack(a, b);
    std::vector<std::size_t> pivots = row_echelon(aug);
    for (std::size_t c : pivots)
        if (c >= a.cols()) return std::nullopt;  // inconsistent system
    Mat x(a.field(), a.cols(), b.cols());
    for (std::size_t k = 0; k < pivots.size(); ++k)
        for (std::size_t j = 0; j < b.cols(); ++j) x.at(pivots[k], j) = aug.at(k, a.cols() + j);
    return x;
}

Mat specialize(const Mat& m, const std::map<std::string, Scalar>& point) {
    const FieldPtr& f = m.field();
    if (!f->is_function_field()) fail(Errc::DescriptorMismatch, "specialize needs a function field");
    FieldPtr base = base_field(f);
    std::vector<BaseElem> values;
    for (const auto& name : f->vars) {
        auto it = point.find(name);
        if (it == point.end()) fail(Errc::UsageError, "unassigned variable " + name);
        const Scalar& s = it->second;
        require_same_field(s.field(), base);
        values.push_back(f->p == 0 ? BaseElem(s.rat()) : BaseElem(s.residue(), f->p));
    }
    Mat out(base, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const FuncFrac& fr = m.at(i, j).frac();
            BaseElem den = fr.den().eval(values);
            if (den.is_zero())
                fail(Errc::PoleAtPoint, "denominator vanishes at the specialization point");
            out.at(i, j) = Scalar::of_base(base, fr.num().eval(values) / den);
        }
    return out;
}

Mat substitute_vars(const Mat& m, const std::map<std::string, Scalar>& assign,
                    const FieldPtr& target) {
    const FieldPtr& f = m.field();
    if (!f->is_function_field()) fail(Errc::DescriptorMismatch, "substitute needs a function field");
    std::vector<std::optional<BaseElem>> values(f->var_count());
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < f->var_count(); ++i) {
        auto it = assign.find(f->vars[i]);
        if (it != assign.end()) {
            const Scalar& s = it->second;
            require_same_field(s.field(), base_field(f));
            values[i] = f->p == 0 ? BaseElem(s.rat()) : BaseElem(s.residue(), f->p);
        } else {
            if (target->var_index(f->vars[i]) != keep.size() ||
                keep.size() >= target->var_count())
                fail(Errc::UsageError, "target field must list unassigned variables in order");
            keep.push_back(i);
        }
    }
    if (target->is_function_field() && target->var_count() != keep.size())
        fail(Errc::UsageError, "target variable count mismatch");
    Mat out(target, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const FuncFrac& fr = m.at(i, j).frac();
            MultiPoly num = fr.num().substitute(values, keep);
            MultiPoly den = fr.den().substitute(values, keep);
            if (den.is_zero()) fail(Errc::PoleAtPoint, "denominator vanishes under substitution");
            if (target->is_function_field()) {
                out.at(i, j) = Scalar::of_frac(target, FuncFrac(num, den));
            } else {
                BaseElem d = den.constant_value();
                if (!num.is_constant() || d.is_zero())
                    fail(Errc::UsageError, "substitution did not reach the base field");
                out.at(i, j) = Scalar::of_base(target, num.constant_value() / d);
            }
        }
    return out;
}

std::size_t rank_mod_p(std::vector<std::int64_t> e, std::size_t rows, std::size_t cols,
                       std::int64_t p) {
    for (auto& v : e) {
        v %= p;
        if (v < 0) v += p;
    }
    auto at = [&](std::size_t i, std::size_t j) -> std::int64_t& { return e[i * cols + j]; };
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(at(r, j), at(piv, j));
        std::int64_t inv = static_cast<std::int64_t>(
            mod_inverse(static_cast<std::uint64_t>(at(r, c)), static_cast<std::uint64_t>(p)));
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (at(i, c) == 0) continue;
            std::int64_t factor = (at(i, c) * inv) % p;
            for (std::size_t j = c; j < cols; ++j) {
                at(i, j) = (at(i, j) - factor * at(r, j)) % p;
                if (at(i, j) < 0) at(i, j) += p;
            }
        }
        ++r;
    }
    return r;
}

// ---------------------------------------------------------------------------
// span helpers

namespace {
Mat flatten_rows(const std::vector<Mat>& mats) {
    const FieldPtr& f = mats.front().field();
    std::size_t width = mats.front().rows() * mats.front().cols();
    Mat m(f, mats.size(), width);
    for (std::size_t i = 0; i < mats.size(); ++i) {
        std::vector<Scalar> flat = mats[i].flatten();
        for (std::size_t j = 0; j < width; ++j) m.at(i, j) = flat[j];
    }
    return m;
}
} // namespace

std::size_t span_dim(const std::vector<Mat>& mats) {
    if (mats.empty()) return 0;
    return rank(flatten_rows(mats));
}

bool in_span(const std::vector<Mat>& basis, const Mat& m) {
    if (m.is_zero()) return true;
    if (basis.empty()) return false;
    std::vector<Mat> joint = basis;
    joint.push_back(m);
    return span_dim(joint) == span_dim(basis);
}

bool same_span(const std::vector<Mat>& a, const std::vector<Mat>& b) {
    std::size_t da = span_dim(a), db = span_dim(b);
    if (da != db) return false;
    if (a.empty() || b.empty()) return da == db;
    std::vector<Mat> joint = a;
    joint.insert(joint.end(), b.begin(), b.end());
    return span_dim(joint) == da;
}

std::vector<Mat> independent_subset(const std::vector<Mat>& mats) {
    std::vector<Mat> out;
    std::size_t dim = 0;
    for (const Mat& m : mats) {
        if (m.is_zero()) continue;
        out.push_back(m);
        std::size_t d = span_dim(out);
        if (d == dim)
            out.pop_back();
        else
            dim = d;
    }
    return out;
}

std::optional<std::vector<Scalar>> span_coordinates(const std::vector<Mat>& basis, const Mat& m) {
    const FieldPtr& f = m.field();
    if (basis.empty()) {
        if (m.is_zero()) return std::vector<Scalar>{};
        return std::nullopt;
    }
    Mat cols = flatten_rows(basis).transpose();
    std::vector<Scalar> flat = m.flatten();
    Mat target = Mat::col_vector(f, flat);
    auto x = solve(cols, target);
    if (!x) return std::nullopt;
    // confirm (solve returns the least echelon solution; verify exactly)
    Mat check = cols * *x;
    if (check != target) return std::nullopt;
    std::vector<Scalar> coords;
    for (std::size_t i = 0; i < basis.size(); ++i) coords.push_back(x->at(i, 0));
    return coords;
}

} // namespace lldforge
