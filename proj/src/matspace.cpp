#include "lldforge/matspace.hpp"

#include <algorithm>

namespace lldforge {

MatSpace MatSpace::from_basis(FieldPtr f, std::size_t m, std::size_t n, std::vector<Mat> basis) {
    MatSpace s;
    s.field_ = std::move(f);
    s.m_ = m;
    s.n_ = n;
    for (const Mat& b : basis) {
        require_same_field(b.field(), s.field_);
        if (b.rows() != m || b.cols() != n) fail(Errc::DimensionMismatch, "basis matrix shape");
    }
    if (!basis.empty() && span_dim(basis) != basis.size())
        fail(Errc::PreconditionFailed, "basis matrices are linearly dependent");
    s.basis_ = std::move(basis);
    return s;
}

MatSpace MatSpace::from_spanning(FieldPtr f, std::size_t m, std::size_t n,
                                 std::vector<Mat> generators) {
    std::vector<Mat> indep = independent_subset(generators);
    return from_basis(std::move(f), m, n, std::move(indep));
}

Mat MatSpace::element(const std::vector<Scalar>& coords) const {
    if (coords.size() != dim()) fail(Errc::DimensionMismatch, "coordinate count");
    Mat acc = Mat::zero(field_, m_, n_);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].is_zero()) continue;
        acc = acc + basis_[i].scaled(coords[i]);
    }
    return acc;
}

// ---------------------------------------------------------------------------

std::uint64_t projective_count(std::uint64_t q, std::size_t s) {
    // (q^s - 1) / (q - 1), saturating at 2 * kEnumerationCap
    std::uint64_t total = 0, power = 1;
    for (std::size_t i = 0; i < s; ++i) {
        total += power;
        if (power > 4 * kEnumerationCap) return 4 * kEnumerationCap;
        power *= q;
    }
    return total;
}

void enumerate_projective(std::uint64_t q, std::size_t s,
                          const std::function<bool(const std::vector<std::uint64_t>&)>& visit) {
    std::vector<std::uint64_t> v(s, 0);
    // leading coordinate index runs from last to first; coordinates after it free
    for (std::size_t lead = s; lead-- > 0;) {
        std::fill(v.begin(), v.end(), 0);
        v[lead] = 1;
        // counter over positions lead+1..s-1
        for (;;) {
            if (!visit(v)) return;
            std::size_t pos = s;
            while (pos-- > lead + 1) {
                if (++v[pos] < q) break;
                v[pos] = 0;
            }
            if (pos == lead || pos == static_cast<std::size_t>(-1)) break;
        }
    }
}

void enumerate_all_vectors(std::uint64_t q, std::size_t s,
                           const std::function<bool(const std::vector<std::uint64_t>&)>& visit) {
    std::vector<std::uint64_t> v(s, 0);
    for (;;) {
        if (!visit(v)) return;
        std::size_t pos = s;
        while (pos-- > 0) {
            if (++v[pos] < q) break;
            v[pos] = 0;
        }
        if (pos == static_cast<std::size_t>(-1)) break;
    }
}

void enumerate_integer_grid(std::size_t s, long long height,
                            const std::function<bool(const std::vector<long long>&)>& visit) {
    const std::uint64_t radix = 2 * static_cast<std::uint64_t>(height) + 1;
    std::vector<long long> v(s);
    std::vector<std::uint64_t> digits(s, 0);
    for (;;) {
        bool zero = true, ok = false;
        for (std::size_t i = 0; i < s; ++i) {
            v[i] = static_cast<long long>(digits[i]) - height;
            if (v[i] != 0 && zero) {
                zero = false;
                ok = v[i] > 0;
            }
        }
        if (!zero && ok && !visit(v)) return;
        std::size_t pos = s;
        while (pos-- > 0) {
            if (++digits[pos] < radix) break;
            digits[pos] = 0;
        }
        if (pos == static_cast<std::size_t>(-1)) break;
    }
}

std::vector<Scalar> scalar_grid(const FieldPtr& f, long long height) {
    std::vector<Scalar> out;
    std::uint64_t p = f->characteristic();
    if (p != 0) {
        std::uint64_t limit = std::min<std::uint64_t>(p - 1, static_cast<std::uint64_t>(height));
        for (std::uint64_t v = 0; v <= limit; ++v) out.push_back(Scalar::of_int(f, static_cast<long long>(v)));
    } else {
        for (long long v = 0; v <= height; ++v) out.push_back(Scalar::of_int(f, v));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {
std::vector<std::string> fresh_var_names(const FieldPtr& f, std::size_t s,
                                         const std::vector<std::string>& wanted) {
    if (!wanted.empty()) {
        if (wanted.size() != s) fail(Errc::UsageError, "need one name per basis element");
        return wanted;
    }
    for (const char* base : {"x", "y", "z"}) {
        std::vector<std::string> names;
        bool ok = true;
        for (std::size_t i = 1; i <= s; ++i) {
            std::string n = base + std::to_string(i);
            if (f->var_index(n)) {
                ok = false;
                break;
            }
            names.push_back(std::move(n));
        }
        if (ok) return names;
    }
    fail(Errc::UsageError, "could not find fresh variable names");
}
} // namespace

GenericMat generic_matrix(const MatSpace& s, std::vector<std::string> names) {
    if (s.dim() == 0) fail(Errc::EmptyBasis, "generic matrix of the zero space");
    const FieldPtr& f = s.field();
    std::vector<std::string> fresh = fresh_var_names(f, s.dim(), names);
    FieldPtr ext = f->is_function_field() ? extend_with_vars(f, fresh)
                                          : field_functions(f->characteristic(), fresh);
    GenericMat g;
    g.space = s;
    g.extension = ext;
    g.names = fresh;
    Mat acc = Mat::zero(ext, s.m(), s.n());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        Scalar xi = Scalar::var(ext, fresh[i]);
        acc = acc + s.basis_at(i).widened(ext).scaled(xi);
    }
    g.mat = std::move(acc);
    return g;
}

std::size_t upper_rank(const MatSpace& s) {
    if (s.dim() == 0) return 0;
    GenericMat g = generic_matrix(s);
    std::size_t generic_rank = rank(g.mat);
    const FieldPtr& f = s.field();
    if (!f->is_finite()) return generic_rank;
    if (f->p > generic_rank) return generic_rank;
    // small field: the generic rank may overshoot; enumerate exhaustively
    if (projective_count(f->p, s.dim()) > kEnumerationCap)
        fail(Errc::EnumerationTooLarge, "upper_rank enumeration over " + f->to_string());
    std::size_t best = 0;
    enumerate_projective(f->p, s.dim(), [&](const std::vector<std::uint64_t>& c) {
        std::vector<Scalar> coords;
        coords.reserve(c.size());
        for (std::uint64_t v : c) coords.push_back(Scalar::of_int(f, static_cast<long long>(v)));
        best = std::max(best, rank(s.element(coords)));
        return best < std::min(s.m(), s.n());
    });
    return best;
}

MinRankResult min_rank(const MatSpace& s, long long height_cap,
                       std::optional<std::size_t> certified_lower_bound) {
    if (s.dim() == 0) fail(Errc::PreconditionFailed, "min_rank of the zero space");
    const FieldPtr& f = s.field();
    MinRankResult res;
    res.mrk = std::min(s.m(), s.n()) + 1;
    if (f->is_finite()) {
        if (projective_count(f->p, s.dim()) > kEnumerationCap)
            fail(Errc::EnumerationTooLarge, "min_rank enumeration over " + f->to_string());
        enumerate_projective(f->p, s.dim(), [&](const std::vector<std::uint64_t>& c) {
            std::vector<Scalar> coords;
            coords.reserve(c.size());
            for (std::uint64_t v : c) coords.push_back(Scalar::of_int(f, static_cast<long long>(v)));
            Mat e = s.element(coords);
            std::size_t r = rank(e);
            if (r < res.mrk) {
                res.mrk = r;
                res.witness = std::move(e);
                res.witness_coords = std::move(coords);
            }
            return res.mrk > 1;
        });
        res.exact = true;
        return res;
    }
    // Infinite field of positive characteristic: integer coefficients reduce
    // to the prime subfield, so sweep its projective combinations directly.
    if (f->characteristic() != 0) {
        enumerate_projective(f->characteristic(), s.dim(),
                             [&](const std::vector<std::uint64_t>& c) {
                                 std::vector<Scalar> coords;
                                 coords.reserve(c.size());
                                 for (std::uint64_t v : c)
                                     coords.push_back(Scalar::of_int(f, (long long)v));
                                 Mat e = s.element(coords);
                                 std::size_t r = rank(e);
                                 if (r < res.mrk) {
                                     res.mrk = r;
                                     res.witness = std::move(e);
                                     res.witness_coords = std::move(coords);
                                 }
                                 return res.mrk > 1;
                             });
        if (res.mrk > std::min(s.m(), s.n()))
            fail(Errc::NoWitnessFound, "no nonzero element found in the coefficient grid");
        res.exact = certified_lower_bound && *certified_lower_bound == res.mrk;
        return res;
    }
    // Over Q: deterministic grid of bounded height. With integer basis
    // entries, a full-rank certificate mod a fixed prime skips the exact
    // computation for almost every grid point; reduction mod p can only lower
    // the rank, so a mod-p rank at or above the current best never wins.
    std::vector<std::vector<std::int64_t>> int_basis;
    bool fast = f->kind == FieldKind::Rationals;
    if (fast) {
        for (const Mat& b : s.basis()) {
            std::vector<std::int64_t> flat;
            for (const Scalar& x : b.flatten()) {
                if (boost::multiprecision::denominator(x.rat()) != 1 ||
                    boost::multiprecision::abs(boost::multiprecision::numerator(x.rat())) >
                        (Int(1) << 40)) {
                    fast = false;
                    break;
                }
                flat.push_back(
                    static_cast<std::int64_t>(boost::multiprecision::numerator(x.rat())));
            }
            if (!fast) break;
            int_basis.push_back(std::move(flat));
        }
    }
    const std::int64_t prime = 1000003;
    std::vector<std::int64_t> entries(s.m() * s.n());
    enumerate_integer_grid(s.dim(), height_cap, [&](const std::vector<long long>& c) {
        if (fast) {
            std::fill(entries.begin(), entries.end(), 0);
            for (std::size_t i = 0; i < c.size(); ++i) {
                std::int64_t ci = c[i] % prime;
                if (ci == 0) continue;
                for (std::size_t k = 0; k < entries.size(); ++k)
                    entries[k] = (entries[k] + ci * (int_basis[i][k] % prime)) % prime;
            }
            if (rank_mod_p(entries, s.m(), s.n(), prime) >= res.mrk) return true;
        }
        std::vector<Scalar> coords;
        coords.reserve(c.size());
        for (long long v : c) coords.push_back(Scalar::of_int(f, v));
        Mat e = s.element(coords);
        if (e.is_zero()) return true;  // possible over positive characteristic
        std::size_t r = rank(e);
        if (r < res.mrk) {
            res.mrk = r;
            res.witness = std::move(e);
            res.witness_coords = std::move(coords);
        }
        return res.mrk > 1;
    });
    if (res.mrk > std::min(s.m(), s.n()))
        fail(Errc::NoWitnessFound, "no nonzero element found in the coefficient grid");
    res.exact = certified_lower_bound && *certified_lower_bound == res.mrk;
    return res;
}

MatSpace dual_space(const MatSpace& s) {
    const FieldPtr& f = s.field();
    std::vector<Mat> gens;
    for (std::size_t j = 0; j < s.n(); ++j) {
        Mat g(f, s.m(), s.dim());
        for (std::size_t i = 0; i < s.dim(); ++i)
            for (std::size_t row = 0; row < s.m(); ++row) g.at(row, i) = s.basis_at(i).at(row, j);
        gens.push_back(std::move(g));
    }
    return MatSpace::from_spanning(f, s.m(), s.dim(), std::move(gens));
}

ReducedDecomposition reduce(const MatSpace& s) {
    const FieldPtr& f = s.field();
    ReducedDecomposition out;
    // kernel of the space: stack the basis matrices vertically
    Mat stacked(f, s.m() * s.dim(), s.n());
    for (std::size_t i = 0; i < s.dim(); ++i) stacked.set_block(i * s.m(), 0, s.basis_at(i));
    out.kernel_basis = s.dim() == 0
                           ? std::vector<Mat>{}
                           : kernel_basis(stacked);
    if (s.dim() == 0)
        for (std::size_t j = 0; j < s.n(); ++j)
            out.kernel_basis.push_back(Mat::unit(f, s.n(), 1, j, 0));
    // essential range: span of all columns
    std::vector<Mat> cols;
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = 0; j < s.n(); ++j) cols.push_back(s.basis_at(i).col(j));
    out.essential_range_basis = independent_subset(cols);

    const std::size_t n2 = s.n() - out.kernel_basis.size();   // reduced source dim
    const std::size_t m2 = out.essential_range_basis.size();  // reduced target dim

    // Q: first n2 columns complete the kernel to a basis of K^n, kernel last
    std::vector<Mat> qcols;
    for (const Mat& k : out.kernel_basis) qcols.push_back(k);
    std::vector<Mat> source_basis = qcols;
    for (std::size_t j = 0; j < s.n() && source_basis.size() < s.n(); ++j) {
        Mat e = Mat::unit(f, s.n(), 1, j, 0);
        source_basis.push_back(e);
        if (span_dim(source_basis) != source_basis.size()) source_basis.pop_back();
    }
    Mat q(f, s.n(), s.n());
    for (std::size_t j = 0; j < n2; ++j) q.set_block(0, j, source_basis[out.kernel_basis.size() + j]);
    for (std::size_t j = 0; j < out.kernel_basis.size(); ++j)
        q.set_block(0, n2 + j, out.kernel_basis[j]);

    // P: first m2 columns span the essential range, completed to a basis
    std::vector<Mat> pcols = out.essential_range_basis;
    for (std::size_t j = 0; j < s.m() && pcols.size() < s.m(); ++j) {
        Mat e = Mat::unit(f, s.m(), 1, j, 0);
        pcols.push_back(e);
        if (span_dim(pcols) != pcols.size()) pcols.pop_back();
    }
    Mat p(f, s.m(), s.m());
    for (std::size_t j = 0; j < s.m(); ++j) p.set_block(0, j, pcols[j]);

    auto pinv = inverse(p);
    std::vector<Mat> reduced;
    for (const Mat& a : s.basis()) {
        Mat t = *pinv * a * q;
        reduced.push_back(t.block(0, 0, m2, n2));
    }
    out.reduced_space = MatSpace::from_basis(f, m2, n2, std::move(reduced));
    out.p = std::move(p);
    out.q = std::move(q);
    return out;
}

bool is_reduced(const MatSpace& s) {
    ReducedDecomposition d = reduce(s);
    return d.kernel_basis.empty() && d.essential_range_basis.size() == s.m();
}

Mat j_r_matrix(const FieldPtr& f, std::size_t m, std::size_t n, std::size_t r) {
    Mat j(f, m, n);
    for (std::size_t i = 0; i < r; ++i) j.at(i, i) = Scalar::one(f);
    return j;
}

std::vector<FlandersWitness> flanders_check(const MatSpace& s, std::size_t r) {
    const FieldPtr& f = s.field();
    if (r == 0 || r > std::min(s.m(), s.n()))
        fail(Errc::PreconditionFailed, "r out of range");
    if (f->is_finite() && f->p <= r)
        fail(Errc::PreconditionFailed,
             "field cardinality " + std::to_string(f->p) + " is not greater than r = " +
                 std::to_string(r));
    if (!s.contains(j_r_matrix(f, s.m(), s.n(), r)))
        fail(Errc::PreconditionFailed, "J_r is not in the space");
    if (upper_rank(s) > r) fail(Errc::PreconditionFailed, "upper rank exceeds r");

    std::vector<FlandersWitness> out;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const Mat& mmat = s.basis_at(i);
        FlandersWitness w;
        w.basis_index = i;
        w.r = r;
        w.a = mmat.block(0, 0, r, r);
        w.c = mmat.block(0, r, r, s.n() - r);
        w.b = mmat.block(r, 0, s.m() - r, r);
        w.d = mmat.block(r, r, s.m() - r, s.n() - r);
        if (!w.d.is_zero()) {
            w.violation = FlandersWitness::Violation{"D", 0};
        } else {
            Mat apow = Mat::identity(f, r);
            for (std::size_t k = 0; k < r; ++k) {
                if (k > 0) apow = apow * w.a;
                if (!(w.b * apow * w.c).is_zero()) {
                    w.violation = FlandersWitness::Violation{"BA^kC", k};
                    break;
                }
            }
        }
        out.push_back(std::move(w));
    }
    return out;
}

bool flanders_all_pass(const std::vector<FlandersWitness>& ws) {
    return std::all_of(ws.begin(), ws.end(),
                       [](const FlandersWitness& w) { return !w.violation; });
}

MatSpace apply_equivalence(const MatSpace& s, const Mat& p, const Mat& q) {
    if (p.rows() != s.m() || p.cols() != s.m() || q.rows() != s.n() || q.cols() != s.n())
        fail(Errc::DimensionMismatch, "transform shapes");
    if (rank(p) != s.m() || rank(q) != s.n())
        fail(Errc::SingularTransform, "equivalence transforms must be invertible");
    std::vector<Mat> basis;
    for (const Mat& a : s.basis()) basis.push_back(p * a * q);
    return MatSpace::from_basis(s.field(), s.m(), s.n(), std::move(basis));
}

bool decomposition_bound_check(const MatSpace& sp, std::size_t r, std::size_t s) {
    const FieldPtr& f = sp.field();
    if (r > sp.m() || s > sp.n()) fail(Errc::PatternViolation, "block split out of range");
    for (const Mat& mmat : sp.basis())
        if (!mmat.block(r, s, sp.m() - r, sp.n() - s).is_zero())
            fail(Errc::PatternViolation, "lower-right block is not zero");
    if (sp.dim() == 0) return true;
    std::size_t urk_s = upper_rank(sp);
    if (f->is_finite() && f->p <= urk_s)
        fail(Errc::PreconditionFailed, "field cardinality not greater than upper rank");

    GenericMat g = generic_matrix(sp);
    std::size_t rank_b = rank(g.mat.block(r, 0, sp.m() - r, s));
    std::size_t rank_c = rank(g.mat.block(0, s, r, sp.n() - s));

    std::vector<Mat> bgens, cgens;
    for (const Mat& mmat : sp.basis()) {
        bgens.push_back(mmat.block(r, 0, sp.m() - r, s));
        cgens.push_back(mmat.block(0, s, r, sp.n() - s));
    }
    std::size_t urk_b = upper_rank(MatSpace::from_spanning(f, sp.m() - r, s, bgens));
    std::size_t urk_c = upper_rank(MatSpace::from_spanning(f, r, sp.n() - s, cgens));

    return rank_b == urk_b && rank_c == urk_c && urk_s >= urk_b + urk_c;
}

} // namespace lldforge
