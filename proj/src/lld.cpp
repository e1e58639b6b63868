#include "lldforge/lld.hpp"

#include <algorithm>

namespace lldforge {

Mat evaluation_matrix(const MatSpace& s, const Mat& x) {
    Mat e(s.field(), s.m(), s.dim());
    for (std::size_t i = 0; i < s.dim(); ++i) {
        Mat col = s.basis_at(i) * x;
        for (std::size_t r = 0; r < s.m(); ++r) e.at(r, i) = col.at(r, 0);
    }
    return e;
}

namespace {

// deterministic search for a point where the evaluation rank is maximal:
// exhaustive over finite fields, first hit on the {0..r}^n grid otherwise
Mat rank_optimal_point(const MatSpace& s, std::size_t target) {
    const FieldPtr& f = s.field();
    std::optional<Mat> found;
    if (f->is_finite()) {
        if (projective_count(f->p, s.n()) > kEnumerationCap)
            fail(Errc::EnumerationTooLarge, "rank-optimal point search");
        enumerate_projective(f->p, s.n(), [&](const std::vector<std::uint64_t>& c) {
            Mat x(f, s.n(), 1);
            for (std::size_t i = 0; i < s.n(); ++i)
                x.at(i, 0) = Scalar::of_int(f, static_cast<long long>(c[i]));
            if (rank(evaluation_matrix(s, x)) == target) {
                found = std::move(x);
                return false;
            }
            return true;
        });
    } else {
        // minors of the evaluation matrix have degree at most `target` in
        // each coordinate, so the grid {0..target}^n contains a witness
        std::vector<std::uint64_t> digits(s.n(), 0);
        const std::uint64_t radix = static_cast<std::uint64_t>(target) + 1;
        for (;;) {
            Mat x(f, s.n(), 1);
            bool zero = true;
            for (std::size_t i = 0; i < s.n(); ++i) {
                x.at(i, 0) = Scalar::of_int(f, static_cast<long long>(digits[i]));
                zero = zero && digits[i] == 0;
            }
            if (!zero && rank(evaluation_matrix(s, x)) == target) {
                found = std::move(x);
                break;
            }
            std::size_t pos = s.n();
            while (pos-- > 0) {
                if (++digits[pos] < radix) break;
                digits[pos] = 0;
            }
            if (pos == static_cast<std::size_t>(-1)) break;
        }
    }
    if (!found) fail(Errc::NoWitnessFound, "no rank-optimal point in the search grid");
    return *found;
}

} // namespace

LldReport analyze(const MatSpace& s) {
    if (s.dim() == 0) fail(Errc::EmptyBasis, "cannot analyze the zero space");
    LldReport rep;
    rep.space_dim = s.dim();
    MatSpace dual = dual_space(s);
    rep.rank_optimal_rank = upper_rank(dual);
    rep.c_max = s.dim() - rep.rank_optimal_rank;
    rep.rank_optimal_point = rank_optimal_point(s, rep.rank_optimal_rank);
    Mat eval = evaluation_matrix(s, rep.rank_optimal_point);
    rep.kernel_coords = kernel_basis(eval);
    for (const Mat& c : rep.kernel_coords) {
        std::vector<Scalar> coords;
        for (std::size_t i = 0; i < s.dim(); ++i) coords.push_back(c.at(i, 0));
        Mat op = s.element(coords);
        std::size_t r = rank(op);
        if (!rep.witness_small_rank || r < rep.witness_small_rank->second)
            rep.witness_small_rank = {op, r};
        rep.kernel_ops.push_back(std::move(op));
    }
    return rep;
}

bool basic_lemma_check(const MatSpace& s) {
    LldReport rep = analyze(s);
    const FieldPtr& f = s.field();
    if (f->is_finite() && f->p <= rep.rank_optimal_rank)
        fail(Errc::PreconditionFailed,
             "field cardinality must exceed the rank-optimal rank");
    Mat eval = evaluation_matrix(s, rep.rank_optimal_point);
    std::vector<Mat> image;
    for (std::size_t j = 0; j < eval.cols(); ++j) image.push_back(eval.col(j));
    image = independent_subset(image);
    for (const Mat& op : rep.kernel_ops)
        for (std::size_t j = 0; j < op.cols(); ++j)
            if (!in_span(image, op.col(j))) return false;
    return true;
}

SmallRankWitness small_rank_witness(const MatSpace& s, std::size_t c) {
    LldReport rep = analyze(s);
    if (c > rep.c_max)
        fail(Errc::PreconditionFailed, "the space is not c-LLD for the requested c");
    SmallRankWitness w;
    if (c == 0) {
        w.t_basis = s.basis();
        ReducedDecomposition d = reduce(s);
        w.v0_basis = d.essential_range_basis;
        return w;
    }
    const FieldPtr& f = s.field();
    if (f->is_finite() && f->p <= s.dim() - c)
        fail(Errc::PreconditionFailed, "field cardinality must exceed dim - c");
    w.t_basis = rep.kernel_ops;
    Mat eval = evaluation_matrix(s, rep.rank_optimal_point);
    std::vector<Mat> image;
    for (std::size_t j = 0; j < eval.cols(); ++j) image.push_back(eval.col(j));
    w.v0_basis = independent_subset(image);
    if (w.t_basis.size() < c || w.v0_basis.size() > s.dim() - c)
        fail(Errc::IdentityViolated, "witness dimensions violate the counting bound");
    for (const Mat& op : w.t_basis)
        for (std::size_t j = 0; j < op.cols(); ++j)
            if (!in_span(w.v0_basis, op.col(j)))
                fail(Errc::IdentityViolated, "kernel image escapes V0");
    return w;
}

std::uint64_t count_small_rank(const MatSpace& s, std::size_t c) {
    const FieldPtr& f = s.field();
    if (!f->is_finite()) fail(Errc::PreconditionFailed, "counting needs a finite field");
    LldReport rep = analyze(s);
    if (c > rep.c_max)
        fail(Errc::PreconditionFailed, "the space is not c-LLD for the requested c");
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        total *= f->p;
        if (total > kEnumerationCap) fail(Errc::EnumerationTooLarge, "element enumeration");
    }
    std::uint64_t count = 0;
    enumerate_all_vectors(f->p, s.dim(), [&](const std::vector<std::uint64_t>& cc) {
        std::vector<Scalar> coords;
        for (std::uint64_t v : cc) coords.push_back(Scalar::of_int(f, static_cast<long long>(v)));
        if (rank(s.element(coords)) + c <= s.dim()) ++count;
        return true;
    });
    std::uint64_t qc = 1;
    for (std::size_t i = 0; i < c; ++i) qc *= f->p;
    if (count < qc) fail(Errc::IdentityViolated, "small-rank count fell below q^c");
    return count;
}

bool amitsur_bound_check(const MatSpace& s) {
    LldReport rep = analyze(s);
    if (!rep.lld()) fail(Errc::PreconditionFailed, "space is not LLD");
    const std::size_t r = rep.rank_optimal_rank;
    const std::size_t bound = r * (r + 1) / 2 + r * (s.dim() - r);
    MatSpace kernel_span = MatSpace::from_spanning(s.field(), s.m(), s.n(), rep.kernel_ops);
    return upper_rank(kernel_span) <= bound;
}

DichotomyCase dichotomy_check(const MatSpace& s, bool not_2lld) {
    LldReport rep = analyze(s);
    if (!rep.lld()) fail(Errc::PreconditionFailed, "space is not LLD");
    if (!not_2lld || rep.c_max >= 2)
        fail(Errc::PreconditionFailed, "space must be LLD but not 2-LLD");
    const FieldPtr& f = s.field();
    if (f->is_finite() && f->p < s.dim())
        fail(Errc::PreconditionFailed, "field cardinality must be at least dim S");
    if (upper_rank(s) + 1 <= s.dim()) return DichotomyCase::AllRanksAtMostNminus1;
    // some element has rank dim S; every rank-optimal kernel must sit below
    if (!f->is_finite())
        fail(Errc::Undecided,
             "case (ii) quantifies over all rank-optimal points; no certificate over an "
             "infinite field");
    enumerate_projective(f->p, s.n(), [&](const std::vector<std::uint64_t>& c) {
        Mat x(f, s.n(), 1);
        for (std::size_t i = 0; i < s.n(); ++i)
            x.at(i, 0) = Scalar::of_int(f, static_cast<long long>(c[i]));
        Mat eval = evaluation_matrix(s, x);
        if (rank(eval) != rep.rank_optimal_rank) return true;
        for (const Mat& coords : kernel_basis(eval)) {
            std::vector<Scalar> cc;
            for (std::size_t i = 0; i < s.dim(); ++i) cc.push_back(coords.at(i, 0));
            if (rank(s.element(cc)) + 2 > s.dim())
                fail(Errc::DichotomyViolated, "kernel operator of rank >= dim-1 found");
        }
        return true;
    });
    return DichotomyCase::KernelRanksBelowNminus1;
}

HyperplaneBoundReport hyperplane_minrank_bound(const MatSpace& s,
                                               const std::vector<Mat>& t_basis,
                                               long long height_cap) {
    LldReport rep = analyze(s);
    if (!rep.lld()) fail(Errc::PreconditionFailed, "ambient space is not LLD");
    const std::size_t n = t_basis.size();
    if (n + 1 != s.dim() || n < 1)
        fail(Errc::PreconditionFailed, "T must be a hyperplane of S");
    for (const Mat& t : t_basis)
        if (!s.contains(t)) fail(Errc::PreconditionFailed, "T is not inside S");
    MatSpace t = MatSpace::from_basis(s.field(), s.m(), s.n(), t_basis);

    HyperplaneBoundReport out;
    MinRankResult mr = min_rank(t, height_cap);
    out.mrk = mr.mrk;
    out.exact = mr.exact;
    const FieldPtr& f = s.field();
    out.bound_2n2_applicable = n >= 2 && (!f->is_finite() || f->p > n);
    if (out.bound_2n2_applicable) out.bound_2n2_ok = out.mrk <= 2 * n - 2;
    out.bound_binom_ok = out.mrk <= n * (n + 1) / 2;
    return out;
}

Mat extension_generator(std::uint64_t p, std::size_t d) {
    auto f = field_Fp(p);
    if (d < 2) fail(Errc::PreconditionFailed, "extension degree must be at least 2");
    // deterministic search for a monic irreducible polynomial of degree d:
    // coefficients enumerated lexicographically, irreducibility by checking
    // divisibility against all lower-degree monic polynomials
    std::vector<std::uint64_t> coeffs(d, 0);  // f(x) = x^d + sum c_i x^i
    auto poly_mod = [&](std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& m,
                        std::size_t mdeg) {
        // reduce a (degree-indexed, low-to-high) modulo monic m of degree mdeg
        while (a.size() > mdeg) {
            std::uint64_t lead = a.back();
            if (lead != 0) {
                for (std::size_t i = 0; i < mdeg; ++i) {
                    std::uint64_t sub = mod_mul(lead, m[i], p);
                    std::size_t pos = a.size() - 1 - mdeg + i;
                    a[pos] = (a[pos] + p - sub) % p;
                }
            }
            a.pop_back();
        }
        return a;
    };
    for (;;) {
        // candidate f = x^d + coeffs; must have nonzero constant term
        bool irreducible = coeffs[0] != 0;
        if (irreducible) {
            // divide by every monic divisor of degree 1..d/2
            for (std::size_t deg = 1; irreducible && 2 * deg <= d; ++deg) {
                std::vector<std::uint64_t> div(deg, 0);
                bool more = true;
                while (more && irreducible) {
                    std::vector<std::uint64_t> cand(d + 1, 0);
                    for (std::size_t i = 0; i < d; ++i) cand[i] = coeffs[i];
                    cand[d] = 1;
                    auto rem = poly_mod(cand, div, deg);
                    bool zero = std::all_of(rem.begin(), rem.end(),
                                            [](std::uint64_t v) { return v == 0; });
                    if (zero) irreducible = false;
                    std::size_t pos = 0;
                    for (; pos < deg; ++pos) {
                        if (++div[pos] < p) break;
                        div[pos] = 0;
                    }
                    more = pos < deg;
                }
            }
        }
        if (irreducible) break;
        std::size_t pos = 0;
        for (; pos < d; ++pos) {
            if (++coeffs[pos] < p) break;
            coeffs[pos] = 0;
        }
        if (pos == d) fail(Errc::NoWitnessFound, "no irreducible polynomial found");
    }
    Mat c(f, d, d);  // companion matrix: x * x^i column convention
    for (std::size_t i = 0; i + 1 < d; ++i) c.at(i + 1, i) = Scalar::one(f);
    for (std::size_t i = 0; i < d; ++i)
        c.at(i, d - 1) = -Scalar::of_int(f, static_cast<long long>(coeffs[i]));
    return c;
}

ComplementResult field_extension_complement(const Mat& gen, std::size_t d,
                                            const std::vector<Mat>& w_basis) {
    const FieldPtr& f = gen.field();
    if (!f->is_finite()) fail(Errc::PreconditionFailed, "constructive path needs a finite field");
    const std::size_t n = gen.rows();
    if (!w_basis.empty() && span_dim(w_basis) != w_basis.size())
        fail(Errc::PreconditionFailed, "W basis must be independent");
    if (w_basis.size() % d != 0)
        fail(Errc::PreconditionFailed, "dim W must be divisible by the extension degree");

    ComplementResult out;
    std::vector<Mat> current = w_basis;
    while (current.size() < n) {
        if (projective_count(f->p, n) > kEnumerationCap)
            fail(Errc::EnumerationTooLarge, "complement search");
        std::optional<Mat> hit;
        enumerate_projective(f->p, n, [&](const std::vector<std::uint64_t>& c) {
            Mat x(f, n, 1);
            for (std::size_t i = 0; i < n; ++i)
                x.at(i, 0) = Scalar::of_int(f, static_cast<long long>(c[i]));
            std::vector<Mat> joint = current;
            Mat v = x;
            for (std::size_t j = 0; j < d; ++j) {
                joint.push_back(v);
                v = gen * v;
            }
            if (span_dim(joint) == current.size() + d) {
                hit = std::move(x);
                return false;
            }
            return true;
        });
        if (!hit) fail(Errc::NoWitnessFound, "no line with trivial intersection found");
        out.l_line_points.push_back(*hit);
        Mat v = *hit;
        for (std::size_t j = 0; j < d; ++j) {
            current.push_back(v);
            out.w_prime_basis.push_back(v);
            v = gen * v;
        }
    }
    // direct-sum verification
    std::vector<Mat> all = w_basis;
    all.insert(all.end(), out.w_prime_basis.begin(), out.w_prime_basis.end());
    if (span_dim(all) != n) fail(Errc::IdentityViolated, "complement is not a direct summand");
    return out;
}

} // namespace lldforge
