#include "lldforge/quadform.hpp"

#include <algorithm>

namespace lldforge {

QuadForm::QuadForm(FieldPtr f, Mat gram_upper)
    : field_(std::move(f)), dim_(gram_upper.rows()), gram_(std::move(gram_upper)) {
    if (!gram_.is_square()) fail(Errc::NotSquare, "Gram matrix must be square");
    require_same_field(field_, gram_.field());
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!gram_.at(i, j).is_zero())
                fail(Errc::PreconditionFailed, "Gram matrix must be upper-triangular");
}

QuadForm QuadForm::diag(const FieldPtr& f, const std::vector<Scalar>& entries) {
    Mat g(f, entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        require_same_field(entries[i].field(), f);
        g.at(i, i) = entries[i];
    }
    return QuadForm(f, std::move(g));
}

QuadForm QuadForm::binary_char2(const Scalar& a, const Scalar& b) {
    const FieldPtr& f = a.field();
    if (f->characteristic() != 2)
        fail(Errc::CharMismatch, "binary [a,b] forms need characteristic 2");
    require_same_field(f, b.field());
    Mat g(f, 2, 2);
    g.at(0, 0) = a;
    g.at(0, 1) = Scalar::one(f);
    g.at(1, 1) = b;
    return QuadForm(f, std::move(g));
}

QuadForm QuadForm::orth_sum(const QuadForm& a, const QuadForm& b) {
    require_same_field(a.field_, b.field_);
    Mat g(a.field_, a.dim_ + b.dim_, a.dim_ + b.dim_);
    g.set_block(0, 0, a.gram_);
    g.set_block(a.dim_, a.dim_, b.gram_);
    return QuadForm(a.field_, std::move(g));
}

QuadForm QuadForm::tensor_diag(const std::vector<Scalar>& scalars, const QuadForm& q) {
    if (scalars.empty()) fail(Errc::UsageError, "tensor with an empty diagonal");
    QuadForm acc(q.field_, q.gram_.scaled(scalars[0]));
    for (std::size_t i = 1; i < scalars.size(); ++i)
        acc = orth_sum(acc, QuadForm(q.field_, q.gram_.scaled(scalars[i])));
    return acc;
}

Scalar QuadForm::evaluate(const Mat& x) const {
    if (x.cols() != 1 || x.rows() != dim_)
        fail(Errc::DimensionMismatch, "evaluate needs a dim x 1 vector");
    Mat g = *x.field() == *field_ ? gram_ : gram_.widened(x.field());
    return (x.transpose() * g * x).at(0, 0);
}

Mat QuadForm::polar() const { return gram_ + gram_.transpose(); }

Scalar QuadForm::polar_eval(const Mat& x, const Mat& y) const {
    if (x.cols() != 1 || y.cols() != 1 || x.rows() != dim_ || y.rows() != dim_)
        fail(Errc::DimensionMismatch, "polar_eval needs dim x 1 vectors");
    Mat b = polar();
    if (!(*x.field() == *field_)) b = b.widened(x.field());
    return (x.transpose() * b * y).at(0, 0);
}

QuadForm QuadForm::restricted(const Mat& v) const {
    if (v.rows() != dim_) fail(Errc::DimensionMismatch, "restriction basis shape");
    Mat m = v.transpose() * gram_ * v;
    Mat upper(field_, v.cols(), v.cols());
    for (std::size_t i = 0; i < v.cols(); ++i) {
        upper.at(i, i) = m.at(i, i);
        for (std::size_t j = i + 1; j < v.cols(); ++j) upper.at(i, j) = m.at(i, j) + m.at(j, i);
    }
    return QuadForm(field_, std::move(upper));
}

IsotropyCertificate IsotropyCertificate::isotropic(Mat w) {
    IsotropyCertificate c;
    c.verdict = Verdict::Isotropic;
    c.witness = std::move(w);
    return c;
}

IsotropyCertificate IsotropyCertificate::nonisotropic_by(Reason r, std::string detail) {
    IsotropyCertificate c;
    c.verdict = Verdict::Nonisotropic;
    c.reason = r;
    c.detail = std::move(detail);
    return c;
}

namespace {

// Sylvester: all leading principal minors positive
bool positive_definite(const Mat& b) {
    for (std::size_t k = 1; k <= b.rows(); ++k) {
        Scalar d = det(b.block(0, 0, k, k));
        if (d.rat() <= 0) return false;
    }
    return true;
}

// Diagonal Gram over a char-2 function field whose entries are nonzero
// monomial fractions with pairwise distinct exponent parities. Squares have
// even exponents in characteristic 2, so terms in distinct parity classes
// cannot cancel and the form is anisotropic.
bool char2_parity_certificate(const QuadForm& q) {
    const FieldPtr& f = q.field();
    if (f->characteristic() != 2 || !f->is_function_field()) return false;
    std::vector<std::vector<int>> parities;
    for (std::size_t i = 0; i < q.dim(); ++i) {
        for (std::size_t j = i + 1; j < q.dim(); ++j)
            if (!q.gram().at(i, j).is_zero()) return false;
        const Scalar& d = q.gram().at(i, i);
        if (d.is_zero()) return false;
        const FuncFrac& fr = d.frac();
        if (fr.num().term_count() != 1 || fr.den().term_count() != 1) return false;
        const Exponents& ne = fr.num().lead_exponents();
        const Exponents& de = fr.den().lead_exponents();
        std::vector<int> par(f->var_count());
        for (std::size_t v = 0; v < par.size(); ++v)
            par[v] = static_cast<int>((ne[v] + de[v]) % 2);
        parities.push_back(std::move(par));
    }
    for (std::size_t i = 0; i < parities.size(); ++i)
        for (std::size_t j = i + 1; j < parities.size(); ++j)
            if (parities[i] == parities[j]) return false;
    return true;
}

std::optional<Mat> grid_isotropy_witness(const QuadForm& q) {
    const FieldPtr& f = q.field();
    long long height = q.dim() <= 3 ? 3 : (q.dim() <= 5 ? 2 : 1);
    std::optional<Mat> witness;
    enumerate_integer_grid(q.dim(), height, [&](const std::vector<long long>& c) {
        Mat x(f, q.dim(), 1);
        bool zero = true;
        for (std::size_t i = 0; i < q.dim(); ++i) {
            x.at(i, 0) = Scalar::of_int(f, c[i]);
            zero = zero && x.at(i, 0).is_zero();
        }
        if (!zero && q.evaluate(x).is_zero()) {
            witness = std::move(x);
            return false;
        }
        return true;
    });
    return witness;
}

} // namespace

IsotropyCertificate is_isotropic(const QuadForm& q) {
    const FieldPtr& f = q.field();
    if (q.dim() == 0)
        return IsotropyCertificate::nonisotropic_by(
            IsotropyCertificate::Reason::ExhaustiveEnumeration, "empty space");
    if (f->is_finite()) {
        if (projective_count(f->p, q.dim()) > kEnumerationCap)
            fail(Errc::EnumerationTooLarge, "isotropy enumeration");
        std::optional<Mat> witness;
        enumerate_projective(f->p, q.dim(), [&](const std::vector<std::uint64_t>& c) {
            Mat x(f, q.dim(), 1);
            for (std::size_t i = 0; i < q.dim(); ++i)
                x.at(i, 0) = Scalar::of_int(f, static_cast<long long>(c[i]));
            if (q.evaluate(x).is_zero()) {
                witness = std::move(x);
                return false;
            }
            return true;
        });
        if (witness) return IsotropyCertificate::isotropic(*witness);
        return IsotropyCertificate::nonisotropic_by(
            IsotropyCertificate::Reason::ExhaustiveEnumeration,
            "projective sweep over " + f->to_string());
    }
    if (f->kind == FieldKind::Rationals) {
        Mat b = q.polar();
        if (positive_definite(b))
            return IsotropyCertificate::nonisotropic_by(
                IsotropyCertificate::Reason::PositiveDefiniteDiagonalization,
                "polar form positive definite");
        if (positive_definite(-b))
            return IsotropyCertificate::nonisotropic_by(
                IsotropyCertificate::Reason::PositiveDefiniteDiagonalization,
                "polar form negative definite");
        if (auto w = grid_isotropy_witness(q)) return IsotropyCertificate::isotropic(*w);
        fail(Errc::Undecided, "no isotropy certificate applies over Q");
    }
    if (char2_parity_certificate(q))
        return IsotropyCertificate::nonisotropic_by(
            IsotropyCertificate::Reason::Char2SquareInjectivity,
            "diagonal monomials with distinct exponent parities");
    if (auto w = grid_isotropy_witness(q)) return IsotropyCertificate::isotropic(*w);
    fail(Errc::Undecided, "no isotropy certificate applies over " + f->to_string());
}

std::vector<Scalar> value_range(const QuadForm& q) {
    const FieldPtr& f = q.field();
    if (!f->is_finite()) fail(Errc::PreconditionFailed, "value_range needs a finite field");
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < q.dim(); ++i) {
        total *= f->p;
        if (total > kEnumerationCap) fail(Errc::EnumerationTooLarge, "value_range enumeration");
    }
    std::vector<bool> seen(f->p, false);
    enumerate_all_vectors(f->p, q.dim(), [&](const std::vector<std::uint64_t>& c) {
        Mat x(f, q.dim(), 1);
        for (std::size_t i = 0; i < q.dim(); ++i)
            x.at(i, 0) = Scalar::of_int(f, static_cast<long long>(c[i]));
        seen[q.evaluate(x).residue()] = true;
        return true;
    });
    std::vector<Scalar> out;
    for (std::uint64_t v = 0; v < f->p; ++v)
        if (seen[v]) out.push_back(Scalar::of_int(f, static_cast<long long>(v)));
    return out;
}

Mat reflection(const QuadForm& q, const Mat& axis) {
    Scalar qa = q.evaluate(axis);
    if (qa.is_zero()) fail(Errc::IsotropicAxis, "reflection needs a non-isotropic axis");
    const FieldPtr& f = axis.field();
    Mat b = *f == *q.field() ? q.polar() : q.polar().widened(f);
    Mat ba = b * axis;  // b(e_j, a) values
    Mat s = Mat::identity(f, q.dim());
    Scalar inv = qa.inv();
    for (std::size_t i = 0; i < q.dim(); ++i)
        for (std::size_t j = 0; j < q.dim(); ++j)
            s.at(i, j) = s.at(i, j) - axis.at(i, 0) * ba.at(j, 0) * inv;
    return s;
}

bool is_isometry(const QuadForm& q, const Mat& u) {
    if (u.rows() != q.dim() || u.cols() != q.dim()) return false;
    if (rank(u) != q.dim()) return false;
    if (!(u.transpose() * q.polar() * u == q.polar())) return false;
    // polar preservation plus q-values on a basis pin q(u x) = q(x) everywhere
    for (std::size_t j = 0; j < q.dim(); ++j) {
        Mat e = Mat::unit(u.field(), q.dim(), 1, j, 0);
        if (q.evaluate(u.col(j)) != q.evaluate(e)) return false;
    }
    return true;
}

namespace {

bool inside_k2(const Mat& v, std::size_t k2_start) {
    for (std::size_t i = 0; i < k2_start; ++i)
        if (!v.at(i, 0).is_zero()) return false;
    return true;
}

// candidate probe vectors, in a fixed deterministic order
std::vector<Mat> movement_candidates(const FieldPtr& f, std::size_t dim) {
    std::vector<Mat> out;
    for (std::size_t i = 0; i < dim; ++i) out.push_back(Mat::unit(f, dim, 1, i, 0));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            Mat v(f, dim, 1);
            v.at(i, 0) = Scalar::one(f);
            v.at(j, 0) = Scalar::one(f);
            out.push_back(v);
            v.at(j, 0) = -Scalar::one(f);
            out.push_back(v);
            v.at(j, 0) = Scalar::of_int(f, 2);
            out.push_back(v);
        }
    return out;
}

} // namespace

std::vector<Mat> decompose_into_reflections(const QuadForm& q, const Mat& u) {
    const FieldPtr& f = q.field();
    if (q.dim() < 2) fail(Errc::PreconditionFailed, "form must contain the hyperbolic plane");
    const std::size_t k2_start = q.dim() - 2;
    if (!is_isometry(q, u)) fail(Errc::NotAnIsometry, "input is not an isometry of the form");

    std::vector<Mat> axes;
    Mat work = u;
    const Mat id = Mat::identity(f, q.dim());
    const std::vector<Mat> candidates = movement_candidates(f, q.dim());
    std::size_t guard = 0;
    while (!(work == id)) {
        if (++guard > 3 * q.dim() + 8)
            fail(Errc::Undecided, "reflection decomposition did not terminate");
        // peeling s_w with w = work(v) - v anisotropic fixes Fix(work) + <v>
        std::optional<Mat> chosen;
        bool chosen_outside = false;
        for (const Mat& v : candidates) {
            Mat w = work * v - v;
            if (w.is_zero() || q.evaluate(w).is_zero()) continue;
            bool outside = !inside_k2(w, k2_start);
            if (!chosen || (outside && !chosen_outside)) {
                chosen = w;
                chosen_outside = outside;
                if (outside) break;
            }
        }
        if (chosen) {
            axes.push_back(*chosen);
            work = reflection(q, *chosen) * work;
            continue;
        }
        // totally isotropic movement space: stir with one extra reflection
        std::optional<Mat> stir;
        for (const Mat& v : candidates) {
            if (q.evaluate(v).is_zero() || (work * v - v).is_zero()) continue;
            stir = v;
            break;
        }
        if (!stir) fail(Errc::Undecided, "no anisotropic moved vector found");
        axes.push_back(*stir);
        work = reflection(q, *stir) * work;
    }

    // conjugate away axes inside K^2: s_a = s_b s_{s_b(a)} s_b with b outside
    std::vector<Mat> out;
    for (const Mat& a : axes) {
        if (!inside_k2(a, k2_start)) {
            out.push_back(a);
            continue;
        }
        Mat b(f, q.dim(), 1);
        b.at(0, 0) = Scalar::one(f);          // non-isotropic direction of A
        b.at(k2_start, 0) = Scalar::one(f);   // plus the isotropic (1,0) in K^2
        if (q.evaluate(b).is_zero() || q.polar_eval(b, a).is_zero())
            fail(Errc::Undecided, "conjugation trick found no suitable axis");
        Mat conj = reflection(q, b) * a;
        if (inside_k2(conj, k2_start))
            fail(Errc::Undecided, "conjugated axis fell back into K^2");
        out.push_back(b);
        out.push_back(conj);
        out.push_back(b);
    }

    Mat prod = Mat::identity(f, q.dim());
    for (const Mat& a : out) prod = prod * reflection(q, a);
    if (!(prod == u)) fail(Errc::NotAnIsometry, "reflection product mismatch");
    return out;
}

Mat witt_send_vector(const QuadForm& q, const Mat& x, const Mat& x2) {
    const FieldPtr& f = q.field();
    Scalar qx = q.evaluate(x);
    if (qx != q.evaluate(x2)) fail(Errc::IncompatibleValues, "vector values do not match");
    if (qx.is_zero()) fail(Errc::IsotropicAxis, "witt_send_vector needs non-isotropic vectors");
    if (x == x2) return Mat::identity(f, q.dim());
    if (f->characteristic() == 2)
        fail(Errc::Undecided, "characteristic-2 vector transport only for equal vectors");
    Mat w = x - x2;
    if (!q.evaluate(w).is_zero()) return reflection(q, w);
    // q(x - x2) + q(x + x2) = 4 q(x) != 0
    return reflection(q, x2) * reflection(q, x + x2);
}

Mat witt_extend(const QuadForm& q, const Mat& x, const Mat& y, const Mat& x2, const Mat& y2) {
    const FieldPtr& f = q.field();
    if (q.evaluate(x) != q.evaluate(x2) || q.evaluate(y) != q.evaluate(y2) ||
        q.polar_eval(x, y) != q.polar_eval(x2, y2))
        fail(Errc::IncompatibleValues, "pair values do not match");
    if (x == x2 && y == y2) return Mat::identity(f, q.dim());
    if (f->characteristic() == 2)
        fail(Errc::Undecided, "characteristic-2 extension only implemented for equal pairs");

    const Scalar qx = q.evaluate(x), qy = q.evaluate(y), bxy = q.polar_eval(x, y);
    Scalar plane_det = Scalar::of_int(f, 4) * qx * qy - bxy * bxy;
    if (plane_det.is_zero()) fail(Errc::DegeneratePlane, "the pair spans a degenerate plane");

    // orthogonal anisotropic basis (e, f0) of the plane, by coordinates that
    // transfer verbatim to the target pair
    Scalar a0 = Scalar::one(f), b0 = Scalar::zero(f);
    bool use_y_as_other = true;
    if (qx.is_zero() && !qy.is_zero()) {
        a0 = Scalar::zero(f);
        b0 = Scalar::one(f);
        use_y_as_other = false;  // e = y; orthogonalize x against it
    } else if (qx.is_zero() && qy.is_zero()) {
        b0 = Scalar::one(f);  // e = x + y with q(e) = b(x,y), nonzero by regularity
    }
    Mat e = x.scaled(a0) + y.scaled(b0);
    Mat e2 = x2.scaled(a0) + y2.scaled(b0);
    Scalar qe = q.evaluate(e);
    const Mat& other = use_y_as_other ? y : x;
    const Mat& other2 = use_y_as_other ? y2 : x2;
    Scalar c1 = -q.polar_eval(other, e) / (Scalar::of_int(f, 2) * qe);
    Mat f0 = e.scaled(c1) + other;
    Mat f2 = e2.scaled(c1) + other2;
    if (q.evaluate(f0).is_zero())
        fail(Errc::DegeneratePlane, "no anisotropic orthogonal complement in the plane");

    // send(from, to): reflections with product mapping from to to, exploiting
    // q(from) = q(to); returns matrices applied first-to-last
    auto send = [&](const Mat& from, const Mat& to) {
        std::vector<Mat> ms;
        if (from == to) return ms;
        Mat w = from - to;
        if (!q.evaluate(w).is_zero()) {
            ms.push_back(reflection(q, w));
            return ms;
        }
        ms.push_back(reflection(q, from + to));  // from -> -to
        ms.push_back(reflection(q, to));         // -to  -> to
        return ms;
    };
    Mat u = Mat::identity(f, q.dim());
    for (const Mat& s : send(e, e2)) u = s * u;
    Mat f1 = u * f0;
    for (const Mat& s : send(f1, f2)) u = s * u;
    if (!(u * x == x2) || !(u * y == y2) || !is_isometry(q, u))
        fail(Errc::IncompatibleValues, "Witt step verification failed");
    return u;
}

} // namespace lldforge
