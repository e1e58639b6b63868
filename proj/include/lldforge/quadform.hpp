#ifndef LLDFORGE_QUADFORM_HPP
#define LLDFORGE_QUADFORM_HPP

#include <optional>
#include <vector>

#include "lldforge/matspace.hpp"

namespace lldforge {

// Quadratic form q(x) = x^T G x with an upper-triangular Gram matrix G.
// Storing G upper-triangular keeps everything valid in characteristic 2,
// where q cannot be recovered from its polar form.
class QuadForm {
public:
    QuadForm() = default;
    QuadForm(FieldPtr f, Mat gram_upper);

    static QuadForm diag(const FieldPtr& f, const std::vector<Scalar>& entries);
    // (x, y) -> a x^2 + x y + b y^2; characteristic 2 only
    static QuadForm binary_char2(const Scalar& a, const Scalar& b);
    static QuadForm orth_sum(const QuadForm& a, const QuadForm& b);
    // <a_1, ..., a_k> tensor q  =  (a_1 q) orth ... orth (a_k q)
    static QuadForm tensor_diag(const std::vector<Scalar>& scalars, const QuadForm& q);

    const FieldPtr& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const Mat& gram() const { return gram_; }

    // accepts column vectors over the field or any function-field extension
    Scalar evaluate(const Mat& x) const;
    Mat polar() const;  // G + G^T
    Scalar polar_eval(const Mat& x, const Mat& y) const;
    // form pulled back along the columns of V: x -> q(V x)
    QuadForm restricted(const Mat& v) const;

private:
    FieldPtr field_;
    std::size_t dim_ = 0;
    Mat gram_;
};

struct IsotropyCertificate {
    enum class Verdict { Isotropic, Nonisotropic };
    enum class Reason {
        ExhaustiveEnumeration,
        PositiveDefiniteDiagonalization,
        Char2SquareInjectivity,
        DegreeParity,
    };
    Verdict verdict = Verdict::Isotropic;
    std::optional<Mat> witness;      // nonzero x with q(x) = 0
    std::optional<Reason> reason;    // present for Nonisotropic
    std::string detail;

    bool nonisotropic() const { return verdict == Verdict::Nonisotropic; }
    static IsotropyCertificate isotropic(Mat w);
    static IsotropyCertificate nonisotropic_by(Reason r, std::string detail = {});
};

// Finite fields: exhaustive. Q: definite polar forms, plus a bounded witness
// search. Char-2 function fields: diagonal monomial forms whose exponent
// parities are pairwise distinct. Anything else reports Undecided.
IsotropyCertificate is_isotropic(const QuadForm& q);

// exact image of q over a finite field (deduplicated, deterministic order)
std::vector<Scalar> value_range(const QuadForm& q);

// reflection along a non-isotropic axis: x - (b(x,a)/q(a)) a
Mat reflection(const QuadForm& q, const Mat& axis);

bool is_isometry(const QuadForm& q, const Mat& u);

// Decompose an isometry of a form on A + K^2 (the hyperbolic-plane
// coordinates are the last two) into reflections along non-isotropic axes
// none of which lies inside the K^2 plane. Product of the returned
// reflections, in order, equals u.
std::vector<Mat> decompose_into_reflections(const QuadForm& q, const Mat& u);

// Constructive Witt step: an isometry mapping x -> x2 and y -> y2, given
// matching values q(x)=q(x2), q(y)=q(y2), b(x,y)=b(x2,y2); composed from at
// most four reflections. Characteristic not 2 (char-2 only the trivial case).
Mat witt_extend(const QuadForm& q, const Mat& x, const Mat& y, const Mat& x2, const Mat& y2);

// isometry sending one non-isotropic vector to another of the same value,
// composed from at most two reflections; characteristic not 2
Mat witt_send_vector(const QuadForm& q, const Mat& x, const Mat& x2);

} // namespace lldforge

#endif
