#ifndef LLDFORGE_TWISTED_HPP
#define LLDFORGE_TWISTED_HPP

#include "lldforge/ldb.hpp"
#include "lldforge/lld.hpp"

namespace lldforge {

// The twisted operator space of an LDB division algebra A (dim d): all maps
// (y, z) |-> (x * z + lambda y, x • y + mu z) on A^2, parametrized by
// v = x + (lambda, mu) in A + K^2. Coordinates here list the A-basis first,
// then (1,0), then (0,1).
class TwistedSpace {
public:
    explicit TwistedSpace(LdbAlgebra algebra);

    const LdbAlgebra& algebra() const { return algebra_; }
    const FieldPtr& field() const { return algebra_.field(); }
    std::size_t d() const { return algebra_.dim(); }
    const MatSpace& space() const { return space_; }
    const QuadForm& qtilde() const { return qtilde_; }

    // Gamma(v) as a 2d x 2d matrix; v may live in a function-field extension
    Mat gamma(const Mat& v) const;
    Mat parameter_unit(std::size_t i) const;  // i-th basis vector of A + K^2

private:
    LdbAlgebra algebra_;
    MatSpace space_;
    QuadForm qtilde_;
};

TwistedSpace build_twisted(LdbAlgebra algebra);

// every nonzero (y, z) is annihilated by exactly a line of operators;
// exhaustive over finite fields, stratum-by-stratum symbolic otherwise
bool lld_kernel_dim_check(const TwistedSpace& t);

// Every nonzero operator has rank d or 2d according to the vanishing of
// q-tilde. The symbolic certificate multiplies Gamma(v) by its explicit
// adjugate-style partner, and pins the isotropic kernels to their closed
// form; concrete elements are checked directly.
bool rank_dichotomy_check(const TwistedSpace& t);

struct AlphaCertificate {
    enum class Kind {
        ValueRangeEnumeration,           // finite field, exact image
        NegativeOutsidePositiveRange,    // definite form, alpha on the wrong side
        DegreeParity,                    // char-2 exponent parity
        BoundedHeightNonrepresentation,  // no representation found up to the height;
                                         // sufficiency rests on a documented fact
    };
    Kind kind = Kind::ValueRangeEnumeration;
    long long search_height = 0;
    bool documented_fact = false;
    std::string detail;
};

struct Hyperplane {
    Mat basis;   // (d+2) x (d+1): the A-basis columns plus (alpha, 1)
    Scalar alpha;
    AlphaCertificate alpha_cert;
    IsotropyCertificate q_cert;  // non-isotropy certificate for q itself
    QuadForm restricted;         // q-tilde restricted to the hyperplane
};

// the hyperplane A + K (alpha, 1); requires a certificate that alpha is
// outside the range of q
Hyperplane nonisotropic_hyperplane(const TwistedSpace& t, const Scalar& alpha,
                                   long long search_height = 10);

// All nonzero operators of a certified non-isotropic hyperplane are
// invertible, so the minimal rank is exactly 2d; a bounded-height search
// cross-checks that no smaller rank appears. Returns 2d.
std::size_t verify_hyperplane_minrank(const TwistedSpace& t, const Hyperplane& h,
                                      long long search_height = 10);

// operators g with g(x) in S x for every x; exact over finite fields
MatSpace reflexive_closure_exact(const MatSpace& s);

struct SampledClosure {
    MatSpace space;       // superspace of the true closure
    std::size_t rounds = 0;
    bool stabilized = false;
};

// deterministic integer grids of growing height; stops after two consecutive
// stable rounds
SampledClosure reflexive_closure_sampled(const MatSpace& s, std::size_t max_rounds = 6);

struct RectifyResult {
    Mat axis;          // X0 = x0 + (lambda0, mu0)
    Mat s;             // reflection of (A + K^2, q-tilde) along X0
    Mat f, g;          // automorphisms of A^2 with Gamma(s(v)) = g Gamma(h v) f
    Mat h;             // orthogonal automorphism fixing K^2 pointwise
    Mat a_vec, b_vec;  // s((1,0)) and s((0,1))
    Mat f1, f2, g1, g2;  // the 2d x d component maps from the construction
    Mat r;               // the d x d reflection of (A, q) along x0
};

RectifyResult rectify(const TwistedSpace& t, const Mat& axis);

struct RectifyOrthogonalResult {
    Mat f, g, h;
    std::vector<Mat> axes;
};

// compose rectifications along a reflection decomposition of the isometry u
RectifyOrthogonalResult rectify_orthogonal(const TwistedSpace& t, const Mat& u);

// from an equivalence (f, g, h) of LDB division algebras, the similarity
// transforms F = f + id_{K^2} and G = (h^{-1}, g) with
// Gamma_B(v) = G^{-1} Gamma_A(F v) G
std::pair<Mat, Mat> similarity_from_equivalence(const LdbAlgebra& a, const LdbAlgebra& b,
                                                const Mat& f, const Mat& g, const Mat& h);

// Gamma(v)^2 = Gamma((l+m) x + (l^2 + q(x), m^2 + q(x))) symbolically
bool jordan_square_check(const TwistedSpace& t);

struct NormalFormResult {
    Scalar alpha;
    AlphaCertificate alpha_cert;
    Mat f, g;  // operators of H equal { g o Gamma(z) o f : z in A + K(alpha,1) }
};

// characteristic not 2: rotate an arbitrary non-isotropic hyperplane onto
// the normal form A + K (alpha, 1) via a Witt step and rectification
NormalFormResult hyperplane_normal_form(const TwistedSpace& t, const Mat& h_basis);

} // namespace lldforge

#endif
