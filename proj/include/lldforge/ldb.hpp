#ifndef LLDFORGE_LDB_HPP
#define LLDFORGE_LDB_HPP

#include <string>

#include "lldforge/quadform.hpp"

namespace lldforge {

// A bilinear map A x A -> A stored through left multiplication: the matrices
// L(e_i), so that x * y = (sum_i x_i L(e_i)) y.
class BilinearPairing {
public:
    BilinearPairing() = default;
    BilinearPairing(FieldPtr f, std::vector<Mat> left_mult);

    const FieldPtr& field() const { return field_; }
    std::size_t dim() const { return left_mult_.size(); }
    const std::vector<Mat>& left_mult() const { return left_mult_; }

    // L(x) for a concrete coordinate vector (column)
    Mat left_matrix(const Mat& x) const;
    Mat apply(const Mat& x, const Mat& y) const;
    // L(x) with symbolic coordinates: variables var_offset .. var_offset+dim-1
    // of the extension field
    Mat symbolic_left_matrix(const FieldPtr& ext, std::size_t var_offset) const;
    // matrix of right multiplication y -> y * x
    Mat right_matrix(const Mat& x) const;

private:
    FieldPtr field_;
    std::vector<Mat> left_mult_;
};

// The unique q with L_star(x) L_bullet(x) = q(x) I, when the composite is a
// scalar multiple of the identity as a polynomial identity in x.
QuadForm attached_form(const BilinearPairing& star, const BilinearPairing& bullet);

struct LdbAlgebra {
    enum class Certificate { FiniteEnumeration, ConstructionProof, GenericDetPlusSamples };

    BilinearPairing star;
    BilinearPairing bullet;
    QuadForm q;
    Certificate certificate = Certificate::ConstructionProof;
    std::string construction;  // names the construction backing the certificate
    IsotropyCertificate q_certificate;

    const FieldPtr& field() const { return star.field(); }
    std::size_t dim() const { return star.dim(); }
    Mat star_apply(const Mat& x, const Mat& y) const { return star.apply(x, y); }
    Mat bullet_apply(const Mat& x, const Mat& y) const { return bullet.apply(x, y); }
};

// Verify the defining identity, non-isotropy of the attached form, and the
// dimension parity; the construction name documents the regularity argument.
LdbAlgebra make_ldb(BilinearPairing star, BilinearPairing bullet, std::string construction);

// K(sqrt(d)) for a non-square d; characteristic not 2. The inversion is
// conjugation followed by multiplication; the attached form is the norm.
LdbAlgebra make_quadratic_ext(const Scalar& d);
// K[w]/(w^2 + w + d) for d outside {t^2 + t}; characteristic 2, separable
LdbAlgebra make_artin_schreier_ext(const Scalar& d);
// K(sqrt(var)) inside a characteristic-2 function field; star = bullet,
// attached form x -> x^2, totally degenerate
LdbAlgebra make_inseparable_ext(const FieldPtr& k, const std::string& var);

// generalized quaternions: i^2 = a, j^2 = b, k = j i; bullet is conjugate-
// then-multiply; attached form <1, -a, -b, ab>
LdbAlgebra make_quaternion(const Scalar& a, const Scalar& b);
// Cayley-Dickson doubling of the (a, b) quaternions with parameter eps;
// attached form N orth (-eps N)
LdbAlgebra make_octonion(const Scalar& a, const Scalar& b, const Scalar& eps);

// the 2^n-dimensional purely inseparable tower over F_2(u_1..u_n, w),
// star = bullet = multiplication, q(x) = x^2
LdbAlgebra make_char2_tower(std::size_t n, std::size_t dim_cap = 4);

// (A, bullet, star): same attached form, identity re-verified
LdbAlgebra swap_laws(const LdbAlgebra& a);

// x *' y = h(f(x) * g(y)), x •' y = g^{-1}(f(x) • h^{-1}(y)); the attached
// form becomes x -> q(f(x))
LdbAlgebra weak_equivalence_transport(const LdbAlgebra& a, const Mat& f, const Mat& g,
                                      const Mat& h);

// the (n-1)-dimensional alternating space A_1 Vect(B_2, ..., B_n) built from
// the pairing blocks; every nonzero element is invertible
MatSpace alternating_from_ldb(const LdbAlgebra& a);

// helpers shared with the twisted-space machinery
FieldPtr extend_for_symbols(const FieldPtr& f, std::size_t count, const std::string& stem);
// read a quadratic polynomial in the trailing `n` variables into an
// upper-triangular Gram matrix over the coefficient field
Mat quadratic_gram_from_scalar(const Scalar& value, const FieldPtr& base, std::size_t var_offset,
                               std::size_t n);

} // namespace lldforge

#endif
