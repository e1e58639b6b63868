#ifndef LLDFORGE_MATSPACE_HPP
#define LLDFORGE_MATSPACE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lldforge/matrix.hpp"

namespace lldforge {

// Projective enumeration cap: beyond this, operations refuse rather than
// silently sample.
inline constexpr std::uint64_t kEnumerationCap = 1ull << 20;

// A finite-dimensional space of m x n matrices given by an independent basis.
class MatSpace {
public:
    MatSpace() = default;

    // verifies independence and uniform dimensions
    static MatSpace from_basis(FieldPtr f, std::size_t m, std::size_t n, std::vector<Mat> basis);
    // drops dependent generators (first-wins) instead of failing
    static MatSpace from_spanning(FieldPtr f, std::size_t m, std::size_t n,
                                  std::vector<Mat> generators);

    const FieldPtr& field() const { return field_; }
    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Mat>& basis() const { return basis_; }
    const Mat& basis_at(std::size_t i) const { return basis_[i]; }

    Mat element(const std::vector<Scalar>& coords) const;
    bool contains(const Mat& x) const { return in_span(basis_, x); }
    std::optional<std::vector<Scalar>> coordinates_of(const Mat& x) const {
        return span_coordinates(basis_, x);
    }

private:
    FieldPtr field_;
    std::size_t m_ = 0, n_ = 0;
    std::vector<Mat> basis_;
};

// ---------------------------------------------------------------------------
// enumeration and deterministic grids

std::uint64_t projective_count(std::uint64_t q, std::size_t s);
// visit all vectors of F_q^s with first nonzero coordinate equal to 1;
// callback receives the coordinates as residues
void enumerate_projective(std::uint64_t q, std::size_t s,
                          const std::function<bool(const std::vector<std::uint64_t>&)>& visit);
// visit all q^s coordinate vectors (including zero)
void enumerate_all_vectors(std::uint64_t q, std::size_t s,
                           const std::function<bool(const std::vector<std::uint64_t>&)>& visit);
// visit integer vectors with entries in [-height, height], zero excluded,
// first nonzero coordinate positive; lexicographic order, deterministic
void enumerate_integer_grid(std::size_t s, long long height,
                            const std::function<bool(const std::vector<long long>&)>& visit);
// scalar grid for witness searches: -height..height over Q-based fields,
// residues 0..min(p-1, height) over fields of characteristic p
std::vector<Scalar> scalar_grid(const FieldPtr& f, long long height);

// ---------------------------------------------------------------------------

struct GenericMat {
    MatSpace space;
    FieldPtr extension;              // field of `mat`: space field + fresh vars
    std::vector<std::string> names;  // the fresh variable names, in order
    Mat mat;                         // x_1 A_1 + ... + x_s A_s
};

// fresh-variable generic matrix; optional custom variable names
GenericMat generic_matrix(const MatSpace& s, std::vector<std::string> names = {});

// exact upper rank. Uses the generic-matrix rank whenever the field has more
// elements than that rank; otherwise falls back to exhaustive enumeration.
std::size_t upper_rank(const MatSpace& s);

struct MinRankResult {
    std::size_t mrk = 0;
    Mat witness;
    bool exact = false;
    std::vector<Scalar> witness_coords;
};

// minimal rank of a nonzero element. Exact over finite fields (projective
// enumeration). Over infinite fields: best witness over the deterministic
// coefficient grid of the given height; `exact` is set only when
// certified_lower_bound equals the witness rank.
MinRankResult min_rank(const MatSpace& s, long long height_cap = 3,
                       std::optional<std::size_t> certified_lower_bound = std::nullopt);

// the space of evaluation maps f |-> f(x) in coordinates: for x = e_j the
// generator is the m x dim(S) matrix [A_1 e_j | ... | A_s e_j]
MatSpace dual_space(const MatSpace& s);

struct ReducedDecomposition {
    std::vector<Mat> kernel_basis;           // vectors x with Sx = 0
    std::vector<Mat> essential_range_basis;  // spans sum of images
    MatSpace reduced_space;
    Mat p;  // invertible m x m; rows of P^-1 adapted to the essential range
    Mat q;  // invertible n x n; last columns span the kernel
};

// rank-preserving reduction: reduced basis elements are the nonzero blocks of
// P^-1 * A_i * Q
ReducedDecomposition reduce(const MatSpace& s);

bool is_reduced(const MatSpace& s);

struct FlandersWitness {
    std::size_t basis_index = 0;
    std::size_t r = 0;
    Mat a, b, c, d;  // blocks of the tested matrix
    // which identity failed: "D" or "BA^kC", and at which k
    struct Violation {
        std::string identity;
        std::size_t k = 0;
    };
    std::optional<Violation> violation;
};

// Checks the bounded-rank block identities for every basis matrix of a space
// that contains J_r and has upper rank at most r. Preconditions (#K > r,
// membership of J_r, the rank bound) are verified and reported.
std::vector<FlandersWitness> flanders_check(const MatSpace& s, std::size_t r);
bool flanders_all_pass(const std::vector<FlandersWitness>& ws);

// P * S * Q for invertible P, Q
MatSpace apply_equivalence(const MatSpace& s, const Mat& p, const Mat& q);

// For a space whose basis matrices all have a zero lower-right
// (m-r) x (n-s) block: checks that the semi-generic block ranks agree with
// the block spaces' upper ranks and that urk(S) >= urk(B) + urk(C).
bool decomposition_bound_check(const MatSpace& sp, std::size_t r, std::size_t s);

// J_r inside Mat_{m,n}
Mat j_r_matrix(const FieldPtr& f, std::size_t m, std::size_t n, std::size_t r);

} // namespace lldforge

#endif
