#ifndef LLDFORGE_LLD_HPP
#define LLDFORGE_LLD_HPP

#include "lldforge/matspace.hpp"

namespace lldforge {

// Outcome of analyzing a space of operators S (as m x n matrices, dim s).
// The evaluation maps x |-> [f(x)]_f form the dual space; its upper rank
// controls local linear dependence: S is c-LLD iff c <= c_max.
struct LldReport {
    std::size_t space_dim = 0;          // s = dim S
    std::size_t c_max = 0;              // s - urk(dual space)
    std::size_t rank_optimal_rank = 0;  // urk(dual space)
    Mat rank_optimal_point;             // x realizing the maximal evaluation rank
    std::vector<Mat> kernel_coords;     // coordinates of { f : f(x) = 0 } in the S-basis
    std::vector<Mat> kernel_ops;        // the same operators as matrices
    std::optional<std::pair<Mat, std::size_t>> witness_small_rank;  // (op, its rank)

    bool lld() const { return c_max >= 1; }
};

// the m x s matrix [A_1 x | ... | A_s x] of the evaluation map at x
Mat evaluation_matrix(const MatSpace& s, const Mat& x);

LldReport analyze(const MatSpace& s);

// im f is contained in im phi for every f killed by a rank-optimal phi;
// requires more field elements than the optimal rank
bool basic_lemma_check(const MatSpace& s);

struct SmallRankWitness {
    std::vector<Mat> t_basis;   // operators, dim >= c
    std::vector<Mat> v0_basis;  // target vectors, dim <= s - c
};
SmallRankWitness small_rank_witness(const MatSpace& s, std::size_t c);

// #{ f in S : rk f <= dim S - c } over a finite field, zero included;
// verified to be at least q^c
std::uint64_t count_small_rank(const MatSpace& s, std::size_t c);

// every operator killed by a rank-optimal phi has rank at most
// binom(r+1, 2) + r (s - r) where r is the optimal rank
bool amitsur_bound_check(const MatSpace& s);

enum class DichotomyCase { AllRanksAtMostNminus1, KernelRanksBelowNminus1 };

// classify a non-2-LLD space: either no element reaches rank s, or every
// operator killed by any rank-optimal phi has rank below s - 1
DichotomyCase dichotomy_check(const MatSpace& s, bool not_2lld);

struct HyperplaneBoundReport {
    std::size_t mrk = 0;       // exact over finite fields, else a witness value
    bool exact = false;
    bool bound_2n2_applicable = false;
    bool bound_2n2_ok = false;
    bool bound_binom_ok = false;
};

// minimal-rank bounds for an n-dimensional subspace T of an (n+1)-dimensional
// LLD space S: 2n-2 when #K > n >= 2, and binom(n+1, 2) always
HyperplaneBoundReport hyperplane_minrank_bound(const MatSpace& s, const std::vector<Mat>& t_basis,
                                               long long height_cap = 3);

// Constructive complement: given the degree-d extension L of F_p acting on
// V = L^k (as the block companion action `gen`), and a K-subspace W with
// dim_K W divisible by d, produce an L-subspace W' with V = W + W' direct.
struct ComplementResult {
    std::vector<Mat> w_prime_basis;  // K-basis of W', closed under gen
    std::vector<Mat> l_line_points;  // the chosen x vectors, one per L-line
};
ComplementResult field_extension_complement(const Mat& gen, std::size_t d,
                                            const std::vector<Mat>& w_basis);

// companion matrix of a deterministic monic irreducible polynomial of degree
// d over F_p, acting on L = F_p[x]/(f)
Mat extension_generator(std::uint64_t p, std::size_t d);

} // namespace lldforge

#endif
