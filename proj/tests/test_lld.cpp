#include "doctest.h"

#include "lldforge/lld.hpp"
#include "lldforge/ldb.hpp"

#include <random>

using namespace lldforge;

namespace {

MatSpace alternating_space(const FieldPtr& f, std::size_t n) {
    std::vector<Mat> basis;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Mat m(f, n, n);
            m.at(i, j) = Scalar::one(f);
            m.at(j, i) = -Scalar::one(f);
            basis.push_back(std::move(m));
        }
    return MatSpace::from_basis(f, n, n, std::move(basis));
}

MatSpace projections_space(const FieldPtr& f) {
    return MatSpace::from_basis(f, 1, 2,
                                {Mat::from_ints(f, {{1, 0}}), Mat::from_ints(f, {{0, 1}})});
}

// random spaces that are LLD by construction: duals of bounded-rank spaces,
// here compressions into a fixed low-dimensional target
MatSpace random_lld_space(std::mt19937_64& rng, const FieldPtr& f, std::size_t dim,
                          std::size_t m, std::size_t n, std::size_t range_dim) {
    for (;;) {
        std::vector<Mat> gens;
        for (std::size_t g = 0; g < dim; ++g) {
            Mat mat(f, m, n);
            for (std::size_t i = 0; i < range_dim; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    mat.at(i, j) = Scalar::of_int(f, static_cast<long long>(rng() % f->p));
            gens.push_back(std::move(mat));
        }
        if (span_dim(gens) != dim) continue;
        MatSpace s = MatSpace::from_basis(f, m, n, gens);
        if (analyze(s).lld()) return s;
    }
}

} // namespace

TEST_CASE("analyze: alternating 4x4 over F_3 is 3-LLD") {
    auto f3 = field_Fp(3);
    MatSpace s = alternating_space(f3, 4);
    LldReport rep = analyze(s);
    CHECK(rep.space_dim == 6);
    CHECK(rep.rank_optimal_rank == 3);
    CHECK(rep.c_max == 3);
    CHECK(rep.kernel_coords.size() == 3);
    CHECK_FALSE(rep.kernel_ops.empty());
}

TEST_CASE("analyze: the projection pair and a non-LLD space") {
    auto q = field_Q();
    LldReport rep = analyze(projections_space(q));
    CHECK(rep.c_max == 1);
    CHECK(rep.rank_optimal_rank == 1);

    MatSpace ident = MatSpace::from_basis(q, 2, 2, {Mat::identity(q, 2)});
    LldReport nrep = analyze(ident);
    CHECK(nrep.c_max == 0);
    CHECK_FALSE(nrep.lld());
}

TEST_CASE("analyze is invariant under equivalence") {
    auto f3 = field_Fp(3);
    MatSpace s = alternating_space(f3, 4);
    Mat p = Mat::from_ints(f3, {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 2, 1, 0}, {1, 0, 0, 1}});
    Mat q = Mat::from_ints(f3, {{1, 0, 0, 2}, {0, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}});
    MatSpace t = apply_equivalence(s, p, q);
    LldReport a = analyze(s), b = analyze(t);
    CHECK(a.c_max == b.c_max);
    CHECK(a.rank_optimal_rank == b.rank_optimal_rank);
}

TEST_CASE("basic lemma holds where its cardinality hypothesis does") {
    auto q = field_Q();
    CHECK(basic_lemma_check(projections_space(q)));

    auto f5 = field_Fp(5);
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 6; ++iter) {
        MatSpace s = random_lld_space(rng, f5, 3, 4, 3, 2);
        CHECK(basic_lemma_check(s));
    }

    // the F_2 counterexample is rejected at the precondition
    auto f2 = field_Fp(2);
    Mat a = Mat::from_ints(f2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
    Mat b = Mat::from_ints(f2, {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    MatSpace cex = MatSpace::from_basis(f2, 3, 3, {a, b});
    CHECK_THROWS_AS((void)basic_lemma_check(cex), Error);
}

TEST_CASE("small-rank witness subspaces") {
    auto f3 = field_Fp(3);
    // trivially LLD pair: 1-dimensional essential range
    MatSpace pair = MatSpace::from_basis(
        f3, 2, 2, {Mat::from_ints(f3, {{1, 0}, {0, 0}}), Mat::from_ints(f3, {{0, 1}, {0, 0}})});
    SmallRankWitness w = small_rank_witness(pair, 1);
    CHECK(w.t_basis.size() >= 1);
    CHECK(w.v0_basis.size() <= 1);

    auto f5 = field_Fp(5);
    MatSpace alt = alternating_space(f5, 4);
    SmallRankWitness w2 = small_rank_witness(alt, 3);
    CHECK(w2.t_basis.size() >= 3);
    CHECK(w2.v0_basis.size() <= 3);

    SmallRankWitness whole = small_rank_witness(alt, 0);
    CHECK(whole.t_basis.size() == alt.dim());
}

TEST_CASE("counting small-rank elements") {
    auto f2 = field_Fp(2);
    // 36 singular alternating 4x4 matrices over F_2, floor is 2^3 = 8
    CHECK(count_small_rank(alternating_space(f2, 4), 3) == 36);

    auto f3 = field_Fp(3);
    MatSpace pis = projections_space(f3);
    CHECK(count_small_rank(pis, 1) == 9);  // all elements have rank <= 1
}

TEST_CASE("kernel rank bound in the Amitsur style") {
    auto q = field_Q();
    CHECK(amitsur_bound_check(projections_space(q)));

    auto f3 = field_Fp(3);
    CHECK(amitsur_bound_check(alternating_space(f3, 4)));

    auto f5 = field_Fp(5);
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 10; ++iter)
        CHECK(amitsur_bound_check(random_lld_space(rng, f5, 3, 4, 3, 2)));
}

TEST_CASE("rank dichotomy classification") {
    auto f3 = field_Fp(3);
    // trivially LLD space with 2-dim essential range inside F_3^3, dim 3:
    // contains rank-2 elements only, so case (i)
    std::vector<Mat> gens;
    for (std::size_t k = 0; k < 3; ++k) {
        Mat m(f3, 3, 3);
        m.at(0, k) = Scalar::one(f3);
        m.at(1, (k + 1) % 3) = Scalar::one(f3);
        gens.push_back(std::move(m));
    }
    MatSpace s = MatSpace::from_spanning(f3, 3, 3, gens);
    REQUIRE(s.dim() == 3);
    if (analyze(s).c_max == 1)
        CHECK(dichotomy_check(s, true) == DichotomyCase::AllRanksAtMostNminus1);

    // a space with an invertible element lands in case (ii): the twisted
    // operators of the quadratic extension F_25 / F_5, built by hand
    auto f5 = field_Fp(5);
    LdbAlgebra ext = make_quadratic_ext(Scalar::of_int(f5, 2));  // 2 is a non-square mod 5
    std::vector<Mat> tw;
    for (std::size_t i = 0; i < 2; ++i) {
        Mat g(f5, 4, 4);
        g.set_block(0, 2, ext.star.left_mult()[i]);
        g.set_block(2, 0, ext.bullet.left_mult()[i]);
        tw.push_back(std::move(g));
    }
    Mat lam(f5, 4, 4), mu(f5, 4, 4);
    lam.set_block(0, 0, Mat::identity(f5, 2));
    mu.set_block(2, 2, Mat::identity(f5, 2));
    tw.push_back(lam);
    tw.push_back(mu);
    MatSpace t = MatSpace::from_basis(f5, 4, 4, tw);
    LldReport rep = analyze(t);
    REQUIRE(rep.c_max == 1);
    REQUIRE(upper_rank(t) == 4);
    CHECK(dichotomy_check(t, true) == DichotomyCase::KernelRanksBelowNminus1);

    // 3-LLD input is rejected: the hypothesis "not 2-LLD" fails
    CHECK_THROWS_AS((void)dichotomy_check(alternating_space(f5, 4), true), Error);
}

TEST_CASE("two-dimensional LLD spaces have a one-dimensional essential range") {
    // exhaustive over small shapes; the RREF pair enumeration is in the
    // acceptance suite, here we sample explicit families
    for (std::uint64_t p : {2ull, 3ull}) {
        auto f = field_Fp(p);
        std::mt19937_64 rng(p);
        for (int iter = 0; iter < 20; ++iter) {
            Mat a(f, 3, 3), b(f, 3, 3);
            for (std::size_t j = 0; j < 3; ++j) {
                a.at(0, j) = Scalar::of_int(f, static_cast<long long>(rng() % p));
                b.at(0, j) = Scalar::of_int(f, static_cast<long long>(rng() % p));
            }
            std::vector<Mat> gens = {a, b};
            if (span_dim(gens) != 2) continue;
            MatSpace s = MatSpace::from_basis(f, 3, 3, gens);
            if (!analyze(s).lld()) continue;
            ReducedDecomposition d = reduce(s);
            CHECK(d.essential_range_basis.size() == 1);
        }
    }
}

TEST_CASE("hyperplane minimal-rank bounds") {
    auto f3 = field_Fp(3);
    // n = 1: a hyperplane of a trivially LLD 2-dim space
    MatSpace pair = MatSpace::from_basis(
        f3, 2, 2, {Mat::from_ints(f3, {{1, 0}, {0, 0}}), Mat::from_ints(f3, {{0, 1}, {0, 0}})});
    HyperplaneBoundReport hb = hyperplane_minrank_bound(pair, {pair.basis_at(0)});
    CHECK(hb.mrk == 1);
    CHECK(hb.bound_binom_ok);

    // random hyperplanes of random LLD spaces over F_3, exhaustive minimum
    std::mt19937_64 rng(123);
    for (int iter = 0; iter < 8; ++iter) {
        MatSpace s = random_lld_space(rng, f3, 4, 4, 4, 3);
        std::vector<Mat> t(s.basis().begin(), s.basis().end() - 1);
        HyperplaneBoundReport r = hyperplane_minrank_bound(s, t);
        CHECK(r.exact);
        CHECK(r.bound_binom_ok);
        if (r.bound_2n2_applicable) CHECK(r.bound_2n2_ok);
    }
}

TEST_CASE("constructive complements across a field extension") {
    // F_4 over F_2 acting on V = L^2
    Mat c = extension_generator(2, 2);
    auto f2 = field_Fp(2);
    Mat gen(f2, 4, 4);
    gen.set_block(0, 0, c);
    gen.set_block(2, 2, c);

    // W = 0 gives W' = V
    ComplementResult whole = field_extension_complement(gen, 2, {});
    CHECK(whole.w_prime_basis.size() == 4);

    // W = V gives W' = 0
    std::vector<Mat> full;
    for (std::size_t i = 0; i < 4; ++i) full.push_back(Mat::unit(f2, 4, 1, i, 0));
    CHECK(field_extension_complement(gen, 2, full).w_prime_basis.empty());

    // W = F_2 (1,0) + F_2 (0,1) inside L^2: the proof's search finds x with
    // L x meeting W trivially among the 15 nonzero vectors
    std::vector<Mat> w = {Mat::unit(f2, 4, 1, 0, 0), Mat::unit(f2, 4, 1, 2, 0)};
    ComplementResult r = field_extension_complement(gen, 2, w);
    REQUIRE(r.w_prime_basis.size() == 2);
    std::vector<Mat> joint = w;
    joint.insert(joint.end(), r.w_prime_basis.begin(), r.w_prime_basis.end());
    CHECK(span_dim(joint) == 4);
    // oracle: L x n W = 0 checked over every lambda in L
    const Mat& x = r.l_line_points[0];
    for (int j = 0; j < 4; ++j) {
        // lambda ranges over {1, g, 1+g} applied to x (0 excluded)
        Mat lam = Mat::zero(f2, 4, 4);
        if (j == 0) lam = Mat::identity(f2, 4);
        if (j == 1) lam = gen;
        if (j == 2) lam = gen + Mat::identity(f2, 4);
        if (j == 3) continue;
        CHECK_FALSE(in_span(w, lam * x));
    }

    // F_9 over F_3 as well
    Mat c3 = extension_generator(3, 2);
    auto f3 = field_Fp(3);
    Mat gen3(f3, 4, 4);
    gen3.set_block(0, 0, c3);
    gen3.set_block(2, 2, c3);
    std::vector<Mat> w3 = {Mat::unit(f3, 4, 1, 0, 0), Mat::unit(f3, 4, 1, 3, 0)};
    ComplementResult r3 = field_extension_complement(gen3, 2, w3);
    std::vector<Mat> joint3 = w3;
    joint3.insert(joint3.end(), r3.w_prime_basis.begin(), r3.w_prime_basis.end());
    CHECK(span_dim(joint3) == 4);
}
