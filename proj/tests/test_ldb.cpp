#include "doctest.h"

#include "lldforge/ldb.hpp"

using namespace lldforge;

namespace {
Mat vec(const FieldPtr& f, const std::vector<long long>& v) {
    Mat m(f, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = Scalar::of_int(f, v[i]);
    return m;
}

// x * (x • y) == q(x) y with fully symbolic x and y
bool full_identity_holds(const LdbAlgebra& a) {
    const std::size_t n = a.dim();
    const FieldPtr& f = a.field();
    FieldPtr ext = extend_for_symbols(extend_for_symbols(f, n, "p"), n, "q");
    const std::size_t off = f->is_function_field() ? f->var_count() : 0;
    Mat y(ext, n, 1);
    for (std::size_t i = 0; i < n; ++i) y.at(i, 0) = Scalar::var(ext, off + n + i);
    Mat lhs = a.star.symbolic_left_matrix(ext, off) *
              (a.bullet.symbolic_left_matrix(ext, off) * y);
    Mat x(ext, n, 1);
    for (std::size_t i = 0; i < n; ++i) x.at(i, 0) = Scalar::var(ext, off + i);
    Scalar qx = a.q.evaluate(x);
    return lhs == y.scaled(qx);
}
} // namespace

TEST_CASE("attached forms of the basic extensions") {
    auto q = field_Q();
    // Q(i): the norm <1, 1>
    LdbAlgebra gauss = make_quadratic_ext(Scalar::of_int(q, -1));
    CHECK(gauss.q.gram() == Mat::from_ints(q, {{1, 0}, {0, 1}}));
    CHECK(gauss.q_certificate.nonisotropic());
    CHECK(full_identity_holds(gauss));

    // one-dimensional multiplication: q = <1>
    Mat one = Mat::identity(q, 1);
    BilinearPairing triv(q, {one});
    CHECK(attached_form(triv, triv).gram() == Mat::from_ints(q, {{1}}));

    // F_4 over F_2: norm a^2 + ab + b^2
    auto f2 = field_Fp(2);
    LdbAlgebra f4 = make_artin_schreier_ext(Scalar::one(f2));
    CHECK(f4.q.gram() == Mat::from_ints(f2, {{1, 1}, {0, 1}}));
    CHECK(full_identity_holds(f4));
    CHECK(f4.certificate == LdbAlgebra::Certificate::FiniteEnumeration);
    // 16-pair-style check of the defining identity by enumeration
    enumerate_all_vectors(2, 4, [&](const std::vector<std::uint64_t>& c) {
        Mat x = vec(f2, {(long long)c[0], (long long)c[1]});
        Mat y = vec(f2, {(long long)c[2], (long long)c[3]});
        CHECK(f4.star_apply(x, f4.bullet_apply(x, y)) == y.scaled(f4.q.evaluate(x)));
        return true;
    });

    // inseparable extension: star = bullet, totally degenerate q
    auto kt = field_functions(2, {"t"});
    LdbAlgebra insep = make_inseparable_ext(kt, "t");
    CHECK(insep.q.polar().is_zero());
    CHECK(insep.q_certificate.nonisotropic());
    CHECK(full_identity_holds(insep));

    // reducibility gates
    CHECK_THROWS_AS((void)make_quadratic_ext(Scalar::of_int(q, 4)), Error);
    CHECK_THROWS_AS((void)make_artin_schreier_ext(Scalar::zero(f2)), Error);
}

TEST_CASE("quaternions match the displayed left-multiplication matrix") {
    auto q = field_Q();
    LdbAlgebra ham = make_quaternion(Scalar::of_int(q, -1), Scalar::of_int(q, -1));
    CHECK(ham.q.gram() == Mat::from_ints(q, {{1, 0, 0, 0},
                                             {0, 1, 0, 0},
                                             {0, 0, 1, 0},
                                             {0, 0, 0, 1}}));
    // generic L(x) row pattern: (a,-b,-c,-d), (b,a,d,-c), (c,-d,a,b), (d,c,-b,a)
    FieldPtr ext = extend_for_symbols(q, 4, "g");
    Mat lx = ham.star.symbolic_left_matrix(ext, 0);
    auto v = [&](const std::string& s) { return parse_scalar(ext, s); };
    Mat expected = Mat::from_strings(ext, {{"g1", "-g2", "-g3", "-g4"},
                                           {"g2", "g1", "g4", "-g3"},
                                           {"g3", "-g4", "g1", "g2"},
                                           {"g4", "g3", "-g2", "g1"}});
    CHECK(lx == expected);
    CHECK(full_identity_holds(ham));

    // x * (x • y) at x = 1 + i, y = j equals 2 j, and q(1+i) = 2
    Mat x = vec(q, {1, 1, 0, 0});
    Mat y = vec(q, {0, 0, 1, 0});
    CHECK(ham.star_apply(x, ham.bullet_apply(x, y)) == y.scaled(Scalar::of_int(q, 2)));
    CHECK(ham.q.evaluate(x) == Scalar::of_int(q, 2));

    // general (a, b): attached form <1, -a, -b, ab>
    LdbAlgebra q23 = make_quaternion(Scalar::of_int(q, -2), Scalar::of_int(q, -3));
    CHECK(q23.q.gram() == Mat::from_ints(q, {{1, 0, 0, 0},
                                             {0, 2, 0, 0},
                                             {0, 0, 3, 0},
                                             {0, 0, 0, 6}}));

    // isotropic norms are rejected: -1 is a square mod 5
    auto f5 = field_Fp(5);
    CHECK_THROWS_AS((void)make_quaternion(Scalar::of_int(f5, -1), Scalar::of_int(f5, -1)), Error);
}

TEST_CASE("octonions: doubling verifies the identity in sixteen variables") {
    auto q = field_Q();
    LdbAlgebra oct =
        make_octonion(Scalar::of_int(q, -1), Scalar::of_int(q, -1), Scalar::of_int(q, -1));
    CHECK(oct.dim() == 8);
    CHECK(oct.q.gram() == Mat::identity(q, 8));
    CHECK(oct.q_certificate.nonisotropic());
    CHECK(full_identity_holds(oct));
    // (1, 0) acts as the identity on the left
    Mat e0 = vec(q, {1, 0, 0, 0, 0, 0, 0, 0});
    CHECK(oct.star.left_matrix(e0).is_identity());
}

TEST_CASE("char-2 tower") {
    LdbAlgebra t1 = make_char2_tower(1);
    CHECK(t1.dim() == 2);
    CHECK(t1.q.polar().is_zero());

    LdbAlgebra t2 = make_char2_tower(2);
    CHECK(t2.dim() == 4);
    const FieldPtr& k = t2.field();
    CHECK(k->var_count() == 3);  // u1, u2, w
    CHECK(full_identity_holds(t2));
    // q is diagonal <1, u1, u2, u1 u2> and totally degenerate
    Mat g = t2.q.gram();
    CHECK(g.at(0, 0).is_one());
    CHECK(g.at(1, 1) == Scalar::var(k, "u1"));
    CHECK(g.at(2, 2) == Scalar::var(k, "u2"));
    CHECK(g.at(3, 3) == Scalar::var(k, "u1") * Scalar::var(k, "u2"));
    CHECK(t2.q.polar().is_zero());
    CHECK(t2.q_certificate.nonisotropic());

    CHECK_THROWS_AS((void)make_char2_tower(3), Error);      // default cap is dimension 4
    CHECK(make_char2_tower(3, 8).dim() == 8);
}

TEST_CASE("swapping the laws keeps the attached form") {
    auto q = field_Q();
    LdbAlgebra ham = make_quaternion(Scalar::of_int(q, -1), Scalar::of_int(q, -1));
    LdbAlgebra sw = swap_laws(ham);
    CHECK(sw.q.gram() == ham.q.gram());
    CHECK(full_identity_holds(sw));

    LdbAlgebra gauss = make_quadratic_ext(Scalar::of_int(q, -1));
    LdbAlgebra gsw = swap_laws(gauss);
    CHECK(gsw.q.gram() == gauss.q.gram());

    // the tower is literally self-swapped
    LdbAlgebra t1 = make_char2_tower(1);
    LdbAlgebra tsw = swap_laws(t1);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(tsw.star.left_mult()[i] == t1.star.left_mult()[i]);
}

TEST_CASE("weak equivalence transport") {
    auto q = field_Q();
    LdbAlgebra gauss = make_quadratic_ext(Scalar::of_int(q, -1));
    Mat id = Mat::identity(q, 2);
    LdbAlgebra same = weak_equivalence_transport(gauss, id, id, id);
    CHECK(same.q.gram() == gauss.q.gram());

    // f = 2 id on quaternions scales the form by 4
    LdbAlgebra ham = make_quaternion(Scalar::of_int(q, -1), Scalar::of_int(q, -1));
    Mat two = Mat::identity(q, 4).scaled(Scalar::of_int(q, 2));
    LdbAlgebra scaled = weak_equivalence_transport(ham, two, Mat::identity(q, 4),
                                                   Mat::identity(q, 4));
    CHECK(scaled.q.gram() == ham.q.gram().scaled(Scalar::of_int(q, 4)));
    CHECK(full_identity_holds(scaled));

    // random invertible triple on Q(i)
    Mat f = Mat::from_ints(q, {{1, 2}, {0, 1}});
    Mat g = Mat::from_ints(q, {{3, 1}, {2, 1}});
    Mat h = Mat::from_ints(q, {{1, 1}, {1, 2}});
    LdbAlgebra moved = weak_equivalence_transport(gauss, f, g, h);
    CHECK(full_identity_holds(moved));
    CHECK(moved.q.gram() == gauss.q.restricted(f).gram());

    Mat sing = Mat::from_ints(q, {{1, 1}, {1, 1}});
    CHECK_THROWS_AS((void)weak_equivalence_transport(gauss, sing, id, id), Error);
}

TEST_CASE("uniqueness of the quasi-left-inversion up to scalars (dim 2)") {
    auto qf = field_Q();
    LdbAlgebra gauss = make_quadratic_ext(Scalar::of_int(qf, -1));
    // attached_form(star, c bullet) = c q for sampled scalars
    for (long long c : {2ll, -3ll, 5ll}) {
        std::vector<Mat> scaled;
        for (const Mat& m : gauss.bullet.left_mult())
            scaled.push_back(m.scaled(Scalar::of_int(qf, c)));
        QuadForm qc = attached_form(gauss.star, BilinearPairing(qf, scaled));
        CHECK(qc.gram() == gauss.q.gram().scaled(Scalar::of_int(qf, c)));
    }
    // solve L_star(x) Z(x) = s(x) I for unknown structure matrices Z:
    // the solution space of pairs (Z, s) is spanned by the stored inversion
    FieldPtr ext = extend_for_symbols(qf, 2, "x");
    Mat lx = gauss.star.symbolic_left_matrix(ext, 0);
    // unknowns: two 2x2 matrices Z1, Z2 (8) and s-Gram (3): columns of a
    // linear system; equations: coefficients of each monomial in each entry
    // of L(x) Z(x) - s(x) I, where Z(x) = x1 Z1 + x2 Z2.
    std::vector<Mat> unknown_basis;
    for (std::size_t zi = 0; zi < 2; ++zi)
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t cc = 0; cc < 2; ++cc) {
                Mat z1(qf, 2, 2), z2(qf, 2, 2);
                (zi == 0 ? z1 : z2).at(r, cc) = Scalar::one(qf);
                // response: L(x) (x1 z1 + x2 z2) as a vector of coefficients
                Mat zx = z1.widened(ext).scaled(Scalar::var(ext, 0)) +
                         z2.widened(ext).scaled(Scalar::var(ext, 1));
                Mat resp = lx * zx;
                unknown_basis.push_back(resp);
            }
    // s(x) I contributions for s among x1^2, x1 x2, x2^2
    std::vector<Scalar> smons = {Scalar::var(ext, 0) * Scalar::var(ext, 0),
                                 Scalar::var(ext, 0) * Scalar::var(ext, 1),
                                 Scalar::var(ext, 1) * Scalar::var(ext, 1)};
    for (const Scalar& s : smons) unknown_basis.push_back(-Mat::identity(ext, 2).scaled(s));
    // flatten each response over the monomial basis {x1^2, x1x2, x2^2} x entries
    auto coeffs_of = [&](const Mat& m) {
        std::vector<Scalar> out;
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t cc = 0; cc < 2; ++cc) {
                const FuncFrac& fr = m.at(r, cc).frac();
                for (const Exponents& e :
                     {Exponents{2, 0}, Exponents{1, 1}, Exponents{0, 2}}) {
                    auto it = fr.num().terms().find(e);
                    Scalar c = it == fr.num().terms().end()
                                   ? Scalar::zero(qf)
                                   : Scalar::of_base(qf, it->second) /
                                         Scalar::of_base(qf, fr.den().constant_value());
                    out.push_back(c);
                }
            }
        return out;
    };
    Mat system(qf, 12, unknown_basis.size());
    for (std::size_t j = 0; j < unknown_basis.size(); ++j) {
        auto col = coeffs_of(unknown_basis[j]);
        for (std::size_t i = 0; i < 12; ++i) system.at(i, j) = col[i];
    }
    auto null_basis = kernel_basis(system);
    CHECK(null_basis.size() == 1);  // exactly the scalar multiples of bullet
    // the stored inversion is that solution (up to scale)
    const Mat& sol = null_basis[0];
    Mat z1(qf, 2, 2), z2(qf, 2, 2);
    std::size_t idx = 0;
    for (std::size_t zi = 0; zi < 2; ++zi)
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t cc = 0; cc < 2; ++cc) (zi == 0 ? z1 : z2).at(r, cc) = sol.at(idx++, 0);
    // compare with bullet up to the scalar ratio
    Scalar ratio;
    bool ratio_set = false;
    for (std::size_t r = 0; r < 2 && !ratio_set; ++r)
        for (std::size_t cc = 0; cc < 2 && !ratio_set; ++cc)
            if (!gauss.bullet.left_mult()[0].at(r, cc).is_zero()) {
                ratio = z1.at(r, cc) / gauss.bullet.left_mult()[0].at(r, cc);
                ratio_set = true;
            }
    REQUIRE(ratio_set);
    CHECK(z1 == gauss.bullet.left_mult()[0].scaled(ratio));
    CHECK(z2 == gauss.bullet.left_mult()[1].scaled(ratio));
}

TEST_CASE("parity and finite-field caps") {
    auto q = field_Q();
    // an odd-dimensional pairing beyond dim 1 is rejected outright
    std::vector<Mat> l3 = {Mat::identity(q, 3), Mat::identity(q, 3).scaled(Scalar::of_int(q, 2)),
                           Mat::identity(q, 3).scaled(Scalar::of_int(q, 3))};
    // construct distinct structure matrices so the pairing is formally valid
    l3[1].at(0, 1) = Scalar::one(q);
    l3[2].at(1, 2) = Scalar::one(q);
    CHECK_THROWS_AS((void)make_ldb(BilinearPairing(q, l3), BilinearPairing(q, l3), "odd"), Error);

    // finite-field LDB structures of dim > 2 die on isotropy of the form
    auto f3 = field_Fp(3);
    CHECK_THROWS_AS((void)make_quaternion(Scalar::of_int(f3, -1), Scalar::of_int(f3, 2)), Error);
}

TEST_CASE("alternating spaces from the pairing blocks") {
    auto q = field_Q();
    LdbAlgebra ham = make_quaternion(Scalar::of_int(q, -1), Scalar::of_int(q, -1));
    MatSpace v = alternating_from_ldb(ham);
    CHECK(v.dim() == 3);
    CHECK(v.m() == 4);
    for (const Mat& b : v.basis()) CHECK(b.is_alternating());
    // generic pfaffian is a nonzero constant multiple of b^2 + c^2 + d^2:
    // read the constant off at (1,0,0) and verify the identity symbolically
    GenericMat g = generic_matrix(v, {"b", "c", "d"});
    Scalar pf = pfaffian(g.mat);
    Scalar target = parse_scalar(g.extension, "b^2+c^2+d^2");
    auto probe = [&](const Scalar& s) {
        std::map<std::string, Scalar> pt{{"b", Scalar::of_int(q, 1)},
                                         {"c", Scalar::of_int(q, 0)},
                                         {"d", Scalar::of_int(q, 0)}};
        Mat m(g.extension, 1, 1);
        m.at(0, 0) = s;
        return specialize(m, pt).at(0, 0);
    };
    Scalar c = probe(pf) / probe(target);
    CHECK_FALSE(c.is_zero());
    CHECK(pf == target * c.widened(g.extension));

    LdbAlgebra oct =
        make_octonion(Scalar::of_int(q, -1), Scalar::of_int(q, -1), Scalar::of_int(q, -1));
    MatSpace v8 = alternating_from_ldb(oct);
    CHECK(v8.dim() == 7);
    for (const Mat& b : v8.basis()) CHECK(b.is_alternating());
}
