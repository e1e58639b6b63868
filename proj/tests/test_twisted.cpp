#include "doctest.h"

#include "lldforge/twisted.hpp"

using namespace lldforge;

namespace {
Mat vec(const FieldPtr& f, const std::vector<long long>& v) {
    Mat m(f, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = Scalar::of_int(f, v[i]);
    return m;
}

LdbAlgebra gauss_algebra() { return make_quadratic_ext(Scalar::of_int(field_Q(), -1)); }
LdbAlgebra hamilton() {
    auto q = field_Q();
    return make_quaternion(Scalar::of_int(q, -1), Scalar::of_int(q, -1));
}
} // namespace

TEST_CASE("building twisted spaces") {
    TwistedSpace tg = build_twisted(gauss_algebra());
    CHECK(tg.space().dim() == 4);
    CHECK(tg.space().m() == 4);  // operators on Q^4

    TwistedSpace th = build_twisted(hamilton());
    CHECK(th.space().dim() == 6);
    CHECK(th.space().m() == 8);

    // Gamma((0,(1,1))) is the identity
    auto q = field_Q();
    Mat id_param = vec(q, {0, 0, 0, 0, 1, 1});
    CHECK(th.gamma(id_param).is_identity());

    // q-tilde values: q(x) - lambda mu
    CHECK(th.qtilde().evaluate(vec(q, {1, 0, 0, 0, 0, 0})) == Scalar::of_int(q, 1));
    CHECK(th.qtilde().evaluate(vec(q, {0, 1, 0, 0, 1, 1})) == Scalar::of_int(q, 0));
}

TEST_CASE("kernel dimension checks") {
    // exhaustive for the quadratic extension of F_3 (80 nonzero pairs)
    auto f3 = field_Fp(3);
    LdbAlgebra f9 = make_quadratic_ext(Scalar::of_int(f3, -1));
    CHECK(lld_kernel_dim_check(build_twisted(f9)));

    // symbolic strata over Q
    CHECK(lld_kernel_dim_check(build_twisted(gauss_algebra())));
    CHECK(lld_kernel_dim_check(build_twisted(hamilton())));
    // and over the characteristic-2 tower
    CHECK(lld_kernel_dim_check(build_twisted(make_char2_tower(2))));
}

TEST_CASE("rank dichotomy") {
    auto q = field_Q();
    TwistedSpace tg = build_twisted(gauss_algebra());
    CHECK(rank_dichotomy_check(tg));

    // concrete spot values quoted in the construction
    CHECK(rank(tg.gamma(vec(q, {0, 0, 1, 0}))) == 2);  // (0,(1,0)): the map (y,z)->(y,0)
    CHECK(rank(tg.gamma(vec(q, {1, 0, 0, 0}))) == 4);  // q-tilde = 1
    // isotropic representative (x0, (q(x0), 1)) has the predicted kernel
    Mat v = vec(q, {1, 1, 2, 1});  // q(x0) = 2, lambda mu = 2
    REQUIRE(tg.qtilde().evaluate(v).is_zero());
    Mat g = tg.gamma(v);
    CHECK(rank(g) == 2);
    Mat x0 = v.block(0, 0, 2, 1);
    Mat pred = Mat::vstack(tg.algebra().star.left_matrix(x0),
                           Mat::identity(q, 2).scaled(-v.at(2, 0)));
    CHECK((g * pred).is_zero());
    std::vector<Mat> pc = {pred.col(0), pred.col(1)};
    CHECK(same_span(pc, kernel_basis(g)));

    CHECK(rank_dichotomy_check(build_twisted(hamilton())));
    CHECK(rank_dichotomy_check(build_twisted(make_char2_tower(2))));

    // finite field: exhaustive
    auto f3 = field_Fp(3);
    CHECK(rank_dichotomy_check(build_twisted(make_quadratic_ext(Scalar::of_int(f3, -1)))));
}

TEST_CASE("octonion dichotomy via the adjugate identity") {
    auto q = field_Q();
    LdbAlgebra oct =
        make_octonion(Scalar::of_int(q, -1), Scalar::of_int(q, -1), Scalar::of_int(q, -1));
    TwistedSpace to = build_twisted(oct);
    CHECK(to.space().dim() == 10);
    CHECK(rank_dichotomy_check(to));
}

TEST_CASE("non-isotropic hyperplanes and their certificates") {
    auto q = field_Q();
    TwistedSpace th = build_twisted(hamilton());
    Hyperplane h = nonisotropic_hyperplane(th, Scalar::of_int(q, -1));
    CHECK(h.alpha_cert.kind == AlphaCertificate::Kind::NegativeOutsidePositiveRange);
    CHECK(is_isotropic(h.restricted).nonisotropic());

    // alpha = 3 for the Gaussian algebra: bounded search plus documented fact
    TwistedSpace tg = build_twisted(gauss_algebra());
    Hyperplane h3 = nonisotropic_hyperplane(tg, Scalar::of_int(q, 3));
    CHECK(h3.alpha_cert.kind == AlphaCertificate::Kind::BoundedHeightNonrepresentation);
    CHECK(h3.alpha_cert.documented_fact);
    // alpha = 2 = 1^2 + 1^2 is represented
    CHECK_THROWS_AS((void)nonisotropic_hyperplane(tg, Scalar::of_int(q, 2)), Error);

    // finite fields: the norm is surjective, every alpha is in range
    auto f3 = field_Fp(3);
    TwistedSpace t9 = build_twisted(make_quadratic_ext(Scalar::of_int(f3, -1)));
    for (long long a : {1ll, 2ll})
        CHECK_THROWS_AS((void)nonisotropic_hyperplane(t9, Scalar::of_int(f3, a)), Error);

    // char-2 tower: alpha = w via the parity certificate
    TwistedSpace tt = build_twisted(make_char2_tower(2));
    Hyperplane hw = nonisotropic_hyperplane(tt, Scalar::var(tt.field(), "w"));
    CHECK(hw.alpha_cert.kind == AlphaCertificate::Kind::DegreeParity);
}

TEST_CASE("hyperplane minimal ranks attain 2n-2") {
    auto q = field_Q();
    TwistedSpace tg = build_twisted(gauss_algebra());
    Hyperplane h3 = nonisotropic_hyperplane(tg, Scalar::of_int(q, 3));
    CHECK(verify_hyperplane_minrank(tg, h3, 4) == 4);

    TwistedSpace tt = build_twisted(make_char2_tower(2));
    Hyperplane hw = nonisotropic_hyperplane(tt, Scalar::var(tt.field(), "w"));
    CHECK(verify_hyperplane_minrank(tt, hw, 4) == 8);
}

TEST_CASE("exact reflexive closure over finite fields") {
    auto f3 = field_Fp(3);
    LdbAlgebra f9 = make_quadratic_ext(Scalar::of_int(f3, -1));
    TwistedSpace t9 = build_twisted(f9);
    MatSpace closure = reflexive_closure_exact(t9.space());
    CHECK(closure.dim() == 6);

    // the closure is an alternating space in the adapted basis: B f is
    // alternating for the pairing B((a,b),(c,d)) built from conjugation
    // sigma(a0 + a1 w) = a0 - a1 w with w^2 = -1
    Mat b(f3, 4, 4);
    // B((a,b),(c,d)) = sigma(a) c - a sigma(c) + sigma(b) d - b sigma(d):
    // on coordinates (a0, a1, b0, b1) this is 2 (a1 c0 - a0 c1) + ... ; build
    // by evaluating on unit vectors
    auto sigma_pair = [&](const Mat& u, const Mat& v) {
        // treat (u0 + u1 w), etc.; the form evaluates to
        // (u1 v0 - u0 v1) * 2w-coefficient reading: use explicit formula
        // sigma(a)c - a sigma(c) = (a0 - a1 w)(c0 + c1 w) - (a0 + a1 w)(c0 - c1 w)
        //                        = 2 (a0 c1 - a1 c0) w ; its w-coordinate is taken
        Scalar first = Scalar::of_int(f3, 2) * (u.at(0, 0) * v.at(1, 0) - u.at(1, 0) * v.at(0, 0));
        Scalar second = Scalar::of_int(f3, 2) * (u.at(2, 0) * v.at(3, 0) - u.at(3, 0) * v.at(2, 0));
        return first + second;
    };
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            b.at(i, j) = sigma_pair(Mat::unit(f3, 4, 1, i, 0), Mat::unit(f3, 4, 1, j, 0));
    REQUIRE(rank(b) == 4);
    for (const Mat& g : closure.basis()) CHECK((b * g).is_alternating());
    for (const Mat& g : t9.space().basis()) CHECK((b * g).is_alternating());

    // a reflexive space stays put: the line spanned by pi1 over F_3
    MatSpace pi1 = MatSpace::from_basis(f3, 1, 2, {Mat::from_ints(f3, {{1, 0}})});
    MatSpace cpi = reflexive_closure_exact(pi1);
    CHECK(cpi.dim() == 1);
}

TEST_CASE("sampled reflexive closure of the quaternion hyperplane") {
    auto q = field_Q();
    TwistedSpace th = build_twisted(hamilton());
    Hyperplane h = nonisotropic_hyperplane(th, Scalar::of_int(q, -1));
    std::vector<Mat> ops;
    for (std::size_t j = 0; j < 5; ++j) ops.push_back(th.gamma(h.basis.col(j)));
    MatSpace hspace = MatSpace::from_basis(q, 8, 8, ops);
    SampledClosure sc = reflexive_closure_sampled(hspace);
    CHECK(sc.stabilized);
    CHECK(sc.rounds <= 3);
    CHECK(sc.space.dim() == 6);
    for (const Mat& b : th.space().basis()) CHECK(sc.space.contains(b));
}

TEST_CASE("rectification") {
    auto q = field_Q();
    TwistedSpace tg = build_twisted(gauss_algebra());
    // X0 = 1 + (0,0): lambda0 = mu0 = 0
    RectifyResult r = rectify(tg, vec(q, {1, 0, 0, 0}));
    CHECK(r.a_vec == vec(q, {0, 0, 1, 0}));
    CHECK(r.b_vec == vec(q, {0, 0, 0, 1}));
    // F and G are block diagonal in this degenerate-parameter case
    CHECK(r.f.block(0, 2, 2, 2).is_zero());
    CHECK(r.g.block(2, 0, 2, 2).is_zero());

    TwistedSpace th = build_twisted(hamilton());
    // X0 = i + (1,1): q-tilde = 1 - 1 = 0
    CHECK_THROWS_AS((void)rectify(th, vec(q, {0, 1, 0, 0, 1, 1})), Error);
    // X0 inside K^2
    CHECK_THROWS_AS((void)rectify(th, vec(q, {0, 0, 0, 0, 1, 2})), Error);
    // X0 = i + (2,0): q-tilde = 1
    RectifyResult r2 = rectify(th, vec(q, {0, 1, 0, 0, 2, 0}));
    CHECK(is_isometry(th.qtilde(), r2.s));
    CHECK(is_isometry(th.algebra().q, r2.r));

    // a handful of axes across the other families
    TwistedSpace tt = build_twisted(make_char2_tower(2));
    Mat axis(tt.field(), 6, 1);
    axis.at(0, 0) = Scalar::one(tt.field());
    axis.at(1, 0) = Scalar::one(tt.field());
    axis.at(4, 0) = Scalar::one(tt.field());
    REQUIRE_FALSE(tt.qtilde().evaluate(axis).is_zero());
    RectifyResult r3 = rectify(tt, axis);
    CHECK(r3.h.at(4, 4).is_one());
}

TEST_CASE("rectification composed over an orthogonal map") {
    auto q = field_Q();
    TwistedSpace tg = build_twisted(gauss_algebra());
    // identity: empty composition
    RectifyOrthogonalResult rid = rectify_orthogonal(tg, Mat::identity(q, 4));
    CHECK(rid.axes.empty());
    CHECK(rid.f.is_identity());
    CHECK(rid.g.is_identity());

    // a single reflection
    Mat ax = vec(q, {1, 2, 1, 1});
    REQUIRE_FALSE(tg.qtilde().evaluate(ax).is_zero());
    Mat s = reflection(tg.qtilde(), ax);
    RectifyOrthogonalResult r1 = rectify_orthogonal(tg, s);
    CHECK(r1.axes.size() == 1);

    // a Witt transport map
    Mat from = vec(q, {0, 0, -3, 1});
    Mat to = vec(q, {2, 0, 1, 1});
    Mat u = witt_send_vector(tg.qtilde(), from, to);
    RectifyOrthogonalResult r2 = rectify_orthogonal(tg, u);
    CHECK(r2.h * vec(q, {0, 0, 1, 0}) == vec(q, {0, 0, 1, 0}));
    CHECK(r2.h * vec(q, {0, 0, 0, 1}) == vec(q, {0, 0, 0, 1}));
}

TEST_CASE("similarity transported from an algebra equivalence") {
    auto q = field_Q();
    LdbAlgebra a = gauss_algebra();
    Mat id = Mat::identity(q, 2);
    auto [f0, g0] = similarity_from_equivalence(a, a, id, id, id);
    CHECK(f0.is_identity());
    CHECK(g0.is_identity());

    Mat f = Mat::from_ints(q, {{1, 1}, {0, 1}});
    Mat g = Mat::from_ints(q, {{2, 0}, {1, 1}});
    Mat h = Mat::from_ints(q, {{1, 0}, {1, 2}});
    LdbAlgebra b = weak_equivalence_transport(a, f, g, h);
    auto [bf, bg] = similarity_from_equivalence(a, b, f, g, h);
    CHECK(bf.block(0, 0, 2, 2) == f);

    // the swap pair is similar through the twist map
    LdbAlgebra sw = swap_laws(a);
    TwistedSpace ta = build_twisted(a);
    TwistedSpace tsw = build_twisted(sw);
    Mat twist(q, 4, 4);
    twist.set_block(0, 2, Mat::identity(q, 2));
    twist.set_block(2, 0, Mat::identity(q, 2));
    auto tinv = inverse(twist);
    for (long long x0 : {0ll, 1ll})
        for (long long x1 : {1ll, 2ll}) {
            Mat v = vec(q, {x0, x1, 2, 3});
            Mat swapped = vec(q, {x0, x1, 3, 2});  // (lambda, mu) exchanged
            CHECK(tsw.gamma(v) == *tinv * ta.gamma(swapped) * twist);
        }

    // a corrupted map is rejected
    Mat bad = Mat::from_ints(q, {{1, 1}, {1, 1}});
    CHECK_THROWS_AS((void)similarity_from_equivalence(a, b, bad, g, h), Error);
}

TEST_CASE("squares stay inside the twisted space") {
    auto q = field_Q();
    CHECK(jordan_square_check(build_twisted(gauss_algebra())));
    CHECK(jordan_square_check(build_twisted(hamilton())));
    CHECK(jordan_square_check(build_twisted(make_char2_tower(2))));
    // identity element squares to itself: (0,(1,1)) maps to (0,(1,1))
    TwistedSpace tg = build_twisted(gauss_algebra());
    Mat e = vec(q, {0, 0, 1, 1});
    CHECK(tg.gamma(e) * tg.gamma(e) == tg.gamma(e));
}

TEST_CASE("hyperplane normal form") {
    auto q = field_Q();
    TwistedSpace tg = build_twisted(gauss_algebra());
    // already normal: alpha comes back unchanged
    Hyperplane h3 = nonisotropic_hyperplane(tg, Scalar::of_int(q, 3));
    NormalFormResult nf = hyperplane_normal_form(tg, h3.basis);
    CHECK(nf.alpha == Scalar::of_int(q, 3));

    // a rotated hyperplane: rotate the defining line by an isometry and
    // recover the q-tilde value on the orthogonal complement
    Mat from = vec(q, {0, 0, -3, 1});
    Mat to = vec(q, {2, 0, 1, 1});
    Mat u = witt_send_vector(tg.qtilde(), from, to);
    Mat rotated = u * h3.basis;
    NormalFormResult nf2 = hyperplane_normal_form(tg, rotated);
    CHECK(nf2.alpha == Scalar::of_int(q, 3));

    // isotropic hyperplanes are rejected: take the orthogonal complement of
    // an isotropic line... i.e. a basis containing the radical direction
    Mat bad(q, 4, 3);
    bad.at(0, 0) = Scalar::one(q);
    bad.at(1, 1) = Scalar::one(q);
    bad.at(2, 2) = Scalar::one(q);  // contains (0,0,1,0), q-tilde isotropic
    CHECK_THROWS_AS((void)hyperplane_normal_form(tg, bad), Error);
}
