#include "doctest.h"

#include "lldforge/quadform.hpp"

using namespace lldforge;

namespace {
Mat vec(const FieldPtr& f, const std::vector<long long>& v) {
    Mat m(f, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = Scalar::of_int(f, v[i]);
    return m;
}
} // namespace

TEST_CASE("evaluation and polar forms") {
    auto q = field_Q();
    QuadForm sum2 = QuadForm::diag(q, {Scalar::one(q), Scalar::one(q)});
    CHECK(sum2.evaluate(vec(q, {3, 4})) == Scalar::of_int(q, 25));
    CHECK(sum2.polar() == Mat::from_ints(q, {{2, 0}, {0, 2}}));

    auto k = field_functions(2, {"a", "b"});
    QuadForm ab = QuadForm::binary_char2(Scalar::var(k, "a"), Scalar::var(k, "b"));
    Mat one_one(k, 2, 1);
    one_one.at(0, 0) = Scalar::one(k);
    one_one.at(1, 0) = Scalar::one(k);
    CHECK(ab.evaluate(one_one) == parse_scalar(k, "a+1+b"));
    // char-2 polar forms are alternating
    for (std::size_t i = 0; i < 2; ++i) CHECK(ab.polar().at(i, i).is_zero());

    auto f2 = field_Fp(2);
    QuadForm square = QuadForm::diag(f2, {Scalar::one(f2)});
    CHECK(square.polar().is_zero());  // x -> x^2 is totally degenerate
}

TEST_CASE("constructors") {
    auto q = field_Q();
    QuadForm s = QuadForm::orth_sum(QuadForm::diag(q, {Scalar::one(q)}),
                                    QuadForm::diag(q, {-Scalar::one(q)}));
    CHECK(s.gram() == Mat::from_ints(q, {{1, 0}, {0, -1}}));

    auto ka = field_functions(0, {"a", "b"});
    Scalar a = Scalar::var(ka, "a"), b = Scalar::var(ka, "b");
    QuadForm t = QuadForm::tensor_diag({Scalar::one(ka), -a}, QuadForm::diag(ka, {Scalar::one(ka), -b}));
    REQUIRE(t.dim() == 4);
    std::vector<Scalar> diag = {t.gram().at(0, 0), t.gram().at(1, 1), t.gram().at(2, 2),
                                t.gram().at(3, 3)};
    std::vector<Scalar> expect = {Scalar::one(ka), -b, -a, a * b};
    for (std::size_t i = 0; i < 4; ++i) CHECK(diag[i] == expect[i]);

    auto f2 = field_Fp(2);
    QuadForm hyp = QuadForm::binary_char2(Scalar::zero(f2), Scalar::zero(f2));
    IsotropyCertificate c = is_isotropic(hyp);
    CHECK_FALSE(c.nonisotropic());
    CHECK(hyp.evaluate(*c.witness).is_zero());

    CHECK_THROWS_AS((void)QuadForm::binary_char2(Scalar::one(field_Q()), Scalar::one(field_Q())),
                    Error);
}

TEST_CASE("orthogonal sums evaluate additively, exhaustively over F_2 and F_3") {
    for (std::uint64_t p : {2ull, 3ull}) {
        auto fp = field_Fp(p);
        QuadForm q1 = QuadForm::diag(fp, {Scalar::one(fp), Scalar::of_int(fp, p - 1)});
        QuadForm q2 = QuadForm::diag(fp, {Scalar::of_int(fp, 1)});
        QuadForm s = QuadForm::orth_sum(q1, q2);
        enumerate_all_vectors(p, 3, [&](const std::vector<std::uint64_t>& c) {
            Mat xy = vec(fp, {(long long)c[0], (long long)c[1], (long long)c[2]});
            Mat x = vec(fp, {(long long)c[0], (long long)c[1]});
            Mat y = vec(fp, {(long long)c[2]});
            CHECK(s.evaluate(xy) == q1.evaluate(x) + q2.evaluate(y));
            return true;
        });
    }
}

TEST_CASE("isotropy certificates") {
    auto f3 = field_Fp(3);
    CHECK(is_isotropic(QuadForm::diag(f3, {Scalar::one(f3), Scalar::one(f3)})).nonisotropic());

    auto q = field_Q();
    std::vector<Scalar> ones(5, Scalar::one(q));
    IsotropyCertificate pd = is_isotropic(QuadForm::diag(q, ones));
    CHECK(pd.nonisotropic());
    CHECK(*pd.reason == IsotropyCertificate::Reason::PositiveDefiniteDiagonalization);

    IsotropyCertificate iso = is_isotropic(QuadForm::diag(q, {Scalar::one(q), -Scalar::one(q)}));
    CHECK_FALSE(iso.nonisotropic());
    REQUIRE(iso.witness.has_value());
    CHECK_FALSE(iso.witness->is_zero());

    // indefinite anisotropic form over Q: no certificate applies
    CHECK_THROWS_AS(
        (void)is_isotropic(QuadForm::diag(q, {Scalar::one(q), Scalar::one(q), Scalar::of_int(q, -3)})),
        Error);

    // char-2 tower shape: diagonal monomials with distinct parities
    auto k = field_functions(2, {"u1", "u2", "w"});
    QuadForm tower = QuadForm::diag(
        k, {Scalar::one(k), Scalar::var(k, "u1"), Scalar::var(k, "u2"),
            Scalar::var(k, "u1") * Scalar::var(k, "u2")});
    IsotropyCertificate tc = is_isotropic(tower);
    CHECK(tc.nonisotropic());
    CHECK(*tc.reason == IsotropyCertificate::Reason::Char2SquareInjectivity);
    // appending <w> keeps the parities distinct
    QuadForm with_w = QuadForm::orth_sum(tower, QuadForm::diag(k, {Scalar::var(k, "w")}));
    CHECK(is_isotropic(with_w).nonisotropic());
    // repeating a parity genuinely creates an isotropic vector in char 2
    QuadForm rep = QuadForm::orth_sum(tower, QuadForm::diag(k, {Scalar::one(k)}));
    IsotropyCertificate rc = is_isotropic(rep);
    CHECK_FALSE(rc.nonisotropic());
    CHECK(rep.evaluate(*rc.witness).is_zero());
}

TEST_CASE("value ranges over finite fields") {
    auto f3 = field_Fp(3);
    // norm form of the quadratic extension of F_3: a^2 + b^2, surjective
    QuadForm norm9 = QuadForm::diag(f3, {Scalar::one(f3), Scalar::one(f3)});
    CHECK(value_range(norm9).size() == 3);

    auto f5 = field_Fp(5);
    std::vector<Scalar> r5 = value_range(QuadForm::diag(f5, {Scalar::one(f5)}));
    REQUIRE(r5.size() == 3);
    CHECK(r5[0] == Scalar::of_int(f5, 0));
    CHECK(r5[1] == Scalar::of_int(f5, 1));
    CHECK(r5[2] == Scalar::of_int(f5, 4));

    auto f2 = field_Fp(2);
    CHECK(value_range(QuadForm::binary_char2(Scalar::zero(f2), Scalar::zero(f2))).size() == 2);
}

TEST_CASE("reflections") {
    auto q = field_Q();
    QuadForm sum2 = QuadForm::diag(q, {Scalar::one(q), Scalar::one(q)});
    Mat s = reflection(sum2, vec(q, {1, 0}));
    CHECK(s * vec(q, {1, 0}) == vec(q, {-1, 0}));
    CHECK(s * vec(q, {0, 1}) == vec(q, {0, 1}));
    CHECK((s * s).is_identity());
    CHECK(det(s) == -Scalar::one(q));
    CHECK(is_isometry(sum2, s));
    CHECK_THROWS_AS((void)reflection(sum2, vec(q, {0, 0})), Error);

    // char 2: [1,1] over F_2 along (1,0)
    auto f2 = field_Fp(2);
    QuadForm b11 = QuadForm::binary_char2(Scalar::one(f2), Scalar::one(f2));
    Mat s2 = reflection(b11, vec(f2, {1, 0}));
    CHECK((s2 * s2).is_identity());
    enumerate_all_vectors(2, 2, [&](const std::vector<std::uint64_t>& c) {
        Mat x = vec(f2, {(long long)c[0], (long long)c[1]});
        CHECK(b11.evaluate(s2 * x) == b11.evaluate(x));
        return true;
    });

    // q-tilde for the Gaussian-integer algebra: q = <1,1> plus the -lm plane
    Mat gt(q, 4, 4);
    gt.at(0, 0) = Scalar::one(q);
    gt.at(1, 1) = Scalar::one(q);
    gt.at(2, 3) = -Scalar::one(q);
    QuadForm qt(q, gt);
    Mat axis = vec(q, {1, 0, 0, 0});
    Mat sr = reflection(qt, axis);
    CHECK(sr * vec(q, {0, 0, 1, 0}) == vec(q, {0, 0, 1, 0}));
    CHECK(sr * vec(q, {0, 0, 0, 1}) == vec(q, {0, 0, 0, 1}));

    // reflections preserve q on a spanning set (random axes)
    for (long long a = 1; a <= 3; ++a)
        for (long long b = -2; b <= 2; ++b) {
            Mat ax = vec(q, {a, b, 1, a});
            if (qt.evaluate(ax).is_zero()) continue;
            Mat refl = reflection(qt, ax);
            CHECK(is_isometry(qt, refl));
            CHECK((refl * refl).is_identity());
        }
}

TEST_CASE("reflection decomposition avoiding the K^2 plane") {
    auto q = field_Q();
    Mat gt(q, 4, 4);
    gt.at(0, 0) = Scalar::one(q);
    gt.at(1, 1) = Scalar::one(q);
    gt.at(2, 3) = -Scalar::one(q);
    QuadForm qt(q, gt);

    CHECK(decompose_into_reflections(qt, Mat::identity(q, 4)).empty());

    Mat ax = vec(q, {1, 2, 1, 1});
    REQUIRE_FALSE(qt.evaluate(ax).is_zero());
    auto axes = decompose_into_reflections(qt, reflection(qt, ax));
    REQUIRE(axes.size() == 1);
    CHECK(reflection(qt, axes[0]) == reflection(qt, ax));

    // the Witt-style vector transport from the hyperplane normal-form proof:
    // move (-3, 1) in the K^2 plane onto an equal-value vector outside it
    Mat from = vec(q, {0, 0, -3, 1});
    Mat to = vec(q, {2, 0, 1, 1});
    REQUIRE(qt.evaluate(from) == qt.evaluate(to));
    Mat u = witt_send_vector(qt, from, to);
    CHECK(u * from == to);
    auto waxes = decompose_into_reflections(qt, u);
    CHECK(waxes.size() <= 4);
    Mat prod = Mat::identity(q, 4);
    for (const Mat& a : waxes) {
        prod = prod * reflection(qt, a);
        bool outside = false;
        for (std::size_t i = 0; i < 2; ++i) outside = outside || !a.at(i, 0).is_zero();
        CHECK(outside);
    }
    CHECK(prod == u);

    // a reflection along an axis inside K^2 gets conjugated outside
    Mat ink2 = vec(q, {0, 0, 1, 1});
    auto kaxes = decompose_into_reflections(qt, reflection(qt, ink2));
    CHECK(kaxes.size() == 3);
    Mat kprod = Mat::identity(q, 4);
    for (const Mat& a : kaxes) {
        kprod = kprod * reflection(qt, a);
        bool outside = false;
        for (std::size_t i = 0; i < 2; ++i) outside = outside || !a.at(i, 0).is_zero();
        CHECK(outside);
    }
    CHECK(kprod == reflection(qt, ink2));
}

TEST_CASE("witt extension") {
    auto q = field_Q();
    QuadForm sum2 = QuadForm::diag(q, {Scalar::one(q), Scalar::one(q)});
    // identity case
    CHECK(witt_extend(sum2, vec(q, {1, 0}), vec(q, {0, 1}), vec(q, {1, 0}), vec(q, {0, 1}))
              .is_identity());
    // swapping two orthogonal unit vectors
    Mat u = witt_extend(sum2, vec(q, {1, 0}), vec(q, {0, 1}), vec(q, {0, 1}), vec(q, {1, 0}));
    CHECK(u * vec(q, {1, 0}) == vec(q, {0, 1}));
    CHECK(u * vec(q, {0, 1}) == vec(q, {1, 0}));
    CHECK(is_isometry(sum2, u));

    // hyperbolic pair transport inside q-tilde
    Mat gt(q, 4, 4);
    gt.at(0, 0) = Scalar::one(q);
    gt.at(1, 1) = Scalar::one(q);
    gt.at(2, 3) = -Scalar::one(q);
    QuadForm qt(q, gt);
    Mat x = vec(q, {0, 0, 1, 0});
    Mat y = vec(q, {0, 0, 0, -1});
    // target hyperbolic pair coming from an isotropic A-mixing vector
    Mat x2 = vec(q, {1, 0, 0, 1});   // q-tilde = 1 - 0*1 ... must be isotropic
    x2 = vec(q, {1, 0, 1, 1});       // q(x0)=1, lm=1: isotropic
    Mat y2 = vec(q, {0, 1, 1, -2});  // choose values matching (0, -1)
    // fix up y2 so that values match exactly: q(y2) = 0, b(x2, y2) = b(x, y)
    REQUIRE(qt.evaluate(x).is_zero());
    REQUIRE(qt.evaluate(x2).is_zero());
    Scalar bxy = qt.polar_eval(x, y);
    // search a small grid for a valid y2 to keep the test honest
    bool found = false;
    for (long long a = -2; a <= 2 && !found; ++a)
        for (long long b = -2; b <= 2 && !found; ++b)
            for (long long c = -2; c <= 2 && !found; ++c)
                for (long long d = -2; d <= 2 && !found; ++d) {
                    Mat cand = vec(q, {a, b, c, d});
                    if (cand == x2) continue;
                    if (!qt.evaluate(cand).is_zero()) continue;
                    if (qt.polar_eval(x2, cand) != bxy) continue;
                    y2 = cand;
                    found = true;
                }
    REQUIRE(found);
    Mat w = witt_extend(qt, x, y, x2, y2);
    CHECK(w * x == x2);
    CHECK(w * y == y2);
    CHECK(is_isometry(qt, w));

    CHECK_THROWS_AS(
        (void)witt_extend(sum2, vec(q, {1, 0}), vec(q, {0, 1}), vec(q, {1, 0}), vec(q, {0, 2})),
        Error);
}
