#include <algorithm>

#include "doctest.h"
#include "soergel/coxeter.hpp"
#include "soergel/errors.hpp"
#include "soergel/hecke.hpp"
#include "soergel/invring.hpp"
#include "soergel/laurent.hpp"
#include "soergel/poly.hpp"
#include "soergel/scalar.hpp"

using namespace soergel;

namespace {
LaurentPoly vpow(int k) { return LaurentPoly::v_power(k); }
}

TEST_CASE("scalar arithmetic in quadratic extensions") {
    Scalar r2 = Scalar::surd(2);
    CHECK(r2 * r2 == Scalar(2));
    CHECK((Scalar(1) + r2) * (Scalar(1) - r2) == Scalar(-1));
    Scalar x = Scalar(3) + r2;
    CHECK(x * x.inverse() == Scalar(1));
    CHECK(Scalar::frac(1, 2) + Scalar::frac(1, 3) == Scalar::frac(5, 6));
    CHECK((Scalar(0, 1, 2) - r2).is_zero());

    SUBCASE("mixing surds is rejected") {
        Scalar r3 = Scalar::surd(3);
        CHECK_THROWS_AS(r2 + r3, FieldMismatch);
        CHECK_THROWS_AS(r2 * r3, FieldMismatch);
    }
    SUBCASE("rational values are surd-compatible") {
        CHECK(Scalar(5) + Scalar::surd(2) * Scalar(0) == Scalar(5));
        CHECK(Scalar(2) * Scalar::surd(5) == Scalar(0, 2, 5));
    }
    SUBCASE("cosine table") {
        CHECK(cos_pi_over(2) == Scalar(0));
        CHECK(cos_pi_over(3) == Scalar::frac(1, 2));
        CHECK(cos_pi_over(4) == Scalar(Rational(0), Rational(1, 2), 2));
        CHECK(cos_pi_over(6) == Scalar(Rational(0), Rational(1, 2), 3));
        CHECK(cos_pi_over(0) == Scalar(1));  // m = infinity
        CHECK_THROWS_AS(cos_pi_over(7), UnsupportedOrder);
    }
}

TEST_CASE("Laurent polynomials and the P normalization") {
    LaurentPoly h = vpow(1) + vpow(3);
    CHECK(h.bar() == vpow(-1) + vpow(-3));
    CHECK((h * vpow(-1)).coeff(0) == 1);
    CHECK((vpow(1) + vpow(-1)).bar_symmetric());
    CHECK(h.in_positive_degrees());
    CHECK_FALSE(h.bar().in_nonnegative_degrees());
    CHECK(h.evaluate_at_one() == 2);

    // h = v^3 (1 + v^{-2} * 0 + ...) with l-difference 3: P = 1 + q.
    QPoly p = to_P(vpow(3) + vpow(1), 3);
    CHECK(p == QPoly{{0, 1}, {1, 1}});
    CHECK_THROWS_AS(to_P(vpow(2), 3), MalformedH);
    CHECK_THROWS_AS(to_P(vpow(4), 3), MalformedH);
}

TEST_CASE("polynomial ring basics") {
    Poly x = Poly::variable(0), y = Poly::variable(1);
    Poly f = x * x + y.scaled(Scalar(2));
    CHECK(f.degree() == 4);
    CHECK_FALSE(f.is_homogeneous());
    CHECK(f.homogeneous_component(2) == y.scaled(Scalar(2)));
    CHECK((x * y).divided_by_variable(0) == y);
    CHECK_THROWS_AS(f.divided_by_variable(1), DivisionFailure);
    CHECK(f.in_R_plus());
    CHECK_FALSE((f + Poly(1)).in_R_plus());
    CHECK(monomials_of_total_exp(2, 2).size() == 3);
}

TEST_CASE("Coxeter presets and the group universe") {
    SUBCASE("A2 ball") {
        CoxeterSystem sys(CoxeterMatrix::preset("A2"));
        GroupUniverse uni(sys, 3);
        CHECK(uni.size() == 6);
        CHECK(uni.complete());
        CHECK(uni.product_id({0, 1, 0}) == uni.product_id({1, 0, 1}));
        CHECK(uni.canonical_word(uni.product_id({1, 0, 1})) == Word{0, 1, 0});
        CHECK(uni.length(uni.product_id({0, 0})) == 0);
        CHECK(uni.inverse(uni.product_id({0, 1})) == uni.product_id({1, 0}));
    }
    SUBCASE("orders of the presets") {
        CHECK(GroupUniverse(CoxeterSystem(CoxeterMatrix::preset("A3")), 6).size() == 24);
        CHECK(GroupUniverse(CoxeterSystem(CoxeterMatrix::preset("B2")), 4).size() == 8);
        CHECK(GroupUniverse(CoxeterSystem(CoxeterMatrix::preset("B3")), 9).size() == 48);
        CHECK(GroupUniverse(CoxeterSystem(CoxeterMatrix::preset("G2")), 6).size() == 12);
        CHECK(GroupUniverse(CoxeterSystem(CoxeterMatrix::preset("H3")), 15).size() ==
              120);
        CHECK(GroupUniverse(CoxeterSystem(CoxeterMatrix::preset("I2(5)")), 5).size() ==
              10);
    }
    SUBCASE("infinite dihedral ball is truncated") {
        CoxeterSystem sys(CoxeterMatrix::preset("Dinf"));
        GroupUniverse uni(sys, 4);
        CHECK(uni.size() == 9);  // e plus two alternating words per length 1..4
        CHECK_FALSE(uni.complete());
        CHECK(uni.right_mult(uni.product_id({0, 1, 0, 1}), 0) == kOutsideBall);
    }
    SUBCASE("Bruhat order agrees with the subword oracle") {
        CoxeterSystem sys(CoxeterMatrix::preset("B2"));
        GroupUniverse uni(sys, 4);
        for (ElementId u = 0; u < ElementId(uni.size()); ++u)
            for (ElementId w = 0; w < ElementId(uni.size()); ++w)
                CHECK(uni.bruhat_leq(u, w) == uni.bruhat_leq_subword(u, w));
    }
    SUBCASE("braid paths") {
        CoxeterSystem sys(CoxeterMatrix::preset("A2"));
        GroupUniverse uni(sys, 3);
        auto path = braid_path(uni, {0, 1, 0}, {1, 0, 1});
        CHECK(path.size() == 1);
        CHECK_THROWS_AS(braid_path(uni, {0, 1}, {1, 0}), NotSameElement);
    }
}

TEST_CASE("Hecke multiplication and KL bases") {
    CoxeterSystem sys(CoxeterMatrix::preset("A2"));
    GroupUniverse uni(sys, 3);
    KLTable kl(uni);
    ElementId s = uni.product_id({0});
    ElementId sts = uni.product_id({0, 1, 0});

    SUBCASE("quadratic relation") {
        HeckeElt hs = HeckeElt::basis(s);
        HeckeElt sq = mult_by_gen(uni, hs, 0, Side::Right);
        CHECK(sq.coeff(uni.identity()) == LaurentPoly(1));
        CHECK(sq.coeff(s) == vpow(-1) - vpow(1));
    }
    SUBCASE("KL basis of the longest element") {
        const HeckeElt& b = kl.kl_basis(sts);
        CHECK(b.coeff(sts) == LaurentPoly(1));
        CHECK(b.coeff(s) == vpow(2));
        CHECK(b.coeff(uni.identity()) == vpow(3));
        CHECK(bar_involution(uni, b) == b);
    }
    SUBCASE("h and P normalizations") {
        CHECK(kl.kl_poly(s, sts) == vpow(2));
        CHECK(kl.kl_poly_P(s, sts) == QPoly{{0, 1}});
        CHECK(kl.mu(s, uni.product_id({0, 1})) == 1);
    }
    SUBCASE("B2 has only trivial KL polynomials below w0") {
        CoxeterSystem b2(CoxeterMatrix::preset("B2"));
        GroupUniverse ub2(b2, 4);
        KLTable klb(ub2);
        ElementId w0 = ub2.product_id({0, 1, 0, 1});
        for (ElementId x = 0; x < ElementId(ub2.size()); ++x)
            CHECK(klb.kl_poly_P(x, w0) == QPoly{{0, 1}});
    }
}

TEST_CASE("invariant-theoretic ring operations") {
    CoxeterSystem sys(CoxeterMatrix::preset("A2"));
    RingContext ctx(sys);
    Poly xs = ctx.variable(0), xt = ctx.variable(1);

    SUBCASE("generator action") {
        // s . X_s = -X_s;  s . X_t = X_t + X_s  (A2 has B(s,t) = -1/2).
        CHECK(ctx.act_gen(0, xs) == -xs);
        CHECK(ctx.act_gen(0, xt) == xt + xs);
        CHECK(ctx.act_gen(0, ctx.act_gen(0, xt)) == xt);
    }
    SUBCASE("Demazure drops degree and lands in invariants") {
        CHECK(ctx.demazure(0, xs * xs).is_zero());  // X_s^2 is s-invariant
        Poly d = ctx.demazure(0, xs * xt);
        CHECK(d == xt + xs.scaled(Scalar::frac(1, 2)));
        CHECK(ctx.act_gen(0, d) == d);
        CHECK(ctx.demazure(0, Poly(7)).is_zero());
    }
    SUBCASE("splitting reconstructs f") {
        Poly f = xs * xt + xt;
        auto [inv, dem] = ctx.split(0, f);
        CHECK(ctx.act_gen(0, inv) == inv);
        CHECK(ctx.act_gen(0, dem) == dem);
        CHECK(inv + xs * dem == f);
    }
}
