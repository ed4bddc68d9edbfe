#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hz/algebraic.hpp"
#include "hz/errors.hpp"
#include "hz/poly.hpp"

using namespace hz;
using alg::IntPoly;
using V = std::vector<BigInt>;

TEST_CASE("stock parameters") {
    const auto s2 = alg::preset_sqrt2m1();
    CHECK(s2->degree() == 2);
    CHECK(s2->height() == 2);
    CHECK(s2->certifying_prime() > 0);
    CHECK(s2->approx() == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));

    const auto g = alg::preset_golden();
    CHECK(g->approx() == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-15));

    const double c = alg::preset_cubic()->approx();
    CHECK(std::fabs(c * c * c + c - 1.0) < 1e-14);

    const auto q = alg::preset_quartic();
    CHECK(q->degree() == 4);
    CHECK(q->height() == 1);
    const double qa = q->approx();
    CHECK(std::fabs(qa * qa * qa * qa + qa - 1.0) < 1e-14);

    const Alpha a = alg::alpha_of(s2);
    CHECK_FALSE(a.exact_double());
    CHECK(a.approx() == s2->approx());
}

TEST_CASE("construction rejects unusable inputs") {
    CHECK_THROWS_AS(alg::make_algebraic(V{-1, 0, 1}, BigRat(0), BigRat(1)), CertificateError);
    CHECK_THROWS_AS(alg::make_algebraic(V{-1, 2}, BigRat(0), BigRat(1)), DomainError);
    CHECK_THROWS_AS(alg::make_algebraic(V{1, -5, 5}, BigRat(1, 5), BigRat(4, 5)), DomainError);
    CHECK_THROWS_AS(alg::make_algebraic(V{-2, 0, 1}, BigRat(1), BigRat(2)), DomainError);
    CHECK_THROWS_AS(alg::make_algebraic(V{-1, 1, 1}, BigRat(0), BigRat(1, 2)), DomainError);
    // content is normalized away rather than rejected
    const auto p = alg::make_algebraic(V{-2, 4, 2}, BigRat(2, 5), BigRat(1, 2));
    CHECK(p->height() == 2);
    CHECK(p->minpoly() == IntPoly(V{-1, 2, 1}));
}

TEST_CASE("enclosures tighten on demand") {
    const auto c = alg::preset_cubic();
    BigRat lo, hi;
    c->enclosure(120, lo, hi);
    CHECK(hi - lo <= BigRat(1, BigInt(1) << 120));
    CHECK(lo < hi);
    CHECK(std::fabs(lo.convert_to<double>() - c->approx()) < 1e-15);

    CHECK(c->sign_of(c->minpoly()) == 0);
    CHECK(c->sign_of(IntPoly::linear(0, 1)) == 1);
    CHECK(c->sign_of(IntPoly::linear(-1, 1)) == -1);
    CHECK(c->abs_value_of(IntPoly::linear(-1, 2)) ==
          doctest::Approx(std::fabs(2.0 * c->approx() - 1.0)).epsilon(1e-10));
}

TEST_CASE("liouville lower bound on random integer polynomials") {
    const auto a = alg::preset_sqrt2m1();
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> uc(-9, 9), ud(1, 5);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const int d = ud(rng);
        V c(static_cast<size_t>(d) + 1);
        for (auto& x : c) x = uc(rng);
        const IntPoly P(std::move(c));
        if (P.is_zero() || a->sign_of(P) == 0) continue;
        const auto rep = alg::liouville_bound(P, *a);
        CHECK(rep.holds);
        CHECK(rep.value >= rep.bound);
        CHECK(rep.bound > 0.0);
        ++checked;
    }
    CHECK(checked > 250);
    CHECK_THROWS_AS(alg::liouville_bound(a->minpoly(), *a), DomainError);
    CHECK_THROWS_AS(alg::liouville_bound(IntPoly(), *a), DomainError);
}

TEST_CASE("guting bound reduces to the liouville bound at order one") {
    const auto g = alg::preset_golden();
    const IntPoly P(V{3, -5, 0, 7});
    const auto rep = alg::liouville_bound(P, *g);
    const double gb = alg::guting_bound(P, g->minpoly(), 1, std::fabs(g->approx()));
    CHECK(gb == doctest::Approx(rep.bound).epsilon(1e-12));
    CHECK_THROWS_AS(alg::guting_bound(P, g->minpoly(), 3, g->approx()), DomainError);
}

TEST_CASE("twist polynomials split by sign") {
    const auto tw = alg::twist_polynomials({{1, 1}, 1});
    CHECK(tw.qplus == IntPoly(V{0, 1, 1}));
    CHECK(tw.qminus == IntPoly(V{1}));
    CHECK(tw.p == IntPoly(V{-1, 1, 1}));

    const auto tw2 = alg::twist_polynomials({{-1, 1}, 1});
    CHECK(tw2.qplus == IntPoly(V{1, 1}));
    CHECK(tw2.qminus == IntPoly(V{0, 1}));
    CHECK(tw2.p == IntPoly(V{1}));

    CHECK_THROWS_AS(alg::twist_polynomials({{0, 0}, 1}), DomainError);
    CHECK_THROWS_AS(alg::twist_polynomials({{2, 0}, 1}), DomainError);
    CHECK_THROWS_AS(alg::twist_polynomials({{1, 1}, 0}), DomainError);
}

TEST_CASE("family height enumeration") {
    CHECK(alg::family_height(2, 1) == 1);
    CHECK(alg::family_height(2, 2) == 2);
    CHECK(alg::family_height(3, 2) == 13);
    CHECK_THROWS_AS(alg::family_height(5, 3), CapError);
    // the log bound dominates the exact value wherever both exist
    CHECK(alg::family_height_log_bound(3, 2.0) >= std::log(13.0));
    CHECK(alg::family_height_log_bound(2, 1.0) >= 0.0);
}

TEST_CASE("kappa constant closed form") {
    const auto a = alg::preset_sqrt2m1();
    const double k = alg::kappa_constant(2, 1, *a);
    CHECK(k == doctest::Approx(5.1136543358018915).epsilon(1e-12));
    CHECK(k == doctest::Approx(std::log(4.0) + 3.0 * std::log(2.0 * std::sqrt(3.0)))
                   .epsilon(1e-12));
    // beyond the enumeration cap the height falls back to its log bound
    CHECK(std::isfinite(alg::kappa_constant(5, 3, *a)));
    CHECK(alg::kappa_constant(5, 3, *a) > k);
}

TEST_CASE("membership decisions carry exact witnesses") {
    const auto s2 = alg::preset_sqrt2m1();
    const auto rep = alg::membership_A(*s2, 2, 1);
    CHECK_FALSE(rep.in_A1);
    CHECK_FALSE(rep.in_A2);
    CHECK(rep.xy_range == 2981);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->m == std::vector<long>{-1, -1});
    CHECK(rep.witness->x == 2);
    CHECK(rep.witness->y == 1);

    // replay the witness relation in integer arithmetic
    const auto tw = alg::twist_polynomials({rep.witness->m, 1});
    const IntPoly cross = tw.qplus * IntPoly::linear(BigInt(rep.witness->y), BigInt(1)) -
                          tw.qminus * IntPoly::linear(BigInt(rep.witness->x), BigInt(1));
    CHECK_FALSE(cross.is_zero());
    CHECK(s2->minpoly().divides(cross));
}

TEST_CASE("golden ratio fails membership through its unit relation") {
    const auto g = alg::preset_golden();
    const auto rep = alg::membership_A(*g, 2, 1);
    CHECK_FALSE(rep.in_A1);
    CHECK_FALSE(rep.in_A2);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->m == std::vector<long>{-1, -1});
    CHECK(rep.witness->x == 0);
    CHECK(rep.witness->y == 0);

    const auto tw = alg::twist_polynomials({rep.witness->m, 1});
    const IntPoly cross = tw.qplus * IntPoly::linear(BigInt(rep.witness->y), BigInt(1)) -
                          tw.qminus * IntPoly::linear(BigInt(rep.witness->x), BigInt(1));
    CHECK_FALSE(cross.is_zero());
    CHECK(g->minpoly().divides(cross));
}

TEST_CASE("higher degree parameters pass membership") {
    const auto c = alg::preset_cubic();
    const auto rc = alg::membership_A(*c, 2, 1);
    CHECK_FALSE(rc.in_A1);
    CHECK(rc.in_A2);
    CHECK_FALSE(rc.witness.has_value());

    const auto q = alg::preset_quartic();
    const auto rq = alg::membership_A(*q, 2, 1);
    CHECK(rq.in_A1);
    CHECK(rq.in_A2);
    CHECK_FALSE(rq.witness.has_value());
}

TEST_CASE("membership is deterministic") {
    const auto g = alg::preset_golden();
    const auto r1 = alg::membership_A(*g, 2, 1);
    const auto r2 = alg::membership_A(*g, 2, 1);
    REQUIRE(r1.witness.has_value());
    REQUIRE(r2.witness.has_value());
    CHECK(r1.witness->m == r2.witness->m);
    CHECK(r1.witness->x == r2.witness->x);
    CHECK(r1.witness->y == r2.witness->y);
    CHECK_THROWS_AS(alg::membership_A(*g, 3, 1), CapError);
}
