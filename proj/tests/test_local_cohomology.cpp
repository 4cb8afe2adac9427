#include <cstdint>

#include "doctest.h"
#include "local_cohomology.hpp"
#include "support.hpp"

using namespace tcw;

namespace {

PresPtr fermat(uint32_t p) {
  auto R = ts::ring(p, "x,y,z");
  return ts::pres(R, "x^3+y^3-z^3", true);
}

PresPtr plane() { return ts::pres(ts::ring(5, "x,y"), ""); }

CechFraction frac(const PresPtr& S, const std::string& num, uint32_t t,
                  const std::string& xs) {
  auto R = S->ambient();
  return lc_fraction(S, ts::pp(R, num), t, ts::pps(R, xs));
}

}  // namespace

TEST_CASE("fraction degree bookkeeping") {
  auto P = plane();
  CHECK(frac(P, "1", 1, "x, y").degree == -2);
  CHECK(frac(P, "x", 1, "x, y").degree == -1);
  CHECK(frac(P, "x*y^2", 3, "x, y").degree == -3);
  auto S = fermat(7);
  CHECK(frac(S, "z^2", 1, "x, y").degree == 0);
  CHECK(frac(S, "z", 2, "x, y").degree == -3);
}

TEST_CASE("fractions validate their parameter data") {
  auto P = plane();
  auto R = P->ambient();
  CHECK_THROWS_AS(frac(P, "1", 0, "x, y"), Error);        // t = 0
  CHECK_THROWS_AS(frac(P, "1", 1, "x"), Error);           // not a full system
  CHECK_THROWS_AS(frac(P, "1", 1, "x^2, y"), Error);      // degree two
  CHECK_THROWS_AS(frac(P, "x+1", 1, "x, y"), Error);      // inhomogeneous numerator
  CHECK_THROWS_AS(frac(P, "1", 1, "x, 2*x"), Error);      // fails the parameter test
  CHECK(frac(P, "1", 1, "x, x+y").degree == -2);          // a non-monomial system is fine
}

TEST_CASE("rendering is stable") {
  auto P = plane();
  CHECK(frac(P, "1", 2, "x, y").render() == "[1 / (x*y)^2]");
}

TEST_CASE("zero tests against the socle picture of the plane") {
  auto P = plane();
  // [x^i y^j / (xy)^t] is nonzero exactly when both exponents sit under t
  for (uint32_t t = 1; t <= 3; ++t)
    for (uint32_t i = 0; i <= 2 * t; ++i)
      for (uint32_t j = 0; i + j <= 2 * t; ++j) {
        Polynomial num = Polynomial::monomial(P->ambient(), Monomial({i, j}));
        CechFraction eta = lc_fraction(P, num, t, ts::pps(P->ambient(), "x, y"));
        LCZeroVerdict v = lc_zero_test(eta, 4);
        if (i < t && j < t) {
          CHECK(v.status == LCZeroStatus::NonzeroProved);
        } else {
          CHECK(v.status == LCZeroStatus::Zero);
          CHECK(v.s == 0);  // the Cohen-Macaulay fast path needs no shift
        }
      }
}

TEST_CASE("zero test on the cubic cone") {
  auto S = fermat(7);
  CHECK(lc_zero_test(frac(S, "z^2", 1, "x, y"), 4).status == LCZeroStatus::NonzeroProved);
  CHECK(lc_zero_test(frac(S, "x*y", 1, "x, y"), 4).status == LCZeroStatus::Zero);
  CHECK(lc_zero_test(frac(S, "x^3+y^3", 2, "x, y"), 4).status != LCZeroStatus::NonzeroProved);
}

TEST_CASE("frobenius action scales degrees by q") {
  auto P = plane();
  CechFraction eta = frac(P, "1", 1, "x, y");
  CechFraction pushed = lc_frobenius(eta, 1);
  CHECK(pushed.t == 5);
  CHECK(pushed.degree == -10);
  CHECK(lc_frobenius(eta, 0).degree == eta.degree);

  auto S = fermat(7);
  for (const char* num : {"z^2", "x*y", "z"}) {
    for (uint32_t t = 1; t <= 2; ++t) {
      CechFraction f = frac(S, num, t, "x, y");
      for (uint32_t e = 0; e <= 2; ++e) {
        int64_t q = 1;
        for (uint32_t i = 0; i < e; ++i) q *= 7;
        CHECK(lc_frobenius(f, e).degree == q * f.degree);
      }
    }
  }
}

TEST_CASE("equivalent fractions get the same verdict") {
  auto P = plane();
  auto S = fermat(7);
  for (const PresPtr& ring : {P, S}) {
    auto R = ring->ambient();
    for (uint32_t i = 0; i <= 2; ++i)
      for (uint32_t j = 0; j <= 2; ++j) {
        Monomial m = ring == S ? Monomial({i, j, 0}) : Monomial({i, j});
        Polynomial num = Polynomial::monomial(R, m);
        CechFraction base = lc_fraction(ring, num, 1, ts::pps(R, "x, y"));
        CechFraction shifted =
            lc_fraction(ring, num * ts::pp(R, "x") * ts::pp(R, "y"), 2, ts::pps(R, "x, y"));
        CHECK(base.degree == shifted.degree);
        bool zero_base = lc_zero_test(base, 4).status == LCZeroStatus::Zero;
        bool zero_shifted = lc_zero_test(shifted, 4).status == LCZeroStatus::Zero;
        CHECK(zero_base == zero_shifted);
      }
  }
}

TEST_CASE("zero star of a regular ring rejects every nonzero class") {
  auto P = plane();
  for (uint32_t t = 1; t <= 2; ++t)
    for (uint32_t i = 0; i < t; ++i)
      for (uint32_t j = 0; j < t; ++j) {
        Polynomial num = Polynomial::monomial(P->ambient(), Monomial({i, j}));
        CechFraction eta = lc_fraction(P, num, t, ts::pps(P->ambient(), "x, y"));
        ClosureVerdict v = zero_star_test(eta);
        CHECK(v.status != ClosureStatus::InProved);
        CHECK(v.status != ClosureStatus::LikelyIn);
      }
}

TEST_CASE("zero star sees the non-rational class of the cubic cone") {
  auto S = fermat(7);
  ClosureVerdict v = zero_star_test(frac(S, "z^2", 1, "x, y"));
  CHECK(v.status == ClosureStatus::InProved);
  CHECK(v.route == "degree-bound");
}

TEST_CASE("a-invariants of the worked rings") {
  CHECK(a_invariant(plane()) == -2);
  CHECK(a_invariant(fermat(7)) == 0);
  auto C = ts::pres(ts::ring(5, "a,b", OrderKind::GrevLex, "2,3"), "b^2-a^3", true);
  CHECK(a_invariant(C) == 1);

  SUBCASE("the depth-one ring is refused without a certificate") {
    auto R4 = ts::ring(5, "a,b,c,d");
    auto S = ts::pres(R4, "b*c-a*d, b^3-a^2*c, a*c^2-b^2*d, c^3-b*d^2", true);
    try {
      a_invariant(S, ts::pps(R4, "a, d"));
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotComputed);
    }
  }
}

TEST_CASE("fujita probe on the cubic cone") {
  auto S = fermat(7);
  FujitaReport rep = fujita_probe(S, ts::pps(S->ambient(), "x, y"), 3, 2);
  CHECK(rep.n == 3);
  CHECK(rep.t == 2);
  CHECK(rep.all_consistent);
  REQUIRE(rep.classes.size() == 3);  // x, y, z span degree 1
  for (const auto& cls : rep.classes) {
    CHECK(cls.consistent);
    REQUIRE(cls.multiplier.has_value());
    CechFraction product = lc_fraction(S, cls.numerator * *cls.multiplier, 2,
                                       ts::pps(S->ambient(), "x, y"));
    CHECK(product.degree == -2);
    CHECK(lc_zero_test(product, 4).status == LCZeroStatus::NonzeroProved);
  }
}

TEST_CASE("kodaira-style slice containment holds on the cubic cone") {
  auto S = fermat(7);
  KodairaReport rep = kodaira_tc_check(S, ts::pps(S->ambient(), "x, y"), 3);
  CHECK(rep.holds);
  for (const auto& slice : rep.slices) CHECK(slice.violations.empty());
}
