#include <algorithm>

#include "doctest.h"
#include "closure.hpp"
#include "support.hpp"

using namespace tcw;

namespace {

PresPtr fermat(uint32_t p) {
  auto R = ts::ring(p, "x,y,z");
  return ts::pres(R, "x^3+y^3-z^3", true);
}

PresPtr cusp() {
  auto R = ts::ring(5, "a,b", OrderKind::GrevLex, "2,3");
  return ts::pres(R, "b^2-a^3", true);
}

PresPtr semigroup_ring() {
  auto R = ts::ring(5, "a,b,c,d");
  return ts::pres(R, "b*c-a*d, b^3-a^2*c, a*c^2-b^2*d, c^3-b*d^2", true);
}

bool all_hold(const std::vector<CertificateRow>& rows) {
  return std::all_of(rows.begin(), rows.end(),
                     [](const CertificateRow& r) { return r.holds && *r.holds; });
}

std::vector<std::string> hull_strings(const HullResult& h) {
  std::vector<std::string> out;
  for (const auto& g : h.generators) out.push_back(g.gen.render());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("bracket powers do not depend on the generating set") {
  auto S = fermat(7);
  auto R = S->ambient();
  auto sets = {ts::pps(R, "x, y"), ts::pps(R, "x, x+y"), ts::pps(R, "x, y, x^2+3*x*y")};
  for (uint32_t e : {1u, 2u}) {
    AmbientIdeal first = bracket_power_lift(S, ts::pps(R, "x, y"), e);
    for (const auto& gens : sets)
      CHECK(ideal_equal(bracket_power_lift(S, gens, e), first));
  }
}

TEST_CASE("bracket powers compose") {
  auto S = fermat(5);
  auto R = S->ambient();
  auto gens = ts::pps(R, "x, y");
  std::vector<Polynomial> once;
  for (const auto& g : gens) once.push_back(g.frobenius_power(1));
  CHECK(ideal_equal(bracket_power_lift(S, once, 1), bracket_power_lift(S, gens, 2)));
}

TEST_CASE("certificate rows for the cubic hull element") {
  auto S = fermat(7);
  auto R = S->ambient();
  auto gens = ts::pps(R, "x, y");
  auto rows = tc_certificate_check(S, gens, ts::pp(R, "z^2"), ts::pp(R, "x"), 1, 5);
  REQUIRE(rows.size() == 5);
  CHECK(all_hold(rows));
  CHECK(rows[0].q == 7);
  CHECK(rows[4].q == 16807);

  SUBCASE("powers of a certificate still certify") {
    auto rows2 = tc_certificate_check(S, gens, ts::pp(R, "z^2"), ts::pp(R, "x^2"), 1, 3);
    CHECK(all_hold(rows2));
  }
  SUBCASE("a zero certificate is rejected") {
    try {
      tc_certificate_check(S, gens, ts::pp(R, "z^2"), ts::pp(R, "x^3+y^3-z^3"), 1, 2);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ZeroCertificate);
    }
  }
}

TEST_CASE("membership cascade routes") {
  auto S = fermat(7);
  auto R = S->ambient();
  auto gens = ts::pps(R, "x, y");

  SUBCASE("plain members come back proved") {
    auto v = tc_membership(S, gens, ts::pp(R, "3*x+2*y"));
    CHECK(v.status == ClosureStatus::InProved);
    CHECK(v.route == "member");
  }
  SUBCASE("the degree route proves the hull element") {
    auto v = tc_membership(S, gens, ts::pp(R, "z^2"));
    CHECK(v.status == ClosureStatus::InProved);
    CHECK(v.route == "degree-bound");
  }
  SUBCASE("the linear class is refuted by a test candidate") {
    auto v = tc_membership(S, gens, ts::pp(R, "z"));
    CHECK(v.status == ClosureStatus::OutEvidence);
    CHECK(v.route == "test-candidate-failure");
    REQUIRE_FALSE(v.failures.empty());
    CHECK(v.failures[0].e >= 1);
  }
  SUBCASE("regular rings have trivial tight closure") {
    auto free2 = ts::pres(ts::ring(5, "x,y"), "");
    auto r2 = free2->ambient();
    auto v = tc_membership(free2, ts::pps(r2, "x^2, y^2"), ts::pp(r2, "x*y"));
    CHECK(v.status == ClosureStatus::OutEvidence);
    CHECK(v.route == "test-candidate-failure");
  }
}

TEST_CASE("colon chain stabilization on the depth-one ring") {
  auto S = semigroup_ring();
  auto R = S->ambient();
  auto v = tc_membership(S, ts::pps(R, "a"), ts::pp(R, "b^2"));
  CHECK(v.status == ClosureStatus::LikelyIn);
  CHECK(v.route == "certificate-stabilization");
  CHECK(v.chain_stabilized);
  REQUIRE(v.certificate.has_value());
  CHECK_FALSE(S->is_zero_in_quotient(*v.certificate));
  REQUIRE_FALSE(v.chain.empty());
  // the intersected chain carries a minimal-degree slice the certificate hits
  CHECK(v.e_hi >= v.e_lo);
}

TEST_CASE("an asserted test element makes refutation sound") {
  auto S = fermat(7);
  auto R = S->ambient();
  ClosureConfig cfg;
  cfg.asserted_test_element = ts::pp(R, "x");
  auto v = tc_membership(S, ts::pps(R, "x, y"), ts::pp(R, "z"), cfg);
  CHECK(v.status == ClosureStatus::OutEvidence);
  CHECK(v.route == "asserted-test-element");
  REQUIRE_FALSE(v.failures.empty());
  CHECK(v.failures[0].candidate == ts::pp(R, "x"));
  bool noted = false;
  for (const auto& a : v.assumptions)
    if (a.find("asserted test element") != std::string::npos) noted = true;
  CHECK(noted);

  SUBCASE("a vanishing assertion is rejected") {
    cfg.asserted_test_element = ts::pp(R, "x^3+y^3-z^3");
    CHECK_THROWS_AS(tc_membership(S, ts::pps(R, "x, y"), ts::pp(R, "z"), cfg), Error);
  }
}

TEST_CASE("cusp parameter membership via the degree route") {
  auto S = cusp();
  auto R = S->ambient();
  auto v = tc_membership(S, ts::pps(R, "a"), ts::pp(R, "b"));
  CHECK(v.status == ClosureStatus::InProved);
  CHECK(v.route == "degree-bound");
}

TEST_CASE("the fixed hull of the cubic cone") {
  auto S = fermat(7);
  auto R = S->ambient();
  HullResult h = tc_hull(S, ts::pps(R, "x, y"), 3);
  CHECK(hull_strings(h) == std::vector<std::string>{"x", "y", "z^2"});
  CHECK(h.fixed_point);
  CHECK(h.sweeps >= 1);

  SUBCASE("the hull is a fixed point of another sweep") {
    HullResult again = tc_hull(S, ts::pps(R, "x, y, z^2"), 3);
    CHECK(hull_strings(again) == std::vector<std::string>{"x", "y", "z^2"});
    CHECK(again.fixed_point);
  }
}

TEST_CASE("hulls in a regular ring never grow") {
  auto free2 = ts::pres(ts::ring(5, "x,y"), "");
  auto R = free2->ambient();
  for (const char* gens : {"x^2, x*y", "x^3, y^3", "x^2+y^2, x*y"}) {
    HullResult h = tc_hull(free2, ts::pps(R, gens), 4);
    CHECK(h.fixed_point);
    std::vector<Polynomial> out;
    for (const auto& g : h.generators) out.push_back(g.gen);
    CHECK(ideal_equal(AmbientIdeal(R, out), AmbientIdeal(R, ts::pps(R, gens))));
  }
}

TEST_CASE("plus closure witnesses on the cusp") {
  auto S = cusp();
  auto R = S->ambient();
  auto T = ts::pres(ts::ring(5, "t"), "");
  auto TR = T->ambient();
  PlusWitness w;
  w.target = T;
  w.images = ts::pps(TR, "t^2, t^3");

  SUBCASE("the correct coefficient verifies") {
    w.coefficients = ts::pps(TR, "t");
    CHECK(plus_closure_witness_check(S, ts::pps(R, "a"), ts::pp(R, "b"), w));
  }
  SUBCASE("a wrong coefficient fails") {
    w.coefficients = ts::pps(TR, "t^2");
    CHECK_FALSE(plus_closure_witness_check(S, ts::pps(R, "a"), ts::pp(R, "b"), w));
  }
  SUBCASE("a map that misses a relation is refused") {
    w.images = ts::pps(TR, "t, t");
    w.coefficients = ts::pps(TR, "t");
    try {
      plus_closure_witness_check(S, ts::pps(R, "a"), ts::pp(R, "b"), w);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MapError);
    }
  }
}

TEST_CASE("persistence needs a surviving certificate") {
  auto S = fermat(7);
  auto R = S->ambient();
  auto gens = ts::pps(R, "x, y");

  SUBCASE("killing the certificate is an error") {
    try {
      persistence_pushforward(S, gens, ts::pp(R, "z^2"), ts::pp(R, "x"), ts::pp(R, "x"), 1, 2);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CertificateKilled);
    }
  }
  SUBCASE("a surviving certificate is pushed through the quotient") {
    auto rows =
        persistence_pushforward(S, gens, ts::pp(R, "z^2"), ts::pp(R, "x"), ts::pp(R, "y-x"), 1, 3);
    REQUIRE(rows.size() == 3);
    CHECK(all_hold(rows));
  }
}
