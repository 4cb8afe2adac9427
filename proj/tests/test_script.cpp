#include <string>

#include "doctest.h"
#include "error.hpp"
#include "script.hpp"

using namespace tcw;

namespace {

const char* kSample = R"(# cone over four points, plus a family
ring S = char 7 vars x,y,z relations x^3+y^3-z^3 domain;
ideal I = x, y;
element zz = z^2;
ring C = char 5 vars a,b weights 2,3 relations b^2-a^3 domain;
ideal A = a;
ring F = char Z vars u,v relations u^2+v^2;
task tc-hull S I bound 3;
task models F primes 2,5 mather u;
)";

}  // namespace

TEST_CASE("parse and render round trip") {
  WorkbenchScript s1 = parse_script(kSample);
  std::string r1 = render_script(s1);
  WorkbenchScript s2 = parse_script(r1);
  std::string r2 = render_script(s2);
  CHECK(r1 == r2);
  REQUIRE(s1.rings.size() == 3);
  REQUIRE(s1.ideals.size() == 2);
  REQUIRE(s1.elements.size() == 1);
  REQUIRE(s1.tasks.size() == 2);
  CHECK(s1.order.size() == 8);

  CHECK(s1.rings[0].name == "S");
  CHECK(s1.rings[0].prime == 7);
  CHECK(s1.rings[0].domain);
  CHECK(s1.rings[1].weights == std::vector<int64_t>{2, 3});
  CHECK(s1.rings[2].integral);
  CHECK(s1.ideals[0].ring == "S");
  CHECK(s1.ideals[1].ring == "C");  // binds to the ring declared just before
  CHECK(s1.tasks[0].kind == "tc-hull");
  CHECK(s1.tasks[0].words == std::vector<std::string>{"S", "I", "bound", "3"});
  CHECK(s1.tasks[1].words == std::vector<std::string>{"F", "primes", "2,5", "mather", "u"});
}

TEST_CASE("polynomial sources render canonically") {
  WorkbenchScript s = parse_script("ring R = char 7 vars x,y; element f = y+2*x^2-y+x*y;");
  REQUIRE(s.elements.size() == 1);
  CHECK(render_poly_spec(s.elements[0].poly, s.rings[0].vars) == "2*x^2+x*y");
}

TEST_CASE("declaration spans point at the source") {
  WorkbenchScript s = parse_script("ring R = char 5 vars x;\n\nideal I = x;\n");
  CHECK(s.rings[0].span.line == 1);
  CHECK(s.ideals[0].span.line == 3);
}

TEST_CASE("parser error reporting") {
  SUBCASE("a composite characteristic") {
    try {
      parse_script("ring R = char 4 vars x;");
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(e.detail().find("not prime") != std::string::npos);
    }
  }
  SUBCASE("an unknown variable in a polynomial") {
    try {
      parse_script("ring R = char 5 vars x,y; element f = w;");
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnresolvedName);
      CHECK(e.detail().find("'w'") != std::string::npos);
      CHECK(e.detail().find("line 1") != std::string::npos);
    }
  }
  SUBCASE("declarations before any ring") {
    CHECK_THROWS_AS(parse_script("ideal I = x;"), Error);
  }
  SUBCASE("clashing names") {
    try {
      parse_script("ring R = char 5 vars x; ideal R = x;");
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NameClash);
    }
  }
  SUBCASE("a repeated variable") {
    CHECK_THROWS_AS(parse_script("ring R = char 5 vars x,x;"), Error);
  }
  SUBCASE("a missing semicolon") {
    CHECK_THROWS_AS(parse_script("ring R = char 5 vars x"), Error);
  }
  SUBCASE("weight count mismatch") {
    CHECK_THROWS_AS(parse_script("ring R = char 5 vars x,y weights 2;"), Error);
  }
  SUBCASE("an oversized exponent") {
    CHECK_THROWS_AS(parse_script("ring R = char 5 vars x; element f = x^99999999999;"),
                    Error);
  }
}

TEST_CASE("comments and whitespace are immaterial") {
  WorkbenchScript a = parse_script("ring R = char 5 vars x , y ;\n# trailing note\nideal I = x ;");
  WorkbenchScript b = parse_script("# leading note\nring R = char 5 vars x,y; ideal I = x;");
  CHECK(render_script(a) == render_script(b));
}

TEST_CASE("coefficients are folded exactly") {
  WorkbenchScript s =
      parse_script("ring R = char 7 vars x; element f = 3*x+11*x-2*2*x;");
  // 3 + 11 - 4 = 10, stored exactly before any mod-p reduction
  REQUIRE(s.elements[0].poly.terms.size() == 1);
  CHECK(s.elements[0].poly.terms[0].first == 10);
}
