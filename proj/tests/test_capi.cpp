#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "tcw.h"

namespace {

const char* kHullScript =
    "ring R = char 7 vars x,y,z relations x^3+y^3-z^3 domain;\n"
    "ideal I = x, y;\n"
    "task tc-hull R I bound 3;\n";

struct Session {
  tcw_session* s = tcw_session_new();
  ~Session() { tcw_session_free(s); }
};

}  // namespace

TEST_CASE("version string is exposed") {
  CHECK(std::string(tcw_version()) == "0.1.0");
}

TEST_CASE("a clean run produces both renderings") {
  Session h;
  REQUIRE(h.s != nullptr);
  REQUIRE(tcw_load_script(h.s, kHullScript) == TCW_OK);
  REQUIRE(tcw_run(h.s) == TCW_OK);
  std::string text = tcw_output_text(h.s);
  std::string json = tcw_output_json(h.s);
  CHECK(text.find("hull generated by: x,y,z^2") != std::string::npos);
  CHECK(json.find("\"version\": \"0.1.0\"") != std::string::npos);
  CHECK(json.find("\"task\": \"tc-hull\"") != std::string::npos);
  CHECK(std::string(tcw_last_error(h.s)).empty());
  CHECK(std::string(tcw_last_error_name(h.s)).empty());

  SUBCASE("runs are reproducible byte for byte") {
    Session h2;
    REQUIRE(tcw_load_script(h2.s, kHullScript) == TCW_OK);
    REQUIRE(tcw_run(h2.s) == TCW_OK);
    CHECK(json == std::string(tcw_output_json(h2.s)));
  }
}

TEST_CASE("options are validated at the boundary") {
  Session h;
  CHECK(tcw_set_option(h.s, "emax", "3") == TCW_OK);
  CHECK(tcw_set_option(h.s, "order", "lex") == TCW_OK);
  CHECK(tcw_set_option(h.s, "threads", "4") == TCW_OK);
  CHECK(tcw_set_option(h.s, "timings", "true") == TCW_OK);
  CHECK(tcw_set_option(h.s, "primes", "2,3,5") == TCW_OK);

  CHECK(tcw_set_option(h.s, "emax", "99") == TCW_ERROR);
  CHECK(std::string(tcw_last_error_name(h.s)) == "ParameterError");
  CHECK(tcw_set_option(h.s, "order", "random") == TCW_ERROR);
  CHECK(tcw_set_option(h.s, "no-such-option", "1") == TCW_ERROR);
  CHECK(tcw_set_option(h.s, "threads", "0") == TCW_ERROR);
  CHECK(tcw_set_option(h.s, "primes", "2,four") == TCW_ERROR);
  CHECK(std::string(tcw_last_error(h.s)).find("primes") != std::string::npos);
}

TEST_CASE("script errors surface through the error accessors") {
  Session h;
  CHECK(tcw_load_script(h.s, "ring R = char 4 vars x;") == TCW_ERROR);
  CHECK(std::string(tcw_last_error_name(h.s)) == "ParseError");
  CHECK(std::string(tcw_last_error(h.s)).find("not prime") != std::string::npos);

  SUBCASE("a later good load clears the error") {
    CHECK(tcw_load_script(h.s, kHullScript) == TCW_OK);
    CHECK(std::string(tcw_last_error(h.s)).empty());
  }
}

TEST_CASE("task failures keep the run alive at the API level") {
  Session h;
  REQUIRE(tcw_load_script(h.s,
                          "ring R = char 5 vars x,y;\n"
                          "ideal I = x;\n"
                          "task hk R I emax 1;\n") == TCW_OK);
  CHECK(tcw_run(h.s) == TCW_ERROR);
  CHECK(std::string(tcw_last_error_name(h.s)) == "NotCofinite");
  // the document still carries the per-task error entry
  std::string json = tcw_output_json(h.s);
  CHECK(json.find("\"code\": \"NotCofinite\"") != std::string::npos);
}

TEST_CASE("undetermined verdicts get their own status") {
  Session h;
  REQUIRE(tcw_load_script(h.s,
                          "ring S = char 7 vars x,y,z relations x^3+y^3-z^3 domain;\n"
                          "ideal I = x, y;\n"
                          "element zz = z;\n"
                          "task tc-membership S I zz emax 0;\n") == TCW_OK);
  CHECK(tcw_run(h.s) == TCW_UNDETERMINED);
  CHECK(std::string(tcw_output_json(h.s)).find("UNDETERMINED") != std::string::npos);
}

TEST_CASE("running without a script is an error") {
  Session h;
  CHECK(tcw_run(h.s) == TCW_ERROR);
  CHECK(std::string(tcw_last_error(h.s)).find("script") != std::string::npos);
}

TEST_CASE("null sessions are tolerated by the accessors") {
  CHECK(tcw_load_script(nullptr, "x") == TCW_ERROR);
  CHECK(tcw_run(nullptr) == TCW_ERROR);
  CHECK(std::string(tcw_output_text(nullptr)).empty());
  CHECK(std::string(tcw_output_json(nullptr)).empty());
  tcw_session_free(nullptr);  // must not crash
}
