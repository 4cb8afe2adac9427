#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tcw.h"

namespace {

struct Session {
  tcw_session* s;
  Session() : s(tcw_session_new()) {}
  ~Session() { tcw_session_free(s); }
};

int set_or_die(tcw_session* s, const char* key, const std::string& value) {
  if (tcw_set_option(s, key, value.c_str()) != 0) {
    std::cerr << "error " << tcw_last_error_name(s) << ": " << tcw_last_error(s) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tight-closure workbench"};
  app.set_version_flag("--version", tcw_version());

  std::string script_path;
  app.add_option("script", script_path, "workbench script file")
      ->required()
      ->check(CLI::ExistingFile);

  bool json = false, timings = false;
  std::uint32_t emax = 0, kpow = 0, smax = 0, threads = 0;
  std::int64_t bound = -1;
  std::string order, primes, assert_element, out_path;
  app.add_flag("--json", json, "emit one JSON document instead of text tables");
  app.add_flag("--timings", timings, "include per-task wall times in the JSON output");
  app.add_option("--emax", emax, "default Frobenius exponent ceiling");
  app.add_option("--kpow", kpow, "certificate power cap for refutation sweeps");
  app.add_option("--bound", bound, "default degree bound for hull and probe tasks");
  app.add_option("--smax", smax, "default shift cap for local cohomology zero tests");
  app.add_option("--order", order, "monomial order: lex or grevlex");
  app.add_option("--primes", primes, "comma list of primes for model families");
  app.add_option("--threads", threads, "worker threads for model families");
  app.add_option("--assert-test-element", assert_element,
                 "element name to use as the asserted test element");
  app.add_option("-o,--output", out_path, "write the report to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(script_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (!in.good() && !in.eof()) {
    std::cerr << "error: cannot read " << script_path << "\n";
    return 1;
  }

  Session session;
  if (!session.s) {
    std::cerr << "error: out of memory\n";
    return 1;
  }
  tcw_session* s = session.s;
  if (timings && set_or_die(s, "timings", "1")) return 1;
  if (emax != 0 && set_or_die(s, "emax", std::to_string(emax))) return 1;
  if (kpow != 0 && set_or_die(s, "kpow", std::to_string(kpow))) return 1;
  if (bound >= 0 && set_or_die(s, "bound", std::to_string(bound))) return 1;
  if (smax != 0 && set_or_die(s, "smax", std::to_string(smax))) return 1;
  if (!order.empty() && set_or_die(s, "order", order)) return 1;
  if (!primes.empty() && set_or_die(s, "primes", primes)) return 1;
  if (threads != 0 && set_or_die(s, "threads", std::to_string(threads))) return 1;
  if (!assert_element.empty() && set_or_die(s, "assert-test-element", assert_element))
    return 1;

  if (tcw_load_script(s, buffer.str().c_str()) != 0) {
    std::cerr << "error " << tcw_last_error_name(s) << ": " << tcw_last_error(s) << "\n";
    return 1;
  }

  int code = tcw_run(s);
  const char* report = json ? tcw_output_json(s) : tcw_output_text(s);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << report;
    if (!out.good()) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
  } else {
    std::cout << report;
  }
  if (code == TCW_ERROR && !json)
    std::cerr << "error " << tcw_last_error_name(s) << ": " << tcw_last_error(s) << "\n";
  return code;
}
