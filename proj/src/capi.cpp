#include "tcw.h"

#include <cstdint>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "runner.hpp"

using tcw::Error;
using tcw::ErrorCode;

struct tcw_session {
  tcw::RunnerOptions opt;
  std::optional<tcw::WorkbenchScript> script;
  std::string text;
  std::string json_text;
  std::string error_message;
  std::string error_name;
};

namespace {

void clear_error(tcw_session* s) {
  s->error_message.clear();
  s->error_name.clear();
}

void set_error(tcw_session* s, const Error& e) {
  s->error_name = tcw::error_code_name(e.code());
  s->error_message = e.detail();
}

uint64_t need_number(const std::string& v, uint64_t maxv, const std::string& key) {
  uint64_t out = 0;
  if (v.empty()) throw Error(ErrorCode::ParameterError, "option " + key + " needs a number");
  for (char c : v) {
    if (c < '0' || c > '9')
      throw Error(ErrorCode::ParameterError,
                  "option " + key + ": '" + v + "' is not a number");
    out = out * 10 + static_cast<uint64_t>(c - '0');
    if (out > maxv)
      throw Error(ErrorCode::ParameterError, "option " + key + " out of range");
  }
  return out;
}

bool need_flag(const std::string& v, const std::string& key) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw Error(ErrorCode::ParameterError, "option " + key + " expects 0 or 1");
}

std::vector<uint32_t> need_primes(const std::string& v) {
  std::vector<uint32_t> out;
  std::string cur;
  auto flush = [&]() {
    out.push_back(static_cast<uint32_t>(need_number(cur, 1u << 30, "primes")));
    cur.clear();
  };
  for (char c : v) {
    if (c == ',')
      flush();
    else
      cur.push_back(c);
  }
  flush();
  return out;
}

void apply_option(tcw::RunnerOptions& opt, const std::string& key, const std::string& value) {
  if (key == "emax")
    opt.e_max = static_cast<uint32_t>(need_number(value, 16, key));
  else if (key == "kpow")
    opt.k_power = static_cast<uint32_t>(need_number(value, 1u << 20, key));
  else if (key == "bound")
    opt.bound = static_cast<int64_t>(need_number(value, INT32_MAX, key));
  else if (key == "smax")
    opt.s_max = static_cast<uint32_t>(need_number(value, 1u << 12, key));
  else if (key == "order") {
    if (value != "lex" && value != "grevlex")
      throw Error(ErrorCode::ParameterError, "option order must be lex or grevlex");
    opt.order = value;
  } else if (key == "primes")
    opt.primes = need_primes(value);
  else if (key == "threads") {
    opt.threads = static_cast<uint32_t>(need_number(value, 256, key));
    if (opt.threads == 0)
      throw Error(ErrorCode::ParameterError, "option threads must be positive");
  } else if (key == "assert-test-element")
    opt.assert_test_element = value;
  else if (key == "timings")
    opt.timings = need_flag(value, key);
  else
    throw Error(ErrorCode::ParameterError, "unknown option '" + key + "'");
}

}  // namespace

extern "C" {

tcw_session* tcw_session_new(void) { return new (std::nothrow) tcw_session(); }

void tcw_session_free(tcw_session* session) { delete session; }

int tcw_set_option(tcw_session* session, const char* key, const char* value) {
  if (!session || !key || !value) return 1;
  clear_error(session);
  try {
    apply_option(session->opt, key, value);
  } catch (const Error& e) {
    set_error(session, e);
    return 1;
  }
  return 0;
}

int tcw_load_script(tcw_session* session, const char* text) {
  if (!session || !text) return 1;
  clear_error(session);
  session->script.reset();
  session->text.clear();
  session->json_text.clear();
  try {
    session->script = tcw::parse_script(text);
  } catch (const Error& e) {
    set_error(session, e);
    return 1;
  }
  return 0;
}

int tcw_run(tcw_session* session) {
  if (!session) return TCW_ERROR;
  clear_error(session);
  if (!session->script) {
    session->error_name = tcw::error_code_name(ErrorCode::ParameterError);
    session->error_message = "no script loaded";
    return TCW_ERROR;
  }
  try {
    tcw::RunOutcome out = tcw::run_script(*session->script, session->opt);
    session->text = out.text;
    session->json_text = out.doc.dump(2) + "\n";
    if (out.exit_code == TCW_ERROR) {
      for (const auto& entry : out.doc["tasks"]) {
        if (entry.contains("error")) {
          session->error_name = entry["error"]["code"].get<std::string>();
          session->error_message = entry["error"]["message"].get<std::string>();
          break;
        }
      }
    }
    return out.exit_code;
  } catch (const Error& e) {
    set_error(session, e);
  } catch (const std::exception& e) {
    session->error_name = tcw::error_code_name(ErrorCode::InternalError);
    session->error_message = e.what();
  }
  nlohmann::ordered_json doc;
  doc["version"] = tcw::kWorkbenchVersion;
  doc["error"] = nlohmann::ordered_json{{"code", session->error_name},
                                        {"message", session->error_message}};
  session->json_text = doc.dump(2) + "\n";
  session->text = "error " + session->error_name + ": " + session->error_message + "\n";
  return TCW_ERROR;
}

const char* tcw_output_text(const tcw_session* session) {
  return session ? session->text.c_str() : "";
}

const char* tcw_output_json(const tcw_session* session) {
  return session ? session->json_text.c_str() : "";
}

const char* tcw_last_error(const tcw_session* session) {
  return session ? session->error_message.c_str() : "";
}

const char* tcw_last_error_name(const tcw_session* session) {
  return session ? session->error_name.c_str() : "";
}

const char* tcw_version(void) { return tcw::kWorkbenchVersion; }

}  // extern "C"
