#include "script.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "error.hpp"

namespace tcw {

namespace {

struct Token {
  enum Kind { Ident, Integer, Punct, End } kind = End;
  std::string text;
  size_t line = 1;
  size_t col = 1;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  size_t line = 1, col = 1;
  size_t i = 0;
  auto step = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      step(c);
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') {
        step(text[i]);
        ++i;
      }
      continue;
    }
    Token tok;
    tok.line = line;
    tok.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok.kind = Token::Ident;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        tok.text.push_back(text[i]);
        step(text[i]);
        ++i;
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = Token::Integer;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        tok.text.push_back(text[i]);
        step(text[i]);
        ++i;
      }
    } else if (std::string("=;,^+-*").find(c) != std::string::npos) {
      tok.kind = Token::Punct;
      tok.text.push_back(c);
      step(c);
      ++i;
    } else {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", col " +
                                             std::to_string(col) +
                                             ": unexpected character '" + c + "'");
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  WorkbenchScript run() {
    WorkbenchScript script;
    if (peek().kind == Token::End) fail("a declaration (ring, ideal, element, task)");
    while (peek().kind != Token::End) {
      const Token& t = peek();
      if (t.kind != Token::Ident) fail("a declaration keyword");
      if (t.text == "ring") {
        parse_ring(script);
      } else if (t.text == "ideal") {
        parse_ideal(script);
      } else if (t.text == "element") {
        parse_element(script);
      } else if (t.text == "task") {
        parse_task(script);
      } else {
        fail("'ring', 'ideal', 'element' or 'task'");
      }
    }
    return script;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.kind == Token::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorCode::ParseError, "line " + std::to_string(t.line) + ", col " +
                                           std::to_string(t.col) + ": expected " + expected +
                                           ", got " + got);
  }

  std::string expect_ident(const std::string& what) {
    if (peek().kind != Token::Ident) fail(what);
    return advance().text;
  }

  void expect_punct(char c) {
    if (peek().kind != Token::Punct || peek().text[0] != c)
      fail(std::string("'") + c + "'");
    advance();
  }

  bool accept_punct(char c) {
    if (peek().kind == Token::Punct && peek().text[0] == c) {
      advance();
      return true;
    }
    return false;
  }

  bool accept_keyword(const std::string& kw) {
    if (peek().kind == Token::Ident && peek().text == kw) {
      advance();
      return true;
    }
    return false;
  }

  uint64_t expect_integer(const std::string& what, uint64_t max) {
    if (peek().kind != Token::Integer) fail(what);
    const Token& t = advance();
    uint64_t v = 0;
    for (char c : t.text) {
      v = v * 10 + static_cast<uint64_t>(c - '0');
      if (v > max)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(t.line) + ", col " +
                                               std::to_string(t.col) + ": " + what +
                                               " out of range");
    }
    return v;
  }

  void register_name(const std::string& name, const Token& at) {
    if (!names_.insert(name).second)
      throw Error(ErrorCode::NameClash, "line " + std::to_string(at.line) + ", col " +
                                            std::to_string(at.col) + ": '" + name +
                                            "' is already declared");
  }

  // poly := ["-"] term (("+"|"-") term)* ; term := factor ("*" factor)* ;
  // factor := INT | VAR ["^" INT]
  PolySpec parse_poly(const std::vector<std::string>& vars, const std::string& ring_name) {
    PolySpec spec;
    size_t start = pos_;
    std::map<std::vector<uint32_t>, __int128> acc;
    bool negative = accept_punct('-');
    while (true) {
      __int128 coeff = negative ? -1 : 1;
      Monomial m(vars.size());
      bool saw_factor = false;
      while (true) {
        if (peek().kind == Token::Integer) {
          coeff *= static_cast<__int128>(expect_integer("coefficient", INT64_MAX));
        } else if (peek().kind == Token::Ident) {
          const Token& t = advance();
          auto it = std::find(vars.begin(), vars.end(), t.text);
          if (it == vars.end())
            throw Error(ErrorCode::UnresolvedName,
                        "line " + std::to_string(t.line) + ", col " + std::to_string(t.col) +
                            ": '" + t.text + "' is not a variable of ring " + ring_name);
          size_t idx = static_cast<size_t>(it - vars.begin());
          uint64_t exp = 1;
          if (accept_punct('^')) exp = expect_integer("exponent", 0x7fffffffull);
          uint64_t total = static_cast<uint64_t>(m.e[idx]) + exp;
          if (total > 0x7fffffffull)
            throw Error(ErrorCode::ExponentOverflow, "exponent of " + t.text + " too large");
          m.e[idx] = static_cast<uint32_t>(total);
        } else {
          fail("a coefficient or variable");
        }
        saw_factor = true;
        if (!accept_punct('*')) break;
      }
      if (!saw_factor) fail("a term");
      acc[m.e] += coeff;
      if (acc[m.e] > INT64_MAX || acc[m.e] < INT64_MIN)
        throw Error(ErrorCode::ParseError, "coefficient overflow while combining terms");
      if (accept_punct('+')) {
        negative = false;
      } else if (accept_punct('-')) {
        negative = true;
      } else {
        break;
      }
    }
    for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
      if (it->second == 0) continue;
      spec.terms.emplace_back(static_cast<int64_t>(it->second), Monomial(it->first));
    }
    std::ostringstream src;
    for (size_t i = start; i < pos_; ++i) src << toks_[i].text;
    spec.source = src.str();
    return spec;
  }

  const RingDecl& active_ring(const WorkbenchScript& script, const Token& at) const {
    if (script.rings.empty())
      throw Error(ErrorCode::UnresolvedName, "line " + std::to_string(at.line) + ", col " +
                                                 std::to_string(at.col) +
                                                 ": no ring declared yet");
    return script.rings.back();
  }

  void parse_ring(WorkbenchScript& script) {
    const Token& kw = advance();  // "ring"
    RingDecl decl;
    decl.span = {kw.line, kw.col};
    decl.name = expect_ident("a ring name");
    register_name(decl.name, kw);
    expect_punct('=');
    if (!accept_keyword("char")) fail("'char'");
    if (accept_keyword("Z")) {
      decl.integral = true;
    } else {
      const Token& at = peek();
      uint64_t p = expect_integer("a prime", 0xffffffffull);
      if (!is_prime_u32(static_cast<uint32_t>(p)))
        throw Error(ErrorCode::ParseError, "line " + std::to_string(at.line) + ", col " +
                                               std::to_string(at.col) + ": " +
                                               std::to_string(p) + " is not prime");
      decl.prime = static_cast<uint32_t>(p);
    }
    if (!accept_keyword("vars")) fail("'vars'");
    decl.vars.push_back(expect_ident("a variable name"));
    while (accept_punct(',')) decl.vars.push_back(expect_ident("a variable name"));
    std::set<std::string> seen(decl.vars.begin(), decl.vars.end());
    if (seen.size() != decl.vars.size())
      throw Error(ErrorCode::NameClash, "ring " + decl.name + " repeats a variable name");
    if (accept_keyword("weights")) {
      decl.weights.push_back(static_cast<int64_t>(expect_integer("a weight", INT32_MAX)));
      while (accept_punct(','))
        decl.weights.push_back(static_cast<int64_t>(expect_integer("a weight", INT32_MAX)));
      if (decl.weights.size() != decl.vars.size())
        throw Error(ErrorCode::ParseError,
                    "ring " + decl.name + " needs one weight per variable");
      for (int64_t w : decl.weights)
        if (w < 1)
          throw Error(ErrorCode::ParseError, "ring " + decl.name + " has a weight below 1");
    }
    if (accept_keyword("relations")) {
      decl.relations.push_back(parse_poly(decl.vars, decl.name));
      while (accept_punct(',')) decl.relations.push_back(parse_poly(decl.vars, decl.name));
    }
    if (accept_keyword("domain")) decl.domain = true;
    expect_punct(';');
    script.order.emplace_back(DeclKind::Ring, script.rings.size());
    script.rings.push_back(std::move(decl));
  }

  void parse_ideal(WorkbenchScript& script) {
    const Token& kw = advance();  // "ideal"
    IdealDecl decl;
    decl.span = {kw.line, kw.col};
    decl.name = expect_ident("an ideal name");
    register_name(decl.name, kw);
    const RingDecl& ring = active_ring(script, kw);
    decl.ring = ring.name;
    expect_punct('=');
    decl.gens.push_back(parse_poly(ring.vars, ring.name));
    while (accept_punct(',')) decl.gens.push_back(parse_poly(ring.vars, ring.name));
    expect_punct(';');
    script.order.emplace_back(DeclKind::Ideal, script.ideals.size());
    script.ideals.push_back(std::move(decl));
  }

  void parse_element(WorkbenchScript& script) {
    const Token& kw = advance();  // "element"
    ElementDecl decl;
    decl.span = {kw.line, kw.col};
    decl.name = expect_ident("an element name");
    register_name(decl.name, kw);
    const RingDecl& ring = active_ring(script, kw);
    decl.ring = ring.name;
    expect_punct('=');
    decl.poly = parse_poly(ring.vars, ring.name);
    expect_punct(';');
    script.order.emplace_back(DeclKind::Element, script.elements.size());
    script.elements.push_back(std::move(decl));
  }

  // A task word is idents/integers glued by '-' or ',' so names like
  // tc-hull and lists like 2,3,5 stay single words.
  std::string parse_word() {
    if (peek().kind != Token::Ident && peek().kind != Token::Integer)
      fail("a task argument");
    std::string word = advance().text;
    while (peek().kind == Token::Punct &&
           (peek().text[0] == '-' || peek().text[0] == ',')) {
      char glue = peek().text[0];
      if (peek(1).kind != Token::Ident && peek(1).kind != Token::Integer) break;
      advance();
      word.push_back(glue);
      word += advance().text;
    }
    return word;
  }

  void parse_task(WorkbenchScript& script) {
    const Token& kw = advance();  // "task"
    TaskDecl decl;
    decl.span = {kw.line, kw.col};
    if (peek().kind != Token::Ident) fail("a task kind");
    decl.kind = parse_word();
    while (peek().kind == Token::Ident || peek().kind == Token::Integer)
      decl.words.push_back(parse_word());
    expect_punct(';');
    script.order.emplace_back(DeclKind::Task, script.tasks.size());
    script.tasks.push_back(std::move(decl));
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::set<std::string> names_;
};

}  // namespace

WorkbenchScript parse_script(const std::string& text) { return Parser(text).run(); }

std::string render_poly_spec(const PolySpec& poly, const std::vector<std::string>& vars) {
  if (poly.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, m] : poly.terms) {
    int64_t coeff = c;
    if (first) {
      if (coeff < 0) {
        os << '-';
        coeff = -coeff;
      }
    } else {
      os << (coeff < 0 ? "-" : "+");
      if (coeff < 0) coeff = -coeff;
    }
    bool need_star = false;
    if (coeff != 1 || m.is_one()) {
      os << coeff;
      need_star = true;
    }
    for (size_t j = 0; j < m.e.size(); ++j) {
      if (m.e[j] == 0) continue;
      if (need_star) os << '*';
      os << vars[j];
      if (m.e[j] > 1) os << '^' << m.e[j];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

std::string render_script(const WorkbenchScript& script) {
  std::ostringstream os;
  for (const auto& [kind, idx] : script.order) {
    switch (kind) {
      case DeclKind::Ring: {
        const RingDecl& r = script.rings[idx];
        os << "ring " << r.name << " = char ";
        if (r.integral)
          os << "Z";
        else
          os << r.prime;
        os << " vars ";
        for (size_t i = 0; i < r.vars.size(); ++i) os << (i ? "," : "") << r.vars[i];
        if (!r.weights.empty()) {
          os << " weights ";
          for (size_t i = 0; i < r.weights.size(); ++i)
            os << (i ? "," : "") << r.weights[i];
        }
        if (!r.relations.empty()) {
          os << " relations ";
          for (size_t i = 0; i < r.relations.size(); ++i)
            os << (i ? ", " : "") << render_poly_spec(r.relations[i], r.vars);
        }
        if (r.domain) os << " domain";
        os << ";\n";
        break;
      }
      case DeclKind::Ideal: {
        const IdealDecl& d = script.ideals[idx];
        const RingDecl* ring = nullptr;
        for (const RingDecl& r : script.rings)
          if (r.name == d.ring) ring = &r;
        os << "ideal " << d.name << " = ";
        for (size_t i = 0; i < d.gens.size(); ++i)
          os << (i ? ", " : "") << render_poly_spec(d.gens[i], ring->vars);
        os << ";\n";
        break;
      }
      case DeclKind::Element: {
        const ElementDecl& d = script.elements[idx];
        const RingDecl* ring = nullptr;
        for (const RingDecl& r : script.rings)
          if (r.name == d.ring) ring = &r;
        os << "element " << d.name << " = " << render_poly_spec(d.poly, ring->vars)
           << ";\n";
        break;
      }
      case DeclKind::Task: {
        const TaskDecl& t = script.tasks[idx];
        os << "task " << t.kind;
        for (const std::string& w : t.words) os << ' ' << w;
        os << ";\n";
        break;
      }
    }
  }
  return os.str();
}

}  // namespace tcw
