#include "support.hpp"

#include <algorithm>
#include <sstream>

#include "script.hpp"

namespace ts {

using namespace tcw;

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

Polynomial from_spec(const RingPtr& R, const PolySpec& spec) {
  std::vector<Term> terms;
  for (const auto& [c, m] : spec.terms) {
    uint32_t r = R->fp.reduce_i64(c);
    if (r != 0) terms.push_back(Term{r, m});
  }
  return Polynomial::from_terms(R, std::move(terms));
}

// Parse the expressions through the script grammar against a ring with the
// same variables, then rebuild the polynomials in R.
std::vector<Polynomial> parse_exprs(const RingPtr& R, const std::string& exprs) {
  std::string text = "ring R = char " + std::to_string(R->p.p) + " vars ";
  for (size_t i = 0; i < R->vars.size(); ++i) {
    if (i) text += ",";
    text += R->vars[i];
  }
  text += "; ideal I = " + exprs + ";";
  WorkbenchScript script = parse_script(text);
  std::vector<Polynomial> out;
  for (const auto& spec : script.ideals.at(0).gens) out.push_back(from_spec(R, spec));
  return out;
}

}  // namespace

RingPtr ring(uint32_t p, const std::string& vars_csv, OrderKind kind,
             const std::string& weights_csv) {
  std::vector<int64_t> weights;
  for (const auto& w : split_csv(weights_csv)) weights.push_back(std::stoll(w));
  return RingCtx::make(p, split_csv(vars_csv), std::move(weights), kind);
}

Polynomial pp(const RingPtr& R, const std::string& expr) {
  return parse_exprs(R, expr).at(0);
}

std::vector<Polynomial> pps(const RingPtr& R, const std::string& exprs) {
  return parse_exprs(R, exprs);
}

PresPtr pres(const RingPtr& R, const std::string& relations, bool domain) {
  std::vector<Polynomial> rels;
  if (!relations.empty()) rels = pps(R, relations);
  return RingPresentation::present(R, std::move(rels), domain);
}

std::string rendered(const std::vector<Polynomial>& gens) {
  std::vector<std::string> parts;
  for (const auto& g : gens) parts.push_back(g.render());
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace ts
