#pragma once

#include <string>
#include <vector>

#include "polynomial.hpp"
#include "ring_presentation.hpp"

// Terse builders for the suites. Expressions use the workbench script
// syntax, so tests read close to the input language of the CLI.
namespace ts {

tcw::RingPtr ring(uint32_t p, const std::string& vars_csv,
                  tcw::OrderKind kind = tcw::OrderKind::GrevLex,
                  const std::string& weights_csv = "");

// One polynomial from script syntax, e.g. pp(R, "x^3+y^3-z^3").
tcw::Polynomial pp(const tcw::RingPtr& R, const std::string& expr);

// Comma-separated list of polynomials, e.g. pps(R, "x^2, x*y").
std::vector<tcw::Polynomial> pps(const tcw::RingPtr& R, const std::string& exprs);

// Quotient presentation by comma-separated relations ("" for none).
tcw::PresPtr pres(const tcw::RingPtr& R, const std::string& relations,
                  bool domain = false);

// Canonical one-line form of a generator list, for frozen comparisons.
std::string rendered(const std::vector<tcw::Polynomial>& gens);

}  // namespace ts
