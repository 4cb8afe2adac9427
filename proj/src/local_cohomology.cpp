#include "local_cohomology.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "hilbert.hpp"

namespace tcw {

namespace {

void validate_parameters(const PresPtr& S, const std::vector<Polynomial>& xs) {
  if (xs.empty() || static_cast<int>(xs.size()) != S->dim())
    throw Error(ErrorCode::ParameterError, "a full system of parameters is required");
  for (const Polynomial& x : xs) {
    check_same_ring(S->ambient(), x.ring());
    int64_t d = 0;
    if (x.is_zero() || !x.is_homogeneous(&d) || d != 1)
      throw Error(ErrorCode::ParameterError,
                  "parameters must be homogeneous of degree one, got " + x.render());
  }
  if (!is_parameter_system(S, xs))
    throw Error(ErrorCode::ParameterError, "the given elements fail the parameter test");
}

std::vector<Polynomial> powered(const std::vector<Polynomial>& xs, uint64_t t) {
  std::vector<Polynomial> out;
  out.reserve(xs.size());
  for (const Polynomial& x : xs) out.push_back(x.pow(t));
  return out;
}

Polynomial parameter_product(const std::vector<Polynomial>& xs) {
  Polynomial prod = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) prod = prod * xs[i];
  return prod;
}

bool complete_intersection(const PresPtr& S) {
  // codim many defining relations force a complete intersection, hence CM
  size_t nvars = S->ambient()->nvars();
  int d = S->dim();
  return d >= 0 && S->relations().generators().size() == nvars - static_cast<size_t>(d);
}

bool cohen_macaulay_certified(const PresPtr& S, const std::vector<Polynomial>& xs) {
  if (S->is_regular_presentation() || complete_intersection(S)) return true;
  std::vector<bool> rs = regular_sequence_check(S, xs);
  bool all = !rs.empty();
  for (bool b : rs) all = all && b;
  return all;
}

}  // namespace

std::string CechFraction::render() const {
  std::ostringstream os;
  os << '[' << z.render() << " / (";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) os << '*';
    os << xs[i].render();
  }
  os << ")^" << t << ']';
  return os.str();
}

const char* lc_zero_status_name(LCZeroStatus s) {
  switch (s) {
    case LCZeroStatus::Zero: return "ZERO";
    case LCZeroStatus::NonzeroProved: return "NONZERO_PROVED";
    case LCZeroStatus::NonzeroUpTo: return "NONZERO_UP_TO";
  }
  return "NONZERO_UP_TO";
}

CechFraction lc_fraction(const PresPtr& S, const Polynomial& z, uint32_t t,
                         const std::vector<Polynomial>& xs) {
  check_same_ring(S->ambient(), z.ring());
  if (t == 0) throw Error(ErrorCode::ParameterError, "the exponent t must be at least 1");
  validate_parameters(S, xs);
  CechFraction eta;
  eta.S = S;
  eta.z = S->reduce(z);
  int64_t zdeg = 0;
  if (!eta.z.is_homogeneous(&zdeg))
    throw Error(ErrorCode::GradingError, "the numerator must be homogeneous");
  eta.xs = xs;
  eta.t = t;
  eta.degree = zdeg - static_cast<int64_t>(t) * static_cast<int64_t>(xs.size());
  return eta;
}

LCZeroVerdict lc_zero_test(const CechFraction& eta, uint32_t s_max) {
  LCZeroVerdict verdict;
  if (eta.z.is_zero()) {
    verdict.status = LCZeroStatus::Zero;
    verdict.method = "zero numerator";
    return verdict;
  }
  if (cohen_macaulay_certified(eta.S, eta.xs)) {
    bool in = lift_with_relations(eta.S, powered(eta.xs, eta.t)).contains(eta.z);
    verdict.status = in ? LCZeroStatus::Zero : LCZeroStatus::NonzeroProved;
    verdict.method = "cohen-macaulay";
    return verdict;
  }
  Polynomial prod = parameter_product(eta.xs);
  Polynomial shifted = eta.z;
  for (uint32_t s = 0; s <= s_max; ++s) {
    if (lift_with_relations(eta.S, powered(eta.xs, uint64_t(eta.t) + s)).contains(shifted)) {
      verdict.status = LCZeroStatus::Zero;
      verdict.s = s;
      verdict.method = "shift search";
      return verdict;
    }
    shifted = shifted * prod;
  }
  verdict.status = LCZeroStatus::NonzeroUpTo;
  verdict.bound = s_max;
  verdict.method = "shift search";
  return verdict;
}

CechFraction lc_frobenius(const CechFraction& eta, uint32_t e) {
  uint64_t q = checked_pow_u64(eta.S->ambient()->p.p, e, 0x7fffffffull);
  uint64_t t = static_cast<uint64_t>(eta.t) * q;
  if (t > 0xffffffffull)
    throw Error(ErrorCode::ExponentOverflow, "fraction exponent exceeds the supported range");
  __int128 deg = static_cast<__int128>(eta.degree) * static_cast<__int128>(q);
  if (deg > INT64_MAX || deg < INT64_MIN)
    throw Error(ErrorCode::ExponentOverflow, "fraction degree exceeds the supported range");
  CechFraction out;
  out.S = eta.S;
  out.z = eta.z.frobenius_power(e);
  out.xs = eta.xs;
  out.t = static_cast<uint32_t>(t);
  out.degree = static_cast<int64_t>(deg);
  return out;
}

ClosureVerdict zero_star_test(const CechFraction& eta, const ClosureConfig& cfg) {
  return tc_membership(eta.S, powered(eta.xs, eta.t), eta.z, cfg);
}

int64_t a_invariant(const PresPtr& S, const std::vector<Polynomial>& xs) {
  if (!S->is_regular_presentation() && !complete_intersection(S)) {
    if (xs.empty())
      throw Error(ErrorCode::NotComputed,
                  "supply a full parameter system so the Cohen-Macaulay fast path can be "
                  "certified");
    validate_parameters(S, xs);
    if (!cohen_macaulay_certified(S, xs))
      throw Error(ErrorCode::NotComputed,
                  "the parameter system is not a certified regular sequence; the series "
                  "degree would not be trustworthy");
  }
  return a_invariant_from_series(S);
}

FujitaReport fujita_probe(const PresPtr& S, const std::vector<Polynomial>& xs, int64_t n,
                          uint32_t t, const ClosureConfig& cfg) {
  validate_parameters(S, xs);
  int64_t dplus1 = static_cast<int64_t>(xs.size());
  if (n <= dplus1)
    throw Error(ErrorCode::ParameterError,
                "the probe needs degree -n below -(d+1), so n > d+1");
  if (t == 0 || static_cast<int64_t>(t) * dplus1 < n)
    throw Error(ErrorCode::ParameterError,
                "pick t with t*(d+1) >= n so the degree -n classes have numerators");

  FujitaReport report;
  report.n = n;
  report.t = t;

  const RingPtr& ring = S->ambient();
  AmbientIdeal bracket = lift_with_relations(S, powered(xs, t));
  int64_t numerator_degree = static_cast<int64_t>(t) * dplus1 - n;
  std::vector<Monomial> numerators = degree_slice_basis(bracket, numerator_degree);
  // a multiplier of degree n-(d+1) lands the multiple in degree -(d+1)
  std::vector<Monomial> multipliers = degree_slice_basis(S->relations(), n - dplus1);

  for (const Monomial& zm : numerators) {
    FujitaClassReport cls;
    cls.numerator = Polynomial::monomial(ring, zm);
    CechFraction eta = lc_fraction(S, cls.numerator, t, xs);
    for (const Monomial& mm : multipliers) {
      Polynomial mult = Polynomial::monomial(ring, mm);
      CechFraction scaled = eta;
      scaled.z = S->reduce(mult * eta.z);
      scaled.degree = eta.degree + mult.weighted_degree();
      LCZeroVerdict v = lc_zero_test(scaled, 2);
      if (v.status == LCZeroStatus::NonzeroProved || v.status == LCZeroStatus::NonzeroUpTo) {
        cls.multiplier = mult;
        cls.multiplier_method =
            v.status == LCZeroStatus::NonzeroProved ? "proved" : "bounded";
        break;
      }
    }
    if (cls.multiplier) {
      cls.consistent = true;
    } else {
      // Step One: a class all of whose multiples die must lie in 0*.
      ClosureVerdict v = zero_star_test(eta, cfg);
      cls.consistent = v.status != ClosureStatus::OutEvidence;
      cls.step_one = std::move(v);
    }
    report.all_consistent = report.all_consistent && cls.consistent;
    report.classes.push_back(std::move(cls));
  }
  return report;
}

KodairaReport kodaira_tc_check(const PresPtr& S, const std::vector<Polynomial>& xs,
                               int64_t degree_bound, const ClosureConfig& cfg) {
  const RingPtr& ring = S->ambient();
  if (xs.empty() || static_cast<int>(xs.size()) > S->dim())
    throw Error(ErrorCode::ParameterError,
                "need between 1 and dim S elements for the slice check");
  for (const Polynomial& x : xs) check_same_ring(ring, x.ring());

  KodairaReport report;
  report.xs = xs;
  report.a_inv = a_invariant_from_series(S);
  for (const Polynomial& x : xs) {
    int64_t d = 0;
    if (x.is_zero() || !x.is_homogeneous(&d))
      throw Error(ErrorCode::ParameterError,
                  "elements must be nonzero and homogeneous, got " + x.render());
    if (d <= report.a_inv)
      throw Error(ErrorCode::DegreeTooSmall,
                  x.render() + " has degree " + std::to_string(d) +
                      ", not above the a-invariant " + std::to_string(report.a_inv));
    report.degree_sum += d;
  }

  int64_t bound = std::max(degree_bound, report.degree_sum);
  HullResult left = tc_hull(S, xs, bound, cfg);
  std::vector<Polynomial> left_gens;
  for (const HullGenerator& hg : left.generators) left_gens.push_back(hg.gen);
  AmbientIdeal left_lift = lift_with_relations(S, left_gens);

  std::vector<Polynomial> union_gens;
  for (size_t i = 0; i < xs.size(); ++i) {
    std::vector<Polynomial> omitted;
    for (size_t j = 0; j < xs.size(); ++j)
      if (j != i) omitted.push_back(xs[j]);
    HullResult right = tc_hull(S, omitted, bound, cfg);
    for (const HullGenerator& hg : right.generators) union_gens.push_back(hg.gen);
  }
  AmbientIdeal sum_lift = lift_with_relations(S, union_gens);

  report.holds = true;
  for (int64_t degree = 0; degree < report.degree_sum; ++degree) {
    KodairaSlice slice;
    slice.degree = degree;
    for (const Monomial& m : degree_slice_basis(S->relations(), degree)) {
      Polynomial zm = Polynomial::monomial(ring, m);
      if (!left_lift.contains(zm)) continue;
      ++slice.checked;
      if (!sum_lift.contains(zm)) slice.violations.push_back(m);
    }
    report.holds = report.holds && slice.violations.empty();
    report.slices.push_back(std::move(slice));
  }
  return report;
}

}  // namespace tcw
