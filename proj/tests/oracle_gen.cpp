#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "oracle.hpp"

// Writes the golden values consumed by the unit and acceptance suites.
// Run from anywhere: the output path is argv[1] (default tests/golden).
//
// Every number here comes from the dense reference implementations in
// oracle.cpp, never from the engine, so the main library can later be
// compared against an independent source of truth.

namespace {

using oracle::Exps;
using oracle::Poly;

Poly mono(std::initializer_list<int> e) { return Poly{{Exps(e), 1}}; }

long fermat_hk(long q) {
  long strat = oracle::hk_fermat_stratified(q, 5);
  if (q <= 25) {
    long dense = oracle::hk_fermat_dense(q, 5);
    if (dense != strat) {
      std::fprintf(stderr, "stratified/dense mismatch at q=%ld: %ld vs %ld\n", q, strat,
                   dense);
      std::exit(1);
    }
  }
  return strat;
}

long fermat_hs(int n) {
  // dense slice count of F_5[x,y,z]/(m^n + (x^3+y^3-z^3))
  std::vector<Poly> gens;
  for (const Exps& e : oracle::monomials_of_degree(3, n)) gens.push_back(Poly{{e, 1}});
  gens.push_back(Poly{{{3, 0, 0}, 1}, {{0, 3, 0}, 1}, {{0, 0, 3}, 4}});
  return oracle::vspace_dim(gens, 3, 5, 64);
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "tests/golden";
  std::string path = dir + "/hk_golden.txt";
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) {
    std::fprintf(stderr, "cannot open %s\n", path.c_str());
    return 1;
  }
  std::fprintf(out, "# oracle-generated reference values; regenerate with oracle_gen\n");

  // F_3[x,y], I = (x,y): colength of (x^q, y^q)
  for (int e = 0; e <= 3; ++e) {
    long q = 1;
    for (int i = 0; i < e; ++i) q *= 3;
    std::vector<Poly> gens = {mono({static_cast<int>(q), 0}),
                              mono({0, static_cast<int>(q)})};
    long len = oracle::vspace_dim(gens, 2, 3, 2 * static_cast<int>(q) + 2);
    std::fprintf(out, "f3_xy_hk %d %ld %ld\n", e, q, len);
  }

  // Fermat cubic at p = 5, I = (x,y,z): colength of the bracket powers
  for (int e = 0; e <= 3; ++e) {
    long q = 1;
    for (int i = 0; i < e; ++i) q *= 5;
    std::fprintf(out, "fermat_p5_hk %d %ld %ld\n", e, q, fermat_hk(q));
  }

  // Fermat cubic at p = 5, ordinary powers of m
  for (int n = 1; n <= 4; ++n) std::fprintf(out, "fermat_p5_hs %d %ld\n", n, fermat_hs(n));

  std::fclose(out);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}
