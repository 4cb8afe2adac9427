#pragma once

// Independent reference implementations used to freeze expected values.
// Everything here is deliberately naive: dense Macaulay-style linear algebra
// over F_p on explicit monomial bases, divisibility combinatorics, and small
// kernel computations. No code is shared with the engine.

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Exps = std::vector<int>;
using Poly = std::map<Exps, int>;  // exponent vector -> coefficient in [0, p)

long mod_pow(long a, long e, long p);
long mod_inv(long a, long p);

// Row reduction in place; returns the rank. Entries are reduced mod p.
std::size_t rref(std::vector<std::vector<int>>& rows, long p);

// All exponent vectors of total degree n in nvars variables.
std::vector<Exps> monomials_of_degree(int nvars, int n);

// Homogeneous Macaulay membership: is f (homogeneous) in the ideal generated
// by gens (each homogeneous) in F_p[x_1..x_nvars]?
bool slice_member(const Poly& f, const std::vector<Poly>& gens, int nvars, long p);

// Standard-monomial count of a cofinite homogeneous ideal: per-degree slice
// ranks, stopping at the first empty slice (multiples keep it empty).
// Returns -1 if degree_cap is exceeded (not cofinite or cap too small).
long vspace_dim(const std::vector<Poly>& gens, int nvars, long p, int degree_cap);

// Colength of (x^q, y^q, z^q, x^3 + y^3 - z^3) in F_p[x,y,z] by dense rank of
// multiplication by the cubic on the exponent box [0,q)^3, one total degree
// at a time. Feasible up to q ~ 25.
long hk_fermat_dense(long q, long p);

// Same colength via the z-stratification of the box: the kernel of
// multiplication by f decomposes into Jordan-style chains along powers of z,
// reducing to kernels of powers of x^3+y^3 on the two-variable box. Feasible
// at q = 125 and cross-checked against hk_fermat_dense for small q.
long hk_fermat_stratified(long q, long p);

// Definitional integral-closure test for monomial ideals: does some k <= k_max
// satisfy m^k in I^k, where I^k membership means divisibility by a product of
// k generators (repetition allowed)?
bool integral_over(const Exps& m, const std::vector<Exps>& gens, int k_max);

}  // namespace oracle
