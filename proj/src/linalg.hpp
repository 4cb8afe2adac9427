#pragma once

#include <cstdint>
#include <vector>

#include "fp.hpp"

namespace tcw {

// Dense row-major matrix over F_p. Small and mid-sized slice computations
// only; nothing here is sparse-aware.
struct FpMatrix {
  FpCtx fp;
  size_t rows = 0;
  size_t cols = 0;
  std::vector<uint32_t> a;

  FpMatrix() = default;
  FpMatrix(const FpCtx& f, size_t r, size_t c) : fp(f), rows(r), cols(c), a(r * c, 0) {}

  uint32_t& at(size_t i, size_t j) { return a[i * cols + j]; }
  uint32_t at(size_t i, size_t j) const { return a[i * cols + j]; }

  void add_row(const std::vector<uint32_t>& row) {
    a.insert(a.end(), row.begin(), row.end());
    ++rows;
  }
};

// In-place reduced row echelon form; returns the pivot column of each
// nonzero row, in order. Deterministic: first nonzero entry scanning rows
// top-down, columns left-right.
inline std::vector<size_t> rref(FpMatrix& M) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < M.cols && r < M.rows; ++c) {
    size_t sel = r;
    while (sel < M.rows && M.at(sel, c) == 0) ++sel;
    if (sel == M.rows) continue;
    if (sel != r)
      for (size_t j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(r, j));
    uint32_t inv = M.fp.inv(M.at(r, c));
    for (size_t j = c; j < M.cols; ++j) M.at(r, j) = M.fp.mul(M.at(r, j), inv);
    for (size_t i = 0; i < M.rows; ++i) {
      if (i == r || M.at(i, c) == 0) continue;
      uint32_t f = M.at(i, c);
      for (size_t j = c; j < M.cols; ++j)
        M.at(i, j) = M.fp.sub(M.at(i, j), M.fp.mul(f, M.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline size_t rank(FpMatrix M) { return rref(M).size(); }

// Basis of the right kernel {x : Mx = 0}, one vector per row of the result.
// Free variables are set to 1 in ascending column order, so the basis is
// deterministic.
inline std::vector<std::vector<uint32_t>> kernel_basis(FpMatrix M) {
  std::vector<size_t> pivots = rref(M);
  std::vector<bool> is_pivot(M.cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<uint32_t>> basis;
  for (size_t fc = 0; fc < M.cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<uint32_t> v(M.cols, 0);
    v[fc] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = M.fp.neg(M.at(i, fc));
    basis.push_back(std::move(v));
  }
  return basis;
}

// Whether v lies in the row space of M (M is consumed by value).
inline bool in_row_space(FpMatrix M, std::vector<uint32_t> v) {
  std::vector<size_t> pivots = rref(M);
  for (size_t i = 0; i < pivots.size(); ++i) {
    uint32_t f = v[pivots[i]];
    if (f == 0) continue;
    for (size_t j = 0; j < M.cols; ++j)
      v[j] = M.fp.sub(v[j], M.fp.mul(f, M.at(i, j)));
  }
  for (uint32_t x : v)
    if (x != 0) return false;
  return true;
}

// Canonical basis of the row space: RREF with zero rows dropped.
inline FpMatrix row_space_basis(FpMatrix M) {
  std::vector<size_t> pivots = rref(M);
  M.a.resize(pivots.size() * M.cols);
  M.rows = pivots.size();
  return M;
}

// Intersection of the two row spaces, returned as a canonical row basis.
// If (u, v) runs over the kernel of [A^T | B^T], then u*A = -v*B spans the
// intersection.
inline FpMatrix row_space_intersection(const FpMatrix& A, const FpMatrix& B) {
  FpMatrix M(A.fp, A.cols, A.rows + B.rows);
  for (size_t r = 0; r < A.cols; ++r) {
    for (size_t i = 0; i < A.rows; ++i) M.at(r, i) = A.at(i, r);
    for (size_t j = 0; j < B.rows; ++j) M.at(r, A.rows + j) = B.at(j, r);
  }
  FpMatrix out(A.fp, 0, A.cols);
  for (const std::vector<uint32_t>& k : kernel_basis(std::move(M))) {
    std::vector<uint32_t> w(A.cols, 0);
    for (size_t i = 0; i < A.rows; ++i) {
      if (k[i] == 0) continue;
      for (size_t c = 0; c < A.cols; ++c)
        w[c] = A.fp.add(w[c], A.fp.mul(k[i], A.at(i, c)));
    }
    out.add_row(w);
  }
  return row_space_basis(std::move(out));
}

// Row spaces equal: same rank and mutual containment via a stacked rank.
inline bool same_row_space(const FpMatrix& A, const FpMatrix& B) {
  FpMatrix stacked(A.fp, 0, A.cols);
  stacked.a = A.a;
  stacked.rows = A.rows;
  stacked.a.insert(stacked.a.end(), B.a.begin(), B.a.end());
  stacked.rows += B.rows;
  size_t ra = rank(A), rb = rank(B), rs = rank(stacked);
  return ra == rb && rb == rs;
}

}  // namespace tcw
