#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "quatrep/errors.hpp"

namespace quatrep {

/// Dense matrix over a field K (any type with the zero/one/add/sub/mul/inv/is_zero interface).
template <class K>
struct Mat {
  using E = typename K::Elem;
  int rows = 0, cols = 0;
  std::vector<E> a;

  E& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const E& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

template <class K>
Mat<K> mat_zero(const K& k, int r, int c) {
  return Mat<K>{r, c, std::vector<typename K::Elem>(static_cast<std::size_t>(r) * c, k.zero())};
}

template <class K>
Mat<K> mat_identity(const K& k, int n) {
  auto m = mat_zero(k, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = k.one();
  return m;
}

template <class K>
Mat<K> mat_mul(const K& k, const Mat<K>& x, const Mat<K>& y) {
  if (x.cols != y.rows) throw DomainError("mat_mul: shape mismatch");
  auto r = mat_zero(k, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int t = 0; t < x.cols; ++t) {
      if (k.is_zero(x(i, t))) continue;
      for (int j = 0; j < y.cols; ++j)
        if (!k.is_zero(y(t, j))) r(i, j) = k.add(r(i, j), k.mul(x(i, t), y(t, j)));
    }
  return r;
}

template <class K>
Mat<K> mat_add(const K& k, const Mat<K>& x, const Mat<K>& y) {
  Mat<K> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = k.add(x.a[i], y.a[i]);
  return r;
}

template <class K>
Mat<K> mat_scale(const K& k, const typename K::Elem& s, const Mat<K>& x) {
  Mat<K> r = x;
  for (auto& e : r.a) e = k.mul(s, e);
  return r;
}

template <class K>
Mat<K> mat_transpose(const K& k, const Mat<K>& x) {
  auto r = mat_zero(k, x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

template <class K>
bool mat_equal(const K& k, const Mat<K>& x, const Mat<K>& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (!k.eq(x.a[i], y.a[i])) return false;
  return true;
}

template <class K>
typename K::Elem mat_trace(const K& k, const Mat<K>& x) {
  auto t = k.zero();
  for (int i = 0; i < std::min(x.rows, x.cols); ++i) t = k.add(t, x(i, i));
  return t;
}

template <class K>
std::vector<typename K::Elem> mat_apply(const K& k, const Mat<K>& m, const std::vector<typename K::Elem>& v) {
  std::vector<typename K::Elem> r(m.rows, k.zero());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!k.is_zero(v[j]) && !k.is_zero(m(i, j))) r[i] = k.add(r[i], k.mul(m(i, j), v[j]));
  return r;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class K>
std::vector<int> rref(const K& k, Mat<K>& m) {
  std::vector<int> piv;
  int row = 0;
  for (int c = 0; c < m.cols && row < m.rows; ++c) {
    int p = -1;
    for (int i = row; i < m.rows; ++i)
      if (!k.is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(row, j));
    auto inv = k.inv(m(row, c));
    for (int j = c; j < m.cols; ++j) m(row, j) = k.mul(m(row, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || k.is_zero(m(i, c))) continue;
      auto f = m(i, c);
      for (int j = c; j < m.cols; ++j)
        if (!k.is_zero(m(row, j))) m(i, j) = k.sub(m(i, j), k.mul(f, m(row, j)));
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

template <class K>
int mat_rank(const K& k, Mat<K> m) {
  return static_cast<int>(rref(k, m).size());
}

/// Basis of {x : m x = 0}.
template <class K>
std::vector<std::vector<typename K::Elem>> nullspace(const K& k, Mat<K> m) {
  auto piv = rref(k, m);
  std::vector<char> is_piv(m.cols, 0);
  for (int c : piv) is_piv[c] = 1;
  std::vector<std::vector<typename K::Elem>> out;
  for (int f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<typename K::Elem> v(m.cols, k.zero());
    v[f] = k.one();
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = k.neg(m(static_cast<int>(r), f));
    out.push_back(std::move(v));
  }
  return out;
}

template <class K>
std::optional<Mat<K>> mat_inverse(const K& k, const Mat<K>& x) {
  const int n = x.rows;
  auto aug = mat_zero(k, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = x(i, j);
    aug(i, n + i) = k.one();
  }
  auto piv = rref(k, aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  auto r = mat_zero(k, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

template <class K>
typename K::Elem mat_det(const K& k, Mat<K> m) {
  const int n = m.rows;
  auto det = k.one();
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!k.is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p < 0) return k.zero();
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = k.neg(det);
    }
    det = k.mul(det, m(c, c));
    auto inv = k.inv(m(c, c));
    for (int i = c + 1; i < n; ++i) {
      if (k.is_zero(m(i, c))) continue;
      auto f = k.mul(m(i, c), inv);
      for (int j = c; j < n; ++j) m(i, j) = k.sub(m(i, j), k.mul(f, m(c, j)));
    }
  }
  return det;
}

/// Basis of {X (n2 x n1) : X A_s = B_s X for all s}, solved one pair at a time
/// on the current solution space.
template <class K>
std::vector<Mat<K>> intertwiners(const K& k, int n1, int n2, const std::vector<std::pair<Mat<K>, Mat<K>>>& pairs) {
  const int N = n1 * n2;
  // current basis as columns of coefficient vectors in the X_{ik} coordinates
  std::vector<Mat<K>> basis;
  for (int u = 0; u < N; ++u) {
    auto X = mat_zero(k, n2, n1);
    X.a[u] = k.one();
    basis.push_back(std::move(X));
  }
  for (const auto& [A, B] : pairs) {
    if (basis.empty()) break;
    // residual of each basis element: X A - B X, flattened
    auto sys = mat_zero(k, N, static_cast<int>(basis.size()));
    for (std::size_t b = 0; b < basis.size(); ++b) {
      auto XA = mat_mul(k, basis[b], A);
      auto BX = mat_mul(k, B, basis[b]);
      for (int u = 0; u < N; ++u) sys(u, static_cast<int>(b)) = k.sub(XA.a[u], BX.a[u]);
    }
    auto ns = nullspace(k, sys);
    std::vector<Mat<K>> next;
    for (auto& c : ns) {
      auto X = mat_zero(k, n2, n1);
      for (std::size_t b = 0; b < basis.size(); ++b)
        if (!k.is_zero(c[b])) X = mat_add(k, X, mat_scale(k, c[b], basis[b]));
      next.push_back(std::move(X));
    }
    basis = std::move(next);
  }
  return basis;
}

}  // namespace quatrep
