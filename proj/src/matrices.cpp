#include "torsion/matrices.hpp"

#include <algorithm>

namespace torsion {

Mat identity_matrix(std::size_t n) {
  Mat m(n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size(), k = b.size(), m = b[0].size();
  Mat c(n, std::vector<Int>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw Error("matrix shape mismatch");
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  }
  return c;
}

Mat mat_transpose(const Mat& a) {
  if (a.empty()) return {};
  Mat t(a[0].size(), std::vector<Int>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

bool mat_equal(const Mat& a, const Mat& b) { return a == b; }

Int mat_det(const Mat& a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw Error("determinant requires a square matrix");
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  Mat m = a;
  Int denom = 1;
  Int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_r = k + 1;
      while (swap_r < n && m[swap_r][k] == 0) ++swap_r;
      if (swap_r == n) return 0;
      std::swap(m[k], m[swap_r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / denom;
    denom = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

struct PivotPos {
  bool found = false;
  std::size_t r = 0, c = 0;
};

PivotPos smallest_nonzero(const Mat& d, std::size_t from) {
  PivotPos best;
  Int best_abs = 0;
  for (std::size_t r = from; r < d.size(); ++r)
    for (std::size_t c = from; c < d[r].size(); ++c) {
      if (d[r][c] == 0) continue;
      Int a = abs(d[r][c]);
      if (!best.found || a < best_abs) {
        best = {true, r, c};
        best_abs = a;
      }
    }
  return best;
}

void row_axpy(Mat& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] -= q * m[src][j];
}

void col_axpy(Mat& m, std::size_t dst, std::size_t src, const Int& q) {
  for (auto& row : m) row[dst] -= q * row[src];
}

}  // namespace

std::vector<Int> SmithDecomposition::diagonal() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < d.size() && i < (d.empty() ? 0 : d[0].size()); ++i)
    out.push_back(d[i][i]);
  return out;
}

SmithDecomposition smith_normal_form(const Mat& a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  for (const auto& row : a)
    if (row.size() != n) throw Error("ragged matrix");
  SmithDecomposition s{a, identity_matrix(m), identity_matrix(n)};
  Mat& d = s.d;

  std::size_t t = 0;
  while (t < m && t < n) {
    PivotPos p = smallest_nonzero(d, t);
    if (!p.found) break;
    if (p.r != t) {
      std::swap(d[p.r], d[t]);
      std::swap(s.u[p.r], s.u[t]);
    }
    if (p.c != t) {
      for (auto& row : d) std::swap(row[p.c], row[t]);
      for (auto& row : s.v) std::swap(row[p.c], row[t]);
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : s.u[t]) x = -x;
    }

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (d[r][t] == 0) continue;
        Int q = floor_div(d[r][t], d[t][t]);
        row_axpy(d, r, t, q);
        row_axpy(s.u, r, t, q);
        if (d[r][t] != 0) {
          // Remainder is smaller than the pivot; promote it and restart.
          std::swap(d[r], d[t]);
          std::swap(s.u[r], s.u[t]);
          dirty = true;
        }
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (d[t][c] == 0) continue;
        Int q = floor_div(d[t][c], d[t][t]);
        col_axpy(d, c, t, q);
        col_axpy(s.v, c, t, q);
        if (d[t][c] != 0) {
          for (auto& row : d) std::swap(row[c], row[t]);
          for (auto& row : s.v) std::swap(row[c], row[t]);
          dirty = true;
        }
      }
    }

    // Enforce the divisibility chain: fold any entry the pivot misses back
    // into the pivot's row and repeat the clearing pass.
    bool fixed = true;
    for (std::size_t r = t + 1; r < m && fixed; ++r)
      for (std::size_t c = t + 1; c < n && fixed; ++c)
        if (d[r][c] % d[t][t] != 0) {
          for (std::size_t j = 0; j < n; ++j) d[t][j] += d[r][j];
          for (std::size_t j = 0; j < m; ++j) s.u[t][j] += s.u[r][j];
          fixed = false;
        }
    if (!fixed) continue;

    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : s.u[t]) x = -x;
    }
    ++t;
  }
  return s;
}

Mat hermite_normal_form(Mat h) {
  if (h.empty()) return h;
  const std::size_t n = h[0].size();
  for (const auto& row : h)
    if (row.size() != n) throw Error("ragged matrix");
  std::size_t pr = 0;
  for (std::size_t col = 0; col < n && pr < h.size(); ++col) {
    while (true) {
      std::size_t best = h.size();
      Int best_abs = 0;
      for (std::size_t r = pr; r < h.size(); ++r) {
        if (h[r][col] == 0) continue;
        Int a = abs(h[r][col]);
        if (best == h.size() || a < best_abs) {
          best = r;
          best_abs = a;
        }
      }
      if (best == h.size()) break;
      if (best != pr) std::swap(h[best], h[pr]);
      if (h[pr][col] < 0)
        for (auto& x : h[pr]) x = -x;
      bool cleared = true;
      for (std::size_t r = pr + 1; r < h.size(); ++r) {
        if (h[r][col] == 0) continue;
        Int q = floor_div(h[r][col], h[pr][col]);
        row_axpy(h, r, pr, q);
        if (h[r][col] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h[pr][col] == 0) continue;
    if (h[pr][col] < 0)
      for (auto& x : h[pr]) x = -x;
    for (std::size_t r = 0; r < pr; ++r) {
      Int q = floor_div(h[r][col], h[pr][col]);
      row_axpy(h, r, pr, q);
    }
    ++pr;
  }
  h.resize(pr);
  return h;
}

Mat unimodular_inverse(const Mat& a) {
  const std::size_t n = a.size();
  RatMat inv = rational_inverse(a);
  Mat out(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (denominator(inv[i][j]) != 1)
        throw Error("matrix is not unimodular");
      out[i][j] = numerator(inv[i][j]);
    }
  return out;
}

RatMat rational_inverse(const Mat& a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw Error("inverse requires a square matrix");
  RatMat w(n, std::vector<Rational>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = Rational(a[i][j]);
    w[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && w[piv][col] == 0) ++piv;
    if (piv == n) throw SingularMatrix("matrix is singular");
    std::swap(w[piv], w[col]);
    Rational inv_p = Rational(1) / w[col][col];
    for (auto& x : w[col]) x *= inv_p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || w[r][col] == 0) continue;
      Rational f = w[r][col];
      for (std::size_t j = 0; j < 2 * n; ++j) w[r][j] -= f * w[col][j];
    }
  }
  RatMat out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = w[i][n + j];
  return out;
}

std::size_t rational_rref(RatMat& m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][col] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    Rational inv_p = Rational(1) / m[rank][col];
    for (auto& x : m[rank]) x *= inv_p;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t j = 0; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  m.resize(rank);
  return rank;
}

bool in_row_span(const RatMat& rref, std::vector<Rational> v) {
  for (const auto& row : rref) {
    std::size_t lead = 0;
    while (lead < row.size() && row[lead] == 0) ++lead;
    if (lead == row.size()) continue;
    if (v[lead] == 0) continue;
    Rational f = v[lead];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * row[j];
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace torsion
