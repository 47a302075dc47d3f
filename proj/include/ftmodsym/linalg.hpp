#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ftmodsym/error.hpp"
#include "ftmodsym/rational.hpp"

namespace ftmodsym {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row-major
using ZVector = std::vector<Integer>;
using ZMatrix = std::vector<ZVector>;

inline QMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return QMatrix(rows, QVector(cols, Rational(0)));
}

inline QMatrix identity_matrix(std::size_t n) {
  QMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline std::size_t cols_of(const QMatrix& m, std::size_t fallback = 0) {
  return m.empty() ? fallback : m[0].size();
}

inline QMatrix transpose(const QMatrix& m) {
  if (m.empty()) return {};
  QMatrix t = zero_matrix(m[0].size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

inline QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = cols_of(b);
  QMatrix c = zero_matrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    ensure(a[i].size() == k, "matrix product: dimension mismatch");
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (b[l][j] != 0) c[i][j] += a[i][l] * b[l][j];
    }
  }
  return c;
}

inline QVector operator*(const QMatrix& a, const QVector& x) {
  QVector y(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    ensure(a[i].size() == x.size(), "matrix-vector product: dimension mismatch");
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0 && a[i][j] != 0) y[i] += a[i][j] * x[j];
  }
  return y;
}

inline QMatrix operator+(QMatrix a, const QMatrix& b) {
  ensure(a.size() == b.size(), "matrix sum: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
  return a;
}

inline QMatrix operator-(QMatrix a, const QMatrix& b) {
  ensure(a.size() == b.size(), "matrix difference: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
  return a;
}

inline QMatrix scaled(QMatrix a, const Rational& s) {
  for (auto& row : a)
    for (auto& x : row) x *= s;
  return a;
}

inline QVector operator+(QVector a, const QVector& b) {
  ensure(a.size() == b.size(), "vector sum: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline QVector operator-(QVector a, const QVector& b) {
  ensure(a.size() == b.size(), "vector difference: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline QVector scaled(QVector a, const Rational& s) {
  for (auto& x : a) x *= s;
  return a;
}

inline bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Columns as vectors.
inline QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix m = zero_matrix(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    ensure(cols[j].size() == rows, "from_columns: dimension mismatch");
    for (std::size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
  }
  return m;
}

inline QVector column(const QMatrix& m, std::size_t j) {
  QVector c(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) c[i] = m[i][j];
  return c;
}

struct Rref {
  QMatrix m;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form over Q.
inline Rref rref(QMatrix m) {
  Rref out;
  const std::size_t rows = m.size(), cols = cols_of(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational k = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= k * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.m = std::move(m);
  return out;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

// Rank of a family of vectors.
inline std::size_t rank_of_vectors(const std::vector<QVector>& vs) { return rank(vs); }

// Basis of {x : m x = 0}, as a list of vectors.
inline std::vector<QVector> kernel(const QMatrix& m, std::size_t cols) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<QVector> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.m[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

inline std::optional<QMatrix> inverse(const QMatrix& a) {
  const std::size_t n = a.size();
  QMatrix aug = zero_matrix(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    ensure(a[i].size() == n, "inverse: matrix not square");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  Rref r = rref(std::move(aug));
  if (r.pivots.size() < n || (n > 0 && r.pivots[n - 1] != n - 1)) return std::nullopt;
  QMatrix inv = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = r.m[i][n + j];
  return inv;
}

// Some x with a x = b, if one exists.
inline std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  const std::size_t n = cols_of(a);
  QMatrix aug = a;
  ensure(aug.size() == b.size(), "solve: dimension mismatch");
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Rref r = rref(std::move(aug));
  QVector x(n, Rational(0));
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] == n) return std::nullopt;
    x[r.pivots[i]] = r.m[i][n];
  }
  return x;
}

inline Rational determinant(QMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const Rational k = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= k * m[c][j];
    }
  }
  return det;
}

inline Rational trace(const QMatrix& m) {
  Rational t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

// Characteristic polynomial det(X - A), coefficients from X^n down to the
// constant term (Faddeev-LeVerrier).
inline std::vector<Rational> charpoly(const QMatrix& a) {
  const std::size_t n = a.size();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  QMatrix mk = zero_matrix(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk;
    for (std::size_t i = 0; i < n; ++i) mk[i][i] += c[n - k + 1];
    c[n - k] = -trace(a * mk) / Rational(static_cast<long>(k));
  }
  std::reverse(c.begin(), c.end());
  return c;
}

inline QMatrix power(const QMatrix& a, unsigned k) {
  QMatrix r = identity_matrix(a.size());
  for (unsigned i = 0; i < k; ++i) r = r * a;
  return r;
}

// Evaluates a polynomial (leading coefficient first) at a matrix.
inline QMatrix poly_at_matrix(const std::vector<Rational>& coeffs, const QMatrix& a) {
  QMatrix r = zero_matrix(a.size(), a.size());
  for (const Rational& c : coeffs) {
    r = r * a;
    for (std::size_t i = 0; i < a.size(); ++i) r[i][i] += c;
  }
  return r;
}

// ---- integer matrices ----

inline Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline ZMatrix hnf_rows(ZMatrix m);

// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.
inline ZVector smith_invariants(ZMatrix m) {
  m = hnf_rows(std::move(m));  // keeps entries small on tall inputs
  const std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  ZVector diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry in the remaining block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr == rows || abs_int(m[i][j]) < abs_int(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const Integer k = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= k * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[i], m[t]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const Integer k = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= k * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[j], row[t]);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: fold any offending entry into the pivot row
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
            clean = false;
            break;
          }
    }
    diag.push_back(abs_int(m[t][t]));
    ++t;
  }
  return diag;
}

// Row Hermite normal form; returns the nonzero rows (a basis of the row lattice).
inline ZMatrix hnf_rows(ZMatrix m) {
  const std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      while (m[i][c] != 0) {
        if (m[r][c] == 0 || abs_int(m[i][c]) < abs_int(m[r][c])) {
          std::swap(m[i], m[r]);
          continue;
        }
        const Integer k = m[i][c] / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[i][j] -= k * m[r][j];
      }
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (std::size_t j = c; j < cols; ++j) m[r][j] = -m[r][j];
    for (std::size_t i = 0; i < r; ++i) {
      Integer k = m[i][c] / m[r][c];
      if (m[i][c] - k * m[r][c] < 0) k -= 1;
      if (k != 0)
        for (std::size_t j = c; j < cols; ++j) m[i][j] -= k * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

inline std::size_t rank_mod_p(ZMatrix m, std::uint64_t p) {
  const std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  const Integer P(p);
  for (auto& row : m)
    for (auto& x : row) {
      x %= P;
      if (x < 0) x += P;
    }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Integer inv = 1;
    {
      // Fermat inverse, p prime
      Integer b = m[r][c], e = P - 2;
      while (e > 0) {
        if (e % 2 == 1) inv = inv * b % P;
        b = b * b % P;
        e /= 2;
      }
    }
    for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv % P;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Integer k = m[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        m[i][j] = (m[i][j] - k * m[r][j]) % P;
        if (m[i][j] < 0) m[i][j] += P;
      }
    }
    ++r;
  }
  return r;
}

// lcm of the denominators of a rational vector.
inline Integer common_denominator(const QVector& v) {
  Integer l = 1;
  for (const Rational& x : v) l = lcm(l, denom(x));
  return l;
}

inline ZVector to_integer(const QVector& v) {
  ZVector out;
  out.reserve(v.size());
  for (const Rational& x : v) {
    ensure(denom(x) == 1, "non-integral entry " + format_rational(x));
    out.push_back(numer(x));
  }
  return out;
}

inline QVector to_rational(const ZVector& v) {
  QVector out;
  out.reserve(v.size());
  for (const Integer& x : v) out.emplace_back(x);
  return out;
}

}  // namespace ftmodsym
