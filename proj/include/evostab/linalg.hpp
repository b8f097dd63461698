#pragma once

// Small dense exact linear algebra used by the ESS test.

#include <cstddef>
#include <vector>

#include "evostab/rational.hpp"

namespace evostab::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<std::vector<Rational>>;

inline Matrix zeros(std::size_t rows, std::size_t cols) {
  return Matrix(rows, Vector(cols, Rational(0)));
}

// Unit lower-triangular L and diagonal D with N = L D L^T.
struct LdlFactor {
  Matrix lower;
  Vector diag;
};

struct DefinitenessResult {
  bool positive_definite = false;
  LdlFactor factor;  // complete only when positive_definite
  Vector witness;    // nonzero c with c^T N c <= 0 otherwise
};

// Exact LDL^T without pivoting; stops at the first nonpositive pivot, which
// is itself the value c^T N c of the returned witness.
inline DefinitenessResult check_positive_definite(const Matrix& n) {
  const std::size_t size = n.size();
  DefinitenessResult out;
  out.factor.lower = zeros(size, size);
  out.factor.diag.assign(size, Rational(0));
  auto& L = out.factor.lower;
  auto& d = out.factor.diag;
  for (std::size_t k = 0; k < size; ++k) {
    L[k][k] = 1;
    Rational pivot = n[k][k];
    for (std::size_t j = 0; j < k; ++j) pivot -= L[k][j] * L[k][j] * d[j];
    d[k] = pivot;
    if (pivot <= 0) {
      // Solve L^T c = e_k on the leading block.
      Vector c(size, Rational(0));
      c[k] = 1;
      for (std::size_t jj = k; jj-- > 0;) {
        Rational acc = 0;
        for (std::size_t i = jj + 1; i <= k; ++i) acc += L[i][jj] * c[i];
        c[jj] = -acc;
      }
      out.witness = std::move(c);
      return out;
    }
    for (std::size_t i = k + 1; i < size; ++i) {
      Rational acc = n[i][k];
      for (std::size_t j = 0; j < k; ++j) acc -= L[i][j] * L[k][j] * d[j];
      L[i][k] = acc / pivot;
    }
  }
  out.positive_definite = true;
  return out;
}

// Solves L D L^T x = b.
inline Vector solve(const LdlFactor& f, const Vector& b) {
  const std::size_t size = b.size();
  Vector y = b;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < i; ++j) y[i] -= f.lower[i][j] * y[j];
  for (std::size_t i = 0; i < size; ++i) y[i] /= f.diag[i];
  for (std::size_t i = size; i-- > 0;)
    for (std::size_t j = i + 1; j < size; ++j) y[i] -= f.lower[j][i] * y[j];
  return y;
}

inline Rational quadratic_form(const Matrix& m, const Vector& y) {
  Rational total = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < y.size(); ++j) row += m[i][j] * y[j];
    total += y[i] * row;
  }
  return total;
}

}  // namespace evostab::linalg
