#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>
#include <utility>

namespace drinfeld {

// Exact rationals viewed inside Q_p.
constexpr int kInfiniteValuation = INT_MAX;

int padic_valuation(const mpq_class& x, unsigned p);
mpq_class p_power(unsigned p, int e);
// Residue in [0, p) of x with valuation >= 0.
std::uint32_t residue_mod_p(const mpq_class& x, unsigned p);
// Canonical representative of x modulo p^n Z_p: zero if v(x) >= n, otherwise p^v * (u mod p^{n-v})
// with u = x / p^v a p-adic unit.
mpq_class reduce_mod_power(const mpq_class& x, unsigned p, int n);

// A 2x2 matrix with exact rational entries, acting on column vectors.
struct QMat2 {
  mpq_class a = 1, b = 0, c = 0, d = 1;

  static QMat2 identity() { return {}; }
  static QMat2 diag(const mpq_class& x, const mpq_class& y) { return {x, 0, 0, y}; }

  mpq_class det() const { return a * d - b * c; }
  QMat2 inverse() const;
  QMat2 scaled(const mpq_class& s) const { return {a * s, b * s, c * s, d * s}; }
  int min_valuation(unsigned p) const;
  std::string to_string() const;

  friend QMat2 operator*(const QMat2& x, const QMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const QMat2& x, const QMat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

// Elementary divisor valuations (a, b), a <= b: m = u diag(p^a, p^b) v with u, v in GL_2(Z_p).
std::pair<int, int> smith_valuations(const QMat2& m, unsigned p);

// m = z * h1 * diag(1, p^n) * h2 with z a power of p and h1, h2 in GL_2(Z_(p)).
struct CartanFactorization {
  int center_exponent = 0;
  int n = 0;
  QMat2 h1;
  QMat2 h2;
};
CartanFactorization cartan_factor(const QMat2& m, unsigned p);

// True iff all entries lie in Z_(p) and the determinant is a p-adic unit.
bool in_maximal_compact(const QMat2& m, unsigned p);

}  // namespace drinfeld
