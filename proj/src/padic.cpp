#include "drinfeld/padic.hpp"

#include <algorithm>
#include <sstream>

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

int mpz_valuation(const mpz_class& z, unsigned p) {
  if (z == 0) return kInfiniteValuation;
  mpz_class rest;
  mpz_class prime = p;
  return static_cast<int>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t()));
}

}  // namespace

int padic_valuation(const mpq_class& x, unsigned p) {
  if (x == 0) return kInfiniteValuation;
  return mpz_valuation(x.get_num(), p) - mpz_valuation(x.get_den(), p);
}

mpq_class p_power(unsigned p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return mpq_class(r);
  return mpq_class(mpz_class(1), r);
}

std::uint32_t residue_mod_p(const mpq_class& x, unsigned p) {
  if (x == 0) return 0;
  if (padic_valuation(x, p) < 0) throw PreconditionError("residue of a non-integral p-adic number");
  const mpz_class m = p;
  mpz_class num = x.get_num() % m;
  if (num < 0) num += m;
  mpz_class den = x.get_den() % m;
  if (den < 0) den += m;
  mpz_class dinv;
  mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  mpz_class r = (num * dinv) % m;
  return static_cast<std::uint32_t>(r.get_ui());
}

mpq_class reduce_mod_power(const mpq_class& x, unsigned p, int n) {
  if (x == 0) return 0;
  const int v = padic_valuation(x, p);
  if (v >= n) return 0;
  const mpq_class u = x / p_power(p, v);
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), p, static_cast<unsigned long>(n - v));
  mpz_class num = u.get_num() % m;
  if (num < 0) num += m;
  mpz_class den = u.get_den() % m;
  if (den < 0) den += m;
  mpz_class dinv;
  mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  mpz_class r = (num * dinv) % m;
  mpq_class out = mpq_class(r) * p_power(p, v);
  out.canonicalize();
  return out;
}

QMat2 QMat2::inverse() const {
  const mpq_class dt = det();
  if (dt == 0) throw SingularMatrixError("inverse of a singular 2x2 matrix");
  return {d / dt, -b / dt, -c / dt, a / dt};
}

int QMat2::min_valuation(unsigned p) const {
  return std::min({padic_valuation(a, p), padic_valuation(b, p), padic_valuation(c, p), padic_valuation(d, p)});
}

std::string QMat2::to_string() const {
  std::ostringstream os;
  os << "[[" << a.get_str() << "," << b.get_str() << "],[" << c.get_str() << "," << d.get_str() << "]]";
  return os.str();
}

std::pair<int, int> smith_valuations(const QMat2& m, unsigned p) {
  const mpq_class dt = m.det();
  if (dt == 0) throw SingularMatrixError("Smith form of a singular matrix");
  const int a = m.min_valuation(p);
  return {a, padic_valuation(dt, p) - a};
}

bool in_maximal_compact(const QMat2& m, unsigned p) {
  const mpq_class dt = m.det();
  return dt != 0 && m.min_valuation(p) >= 0 && padic_valuation(dt, p) == 0;
}

CartanFactorization cartan_factor(const QMat2& m, unsigned p) {
  const mpq_class dt = m.det();
  if (dt == 0) throw SingularMatrixError("Cartan decomposition of a singular matrix");
  CartanFactorization out;
  out.center_exponent = m.min_valuation(p);
  const QMat2 g = m.scaled(p_power(p, -out.center_exponent));

  const QMat2 swap{0, 1, 1, 0};
  QMat2 row_perm, col_perm;  // identity unless a swap is needed
  QMat2 h = g;
  if (padic_valuation(h.a, p) != 0) {
    if (padic_valuation(h.b, p) == 0) {
      col_perm = swap;
    } else if (padic_valuation(h.c, p) == 0) {
      row_perm = swap;
    } else {
      row_perm = swap;
      col_perm = swap;
    }
    h = row_perm * h * col_perm;
  }
  const mpq_class u = h.a;
  const QMat2 left{1, 0, -h.c / u, 1};
  const QMat2 right{1, -h.b / u, 0, 1};
  const QMat2 dg = left * h * right;  // diag(u, e)
  const mpq_class e = dg.d;
  out.n = padic_valuation(e, p);
  const mpq_class eps = e / p_power(p, out.n);
  out.h1 = row_perm * left.inverse() * QMat2::diag(u, eps);
  out.h2 = right.inverse() * col_perm;
  return out;
}

}  // namespace drinfeld
