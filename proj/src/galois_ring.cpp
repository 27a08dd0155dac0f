#include "drinfeld/galois_ring.hpp"

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

}  // namespace

GaloisRing::GaloisRing(const FiniteField& residue, unsigned precision)
    : field_(&residue), n_(precision), p_(residue.p()), d_(residue.degree()) {
  if (precision < 1 || precision > kMaxPrecision)
    throw ConfigError("Galois ring precision must be in [1, " + std::to_string(kMaxPrecision) + "]");
  pn_ = 1;
  for (unsigned i = 0; i < n_; ++i) pn_ *= p_;
  for (auto c : residue.modulus()) modulus_.push_back(c);
  teich_exp_ = 1;
  for (unsigned i = 0; i + 1 < n_; ++i) teich_exp_ *= residue.size();
}

GaloisRing::Elem GaloisRing::from_int(long long v) const {
  Elem r(d_, 0);
  r[0] = mod_pos(v, pn_);
  return r;
}

bool GaloisRing::is_zero(const Elem& x) const {
  for (auto c : x)
    if (c != 0) return false;
  return true;
}

GaloisRing::Elem GaloisRing::add(const Elem& a, const Elem& b) const {
  Elem r(d_);
  for (std::uint32_t i = 0; i < d_; ++i) r[i] = (a[i] + b[i]) % pn_;
  return r;
}

GaloisRing::Elem GaloisRing::sub(const Elem& a, const Elem& b) const {
  Elem r(d_);
  for (std::uint32_t i = 0; i < d_; ++i) r[i] = mod_pos(a[i] - b[i], pn_);
  return r;
}

GaloisRing::Elem GaloisRing::neg(const Elem& a) const { return sub(zero(), a); }

GaloisRing::Elem GaloisRing::scale(const Elem& a, long long c) const {
  const std::int64_t cc = mod_pos(c, pn_);
  Elem r(d_);
  for (std::uint32_t i = 0; i < d_; ++i) r[i] = a[i] * cc % pn_;
  return r;
}

GaloisRing::Elem GaloisRing::mul(const Elem& a, const Elem& b) const {
  std::vector<std::int64_t> t(2 * d_ - 1, 0);
  for (std::uint32_t i = 0; i < d_; ++i) {
    if (a[i] == 0) continue;
    for (std::uint32_t j = 0; j < d_; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % pn_;
  }
  // t^d = -(m_0 + m_1 t + ... + m_{d-1} t^{d-1})
  for (std::size_t k = t.size(); k-- > d_;) {
    const std::int64_t c = t[k];
    if (c == 0) continue;
    t[k] = 0;
    for (std::uint32_t i = 0; i < d_; ++i) t[k - d_ + i] = mod_pos(t[k - d_ + i] - c * modulus_[i], pn_);
  }
  t.resize(d_);
  return t;
}

GaloisRing::Elem GaloisRing::pow(const Elem& a, std::uint64_t e) const {
  Elem r = one(), b = a;
  for (; e; e >>= 1) {
    if (e & 1) r = mul(r, b);
    if (e > 1) b = mul(b, b);
  }
  return r;
}

GaloisRing::Elem GaloisRing::inv(const Elem& a) const {
  const auto ab = reduce(a);
  if (ab == 0) throw PreconditionError("Galois ring element is not a unit");
  // Newton iteration x <- x(2 - a x) doubles the p-adic precision each step.
  Elem x = lift(field_->inv(ab));
  for (unsigned k = 1; k < n_; k *= 2) x = mul(x, sub(from_int(2), mul(a, x)));
  return x;
}

unsigned GaloisRing::valuation(const Elem& x) const {
  unsigned v = n_;
  for (auto c : x) {
    if (c == 0) continue;
    unsigned w = 0;
    while (c % p_ == 0) {
      c /= p_;
      ++w;
    }
    if (w < v) v = w;
  }
  return v;
}

GaloisRing::Elem GaloisRing::divide_by_p(const Elem& x) const {
  Elem r(d_);
  for (std::uint32_t i = 0; i < d_; ++i) {
    if (x[i] % p_ != 0) throw PreconditionError("Galois ring element not divisible by p");
    r[i] = x[i] / p_;
  }
  return r;
}

FiniteField::Elem GaloisRing::reduce(const Elem& x) const {
  std::vector<std::uint32_t> c(d_);
  for (std::uint32_t i = 0; i < d_; ++i) c[i] = static_cast<std::uint32_t>(x[i] % p_);
  return field_->from_coeffs(c);
}

GaloisRing::Elem GaloisRing::lift(FiniteField::Elem y) const {
  const auto c = field_->coeffs(y);
  Elem r(d_);
  for (std::uint32_t i = 0; i < d_; ++i) r[i] = c[i];
  return r;
}

GaloisRing::Elem GaloisRing::teichmuller(FiniteField::Elem y) const {
  if (y == 0) return zero();
  return pow(lift(y), teich_exp_);
}

std::vector<FiniteField::Elem> GaloisRing::teichmuller_digits(const Elem& x) const {
  std::vector<FiniteField::Elem> digits;
  Elem rest = x;
  for (unsigned k = 0; k < n_; ++k) {
    const auto y = reduce(rest);
    digits.push_back(y);
    rest = sub(rest, teichmuller(y));
    if (k + 1 < n_) rest = divide_by_p(rest);
  }
  return digits;
}

GaloisRing::Elem GaloisRing::frobenius(const Elem& x, int e) const {
  const auto digits = teichmuller_digits(x);
  Elem r = zero();
  std::int64_t pk = 1;
  for (unsigned k = 0; k < n_; ++k) {
    FiniteField::Elem y = digits[k];
    if (e >= 0) {
      for (int i = 0; i < e; ++i) y = field_->frobenius(y, 1);
    } else {
      for (int i = 0; i < -e; ++i) y = field_->inv_frobenius(y, 1);
    }
    r = add(r, scale(teichmuller(y), pk));
    pk *= p_;
  }
  return r;
}

}  // namespace drinfeld
