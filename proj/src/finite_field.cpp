#include "drinfeld/finite_field.hpp"

#include <sstream>

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

using Poly = std::vector<std::uint32_t>;  // low-to-high coefficients over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  return poly_mod(std::move(r), m, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or test: f has no factor of degree i <= deg/2 iff gcd(f, x^{p^i} - x) = 1.
bool irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t d = f.size() - 1;
  Poly h = poly_mod(Poly{0, 1}, f, p);
  for (std::size_t i = 1; i <= d / 2; ++i) {
    Poly acc{1};
    for (std::uint32_t e = p; e; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, h, f, p);
      if (e > 1) h = poly_mulmod(h, h, f, p);
    }
    h = acc;
    Poly t = h;
    t.resize(std::max<std::size_t>(t.size(), 2), 0);
    t[1] = (t[1] + p - 1) % p;
    trim(t);
    if (t.empty()) return false;
    if (poly_gcd(f, t, p).size() > 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t d) : p_(p), d_(d) {
  if (!is_prime(p)) throw ConfigError("field characteristic must be prime, got " + std::to_string(p));
  if (d < 1) throw ConfigError("field degree must be at least 1");
  std::uint64_t size = 1;
  pow_p_.push_back(1);
  for (std::uint32_t i = 0; i < d; ++i) {
    size *= p;
    if (size > kMaxSize) throw ResourceError("finite field of order " + std::to_string(p) + "^" + std::to_string(d) + " exceeds the size cap");
    pow_p_.push_back(static_cast<std::uint32_t>(size));
  }
  size_ = static_cast<std::uint32_t>(size);

  // Smallest monic irreducible in the order of the integer encoding of (c_0, ..., c_{d-1}).
  for (std::uint32_t code = 0; code < size_; ++code) {
    Poly f(d + 1, 0);
    std::uint32_t c = code;
    for (std::uint32_t i = 0; i < d; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[d] = 1;
    if (d == 1 || (f[0] != 0 && irreducible(f, p))) {
      modulus_.assign(f.begin(), f.begin() + d);
      break;
    }
  }

  // Logarithm tables from the first primitive element.
  const std::uint32_t order = size_ - 1;
  exp_.assign(2 * std::size_t(order) + 1, 0);
  log_.assign(size_, 0);
  for (Elem g = (d == 1 ? 1 : p); g < size_; ++g) {
    if (g == 0) continue;
    Elem x = 1;
    bool primitive = true;
    for (std::uint32_t i = 0; i < order; ++i) {
      if (i > 0 && x == 1) {
        primitive = false;
        break;
      }
      exp_[i] = x;
      x = poly_mul(x, g);
    }
    if (primitive && x == 1) break;
  }
  for (std::uint32_t i = 0; i < order; ++i) {
    log_[exp_[i]] = i;
    exp_[i + order] = exp_[i];
  }
}

FiniteField::Elem FiniteField::poly_mul(Elem a, Elem b) const {
  const Poly m = [&] {
    Poly f(modulus_.begin(), modulus_.end());
    f.push_back(1);
    return f;
  }();
  Poly pa = coeffs(a), pb = coeffs(b);
  trim(pa);
  trim(pb);
  Poly r = poly_mulmod(pa, pb, m, p_);
  r.resize(d_, 0);
  return from_coeffs(r);
}

FiniteField::Elem FiniteField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

FiniteField::Elem FiniteField::from_coeffs(const std::vector<std::uint32_t>& c) const {
  Elem x = 0;
  for (std::uint32_t i = 0; i < d_ && i < c.size(); ++i) x += (c[i] % p_) * pow_p_[i];
  return x;
}

std::vector<std::uint32_t> FiniteField::coeffs(Elem x) const {
  std::vector<std::uint32_t> c(d_);
  for (std::uint32_t i = 0; i < d_; ++i) {
    c[i] = x % p_;
    x /= p_;
  }
  return c;
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (d_ == 1) {
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem r = 0;
  for (std::uint32_t i = 0; i < d_; ++i) {
    const std::uint32_t s = a % p_ + b % p_;
    r += (s >= p_ ? s - p_ : s) * pow_p_[i];
    a /= p_;
    b /= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  if (d_ == 1) return a == 0 ? 0 : p_ - a;
  Elem r = 0;
  for (std::uint32_t i = 0; i < d_; ++i) {
    const std::uint32_t c = a % p_;
    r += (c == 0 ? 0 : p_ - c) * pow_p_[i];
    a /= p_;
  }
  return r;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw PreconditionError("inverse of zero in F_" + std::to_string(size_));
  const std::uint32_t order = size_ - 1;
  return exp_[(order - log_[a]) % order];
}

FiniteField::Elem FiniteField::pow(Elem a, long long e) const {
  const long long order = size_ - 1;
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw PreconditionError("negative power of zero");
    return 0;
  }
  long long t = (static_cast<long long>(log_[a]) * (e % order)) % order;
  if (t < 0) t += order;
  return exp_[t];
}

FiniteField::Elem FiniteField::frobenius(Elem x, std::uint32_t f) const {
  if (f == 0 || d_ % f != 0)
    throw ConfigError("Frobenius exponent " + std::to_string(f) + " does not divide degree " + std::to_string(d_));
  Elem y = x;
  for (std::uint32_t i = 0; i < f; ++i) y = pow(y, p_);
  return y;
}

FiniteField::Elem FiniteField::inv_frobenius(Elem x, std::uint32_t f) const {
  if (f == 0 || d_ % f != 0)
    throw ConfigError("Frobenius exponent " + std::to_string(f) + " does not divide degree " + std::to_string(d_));
  Elem y = x;
  for (std::uint32_t i = 0; i + 1 < d_ / f; ++i) y = frobenius(y, f);
  return y;
}

bool FiniteField::in_subfield(Elem x, std::uint32_t e) const {
  Elem y = x;
  for (std::uint32_t i = 0; i < e; ++i) y = pow(y, p_);
  return y == x;
}

std::string FiniteField::to_string(Elem x) const {
  if (d_ == 1) return std::to_string(x);
  std::ostringstream os;
  const auto c = coeffs(x);
  bool first = true;
  for (std::uint32_t i = d_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || c[i] != 1) os << c[i];
    if (i >= 1) os << 't';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace drinfeld
