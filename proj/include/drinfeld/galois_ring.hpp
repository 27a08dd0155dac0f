#pragma once

#include <cstdint>
#include <vector>

#include "drinfeld/finite_field.hpp"

namespace drinfeld {

// GR(p^N, d) = (Z/p^N)[t]/(lift of the modulus of F_{p^d}); the truncated Witt vectors of F_{p^d}.
class GaloisRing {
 public:
  using Elem = std::vector<std::int64_t>;  // d coefficients in [0, p^N)

  static constexpr unsigned kMaxPrecision = 4;

  GaloisRing(const FiniteField& residue, unsigned precision);

  const FiniteField& residue_field() const { return *field_; }
  unsigned precision() const { return n_; }
  std::int64_t modulus_int() const { return pn_; }

  Elem zero() const { return Elem(d_, 0); }
  Elem one() const { return from_int(1); }
  Elem from_int(long long v) const;
  bool is_zero(const Elem& x) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, long long c) const;
  Elem pow(const Elem& a, std::uint64_t e) const;
  Elem inv(const Elem& a) const;  // a must be a unit

  // p-adic valuation, equal to precision() for zero.
  unsigned valuation(const Elem& x) const;
  // x / p for x divisible by p (result defined modulo p^{N-1}, lifted with top digit 0).
  Elem divide_by_p(const Elem& x) const;

  FiniteField::Elem reduce(const Elem& x) const;
  // Coefficient-wise lift with digits in [0, p).
  Elem lift(FiniteField::Elem y) const;
  Elem teichmuller(FiniteField::Elem y) const;
  // x = sum_k p^k [y_k] with k < N.
  std::vector<FiniteField::Elem> teichmuller_digits(const Elem& x) const;
  // The ring automorphism lifting y -> y^p, applied e times (e may be negative).
  Elem frobenius(const Elem& x, int e = 1) const;

 private:
  const FiniteField* field_;
  unsigned n_;
  std::uint32_t p_;
  std::uint32_t d_;
  std::int64_t pn_;
  std::vector<std::int64_t> modulus_;  // low-to-high, monic of degree d (leading omitted)
  std::uint64_t teich_exp_;           // (p^d)^{N-1}
};

}  // namespace drinfeld
