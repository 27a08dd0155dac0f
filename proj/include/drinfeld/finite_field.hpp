#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace drinfeld {

// The field F_{p^d}. Elements are encoded as integers c_0 + c_1 p + ... + c_{d-1} p^{d-1}
// where c_i are the coefficients of the residue class modulo the defining polynomial.
class FiniteField {
 public:
  using Elem = std::uint32_t;

  static constexpr std::uint64_t kMaxSize = 1u << 22;

  FiniteField(std::uint32_t p, std::uint32_t d = 1);

  std::uint32_t p() const { return p_; }
  std::uint32_t degree() const { return d_; }
  std::uint32_t size() const { return size_; }
  // Low-to-high coefficients of the monic modulus, leading 1 omitted.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem generator() const { return exp_[1]; }
  Elem from_int(long long v) const;
  Elem from_coeffs(const std::vector<std::uint32_t>& c) const;
  std::vector<std::uint32_t> coeffs(Elem x) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, long long e) const;
  // Discrete logarithm with respect to generator(); a must be nonzero.
  std::uint32_t log(Elem a) const { return log_[a]; }

  // x -> x^{p^f}; f must divide the degree.
  Elem frobenius(Elem x, std::uint32_t f = 1) const;
  // Inverse of frobenius(., f).
  Elem inv_frobenius(Elem x, std::uint32_t f = 1) const;
  // True iff x lies in the subfield F_{p^e} (x^{p^e} = x).
  bool in_subfield(Elem x, std::uint32_t e) const;

  std::string to_string(Elem x) const;

 private:
  Elem poly_mul(Elem a, Elem b) const;

  std::uint32_t p_;
  std::uint32_t d_;
  std::uint32_t size_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> pow_p_;  // p^i for i <= d
  std::vector<Elem> exp_;             // length 2(size-1)
  std::vector<std::uint32_t> log_;    // length size
};

bool is_prime(std::uint64_t n);

}  // namespace drinfeld
