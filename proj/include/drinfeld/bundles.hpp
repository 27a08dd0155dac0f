#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "drinfeld/finite_field.hpp"

namespace drinfeld {

// Smooth character of [G]_2 trivial on 1 + pO: t is the exponent through det and reduction
// (mod q-1), a is the value on p^2 * id.
struct Character {
  long long t = 0;
  FiniteField::Elem a = 1;
};

// Isomorphism class of a mod-p equivariant line bundle: orders k0, k1 on the two standard components.
struct BundleClass {
  Character chi;
  long long r = 0;
  long long k0 = 0;
  long long k1 = 0;
};

enum class Generator { omega0 = 0, omega1 = 1, L0 = 2, L1 = 3, omega_log = 4 };
constexpr std::size_t kGeneratorCount = 5;

struct GeneratorWord {
  std::array<long long, kGeneratorCount> exponents{};
  Character chi;
};

enum class Positivity { positive, negative, mixed };
enum class VanishingPrediction { h0_zero, h1_zero, none, indeterminate };

std::string to_string(Generator g);
std::string to_string(Positivity p);
std::string to_string(VanishingPrediction v);

using OrderPair = std::pair<long long, long long>;

struct OrderTable {
  std::array<OrderPair, kGeneratorCount> orders{};
  friend bool operator==(const OrderTable&, const OrderTable&) = default;
};

// L = omega_i^{omega_exponent} (x) L_j^{type} (chi); omega_exponent = -weight.
struct Decomposition {
  long long omega_exponent = 0;
  long long type = 0;
  Character chi;
};

// Divisor degrees of the Lie-algebra maps on one component: q+1 zeros for the uniformiser
// and q^2+1 for Frobenius.
struct DivisorDegrees {
  long long pi_degree = 0;
  long long frobenius_degree = 0;
};

class BundleCalculus {
 public:
  // q = p^f; character values a live in F_{q^m}.
  BundleCalculus(unsigned p, unsigned f = 1, unsigned m = 1);

  long long q() const { return q_; }
  const FiniteField& coefficient_field() const { return field_; }

  Character trivial() const { return {0, 1}; }
  Character legendre() const { return {(q_ - 1) / 2, 1}; }
  Character compose(const Character& x, const Character& y) const;
  Character power(const Character& x, long long e) const;
  bool same(const Character& x, const Character& y) const;

  OrderPair generator_orders(Generator g) const;
  Character generator_character(Generator g) const;
  GeneratorWord word(Generator g, long long exponent = 1) const;
  GeneratorWord multiply(const GeneratorWord& x, const GeneratorWord& y) const;

  OrderPair orders(const GeneratorWord& w) const;
  BundleClass evaluate(const GeneratorWord& w) const;
  BundleClass make(const Character& chi, long long r, long long k0, long long k1) const;

  long long weight(const BundleClass& L) const;
  long long type_of(const BundleClass& L, int i, int j) const;
  Decomposition decompose(const BundleClass& L, int i, int j) const;
  Positivity positivity(const BundleClass& L) const;
  VanishingPrediction predict_vanishing(const BundleClass& L) const;

  // Solves the integer systems fixed by the divisor degrees (defaults: q+1 and q^2+1).
  OrderTable solve_order_systems(std::optional<DivisorDegrees> degrees = std::nullopt) const;
  OrderTable closed_form_table() const;

 private:
  long long q_;
  FiniteField field_;
};

}  // namespace drinfeld
