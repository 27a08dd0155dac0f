#include "drinfeld/bundles.hpp"

#include <algorithm>

#include "drinfeld/errors.hpp"

namespace drinfeld {

namespace {

long long mod_pos(long long a, long long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

long long floor_div_exact(long long num, long long den, const char* what) {
  if (den == 0 || num % den != 0) throw Error(std::string("order system has no integral solution: ") + what);
  return num / den;
}

// Solves [[a, b], [c, d]] (x, y)^T = (e, f)^T over the integers by Cramer's rule.
OrderPair solve2(long long a, long long b, long long c, long long d, long long e, long long f, const char* what) {
  const long long det = a * d - b * c;
  if (det == 0) throw Error(std::string("singular order system: ") + what);
  return {floor_div_exact(e * d - b * f, det, what), floor_div_exact(a * f - e * c, det, what)};
}

}  // namespace

std::string to_string(Generator g) {
  switch (g) {
    case Generator::omega0: return "omega0";
    case Generator::omega1: return "omega1";
    case Generator::L0: return "L0";
    case Generator::L1: return "L1";
    case Generator::omega_log: return "omega_log";
  }
  return "?";
}

std::string to_string(Positivity p) {
  switch (p) {
    case Positivity::positive: return "positive";
    case Positivity::negative: return "negative";
    case Positivity::mixed: return "mixed";
  }
  return "?";
}

std::string to_string(VanishingPrediction v) {
  switch (v) {
    case VanishingPrediction::h0_zero: return "H0_zero";
    case VanishingPrediction::h1_zero: return "H1_zero";
    case VanishingPrediction::none: return "none";
    case VanishingPrediction::indeterminate: return "indeterminate";
  }
  return "?";
}

BundleCalculus::BundleCalculus(unsigned p, unsigned f, unsigned m) : q_(1), field_(p, f * m) {
  if (p == 2) throw ConfigError("p = 2 is excluded");
  if (f < 1 || m < 1) throw ConfigError("f and m must be positive");
  for (unsigned i = 0; i < f; ++i) q_ *= p;
}

Character BundleCalculus::compose(const Character& x, const Character& y) const {
  return {mod_pos(x.t + y.t, q_ - 1), field_.mul(x.a, y.a)};
}

Character BundleCalculus::power(const Character& x, long long e) const {
  return {mod_pos(x.t * e, q_ - 1), field_.pow(x.a, e)};
}

bool BundleCalculus::same(const Character& x, const Character& y) const {
  return mod_pos(x.t - y.t, q_ - 1) == 0 && x.a == y.a;
}

OrderPair BundleCalculus::generator_orders(Generator g) const {
  switch (g) {
    case Generator::omega0: return {-1, q_};
    case Generator::omega1: return {q_, -1};
    case Generator::L0: return {1, -1};
    case Generator::L1: return {-1, 1};
    case Generator::omega_log: return {q_ - 1, q_ - 1};
  }
  return {0, 0};
}

// omega0 and L0 are normalised to the trivial character; the relations
// omega1 = omega0 (x) L0^{q+1}(leg) and L0 (x) L1 = O(leg) then force the others.
Character BundleCalculus::generator_character(Generator g) const {
  switch (g) {
    case Generator::omega0:
    case Generator::L0: return trivial();
    case Generator::omega1:
    case Generator::L1:
    case Generator::omega_log: return legendre();
  }
  return trivial();
}

GeneratorWord BundleCalculus::word(Generator g, long long exponent) const {
  GeneratorWord w;
  w.exponents[static_cast<std::size_t>(g)] = exponent;
  return w;
}

GeneratorWord BundleCalculus::multiply(const GeneratorWord& x, const GeneratorWord& y) const {
  GeneratorWord w;
  for (std::size_t i = 0; i < kGeneratorCount; ++i) w.exponents[i] = x.exponents[i] + y.exponents[i];
  w.chi = compose(x.chi, y.chi);
  return w;
}

OrderPair BundleCalculus::orders(const GeneratorWord& w) const {
  OrderPair out{0, 0};
  for (std::size_t i = 0; i < kGeneratorCount; ++i) {
    const auto [a, b] = generator_orders(static_cast<Generator>(i));
    out.first += w.exponents[i] * a;
    out.second += w.exponents[i] * b;
  }
  return out;
}

BundleClass BundleCalculus::evaluate(const GeneratorWord& w) const {
  Character chi = w.chi;
  for (std::size_t i = 0; i < kGeneratorCount; ++i)
    chi = compose(chi, power(generator_character(static_cast<Generator>(i)), w.exponents[i]));
  const auto [k0, k1] = orders(w);
  return make(chi, chi.t, k0, k1);
}

BundleClass BundleCalculus::make(const Character& chi, long long r, long long k0, long long k1) const {
  if (mod_pos(k0 + k1, q_ - 1) != 0)
    throw PreconditionError("orders (" + std::to_string(k0) + ", " + std::to_string(k1) +
                            ") do not give an integral weight: q-1 must divide k0+k1");
  if (chi.a == 0) throw PreconditionError("character value a must be nonzero");
  return {{mod_pos(chi.t, q_ - 1), chi.a}, mod_pos(r, q_ - 1), k0, k1};
}

long long BundleCalculus::weight(const BundleClass& L) const {
  if (mod_pos(L.k0 + L.k1, q_ - 1) != 0) throw PreconditionError("non-integral weight");
  return -(L.k0 + L.k1) / (q_ - 1);
}

long long BundleCalculus::type_of(const BundleClass& L, int i, int j) const {
  const auto om = generator_orders(i == 0 ? Generator::omega0 : Generator::omega1);
  const long long ord_omega = j == 0 ? om.first : om.second;
  const long long k = j == 0 ? L.k0 : L.k1;
  return k + ord_omega * weight(L);
}

Decomposition BundleCalculus::decompose(const BundleClass& L, int i, int j) const {
  const Generator om = i == 0 ? Generator::omega0 : Generator::omega1;
  const Generator lj = j == 0 ? Generator::L0 : Generator::L1;
  Decomposition d;
  d.omega_exponent = -weight(L);
  d.type = type_of(L, i, j);
  d.chi = compose(L.chi, compose(power(generator_character(om), -d.omega_exponent),
                                 power(generator_character(lj), -d.type)));
  return d;
}

Positivity BundleCalculus::positivity(const BundleClass& L) const {
  if (L.k0 >= 0 && L.k1 >= 0) return Positivity::positive;
  if (L.k0 < 0 && L.k1 < 0) return Positivity::negative;
  return Positivity::mixed;
}

VanishingPrediction BundleCalculus::predict_vanishing(const BundleClass& L) const {
  if (L.k0 >= 0 && L.k1 >= 0) return VanishingPrediction::h1_zero;
  if (std::min(L.k0, L.k1) == -1) return VanishingPrediction::indeterminate;
  if (L.k0 < 0 && L.k1 < 0) return VanishingPrediction::h0_zero;
  const auto bounded = [&](long long k) { return k >= 0 && k < q_ + 1; };
  if ((bounded(L.k0) && L.k1 < 0) || (bounded(L.k1) && L.k0 < 0)) return VanishingPrediction::h0_zero;
  return VanishingPrediction::none;
}

OrderTable BundleCalculus::solve_order_systems(std::optional<DivisorDegrees> degrees) const {
  const DivisorDegrees deg = degrees.value_or(DivisorDegrees{q_ + 1, q_ * q_ + 1});
  OrderTable t;
  // (x, y) = (ord_{s_0} omega_0, ord_{s_0} omega_1): -x + y = pi_degree, -x + q y = frobenius_degree.
  const auto [x, y] = solve2(-1, 1, -1, q_, deg.pi_degree, deg.frobenius_degree, "omega");
  // Swapping the roles of the two standard vertices gives the orders at s_1.
  t.orders[0] = {x, y};
  t.orders[1] = {y, x};
  // (a, b) = (ord_{s_i} L_i, ord_{s_i} L_{i+1}): a + b = 0, a - q b = pi_degree.
  const auto [a, b] = solve2(1, 1, 1, -q_, 0, deg.pi_degree, "L");
  t.orders[2] = {a, b};
  t.orders[3] = {b, a};
  // Kodaira-Spencer: omega_0 (x) omega_1 has the orders of the log differentials.
  t.orders[4] = {x + y, y + x};
  return t;
}

OrderTable BundleCalculus::closed_form_table() const {
  OrderTable t;
  for (std::size_t i = 0; i < kGeneratorCount; ++i) t.orders[i] = generator_orders(static_cast<Generator>(i));
  return t;
}

}  // namespace drinfeld
