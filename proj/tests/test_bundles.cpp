#include <random>

#include "doctest.h"
#include "drinfeld/bundles.hpp"
#include "drinfeld/errors.hpp"

using namespace drinfeld;

namespace {

GeneratorWord random_word(const BundleCalculus& calc, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> e(-3, 3), t(0, calc.q() - 2);
  std::uniform_int_distribution<FiniteField::Elem> a(1, calc.coefficient_field().size() - 1);
  GeneratorWord w;
  for (auto& x : w.exponents) x = e(rng);
  w.chi = {t(rng), a(rng)};
  return w;
}

bool same_class(const BundleCalculus& calc, const BundleClass& x, const BundleClass& y) {
  return x.k0 == y.k0 && x.k1 == y.k1 && calc.same(x.chi, y.chi) && x.r == y.r;
}

}  // namespace

TEST_SUITE("bundles") {
  TEST_CASE("order table for q = 3 and q = 5") {
    const BundleCalculus c3(3);
    CHECK(c3.generator_orders(Generator::omega0) == OrderPair{-1, 3});
    CHECK(c3.generator_orders(Generator::omega1) == OrderPair{3, -1});
    const BundleCalculus c5(5);
    CHECK(c5.generator_orders(Generator::L0) == OrderPair{1, -1});
    CHECK(c5.generator_orders(Generator::L1) == OrderPair{-1, 1});
    CHECK(c5.generator_orders(Generator::omega_log) == OrderPair{4, 4});
  }

  TEST_CASE("solved order systems reproduce the closed form") {
    for (auto [p, f] : {std::pair{3u, 1u}, {5u, 1u}, {3u, 2u}, {7u, 1u}, {5u, 2u}}) {
      const BundleCalculus calc(p, f);
      CHECK(calc.solve_order_systems() == calc.closed_form_table());
    }
    const BundleCalculus c9(3, 2);
    CHECK(c9.q() == 9);
    CHECK(c9.solve_order_systems().orders[0] == OrderPair{-1, 9});
  }

  TEST_CASE("perturbed divisor degrees are detected") {
    const BundleCalculus calc(3);
    bool differs = true;
    try {
      differs = !(calc.solve_order_systems(DivisorDegrees{5, 10}) == calc.closed_form_table());
    } catch (const Error&) {
    }
    CHECK(differs);
  }

  TEST_CASE("orders of products") {
    const BundleCalculus calc(3);
    const auto l01 = calc.multiply(calc.word(Generator::L0), calc.word(Generator::L1));
    CHECK(calc.orders(l01) == OrderPair{0, 0});
    const auto om = calc.multiply(calc.word(Generator::omega0), calc.word(Generator::omega1));
    CHECK(calc.orders(om) == calc.generator_orders(Generator::omega_log));
  }

  TEST_CASE("weights") {
    const BundleCalculus calc(5);
    CHECK(calc.weight(calc.evaluate(calc.word(Generator::omega0))) == -1);
    CHECK(calc.weight(calc.evaluate(calc.word(Generator::omega1))) == -1);
    CHECK(calc.weight(calc.evaluate(calc.word(Generator::L0, 4))) == 0);
    CHECK(calc.weight(calc.evaluate(calc.word(Generator::omega_log))) == -2);
    CHECK_THROWS_AS(calc.make(calc.trivial(), 0, 1, 0), PreconditionError);
  }

  TEST_CASE("types") {
    for (unsigned p : {3u, 5u}) {
      const BundleCalculus calc(p);
      const auto log = calc.evaluate(calc.word(Generator::omega_log));
      CHECK(calc.type_of(log, 0, 0) == calc.q() + 1);
      CHECK(calc.type_of(calc.evaluate(calc.word(Generator::L0)), 0, 0) == 1);
    }
  }

  TEST_CASE("character relations between the generators") {
    const BundleCalculus calc(3);
    const auto om1 = calc.decompose(calc.evaluate(calc.word(Generator::omega1)), 0, 0);
    CHECK(om1.omega_exponent == 1);
    CHECK(om1.type == calc.q() + 1);
    CHECK(calc.same(om1.chi, calc.legendre()));
    const auto l1 = calc.decompose(calc.evaluate(calc.word(Generator::L1)), 0, 0);
    CHECK(l1.omega_exponent == 0);
    CHECK(l1.type == -1);
    CHECK(calc.same(l1.chi, calc.legendre()));
    // omega1 (x) omega0^{-1} (x) L0^{-(q+1)} is O(leg).
    GeneratorWord w = calc.word(Generator::omega1);
    w = calc.multiply(w, calc.word(Generator::omega0, -1));
    w = calc.multiply(w, calc.word(Generator::L0, -(calc.q() + 1)));
    const auto L = calc.evaluate(w);
    CHECK(L.k0 == 0);
    CHECK(L.k1 == 0);
    CHECK(calc.same(L.chi, calc.legendre()));
  }

  TEST_CASE("decomposition roundtrip on random classes") {
    for (auto [p, m] : {std::pair{3u, 1u}, {5u, 2u}}) {
      const BundleCalculus calc(p, 1, m);
      std::mt19937_64 rng(p * 10 + m);
      for (int t = 0; t < 100; ++t) {
        const BundleClass L = calc.evaluate(random_word(calc, rng));
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            const auto d = calc.decompose(L, i, j);
            GeneratorWord w = calc.word(i == 0 ? Generator::omega0 : Generator::omega1, d.omega_exponent);
            w = calc.multiply(w, calc.word(j == 0 ? Generator::L0 : Generator::L1, d.type));
            w.chi = calc.compose(w.chi, d.chi);
            CHECK(same_class(calc, calc.evaluate(w), L));
          }
      }
    }
  }

  TEST_CASE("weight is additive and orders are a homomorphism") {
    const BundleCalculus calc(5);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 100; ++t) {
      const auto x = random_word(calc, rng), y = random_word(calc, rng);
      const auto xy = calc.multiply(x, y);
      const auto [a0, a1] = calc.orders(x);
      const auto [b0, b1] = calc.orders(y);
      CHECK(calc.orders(xy) == OrderPair{a0 + b0, a1 + b1});
      CHECK(calc.weight(calc.evaluate(xy)) == calc.weight(calc.evaluate(x)) + calc.weight(calc.evaluate(y)));
      CHECK(calc.same(calc.evaluate(xy).chi, calc.compose(calc.evaluate(x).chi, calc.evaluate(y).chi)));
    }
  }

  TEST_CASE("positivity and vanishing predictions") {
    const BundleCalculus calc(3);
    const long long q = calc.q();
    CHECK(calc.positivity(calc.evaluate(calc.word(Generator::omega0))) == Positivity::mixed);
    CHECK(calc.predict_vanishing(calc.make(calc.trivial(), 0, -2, -2)) == VanishingPrediction::h0_zero);
    CHECK(calc.predict_vanishing(calc.make(calc.trivial(), 0, 1, 1)) == VanishingPrediction::h1_zero);
    CHECK(calc.predict_vanishing(calc.make(calc.trivial(), 0, q, -q)) == VanishingPrediction::h0_zero);
    CHECK(calc.predict_vanishing(calc.make(calc.trivial(), 0, 2 * q, -2 * q + 2 * (q - 1))) ==
          VanishingPrediction::none);
    CHECK(calc.positivity(calc.make(calc.trivial(), 0, 0, 2)) == Positivity::positive);
    CHECK(calc.positivity(calc.make(calc.trivial(), 0, -2, -2)) == Positivity::negative);
  }

  TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(BundleCalculus(2), ConfigError);
    CHECK_THROWS(BundleCalculus(3, 0));
  }
}
