#include <random>

#include "doctest.h"
#include "drinfeld/cartier.hpp"
#include "drinfeld/errors.hpp"

using namespace drinfeld;

namespace {

// p-th root by exhaustive search: the unique x with x^p = y.
FiniteField::Elem brute_root(const FiniteField& F, FiniteField::Elem y) {
  for (FiniteField::Elem x = 0; x < F.size(); ++x)
    if (F.pow(x, F.p()) == y) return x;
  throw std::logic_error("no p-th root");
}

}  // namespace

TEST_SUITE("cartier") {
  TEST_CASE("module axioms at every point of F_9 and F_25") {
    for (unsigned p : {3u, 5u}) {
      const FiniteField F(p, 2);
      for (unsigned N : {2u, 3u}) {
        const GaloisRing R(F, N);
        for (FiniteField::Elem y = 0; y < F.size(); ++y)
          for (int i = 0; i < 2; ++i) {
            const auto ax = CartierPoint(R, y, i).check_axioms();
            CHECK(ax.ok());
          }
      }
    }
  }

  TEST_CASE("Pi squared is p times the identity as a matrix") {
    const FiniteField F(3, 2);
    const GaloisRing R(F, 2);
    const CartierPoint M(R, F.generator(), 0);
    const RingMatrix sq = ring_mul(R, M.pi(), M.pi());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(sq.at(i, j) == (i == j ? R.from_int(3) : R.zero()));
  }

  TEST_CASE("elementary divisors") {
    const FiniteField F(3);
    const GaloisRing R(F, 3);
    RingMatrix m(R, 3);
    m.at(0, 0) = R.from_int(3);
    m.at(1, 1) = R.from_int(1);
    m.at(2, 2) = R.from_int(9);
    m.at(0, 2) = R.from_int(3);
    auto v = elementary_divisor_valuations(R, m);
    std::sort(v.begin(), v.end());
    CHECK(v == std::vector<unsigned>{0, 1, 2});
  }

  TEST_CASE("Lie scalars match y - y^(1/q) and y^q - y^(1/q)") {
    for (auto [p, m] : {std::pair{3u, 2u}, {3u, 4u}, {5u, 2u}}) {
      const FiniteField F(p, m);
      for (FiniteField::Elem y = 0; y < F.size(); ++y) {
        const auto root = brute_root(F, y);
        const auto s = lie_map_scalars(F, y);
        CHECK(s.pi_scalar == F.sub(y, root));
        CHECK(s.f_scalar == F.sub(F.pow(y, p), root));
      }
    }
  }

  TEST_CASE("matrix Lie scalars vanish exactly where the closed forms do") {
    const FiniteField F(3, 2);
    const GaloisRing R(F, 2);
    for (FiniteField::Elem y = 0; y < F.size(); ++y) {
      const auto [pi_s, f_s] = CartierPoint(R, y, 0).lie_scalars_from_matrices();
      const auto want = lie_map_scalars(F, y);
      CHECK((pi_s == 0) == (want.pi_scalar == 0));
      CHECK((f_s == 0) == (want.f_scalar == 0));
    }
  }

  TEST_CASE("vanishing scan over F_81") {
    const auto scan = vanishing_scan(3, 4);
    CHECK(scan.pi_zeros.size() == 3);
    CHECK(scan.f_zeros.size() == 9);
    CHECK(scan.pi_zeros_are_base_field);
    CHECK(scan.f_zeros_are_quadratic);
    CHECK(scan.pi_divisor_degree == 3 + 1);
    CHECK(scan.f_divisor_degree == 9 + 1);
    const FiniteField F(3, 4);
    for (FiniteField::Elem y = 0; y < F.size(); ++y) {
      const auto s = lie_map_scalars(F, y);
      if (F.in_subfield(y, 1)) CHECK((s.pi_scalar == 0 && s.f_scalar == 0));
      if (!F.in_subfield(y, 2)) CHECK((s.pi_scalar != 0 && s.f_scalar != 0));
    }
    CHECK_THROWS_AS(vanishing_scan(9, 2), ConfigError);
    CHECK_THROWS_AS(vanishing_scan(3, 5), ConfigError);
  }

  TEST_CASE("first-order deformation scalars") {
    const FiniteField F(3, 2);
    for (FiniteField::Elem y = 0; y < 3; ++y)
      CHECK(deformation_lie_scalar(F, y, 1, LieBranch::pi) == Dual{0, F.neg(1)});
    FiniteField::Elem outside = 0;
    while (F.in_subfield(outside, 1)) ++outside;
    CHECK_THROWS_AS(deformation_lie_scalar(F, outside, 1, LieBranch::pi), PreconditionError);
    const FiniteField F81(3, 4);
    FiniteField::Elem far = 0;
    while (F81.in_subfield(far, 2)) ++far;
    CHECK_THROWS_AS(deformation_lie_scalar(F81, far, 1, LieBranch::frobenius), PreconditionError);
  }

  TEST_CASE("deformation families have dimension 2 on F_q and 1 elsewhere") {
    const FiniteField F(3, 2);
    for (FiniteField::Elem y = 0; y < F.size(); ++y)
      for (int i = 0; i < 2; ++i) {
        const auto d = classify_deformations(F, y, i);
        CHECK(d.dimension == (F.in_subfield(y, 1) ? 2u : 1u));
        CHECK(d.a1_forced_zero == !F.in_subfield(y, 1));
        CHECK(d.stable_under_v_and_f);
        CHECK(d.stable_pairs == (F.in_subfield(y, 1) ? F.size() * F.size() : F.size()));
      }
  }
}
