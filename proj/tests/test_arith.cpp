#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "drinfeld/errors.hpp"
#include "drinfeld/finite_field.hpp"
#include "drinfeld/galois_ring.hpp"
#include "drinfeld/linalg.hpp"
#include "drinfeld/padic.hpp"

using namespace drinfeld;

namespace {

// Schoolbook polynomial product modulo t^d + m_{d-1} t^{d-1} + ... + m_0 (leading term implicit).
std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y,
                                       const std::vector<std::uint32_t>& modulus, std::uint32_t p) {
  const std::size_t d = modulus.size();
  std::vector<std::uint64_t> prod(2 * d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(x[i]) * y[j]) % p;
  for (std::size_t deg = 2 * d - 1; deg >= d; --deg) {
    const std::uint64_t c = prod[deg];
    prod[deg] = 0;
    for (std::size_t i = 0; i < d; ++i) prod[deg - d + i] = (prod[deg - d + i] + (p - c) * modulus[i]) % p;
  }
  return {prod.begin(), prod.begin() + d};
}

// Rank by plain elimination over Z/p, independent of the library's rref.
std::size_t oracle_rank(std::vector<std::vector<long long>> a, long long p) {
  std::size_t r = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  auto inv = [p](long long x) {
    long long result = 1, e = p - 2;
    for (x %= p; e; e >>= 1, x = x * x % p)
      if (e & 1) result = result * x % p;
    return result;
  };
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const long long s = inv(a[r][c]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] % p == 0) continue;
      const long long f = a[i][c] * s % p;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_SUITE("arith") {
  TEST_CASE("prime field arithmetic agrees with integers mod p") {
    for (std::uint32_t p : {3u, 5u, 7u}) {
      const FiniteField F(p);
      for (std::uint32_t a = 0; a < p; ++a)
        for (std::uint32_t b = 0; b < p; ++b) {
          CHECK(F.add(a, b) == (a + b) % p);
          CHECK(F.mul(a, b) == (a * b) % p);
          if (b) CHECK(F.mul(F.div(a, b), b) == a);
        }
    }
  }

  TEST_CASE("extension field multiplication matches polynomial arithmetic") {
    for (auto [p, d] : {std::pair{3u, 2u}, {3u, 4u}, {5u, 2u}}) {
      const FiniteField F(p, d);
      CHECK(F.size() == static_cast<std::uint32_t>(std::pow(p, d)));
      for (FiniteField::Elem x = 0; x < F.size(); ++x)
        for (FiniteField::Elem y = 0; y < F.size(); y += 7)
          CHECK(F.coeffs(F.mul(x, y)) == poly_mulmod(F.coeffs(x), F.coeffs(y), F.modulus(), p));
    }
  }

  TEST_CASE("Frobenius on F_9 and its inverse on F_81") {
    const FiniteField F9(3, 2);
    const auto y = F9.generator();
    CHECK(F9.frobenius(y) == F9.pow(y, 3));
    CHECK(F9.frobenius(y) != y);
    CHECK(F9.frobenius(F9.frobenius(y)) == y);
    const FiniteField F81(3, 4);
    for (FiniteField::Elem x = 0; x < F81.size(); ++x) CHECK(F81.pow(F81.inv_frobenius(x), 3) == x);
  }

  TEST_CASE("subfield membership") {
    const FiniteField F(3, 4);
    std::size_t in1 = 0, in2 = 0;
    for (FiniteField::Elem x = 0; x < F.size(); ++x) {
      in1 += F.in_subfield(x, 1);
      in2 += F.in_subfield(x, 2);
    }
    CHECK(in1 == 3);
    CHECK(in2 == 9);
  }

  TEST_CASE("Galois ring reduction, Teichmuller lifts and Frobenius") {
    const FiniteField F(3, 2);
    const GaloisRing R(F, 3);
    CHECK(R.modulus_int() == 27);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<FiniteField::Elem> pick(0, F.size() - 1);
    for (int t = 0; t < 50; ++t) {
      const auto x = pick(rng), y = pick(rng);
      const auto X = R.lift(x), Y = R.lift(y);
      CHECK(R.reduce(R.mul(X, Y)) == F.mul(x, y));
      CHECK(R.reduce(R.add(X, Y)) == F.add(x, y));
      const auto T = R.teichmuller(x);
      CHECK(R.reduce(T) == x);
      CHECK(R.pow(T, F.size()) == T);
      CHECK(R.frobenius(T) == R.teichmuller(F.frobenius(x)));
      CHECK(R.frobenius(R.frobenius(X, 1), -1) == X);
      CHECK(R.frobenius(R.mul(X, Y)) == R.mul(R.frobenius(X), R.frobenius(Y)));
    }
    const auto three = R.from_int(3);
    CHECK(R.valuation(three) == 1);
    CHECK(R.valuation(R.mul(three, three)) == 2);
    CHECK(R.valuation(R.zero()) == 3);
    CHECK(R.divide_by_p(R.from_int(6)) == R.from_int(2));
  }

  TEST_CASE("p-adic valuations and reductions") {
    CHECK(padic_valuation(mpq_class(18), 3) == 2);
    CHECK(padic_valuation(mpq_class(2, 9), 3) == -2);
    CHECK(padic_valuation(mpq_class(0), 3) == kInfiniteValuation);
    CHECK(residue_mod_p(mpq_class(1, 2), 3) == 2);
    CHECK(reduce_mod_power(mpq_class(10), 3, 2) == 1);
    CHECK(reduce_mod_power(mpq_class(9), 3, 2) == 0);
  }

  TEST_CASE("Smith valuations") {
    const unsigned p = 3;
    CHECK(smith_valuations({9, 3, 0, 1}, p) == std::pair{0, 2});
    CHECK(smith_valuations(QMat2::diag(3, 27), p) == std::pair{1, 3});
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> e(-9, 9);
    for (int t = 0; t < 100; ++t) {
      const QMat2 m{e(rng), e(rng), e(rng), e(rng)};
      if (m.det() == 0) continue;
      const auto [a, b] = smith_valuations(m, p);
      CHECK(a == m.min_valuation(p));
      CHECK(a + b == padic_valuation(m.det(), p));
    }
  }

  TEST_CASE("Cartan factorization reconstructs the matrix") {
    const unsigned p = 5;
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> e(-30, 30);
    for (int t = 0; t < 100; ++t) {
      const QMat2 m{mpq_class(e(rng)) / 5, e(rng), e(rng), mpq_class(e(rng)) / 25};
      if (m.det() == 0) continue;
      const auto f = cartan_factor(m, p);
      CHECK(in_maximal_compact(f.h1, p));
      CHECK(in_maximal_compact(f.h2, p));
      CHECK(f.n >= 0);
      CHECK((f.h1 * QMat2::diag(1, p_power(p, f.n)) * f.h2).scaled(p_power(p, f.center_exponent)) == m);
    }
  }

  TEST_CASE("rank and kernel against an independent elimination") {
    const FiniteField F(3);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> e(0, 2), sparse(0, 2);
    for (int t = 0; t < 30; ++t) {
      FMatrix m(F, 10, 6);
      std::vector<std::vector<long long>> raw(10, std::vector<long long>(6));
      for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 6; ++j) m.at(i, j) = raw[i][j] = sparse(rng) == 0 ? e(rng) : 0;
      const auto r = oracle_rank(raw, 3);
      CHECK(rank(m) == r);
      const auto ker = kernel_basis(m);
      CHECK(ker.size() == 6 - r);
      for (const auto& v : ker) {
        const FVec image = m.apply(v);
        CHECK(std::all_of(image.begin(), image.end(), [](auto x) { return x == 0; }));
      }
      SparseEchelon ech(F);
      for (std::size_t i = 0; i < 10; ++i) {
        SparseEchelon::SparseVec row;
        for (std::uint32_t j = 0; j < 6; ++j)
          if (m.at(i, j)) row.emplace_back(j, m.at(i, j));
        ech.insert(row);
      }
      CHECK(ech.rank() == r);
    }
  }

  TEST_CASE("solve and proportionality") {
    const FiniteField F(5);
    FMatrix m(F, 2, 2);
    m.at(0, 0) = 1;
    m.at(1, 1) = 2;
    const auto x = solve(m, {3, 4});
    REQUIRE(x);
    CHECK(*x == FVec{3, 2});
    CHECK(proportionality(m.scaled(3), m) == FiniteField::Elem{3});
    FMatrix other = m;
    other.at(0, 1) = 1;
    CHECK_FALSE(proportionality(other, m));
  }

  TEST_CASE("primality helper") {
    CHECK(is_prime(3));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
  }
}
