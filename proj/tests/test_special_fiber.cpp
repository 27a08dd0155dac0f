#include <random>

#include "doctest.h"
#include "drinfeld/bundles.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/mod_p_reps.hpp"
#include "drinfeld/special_fiber.hpp"

using namespace drinfeld;

namespace {

BundleClass bundle(long long k0, long long k1) { return {{0, 1}, 0, k0, k1}; }

// Value of X^{k-j} Y^j at the labelled point of P^1(F_p): [lambda : 1] or [1 : 0].
long long monomial_at(long long p, int k, int j, P1Label label) {
  if (label == static_cast<P1Label>(p)) return j == 0 ? 1 : 0;
  long long v = 1;
  for (int e = 0; e < k - j; ++e) v = v * label % p;
  return v;
}

// Counts global sections by brute force over all vertex data; returns log_p of the count.
long long brute_h0(const Ball& ball, unsigned p, long long k0, long long k1) {
  std::vector<int> block_start, block_len;
  int total = 0;
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    const long long k = ball.parity[v] == 0 ? k0 : k1;
    block_start.push_back(total);
    block_len.push_back(k >= 0 ? static_cast<int>(k + 1) : 0);
    total += block_len.back();
  }
  REQUIRE(total <= 12);
  std::vector<long long> x(total, 0);
  long long count = 0;
  for (;;) {
    bool ok = true;
    for (std::size_t e = 0; e < ball.edges.size() && ok; ++e) {
      const auto [a, b] = ball.edges[e];
      const auto [la, lb] = ball.marked_points[e];
      long long val = 0;
      const long long ka = ball.parity[a] == 0 ? k0 : k1, kb = ball.parity[b] == 0 ? k0 : k1;
      for (int j = 0; j < block_len[a]; ++j) val += x[block_start[a] + j] * monomial_at(p, ka, j, la);
      for (int j = 0; j < block_len[b]; ++j) val -= x[block_start[b] + j] * monomial_at(p, kb, j, lb);
      ok = ((val % p) + p) % p == 0;
    }
    count += ok;
    int i = 0;
    while (i < total && ++x[i] == static_cast<long long>(p)) x[i++] = 0;
    if (i == total) break;
  }
  long long dim = 0;
  while (count > 1) count /= p, ++dim;
  return dim;
}

}  // namespace

TEST_SUITE("special_fiber") {
  TEST_CASE("evaluation kernel for small and critical degrees") {
    const FiniteField F(3);
    for (int k = 0; k < 3; ++k) CHECK(eval_kernel_basis(F, k).empty());
    CHECK(kernel_basis(evaluation_matrix(F, 3)).empty());
    const auto four = eval_kernel_basis(F, 4);
    REQUIRE(four.size() == 1);
    CHECK(four[0] == FVec{0, 1, 0, 2, 0});  // X^3 Y - X Y^3
    CHECK(eval_kernel_basis(F, 5).size() == 2);
    CHECK(kernel_basis(evaluation_matrix(F, 5)).size() == 2);
  }

  TEST_CASE("evaluation kernel dimension is max(0, k - q)") {
    for (unsigned q : {3u, 5u}) {
      const FiniteField F(q);
      for (int k = 0; k <= 3 * static_cast<int>(q); ++k) {
        const auto basis = eval_kernel_basis(F, k);
        CHECK(basis.size() == static_cast<std::size_t>(std::max(0, k - static_cast<int>(q))));
        CHECK(kernel_basis(evaluation_matrix(F, k)).size() == basis.size());
        const auto E = evaluation_matrix(F, k);
        for (const auto& v : basis) {
          const FVec image = E.apply(v);
          CHECK(std::all_of(image.begin(), image.end(), [](auto x) { return x == 0; }));
        }
      }
    }
  }

  TEST_CASE("gluing matrix shape and small cohomology values") {
    const FiniteField F(3);
    const Tree tree(3);
    const ChartAtlas atlas(tree, 0);
    const Ball ball = make_ball(atlas, tree.s1(), 1);
    const auto c = build_complex(F, bundle(1, 1), ball);
    CHECK(c.rows() == 4);
    CHECK(c.cols() == 10);
    const auto h = cohomology(c);
    CHECK(h.h0 == 6);
    CHECK(h.h1 == 0);
    const auto neg = cohomology(build_complex(F, bundle(-1, -1), ball));
    CHECK(neg.h0 == 0);
    CHECK(neg.h1 == 4);
    const auto mixed = cohomology(build_complex(F, bundle(-2, 4), ball));
    CHECK(mixed.h0 == 1);
    CHECK(mixed.h1 == 4);
  }

  TEST_CASE("global sections agree with brute-force enumeration") {
    const unsigned p = 3;
    const FiniteField F(p);
    const Tree tree(p);
    for (std::uint64_t seed : {0ull, 5ull}) {
      const ChartAtlas atlas(tree, seed);
      for (const Vertex& center : {tree.s0(), tree.s1()}) {
        const Ball ball = make_ball(atlas, center, 1);
        for (auto [k0, k1] : {std::pair{1ll, 1ll}, {0ll, 2ll}, {2ll, 0ll}, {-2ll, 4ll}, {4ll, -2ll}, {0ll, 0ll},
                              {-1ll, 1ll}, {3ll, -1ll}}) {
          const long long center_k = tree.parity(center) == 0 ? k0 : k1;
          const long long leaf_k = tree.parity(center) == 0 ? k1 : k0;
          if (std::max(center_k + 1, 0ll) + 4 * std::max(leaf_k + 1, 0ll) > 12) continue;
          const auto h = cohomology(build_complex(F, bundle(k0, k1), ball));
          CHECK(h.h0 == brute_h0(ball, p, k0, k1));
        }
      }
    }
  }

  TEST_CASE("Euler identity, dual presentation and row rank on random bundles") {
    std::mt19937_64 rng(21);
    for (unsigned p : {3u, 5u}) {
      const FiniteField F(p);
      const Tree tree(p);
      const ChartAtlas atlas(tree, 3);
      const long long q = p;
      std::uniform_int_distribution<long long> k(-q - 3, 2 * q + 3), w(-2, 2);
      for (int t = 0; t < 30; ++t) {
        const long long k0 = k(rng), k1 = -k0 - w(rng) * (q - 1);
        const Ball ball = make_ball(atlas, t % 2 ? tree.s0() : tree.s1(), 1 + t % 3);
        const auto c = build_complex(F, bundle(k0, k1), ball);
        const auto h = cohomology(c);
        CHECK(h.h0 - h.h1 == h.euler);
        CHECK(h.euler == euler_characteristic(ball, k0, k1));
        CHECK(dual_presentation_dim(c) == h.h0);
        CHECK(c.row_rank() == c.rank());
        CHECK(h.h0 >= 0);
        CHECK(h.h1 >= 0);
      }
    }
  }

  TEST_CASE("dimensions do not depend on the chart gauge") {
    const unsigned p = 3;
    const FiniteField F(p);
    const Tree tree(p);
    const ChartAtlas base(tree, 0);
    for (auto [k0, k1] : {std::pair{1ll, 1ll}, {4ll, -2ll}, {-2ll, -4ll}, {5ll, 1ll}, {0ll, 2ll}}) {
      const auto ref = cohomology(build_complex(F, bundle(k0, k1), make_ball(base, tree.s1(), 3)));
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ChartAtlas atlas(tree, seed);
        const auto h = cohomology(build_complex(F, bundle(k0, k1), make_ball(atlas, tree.s1(), 3)));
        CHECK(h.h0 == ref.h0);
        CHECK(h.h1 == ref.h1);
      }
    }
  }

  TEST_CASE("non-unit gluing scalars leave the dimensions unchanged") {
    const FiniteField F(5);
    const Tree tree(5);
    const ChartAtlas atlas(tree, 0);
    const Ball ball = make_ball(atlas, tree.s1(), 2);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<FiniteField::Elem> unit(1, 4);
    ComplexOptions opt;
    for (std::size_t e = 0; e < ball.edges.size(); ++e) opt.edge_scalars.emplace_back(unit(rng), unit(rng));
    for (auto [k0, k1] : {std::pair{1ll, 3ll}, {6ll, -2ll}, {-2ll, -2ll}}) {
      const auto a = cohomology(build_complex(F, bundle(k0, k1), ball));
      const auto b = cohomology(build_complex(F, bundle(k0, k1), ball, opt));
      CHECK(a.h0 == b.h0);
      CHECK(a.h1 == b.h1);
    }
  }

  TEST_CASE("predicted dimensions in the determined cases") {
    const unsigned p = 3;
    const FiniteField F(p);
    const Tree tree(p);
    const ChartAtlas atlas(tree, 0);
    for (int R = 1; R <= 3; ++R) {
      const Ball ball = make_ball(atlas, tree.s1(), R);
      for (auto [k0, k1] : {std::pair{4ll, 4ll}, {-2ll, -2ll}, {-2ll, 4ll}, {4ll, -2ll}, {-4ll, 6ll}, {6ll, 6ll}}) {
        const auto pred = predicted_dims(bundle(k0, k1), ball, p);
        REQUIRE(pred);
        const auto h = cohomology(build_complex(F, bundle(k0, k1), ball));
        CHECK(h.h0 == pred->first);
        CHECK(h.h1 == pred->second);
      }
      CHECK_FALSE(predicted_dims(bundle(1, 1), ball, p));
    }
    const Ball one = make_ball(atlas, tree.s1(), 1);
    CHECK(predicted_dims(bundle(-2, 4), one, p)->first == 1);
    CHECK(predicted_dims(bundle(-2, -2), one, p)->first == 0);
    CHECK(predicted_dims(bundle(4, 4), one, p)->second == 0);
  }

  TEST_CASE("restriction of sections to a smaller ball") {
    const unsigned p = 3;
    const FiniteField F(p);
    const Tree tree(p);
    const ChartAtlas atlas(tree, 0);
    CHECK(restriction_image_dim(F, bundle(3, -3), atlas, tree.s1(), 3, 2) == 0);
    CHECK(restriction_image_dim(F, bundle(3, -3), atlas, tree.s0(), 3, 2) == 0);
    const auto positive = restriction_image_dim(F, bundle(1, 1), atlas, tree.s1(), 3, 2);
    CHECK(positive > 0);
    const auto small = cohomology(build_complex(F, bundle(1, 1), make_ball(atlas, tree.s1(), 2)));
    CHECK(positive <= small.h0);
  }

  TEST_CASE("explicit H0 basis lies in the kernel") {
    const FiniteField F(3);
    const Tree tree(3);
    const ChartAtlas atlas(tree, 2);
    const auto c = build_complex(F, bundle(2, 4), make_ball(atlas, tree.s1(), 2));
    const auto h = cohomology(c, true);
    REQUIRE(h.h0_basis);
    CHECK(static_cast<long long>(h.h0_basis->size()) == h.h0);
    const auto B = c.dense();
    for (const auto& v : *h.h0_basis) {
      const FVec image = B.apply(v);
      CHECK(std::all_of(image.begin(), image.end(), [](auto x) { return x == 0; }));
    }
  }

  TEST_CASE("equivariant gluing gives the same dimensions") {
    const unsigned p = 3;
    const FiniteField F(p);
    const Tree tree(p);
    const ChartAtlas atlas(tree, 7);
    const BundleCalculus calc(p);
    for (long long k0 = 0; k0 <= 2; ++k0)
      for (long long r = 0; r < 2; ++r)
        for (int R = 1; R <= 3; ++R) {
          const BundleClass L = calc.make({r, 1}, r, k0, 2 - k0);
          const Ball ball = make_ball(atlas, tree.s1(), R);
          const auto a = cohomology(build_complex(F, L, ball));
          const auto b = cohomology(equivariant_complex(F, L, ball, atlas));
          CHECK(a.h0 == b.h0);
          CHECK(a.h1 == b.h1);
        }
  }
}
