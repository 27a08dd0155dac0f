#include <random>
#include <set>

#include "doctest.h"
#include "drinfeld/errors.hpp"
#include "drinfeld/mod_p_reps.hpp"
#include "drinfeld/tree.hpp"
#include "json.hpp"

using namespace drinfeld;

namespace {

QMat2 random_gl2(std::mt19937_64& rng, unsigned p) {
  std::uniform_int_distribution<int> e(-20, 20), den(0, 2);
  for (;;) {
    const QMat2 g{mpq_class(e(rng)) / p_power(p, den(rng)), e(rng), e(rng), mpq_class(e(rng)) * p_power(p, den(rng))};
    if (g.det() != 0) return g;
  }
}

// Breadth-first search through neighbours; an oracle for distance independent of Smith forms.
int bfs_distance(const Tree& tree, const Vertex& from, const Vertex& to, int limit) {
  std::set<std::string> seen{Tree::key(from)};
  std::vector<Vertex> frontier{from};
  for (int d = 0; d <= limit; ++d) {
    for (const auto& v : frontier)
      if (v == to) return d;
    std::vector<Vertex> next;
    for (const auto& v : frontier)
      for (const auto& u : tree.neighbors(v))
        if (seen.insert(Tree::key(u)).second) next.push_back(u);
    frontier = std::move(next);
  }
  return -1;
}

}  // namespace

TEST_SUITE("bt_tree") {
  TEST_CASE("standard vertices and the standard edge") {
    const Tree tree(3);
    CHECK(tree.distance(tree.s0(), tree.s1()) == 1);
    CHECK(tree.parity(tree.s0()) == 0);
    CHECK(tree.parity(tree.s1()) == 1);
    const QMat2 w{0, 1, 3, 0};
    CHECK(tree.act(w, tree.s0()) == tree.s1());
    CHECK(tree.act(w, tree.s1()) == tree.s0());
    CHECK(tree.distance(tree.act(QMat2::diag(1, 3), tree.s1()), tree.s1()) == 1);
  }

  TEST_CASE("distance two from a Smith form") {
    const Tree tree(3);
    const Vertex v = tree.canonical({9, 3, 0, 1});
    CHECK(tree.distance(tree.s1(), v) == 2);
    CHECK(bfs_distance(tree, tree.s1(), v, 3) == 2);
  }

  TEST_CASE("neighbours are distinct, adjacent and of opposite parity") {
    for (unsigned p : {3u, 5u, 7u}) {
      const Tree tree(p);
      std::mt19937_64 rng(p);
      std::vector<Vertex> probes{tree.s0(), tree.s1()};
      for (int t = 0; t < 10; ++t) probes.push_back(tree.act(random_gl2(rng, p), tree.s1()));
      for (const auto& v : probes) {
        const auto nb = tree.neighbors(v);
        CHECK(nb.size() == p + 1);
        std::set<std::string> keys;
        for (const auto& u : nb) {
          keys.insert(Tree::key(u));
          CHECK(tree.distance(u, v) == 1);
          CHECK(tree.parity(u) != tree.parity(v));
        }
        CHECK(keys.size() == p + 1);
      }
    }
  }

  TEST_CASE("group action composes and preserves distance") {
    const unsigned p = 3;
    const Tree tree(p);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
      const QMat2 g = random_gl2(rng, p), h = random_gl2(rng, p), x = random_gl2(rng, p);
      const Vertex v = tree.canonical(x), u = tree.canonical(h * x);
      CHECK(tree.act(g, tree.act(h, v)) == tree.act(g * h, v));
      CHECK(tree.distance(tree.act(g, v), tree.act(g, u)) == tree.distance(v, u));
      // Parity changes exactly when the determinant has odd valuation.
      const bool flips = padic_valuation(g.det(), p) % 2 != 0;
      CHECK((tree.parity(tree.act(g, v)) != tree.parity(v)) == flips);
    }
  }

  TEST_CASE("distance agrees with breadth-first search") {
    const Tree tree(3);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 15; ++t) {
      const Vertex v = tree.act(random_compact(rng, 3) * QMat2::diag(1, 9) * random_compact(rng, 3), tree.s1());
      CHECK(tree.distance(tree.s1(), v) == bfs_distance(tree, tree.s1(), v, 3));
    }
  }

  TEST_CASE("serialisation roundtrip") {
    const Tree tree(5);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
      const Vertex v = tree.act(random_gl2(rng, 5), tree.s1());
      CHECK(tree.parse(tree.serialize(v)) == v);
      CHECK(tree.canonical(tree.rep(v)) == v);
    }
    CHECK_THROWS(tree.parse("not a vertex"));
  }

  TEST_CASE("charts send s1 to the vertex and labels locate neighbours") {
    const Tree tree(3);
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
      const ChartAtlas atlas(tree, seed);
      const Ball ball = make_ball(atlas, tree.s1(), 2);
      for (const auto& v : ball.vertices) {
        const QMat2 g = atlas.chart(v);
        CHECK(tree.act(g, tree.s1()) == v);
        for (const auto& u : tree.neighbors(v)) {
          const auto label = atlas.label(v, u);
          CHECK(label <= tree.p());
          CHECK(tree.act(g * tree.neighbor_move(label), tree.s1()) == u);
        }
      }
    }
  }

  TEST_CASE("ball sizes follow the closed formula") {
    for (auto [p, R] : {std::pair{3u, 2}, {5u, 1}, {3u, 4}, {7u, 2}}) {
      const Tree tree(p);
      const ChartAtlas atlas(tree, 0);
      const Ball ball = make_ball(atlas, tree.s1(), R);
      std::uint64_t expect = 1, layer = p + 1;
      for (int d = 1; d <= R; ++d, layer *= p) expect += layer;
      CHECK(ball.vertices.size() == expect);
      CHECK(ball_size(p, R) == expect);
      CHECK(ball.edges.size() == expect - 1);
    }
    const Tree tree(3);
    const ChartAtlas atlas(tree, 0);
    CHECK(make_ball(atlas, tree.s1(), 2).vertices.size() == 17);
  }

  TEST_CASE("ball structure invariants") {
    const Tree tree(3);
    const ChartAtlas atlas(tree, 4);
    const Ball ball = make_ball(atlas, tree.s0(), 3);
    CHECK(ball.vertices.front() == tree.s0());
    for (std::size_t e = 0; e < ball.edges.size(); ++e) {
      const auto [par, child] = ball.edges[e];
      CHECK(child == static_cast<int>(e) + 1);
      CHECK(ball.parent[child] == par);
      CHECK(ball.depth[child] == ball.depth[par] + 1);
      CHECK(tree.distance(ball.vertices[par], ball.vertices[child]) == 1);
      CHECK(ball.marked_points[e].first == atlas.label(ball.vertices[par], ball.vertices[child]));
      CHECK(ball.marked_points[e].second == atlas.label(ball.vertices[child], ball.vertices[par]));
    }
    for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
      CHECK(ball.find(ball.vertices[v]) == static_cast<int>(v));
      CHECK(ball.parity[v] == tree.parity(ball.vertices[v]));
      CHECK(ball.depth[v] == tree.distance(ball.vertices[v], tree.s0()));
      const std::size_t degree = ball.incident_edges[v].size();
      CHECK(degree == (ball.is_interior(static_cast<int>(v)) ? 4u : 1u));
    }
    const auto j = nlohmann::json::parse(ball_to_json(tree, ball));
    CHECK(j.is_object());
  }

  TEST_CASE("ball cap raises a resource error") {
    const Tree tree(7);
    const ChartAtlas atlas(tree, 0);
    CHECK_THROWS_AS(make_ball(atlas, tree.s1(), 9, 1000), ResourceError);
  }
}
