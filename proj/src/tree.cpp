#include "drinfeld/tree.hpp"

#include <functional>
#include <random>
#include <regex>

#include "drinfeld/errors.hpp"
#include "drinfeld/finite_field.hpp"
#include "json.hpp"

namespace drinfeld {

Tree::Tree(unsigned p) : p_(p) {
  if (p < 3 || !is_prime(p)) throw ConfigError("the tree needs an odd prime p, got " + std::to_string(p));
}

Vertex Tree::canonical(const QMat2& g) const {
  if (g.det() == 0) throw SingularMatrixError("singular matrix does not act on the tree");
  // Column operations over Z_(p) bring g to [[x, y], [0, z]]; then scale by 1/z.
  mpq_class a = g.a, b = g.b, c = g.c, d = g.d;
  if (padic_valuation(c, p_) < padic_valuation(d, p_)) {
    std::swap(a, b);
    std::swap(c, d);
  }
  const mpq_class t = c / d;
  a -= t * b;
  const mpq_class x = a / d;
  Vertex v;
  v.n = padic_valuation(x, p_);
  v.b = reduce_mod_power(b / d, p_, v.n);
  return v;
}

QMat2 Tree::rep(const Vertex& v) const { return {p_power(p_, v.n), v.b, 0, 1}; }

Vertex Tree::act(const QMat2& g, const Vertex& v) const { return canonical(g * rep(v)); }

int Tree::distance(const Vertex& u, const Vertex& v) const {
  const auto [a, b] = smith_valuations(rep(u).inverse() * rep(v), p_);
  return b - a;
}

int Tree::parity(const Vertex& v) const {
  // det(rep(v)) has valuation n, and distance to s1 has the parity of n.
  return (v.n % 2 == 0) ? 1 : 0;
}

QMat2 Tree::neighbor_move(P1Label lambda) const {
  if (lambda == p_) return QMat2::diag(1, p_);
  return {mpq_class(p_), mpq_class(lambda), 0, 1};
}

std::vector<Vertex> Tree::neighbors(const Vertex& v) const {
  const QMat2 g = rep(v);
  std::vector<Vertex> out;
  out.reserve(p_ + 1);
  for (P1Label l = 0; l <= p_; ++l) out.push_back(canonical(g * neighbor_move(l)));
  return out;
}

P1Label Tree::label_at_standard(const QMat2& g, const Vertex& u) const {
  const Vertex w = canonical(g.inverse() * rep(u));
  if (w.n == 1) return static_cast<P1Label>(w.b.get_num().get_ui());
  if (w.n == -1 && w.b == 0) return p_;
  throw PreconditionError("vertex " + serialize(u) + " is not adjacent to the chart centre");
}

std::string Tree::serialize(const Vertex& v) const {
  const int k = padic_valuation(mpq_class(v.b.get_den()), p_);
  return std::to_string(p_) + "^" + std::to_string(v.n) + ":" + v.b.get_num().get_str() + "/" + std::to_string(p_) +
         "^" + std::to_string(k);
}

Vertex Tree::parse(const std::string& s) const {
  static const std::regex re(R"((\d+)\^(-?\d+):(-?\d+)/(\d+)\^(\d+))");
  std::smatch m;
  if (!std::regex_match(s, m, re) || std::stoul(m[1]) != p_ || std::stoul(m[4]) != p_)
    throw ConfigError("cannot parse vertex '" + s + "' for p = " + std::to_string(p_));
  Vertex v;
  v.n = std::stoi(m[2]);
  const mpq_class b = mpq_class(mpz_class(m[3].str())) * p_power(p_, -std::stoi(m[5]));
  v.b = reduce_mod_power(b, p_, v.n);
  if (v.b != b) throw ConfigError("vertex '" + s + "' is not in canonical form");
  return v;
}

std::string Tree::key(const Vertex& v) {
  return std::to_string(v.n) + ":" + v.b.get_str();
}

ChartAtlas::ChartAtlas(const Tree& tree, std::uint64_t seed) : tree_(&tree), seed_(seed) {}

QMat2 ChartAtlas::stabilizer_twist(const Vertex& v) const {
  if (seed_ == 0) return QMat2::identity();
  const unsigned p = tree_->p();
  std::seed_seq seq{seed_, static_cast<std::uint64_t>(std::hash<std::string>{}(Tree::key(v)))};
  std::mt19937_64 rng(seq);
  const long bound = static_cast<long>(p * p);
  std::uniform_int_distribution<long> dist(-bound, bound);
  while (true) {
    QMat2 h{dist(rng), dist(rng), dist(rng), dist(rng)};
    if (padic_valuation(h.det(), p) == 0) return h;
  }
}

QMat2 ChartAtlas::chart(const Vertex& v) const { return tree_->rep(v) * stabilizer_twist(v); }

P1Label ChartAtlas::label(const Vertex& v, const Vertex& u) const { return tree_->label_at_standard(chart(v), u); }

int Ball::find(const Vertex& v) const {
  const auto it = index.find(Tree::key(v));
  return it == index.end() ? -1 : it->second;
}

std::uint64_t ball_size(unsigned q, int radius) {
  std::uint64_t total = 1, shell = q + 1;
  for (int r = 1; r <= radius; ++r) {
    total += shell;
    shell *= q;
    if (total > (std::uint64_t(1) << 40)) return total;
  }
  return total;
}

Ball make_ball(const ChartAtlas& atlas, const Vertex& center, int radius, std::size_t cap) {
  if (radius < 0) throw PreconditionError("ball radius must be non-negative");
  const Tree& tree = atlas.tree();
  const unsigned p = tree.p();
  const auto expected = ball_size(p, radius);
  if (expected > cap)
    throw ResourceError("ball of radius " + std::to_string(radius) + " has " + std::to_string(expected) +
                        " vertices, above the cap of " + std::to_string(cap));
  Ball ball;
  ball.center = center;
  ball.radius = radius;
  ball.vertices.reserve(expected);
  auto push = [&](const Vertex& v, int depth, int parent) {
    ball.index.emplace(Tree::key(v), static_cast<int>(ball.vertices.size()));
    ball.vertices.push_back(v);
    ball.depth.push_back(depth);
    ball.parent.push_back(parent);
    ball.parity.push_back(tree.parity(v));
    ball.incident_edges.emplace_back();
  };
  push(center, 0, -1);
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    if (ball.depth[i] == radius) continue;
    const Vertex v = ball.vertices[i];
    for (const Vertex& u : tree.neighbors(v)) {
      if (ball.parent[i] >= 0 && u == ball.vertices[ball.parent[i]]) continue;
      const int child = static_cast<int>(ball.vertices.size());
      push(u, ball.depth[i] + 1, static_cast<int>(i));
      const int e = static_cast<int>(ball.edges.size());
      ball.edges.emplace_back(static_cast<int>(i), child);
      ball.marked_points.emplace_back(atlas.label(v, u), atlas.label(u, v));
      ball.incident_edges[i].push_back(e);
      ball.incident_edges[child].push_back(e);
    }
  }
  return ball;
}

std::string ball_to_json(const Tree& tree, const Ball& ball) {
  nlohmann::json j;
  j["p"] = tree.p();
  j["center"] = tree.serialize(ball.center);
  j["radius"] = ball.radius;
  auto& vs = j["vertices"] = nlohmann::json::array();
  for (std::size_t i = 0; i < ball.vertices.size(); ++i)
    vs.push_back({{"id", tree.serialize(ball.vertices[i])}, {"depth", ball.depth[i]}, {"parity", ball.parity[i]}});
  auto& es = j["edges"] = nlohmann::json::array();
  for (std::size_t e = 0; e < ball.edges.size(); ++e)
    es.push_back({{"endpoints", {ball.edges[e].first, ball.edges[e].second}},
                  {"marked_points", {ball.marked_points[e].first, ball.marked_points[e].second}}});
  return j.dump();
}

}  // namespace drinfeld
