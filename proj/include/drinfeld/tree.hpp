#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "drinfeld/padic.hpp"

namespace drinfeld {

// Homothety class of the lattice spanned by the columns of [[p^n, b], [0, 1]], b reduced mod p^n.
struct Vertex {
  int n = 0;
  mpq_class b = 0;

  friend bool operator==(const Vertex& x, const Vertex& y) { return x.n == y.n && x.b == y.b; }
  friend bool operator!=(const Vertex& x, const Vertex& y) { return !(x == y); }
};

// Points of P^1(F_p) are labelled 0..p-1 for [lambda:1] and p for [1:0].
using P1Label = std::uint32_t;

// The Bruhat-Tits tree of PGL_2(Q_p).
class Tree {
 public:
  explicit Tree(unsigned p);

  unsigned p() const { return p_; }
  P1Label infinity() const { return p_; }

  Vertex s0() const { return {-1, 0}; }  // [O + pO]
  Vertex s1() const { return {0, 0}; }   // [O + O]

  Vertex canonical(const QMat2& g) const;  // class of g . O^2
  QMat2 rep(const Vertex& v) const;
  Vertex act(const QMat2& g, const Vertex& v) const;
  int distance(const Vertex& u, const Vertex& v) const;
  int parity(const Vertex& v) const;  // 0 iff at even distance from s0
  // Neighbours g_v . m_lambda . s1 for the canonical chart g_v, ordered by label.
  std::vector<Vertex> neighbors(const Vertex& v) const;
  // m_lambda = [[p, lambda], [0, 1]] for finite lambda, diag(1, p) for infinity.
  QMat2 neighbor_move(P1Label lambda) const;
  // Label of the neighbour g^{-1} u of s1; throws if u is not adjacent to g . s1.
  P1Label label_at_standard(const QMat2& g, const Vertex& u) const;

  std::string serialize(const Vertex& v) const;
  Vertex parse(const std::string& s) const;
  // Hash-map key; injective on canonical vertices.
  static std::string key(const Vertex& v);

 private:
  unsigned p_;
};

// Chart g_v with g_v . s1 = v for every vertex. Seed 0 uses the canonical representative;
// other seeds right-multiply by a pseudo-random element of GL_2(Z_(p)) derived from (seed, v).
class ChartAtlas {
 public:
  ChartAtlas(const Tree& tree, std::uint64_t seed);

  const Tree& tree() const { return *tree_; }
  std::uint64_t seed() const { return seed_; }
  QMat2 chart(const Vertex& v) const;
  QMat2 stabilizer_twist(const Vertex& v) const;
  // Marked point on the component of v of the edge towards the neighbour u.
  P1Label label(const Vertex& v, const Vertex& u) const;

 private:
  const Tree* tree_;
  std::uint64_t seed_;
};

struct Ball {
  Vertex center;
  int radius = 0;
  std::vector<Vertex> vertices;  // breadth-first order, center first
  std::vector<int> depth;
  std::vector<int> parent;       // -1 for the center
  std::vector<int> parity;
  std::vector<std::pair<int, int>> edges;  // (parent, child); edge i has child vertices[i + 1]
  // marked_points[e] = (label at parent endpoint, label at child endpoint)
  std::vector<std::pair<P1Label, P1Label>> marked_points;
  std::vector<std::vector<int>> incident_edges;  // per vertex
  std::unordered_map<std::string, int> index;

  int find(const Vertex& v) const;
  bool contains(const Vertex& v) const { return find(v) >= 0; }
  bool is_interior(int vertex) const { return depth[vertex] < radius; }
};

constexpr std::size_t kDefaultBallCap = 200000;

// Predicted vertex count 1 + (q+1)(q^R - 1)/(q - 1).
std::uint64_t ball_size(unsigned q, int radius);
Ball make_ball(const ChartAtlas& atlas, const Vertex& center, int radius, std::size_t cap = kDefaultBallCap);
std::string ball_to_json(const Tree& tree, const Ball& ball);

}  // namespace drinfeld
