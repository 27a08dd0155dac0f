#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/bundles.hpp"
#include "drinfeld/linalg.hpp"
#include "drinfeld/tree.hpp"

namespace drinfeld {

// Coordinates of the point with a given label: [lambda : 1] for finite lambda, [1 : 0] for infinity.
std::pair<FiniteField::Elem, FiniteField::Elem> label_point(const FiniteField& F, unsigned p, P1Label label);

// Value of the monomial X^{k-j} Y^j at the normalised representative of a point.
FiniteField::Elem eval_monomial(const FiniteField& F, int k, int j, std::pair<FiniteField::Elem, FiniteField::Elem> pt);

// Evaluation Sym^k -> F^{P^1(F_q)} with q = |F|; rows are [c : 1] for c = 0..q-1, then [1 : 0].
FMatrix evaluation_matrix(const FiniteField& F, int k);
// Basis of the kernel of evaluation_matrix: (X^q Y - X Y^q) times the monomials of degree k-q-1.
std::vector<FVec> eval_kernel_basis(const FiniteField& F, int k);

struct ComplexOptions {
  // Gluing scalars (at parent endpoint, at child endpoint) per edge; empty means all 1.
  std::vector<std::pair<FiniteField::Elem, FiniteField::Elem>> edge_scalars;
  // Replaces evaluation entirely: coefficients of the block of `vertex` on `edge` (one per monomial).
  std::function<FVec(std::size_t edge, int vertex)> edge_coefficients;
  std::size_t max_columns = 4000000;
  long long max_degree = 100000;
};

// B : (+)_v Sym^{k_parity(v)} -> (+)_e F, difference of evaluations at the marked points.
class GluingComplex {
 public:
  GluingComplex(const FiniteField& field, const Ball& ball, long long k0, long long k1,
                const ComplexOptions& options = {});

  const FiniteField& field() const { return field_; }
  const Ball& ball() const { return ball_; }
  long long degree(int parity) const { return parity == 0 ? k0_ : k1_; }
  long long vertex_degree(int v) const { return degree(ball_.parity[v]); }
  std::size_t block_size(int v) const;
  std::size_t block_offset(int v) const { return offsets_[v]; }
  std::size_t rows() const { return ball_.edges.size(); }
  std::size_t cols() const { return offsets_.back(); }
  // Column c as a sorted sparse vector indexed by edge.
  const SparseEchelon::SparseVec& column(std::size_t c) const { return columns_[c]; }
  FMatrix dense() const;

  // Rank of B restricted to the columns of the vertices accepted by keep (all when empty).
  std::size_t rank(const std::vector<bool>& keep = {}) const;
  // Rank computed from the rows; equals rank() by the transpose-rank identity.
  std::size_t row_rank() const;

 private:
  FiniteField field_;
  Ball ball_;
  long long k0_, k1_;
  std::vector<std::size_t> offsets_;
  std::vector<SparseEchelon::SparseVec> columns_;
};

struct CohomologyResult {
  long long h0 = 0;
  long long h1 = 0;
  long long euler = 0;  // sum of dim Gamma - |edges| - sum of dim H^1 of the components
  std::optional<std::vector<FVec>> h0_basis;
};

GluingComplex build_complex(const FiniteField& field, const BundleClass& L, const Ball& ball,
                            const ComplexOptions& options = {});
CohomologyResult cohomology(const GluingComplex& c, bool with_basis = false);
// Kernel dimension from the dual presentation: vertex duals modulo the image of the edge duals.
long long dual_presentation_dim(const GluingComplex& c);
// The Euler characteristic predicted by block dimensions alone.
long long euler_characteristic(const Ball& ball, long long k0, long long k1);

// Dimension of the restriction of H^0 on ball(center, r_big) to the components inside ball(center, r_small).
long long restriction_image_dim(const FiniteField& field, const BundleClass& L, const ChartAtlas& atlas,
                                const Vertex& center, int r_big, int r_small);

// Exact (h0, h1) for the cases where the truncated answer is determined by block structure:
// both orders >= q+1, both <= -1, or one <= -1 and the other >= q+1. Otherwise nullopt.
std::optional<std::pair<long long, long long>> predicted_dims(const BundleClass& L, const Ball& ball, unsigned q);

}  // namespace drinfeld
