#include "drinfeld/special_fiber.hpp"

#include <algorithm>

#include "drinfeld/errors.hpp"

namespace drinfeld {

std::pair<FiniteField::Elem, FiniteField::Elem> label_point(const FiniteField& F, unsigned p, P1Label label) {
  if (label == p) return {1, 0};
  return {F.from_int(label), 1};
}

FiniteField::Elem eval_monomial(const FiniteField& F, int k, int j, std::pair<FiniteField::Elem, FiniteField::Elem> pt) {
  // Normalise so that the last nonzero coordinate is 1.
  auto [x, y] = pt;
  if (y != 0) {
    x = F.div(x, y);
    y = 1;
  } else {
    x = 1;
  }
  auto power = [&](FiniteField::Elem base, int e) { return e == 0 ? FiniteField::Elem(1) : F.pow(base, e); };
  return F.mul(power(x, k - j), power(y, j));
}

FMatrix evaluation_matrix(const FiniteField& F, int k) {
  if (k < 0) throw PreconditionError("evaluation needs k >= 0");
  const std::size_t q = F.size();
  FMatrix m(F, q + 1, static_cast<std::size_t>(k) + 1);
  for (std::size_t c = 0; c <= q; ++c) {
    const auto pt = c < q ? std::pair<FiniteField::Elem, FiniteField::Elem>{FiniteField::Elem(c), 1}
                          : std::pair<FiniteField::Elem, FiniteField::Elem>{1, 0};
    for (int j = 0; j <= k; ++j) m.at(c, j) = eval_monomial(F, k, j, pt);
  }
  return m;
}

std::vector<FVec> eval_kernel_basis(const FiniteField& F, int k) {
  if (k < 0) throw PreconditionError("evaluation kernels need k >= 0");
  const int q = static_cast<int>(F.size());
  std::vector<FVec> out;
  // X^q Y - X Y^q has coefficient +1 at j = 1 and -1 at j = q in the basis X^{q+1-j} Y^j.
  for (int s = 0; s + q + 1 <= k; ++s) {
    FVec v(static_cast<std::size_t>(k) + 1, 0);
    v[1 + s] = F.add(v[1 + s], 1);
    v[q + s] = F.sub(v[q + s], 1);
    out.push_back(std::move(v));
  }
  return out;
}

GluingComplex::GluingComplex(const FiniteField& field, const Ball& ball, long long k0, long long k1,
                             const ComplexOptions& options)
    : field_(field), ball_(ball), k0_(k0), k1_(k1) {
  if (ball_.vertices.empty()) throw PreconditionError("empty ball");
  if (std::max(k0, k1) > options.max_degree)
    throw ResourceError("component degree above the cap of " + std::to_string(options.max_degree));
  if (!options.edge_scalars.empty() && options.edge_scalars.size() != ball_.edges.size())
    throw PreconditionError("one pair of gluing scalars per edge is required");
  offsets_.assign(ball_.vertices.size() + 1, 0);
  for (std::size_t v = 0; v < ball_.vertices.size(); ++v) {
    offsets_[v + 1] = offsets_[v] + block_size(static_cast<int>(v));
    if (offsets_[v + 1] > options.max_columns)
      throw ResourceError("gluing matrix has more than " + std::to_string(options.max_columns) + " columns");
  }
  columns_.assign(cols(), {});
  for (std::size_t e = 0; e < ball_.edges.size(); ++e) {
    const auto [parent, child] = ball_.edges[e];
    FiniteField::Elem sp = 1, sc = 1;
    if (!options.edge_scalars.empty()) std::tie(sp, sc) = options.edge_scalars[e];
    const auto fill = [&](int v, P1Label label, FiniteField::Elem scale) {
      const int k = static_cast<int>(vertex_degree(v));
      if (k < 0) return;
      const auto pt = label_point(field_, field_.p(), label);
      FVec custom;
      if (options.edge_coefficients) {
        custom = options.edge_coefficients(e, v);
        if (custom.size() != static_cast<std::size_t>(k) + 1) throw PreconditionError("edge coefficient block has the wrong size");
      }
      for (int j = 0; j <= k; ++j) {
        const auto base = custom.empty() ? eval_monomial(field_, k, j, pt) : custom[j];
        const auto val = field_.mul(scale, base);
        if (val != 0) columns_[offsets_[v] + j].emplace_back(static_cast<std::uint32_t>(e), val);
      }
    };
    fill(parent, ball_.marked_points[e].first, sp);
    fill(child, ball_.marked_points[e].second, field_.neg(sc));
  }
}

std::size_t GluingComplex::block_size(int v) const {
  return static_cast<std::size_t>(std::max<long long>(vertex_degree(v) + 1, 0));
}

FMatrix GluingComplex::dense() const {
  FMatrix m(field_, rows(), cols());
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [e, val] : columns_[c]) m.at(e, c) = val;
  return m;
}

std::size_t GluingComplex::rank(const std::vector<bool>& keep) const {
  // Deepest vertices first, deepest edges on the smallest indices: elimination proceeds leaf-inwards.
  SparseEchelon ech(field_);
  const auto E = static_cast<std::uint32_t>(rows());
  for (std::size_t vi = ball_.vertices.size(); vi-- > 0;) {
    if (!keep.empty() && !keep[vi]) continue;
    for (std::size_t c = offsets_[vi]; c < offsets_[vi + 1]; ++c) {
      SparseEchelon::SparseVec col;
      col.reserve(columns_[c].size());
      for (const auto& [e, val] : columns_[c]) col.emplace_back(E - 1 - e, val);
      std::sort(col.begin(), col.end());
      ech.insert(std::move(col));
    }
  }
  return ech.rank();
}

std::size_t GluingComplex::row_rank() const {
  std::vector<SparseEchelon::SparseVec> rows_sparse(rows());
  const auto C = static_cast<std::uint32_t>(cols());
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [e, val] : columns_[c]) rows_sparse[e].emplace_back(C - 1 - static_cast<std::uint32_t>(c), val);
  SparseEchelon ech(field_);
  for (std::size_t e = rows(); e-- > 0;) {
    auto& r = rows_sparse[e];
    std::sort(r.begin(), r.end());
    ech.insert(std::move(r));
  }
  return ech.rank();
}

GluingComplex build_complex(const FiniteField& field, const BundleClass& L, const Ball& ball,
                            const ComplexOptions& options) {
  return GluingComplex(field, ball, L.k0, L.k1, options);
}

long long euler_characteristic(const Ball& ball, long long k0, long long k1) {
  long long total = -static_cast<long long>(ball.edges.size());
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    const long long k = ball.parity[v] == 0 ? k0 : k1;
    total += std::max(k + 1, 0LL) - std::max(-k - 1, 0LL);
  }
  return total;
}

CohomologyResult cohomology(const GluingComplex& c, bool with_basis) {
  const long long rk = static_cast<long long>(c.rank());
  CohomologyResult res;
  res.h0 = static_cast<long long>(c.cols()) - rk;
  res.h1 = static_cast<long long>(c.rows()) - rk;
  for (std::size_t v = 0; v < c.ball().vertices.size(); ++v)
    res.h1 += std::max(-c.vertex_degree(static_cast<int>(v)) - 1, 0LL);
  res.euler = euler_characteristic(c.ball(), c.degree(0), c.degree(1));
  if (with_basis) {
    if (c.cols() > 4000) throw ResourceError("an explicit H^0 basis is limited to 4000 columns");
    res.h0_basis = kernel_basis(c.dense());
  }
  return res;
}

long long dual_presentation_dim(const GluingComplex& c) {
  return static_cast<long long>(c.cols()) - static_cast<long long>(c.row_rank());
}

long long restriction_image_dim(const FiniteField& field, const BundleClass& L, const ChartAtlas& atlas,
                                const Vertex& center, int r_big, int r_small) {
  if (r_small < 0 || r_small > r_big - 1) throw PreconditionError("need 0 <= r_small <= r_big - 1");
  const Ball ball = make_ball(atlas, center, r_big);
  const GluingComplex c(field, ball, L.k0, L.k1);
  std::vector<bool> outer(ball.vertices.size());
  std::size_t outer_cols = 0;
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    outer[v] = ball.depth[v] > r_small;
    if (outer[v]) outer_cols += c.block_size(static_cast<int>(v));
  }
  // Sections vanishing on the inner components are exactly the kernel of the outer columns.
  const long long kernel = static_cast<long long>(c.cols()) - static_cast<long long>(c.rank());
  const long long outer_kernel = static_cast<long long>(outer_cols) - static_cast<long long>(c.rank(outer));
  return kernel - outer_kernel;
}

std::optional<std::pair<long long, long long>> predicted_dims(const BundleClass& L, const Ball& ball, unsigned q) {
  const long long k[2] = {L.k0, L.k1};
  const long long Q = q;
  const auto edges = static_cast<long long>(ball.edges.size());
  long long count[2] = {0, 0};
  for (int par : ball.parity) ++count[par];
  if (k[0] >= Q + 1 && k[1] >= Q + 1) {
    return std::make_pair(euler_characteristic(ball, k[0], k[1]), 0LL);
  }
  if (k[0] <= -1 && k[1] <= -1) {
    return std::make_pair(0LL, edges + count[0] * (-k[0] - 1) + count[1] * (-k[1] - 1));
  }
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    if (k[i] <= -1 && k[j] >= Q + 1) {
      // B is block diagonal over the parity-j components, each block surjective.
      long long h0 = 0;
      for (std::size_t v = 0; v < ball.vertices.size(); ++v)
        if (ball.parity[v] == j)
          h0 += std::max(0LL, k[j] + 1 - static_cast<long long>(ball.incident_edges[v].size()));
      return std::make_pair(h0, count[i] * (-k[i] - 1));
    }
  }
  return std::nullopt;
}

}  // namespace drinfeld
