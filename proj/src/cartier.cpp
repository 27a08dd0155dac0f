#include "drinfeld/cartier.hpp"

#include <algorithm>
#include <set>

#include "drinfeld/errors.hpp"

namespace drinfeld {

RingMatrix::RingMatrix(const GaloisRing& ring, std::size_t size) : n(size), entries(size * size, ring.zero()) {}

RingMatrix ring_mul(const GaloisRing& R, const RingMatrix& x, const RingMatrix& y) {
  RingMatrix out(R, x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k) {
      if (R.is_zero(x.at(i, k))) continue;
      for (std::size_t j = 0; j < x.n; ++j) out.at(i, j) = R.add(out.at(i, j), R.mul(x.at(i, k), y.at(k, j)));
    }
  return out;
}

RingMatrix ring_frobenius(const GaloisRing& R, const RingMatrix& x, int e) {
  RingMatrix out = x;
  for (auto& v : out.entries) v = R.frobenius(v, e);
  return out;
}

bool ring_equal(const RingMatrix& x, const RingMatrix& y) { return x.n == y.n && x.entries == y.entries; }

std::vector<unsigned> elementary_divisor_valuations(const GaloisRing& R, RingMatrix m) {
  const std::size_t n = m.n;
  std::vector<unsigned> out;
  for (std::size_t k = 0; k < n; ++k) {
    unsigned best = R.precision();
    std::size_t bi = k, bj = k;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        const unsigned v = R.valuation(m.at(i, j));
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best == R.precision()) {
      out.resize(n, R.precision());
      break;
    }
    for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(bi, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(m.at(i, k), m.at(i, bj));
    // pivot = p^best * unit
    GaloisRing::Elem unit = m.at(k, k);
    for (unsigned s = 0; s < best; ++s) unit = R.divide_by_p(unit);
    const GaloisRing::Elem unit_inv = R.inv(unit);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      GaloisRing::Elem t = m.at(i, k);
      for (unsigned s = 0; s < best; ++s) t = R.divide_by_p(t);
      const auto factor = R.mul(t, unit_inv);
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = R.sub(m.at(i, j), R.mul(factor, m.at(k, j)));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      GaloisRing::Elem t = m.at(k, j);
      for (unsigned s = 0; s < best; ++s) t = R.divide_by_p(t);
      const auto factor = R.mul(t, unit_inv);
      for (std::size_t i = 0; i < n; ++i) m.at(i, j) = R.sub(m.at(i, j), R.mul(factor, m.at(i, k)));
    }
    out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Fills the three operator matrices from the basis relations at the critical index i.
void fill_operator(const GaloisRing& R, RingMatrix& m, int i, const GaloisRing::Elem& coeff_x1) {
  const int j = 1 - i;
  const auto p = R.from_int(R.residue_field().p());
  const auto one = R.one();
  m.at(basis_index(0, j), basis_index(0, i)) = p;
  m.at(basis_index(1, j), basis_index(0, i)) = R.neg(coeff_x1);
  m.at(basis_index(1, j), basis_index(1, i)) = one;
  m.at(basis_index(1, i), basis_index(1, j)) = p;
  m.at(basis_index(0, i), basis_index(0, j)) = one;
}

}  // namespace

CartierPoint::CartierPoint(const GaloisRing& ring, FiniteField::Elem y, int critical_index)
    : ring_(&ring), y_(y), i_(critical_index & 1), pi_(ring, 4), fr_(ring, 4), ve_(ring, 4) {
  const FiniteField& F = ring.residue_field();
  const auto ty = ring.teichmuller(y);
  fill_operator(ring, pi_, i_, ty);
  fill_operator(ring, fr_, i_, ty);
  fill_operator(ring, ve_, i_, ty);
  const int j = 1 - i_;
  pi_.at(basis_index(1, i_), basis_index(0, j)) = ty;
  fr_.at(basis_index(1, i_), basis_index(0, j)) = ring.teichmuller(F.frobenius(y, 1));
  ve_.at(basis_index(1, i_), basis_index(0, j)) = ring.teichmuller(F.inv_frobenius(y, 1));
}

CartierPoint::Vec CartierPoint::apply_matrix(const RingMatrix& m, const Vec& x) const {
  const GaloisRing& R = *ring_;
  Vec out;
  out.fill(R.zero());
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out[r] = R.add(out[r], R.mul(m.at(r, c), x[c]));
  return out;
}

CartierPoint::Vec CartierPoint::apply_pi(const Vec& x) const { return apply_matrix(pi_, x); }

CartierPoint::Vec CartierPoint::apply_frobenius(const Vec& x) const {
  Vec t;
  for (std::size_t r = 0; r < 4; ++r) t[r] = ring_->frobenius(x[r], 1);
  return apply_matrix(fr_, t);
}

CartierPoint::Vec CartierPoint::apply_verschiebung(const Vec& x) const {
  Vec t;
  for (std::size_t r = 0; r < 4; ++r) t[r] = ring_->frobenius(x[r], -1);
  return apply_matrix(ve_, t);
}

CartierPoint::AxiomReport CartierPoint::check_axioms() const {
  const GaloisRing& R = *ring_;
  RingMatrix p_id(R, 4);
  for (std::size_t k = 0; k < 4; ++k) p_id.at(k, k) = R.from_int(R.residue_field().p());
  AxiomReport rep;
  rep.pi_squared = ring_equal(ring_mul(R, pi_, pi_), p_id);
  // F(V v) = M_F sigma(M_V sigma^{-1} v) = M_F sigma(M_V) v, and symmetrically for V F.
  rep.fv = ring_equal(ring_mul(R, fr_, ring_frobenius(R, ve_, 1)), p_id);
  rep.vf = ring_equal(ring_mul(R, ve_, ring_frobenius(R, fr_, -1)), p_id);
  rep.graded = true;
  for (const RingMatrix* m : {&pi_, &fr_, &ve_})
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        if (r / 2 == c / 2 && !R.is_zero(m->at(r, c))) rep.graded = false;
  const auto ed = elementary_divisor_valuations(R, ve_);
  rep.v_injective = R.precision() == 1 || std::all_of(ed.begin(), ed.end(), [](unsigned e) { return e <= 1; });
  return rep;
}

std::pair<FiniteField::Elem, FiniteField::Elem> CartierPoint::lie_scalars_from_matrices() const {
  const GaloisRing& R = *ring_;
  const FiniteField& F = R.residue_field();
  const int j = 1 - i_;
  // V M_j + p M_i reduces to the line spanned by the column of V at x_{0,j} (the other column is p x_{1,i}).
  const auto u0 = R.reduce(ve_.at(basis_index(0, i_), basis_index(0, j)));
  const auto u1 = R.reduce(ve_.at(basis_index(1, i_), basis_index(0, j)));
  if (u0 == 0) throw Error("unexpected shape of the Verschiebung image");
  const auto project = [&](const RingMatrix& m) {
    const auto c0 = R.reduce(m.at(basis_index(0, i_), basis_index(0, j)));
    const auto c1 = R.reduce(m.at(basis_index(1, i_), basis_index(0, j)));
    return F.sub(c1, F.mul(c0, F.div(u1, u0)));
  };
  return {project(pi_), project(fr_)};
}

LieMapScalars lie_map_scalars(const FiniteField& F, FiniteField::Elem y) {
  const auto root = F.inv_frobenius(y, 1);
  return {F.sub(y, root), F.sub(F.frobenius(y, 1), root)};
}

VanishingScan vanishing_scan(unsigned q, unsigned m) {
  if (!is_prime(q)) throw ConfigError("vanishing scans need q = p prime (K = Q_p)");
  if (m < 1 || m > 4) throw ConfigError("vanishing scans support 1 <= m <= 4");
  FiniteField F(q, m);
  VanishingScan scan;
  scan.q = q;
  scan.m = m;
  std::set<FiniteField::Elem> base, quadratic;
  for (FiniteField::Elem y = 0; y < F.size(); ++y) {
    const auto s = lie_map_scalars(F, y);
    if (s.pi_scalar == 0) scan.pi_zeros.push_back(y);
    if (s.f_scalar == 0) scan.f_zeros.push_back(y);
    if (F.in_subfield(y, 1)) base.insert(y);
    if (F.in_subfield(y, 2)) quadratic.insert(y);
  }
  scan.pi_zeros_are_base_field = std::set<FiniteField::Elem>(scan.pi_zeros.begin(), scan.pi_zeros.end()) == base;
  scan.f_zeros_are_quadratic = std::set<FiniteField::Elem>(scan.f_zeros.begin(), scan.f_zeros.end()) == quadratic;
  scan.pi_divisor_degree = static_cast<long long>(scan.pi_zeros.size()) + 1;
  scan.f_divisor_degree = static_cast<long long>(scan.f_zeros.size()) + 1;
  return scan;
}

namespace {

using DualVec = std::array<Dual, 4>;

struct DualArith {
  const FiniteField& F;
  Dual add(Dual x, Dual y) const { return {F.add(x.re, y.re), F.add(x.du, y.du)}; }
  Dual mul(Dual x, Dual y) const {
    return {F.mul(x.re, y.re), F.add(F.mul(x.re, y.du), F.mul(x.du, y.re))};
  }
  Dual div(Dual x, Dual y) const {
    const auto inv = F.inv(y.re);
    const auto re = F.mul(x.re, inv);
    return {re, F.mul(F.sub(x.du, F.mul(re, y.du)), inv)};
  }
};

// Reductions mod p of the operator matrices, as 4x4 arrays over F.
struct ResidueOperators {
  std::array<std::array<FiniteField::Elem, 4>, 4> pi{}, fr{}, ve{};
};

ResidueOperators residue_operators(const FiniteField& F, FiniteField::Elem y, int i) {
  ResidueOperators ops;
  const int j = 1 - i;
  for (auto* m : {&ops.pi, &ops.fr, &ops.ve}) {
    (*m)[basis_index(1, j)][basis_index(0, i)] = F.neg(y);
    (*m)[basis_index(1, j)][basis_index(1, i)] = 1;
    (*m)[basis_index(0, i)][basis_index(0, j)] = 1;
  }
  ops.pi[basis_index(1, i)][basis_index(0, j)] = y;
  ops.fr[basis_index(1, i)][basis_index(0, j)] = F.frobenius(y, 1);
  ops.ve[basis_index(1, i)][basis_index(0, j)] = F.inv_frobenius(y, 1);
  return ops;
}

// Applies a matrix over F to a vector over F[eps] after twisting coefficients by Frobenius^e.
DualVec apply_twisted(const FiniteField& F, const std::array<std::array<FiniteField::Elem, 4>, 4>& m, const DualVec& x,
                      int e) {
  auto twist = [&](FiniteField::Elem c) {
    if (e > 0) return F.frobenius(c, 1);
    if (e < 0) return F.inv_frobenius(c, 1);
    return c;
  };
  DualVec out{};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      out[r].re = F.add(out[r].re, F.mul(m[r][c], twist(x[c].re)));
      out[r].du = F.add(out[r].du, F.mul(m[r][c], twist(x[c].du)));
    }
  return out;
}

// e_j(b) = V x_{i+j, j+1} + eps * b * x_{1+i+j, j}.
DualVec deformation_generator(const FiniteField& F, const ResidueOperators& ops, int i, int j, FiniteField::Elem b) {
  DualVec basis{};
  basis[basis_index(i + j, j + 1)].re = 1;
  DualVec v = apply_twisted(F, ops.ve, basis, -1);
  auto& slot = v[basis_index(1 + i + j, j)];
  slot.du = F.add(slot.du, b);
  return v;
}

// Membership of the grade-k part of w in the F[eps]-line spanned by g.
bool in_line(const DualArith& A, const DualVec& w, const DualVec& g, int k) {
  const std::size_t a = basis_index(0, k), b = basis_index(1, k);
  const std::size_t t = g[a].re != 0 ? a : b;
  if (g[t].re == 0) throw Error("deformation generator is not primitive");
  const Dual c = A.div(w[t], g[t]);
  return A.mul(c, g[a]) == w[a] && A.mul(c, g[b]) == w[b];
}

bool in_filtration(const DualArith& A, const DualVec& w, const DualVec& gi, const DualVec& gj, int i) {
  return in_line(A, w, gi, i) && in_line(A, w, gj, 1 - i);
}

}  // namespace

Dual deformation_lie_scalar(const FiniteField& F, FiniteField::Elem y, FiniteField::Elem a, LieBranch branch) {
  if (branch == LieBranch::pi && !F.in_subfield(y, 1))
    throw PreconditionError("the Pi branch needs y in F_q");
  if (branch == LieBranch::frobenius && !F.in_subfield(y, 2))
    throw PreconditionError("the Frobenius branch needs y in F_{q^2}");
  const int i = 0, j = 1;
  const DualArith A{F};
  const auto ops = residue_operators(F, y, i);
  const DualVec g = deformation_generator(F, ops, i, i, a);
  DualVec x{};
  x[basis_index(0, j)].re = 1;
  const DualVec image = branch == LieBranch::pi ? apply_twisted(F, ops.pi, x, 0) : apply_twisted(F, ops.fr, x, 1);
  // Lie quotient M_i[eps] / F[eps] g is free on x_{1,i}: (c0, c1) -> c1 - c0 * g1 / g0.
  const Dual c0 = image[basis_index(0, i)], c1 = image[basis_index(1, i)];
  const Dual ratio = A.div(g[basis_index(1, i)], g[basis_index(0, i)]);
  const Dual prod = A.mul(c0, ratio);
  return {F.sub(c1.re, prod.re), F.sub(c1.du, prod.du)};
}

DeformationReport classify_deformations(const FiniteField& F, FiniteField::Elem y, int critical_index) {
  const int i = critical_index & 1, j = 1 - i;
  const DualArith A{F};
  const auto ops = residue_operators(F, y, i);
  DeformationReport rep;
  rep.stable_under_v_and_f = true;
  bool stable_with_a1 = false;
  std::size_t stable_with_a1_zero = 0;

  std::vector<FiniteField::Elem> samples;
  if (std::uint64_t(F.size()) * F.size() <= 200000) {
    for (FiniteField::Elem x = 0; x < F.size(); ++x) samples.push_back(x);
  } else {
    for (FiniteField::Elem x = 0; x < 64 && x < F.size(); ++x) samples.push_back(x);
  }
  for (auto a0 : samples)
    for (auto a1 : samples) {
      const DualVec gi = deformation_generator(F, ops, i, i, a0);
      const DualVec gj = deformation_generator(F, ops, i, j, a1);
      bool pi_stable = true;
      for (const DualVec* g : {&gi, &gj})
        pi_stable = pi_stable && in_filtration(A, apply_twisted(F, ops.pi, *g, 0), gi, gj, i);
      if (!pi_stable) continue;
      ++rep.stable_pairs;
      if (a1 != 0) stable_with_a1 = true;
      if (a1 == 0) ++stable_with_a1_zero;
      for (const DualVec* g : {&gi, &gj}) {
        const bool v_ok = in_filtration(A, apply_twisted(F, ops.ve, *g, -1), gi, gj, i);
        const bool f_ok = in_filtration(A, apply_twisted(F, ops.fr, *g, 1), gi, gj, i);
        if (!v_ok || !f_ok) rep.stable_under_v_and_f = false;
      }
    }
  const bool all_a0 = stable_with_a1_zero == samples.size();
  rep.dimension = (all_a0 ? 1u : 0u) + (stable_with_a1 ? 1u : 0u);
  rep.a1_forced_zero = !stable_with_a1;
  return rep;
}

}  // namespace drinfeld
