#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "drinfeld/bundles.hpp"
#include "drinfeld/linalg.hpp"
#include "drinfeld/special_fiber.hpp"
#include "drinfeld/tree.hpp"

namespace drinfeld {

// Serre weight Sym^k (x) det^r of GL_2(F_p), inflated to G°Z with p.id acting trivially.
struct WeightSigma {
  int k = 0;
  long long r = 0;
  FiniteField::Elem a = 1;  // central-character bookkeeping only
};

// Reduction mod p of an element of Z_(p)-entries; throws if an entry is not p-integral.
FiniteField::Elem residue(const FiniteField& F, const mpq_class& x);
// p^{-s} g with s the minimal entry valuation; throws unless the result lies in GL_2(Z_(p)).
QMat2 strip_center(const QMat2& g, unsigned p);
// Matrix of g in the basis X^{k-j} Y^j: (g.P)(X, Y) = det(g)^r P(aX + cY, bX + dY); g in G°Z.
FMatrix sym_matrix(const FiniteField& F, int k, long long r, const QMat2& g);
// X^k-coefficient projector: sum a_j X^{k-j} Y^j -> a_0 X^k.
FMatrix u_operator(const FiniteField& F, int k);

// Hecke function phi_n: supported on G°Z alpha^n G°, alpha = diag(1, p), phi_n(alpha^n) = U (identity for n = 0).
FMatrix hecke_phi(const FiniteField& F, const WeightSigma& sigma, const QMat2& g, int n);
// The same value computed from a supplied factorization g = p^s h1 alpha^n h2.
FMatrix hecke_phi_factored(const FiniteField& F, const WeightSigma& sigma, const QMat2& h1, int n, const QMat2& h2);

// Element of the Hecke algebra as a combination sum_j coeffs[j] phi_j.
struct HeckeFunction {
  std::vector<FiniteField::Elem> coeffs;
  friend bool operator==(const HeckeFunction&, const HeckeFunction&) = default;
};

class HeckeAlgebra {
 public:
  HeckeAlgebra(const FiniteField& F, unsigned p, WeightSigma sigma);

  FMatrix evaluate(const HeckeFunction& phi, const QMat2& g) const;
  // (phi * psi)(g) = sum over y in G/ZG° of phi(g y) psi(y^{-1}).
  FMatrix convolve_at(const HeckeFunction& phi, const HeckeFunction& psi, const QMat2& g) const;
  // Convolution expressed in the basis phi_j; throws if the result is not such a combination
  // at the double-coset representatives or at the extra probe points.
  HeckeFunction convolve(const HeckeFunction& phi, const HeckeFunction& psi, int probes = 4,
                         std::uint64_t seed = 1) const;
  HeckeFunction basis(int n) const;
  HeckeFunction add(const HeckeFunction& x, const HeckeFunction& y) const;

  struct RecurrenceReport {
    int max_power = 0;
    bool ok = false;
    std::vector<HeckeFunction> powers;    // T^1 .. T^max
    std::vector<HeckeFunction> expected;  // T_n + T_{n-2} + ... for k = 0, T_n otherwise
  };
  RecurrenceReport verify_recurrence(int max_power) const;

 private:
  const FiniteField* F_;
  unsigned p_;
  WeightSigma sigma_;
  Tree tree_;
};

// Finitely supported element of cind_{G°Z}^G sigma, coordinates in the atlas charts.
struct InducedElement {
  std::map<std::string, std::pair<Vertex, FVec>> terms;

  void add(const Vertex& v, const FVec& x, const FiniteField& F);
  std::vector<Vertex> support() const;
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const InducedElement& x, const InducedElement& y);
};

class InducedModel {
 public:
  InducedModel(const FiniteField& F, const ChartAtlas& atlas, WeightSigma sigma);

  const FiniteField& field() const { return *F_; }
  const ChartAtlas& atlas() const { return *atlas_; }
  const WeightSigma& weight() const { return sigma_; }
  int dim() const { return sigma_.k + 1; }

  InducedElement single(const Vertex& v, const FVec& x) const;
  InducedElement act(const QMat2& g, const InducedElement& f) const;
  // Requires the support to lie in the interior of the window.
  InducedElement T_apply(const InducedElement& f, const Ball& window) const;
  // sum_j coeffs[j] T^j f.
  InducedElement polynomial_apply(const std::vector<FiniteField::Elem>& coeffs, const InducedElement& f,
                                  const Ball& window) const;
  InducedElement add(const InducedElement& x, const InducedElement& y) const;
  InducedElement scale(FiniteField::Elem s, const InducedElement& f) const;

 private:
  const FiniteField* F_;
  const ChartAtlas* atlas_;
  WeightSigma sigma_;
  std::vector<QMat2> cosets_;
  std::vector<FMatrix> phi_inverse_;  // phi_1(gamma^{-1}) per coset representative
};

// Sym^k (x) det^r -> Ind_{IZ}^{G°Z} mu_{r, r+k} -> Sym^{p-1-k} (x) det^{r+k}.
struct JordanHolderReport {
  unsigned p = 0;
  int k = 0;
  long long r = 0;
  std::size_t sub_dim = 0;
  bool sub_stable = false;
  std::size_t quotient_dim = 0;
  std::size_t intertwiner_dim = 0;  // dimension of equivariant maps Ind -> quotient weight killing the sub
  bool intertwiner_surjective = false;
  bool ok() const {
    return sub_dim == static_cast<std::size_t>(k) + 1 && sub_stable && quotient_dim == p - static_cast<std::size_t>(k) &&
           intertwiner_dim == 1 && intertwiner_surjective;
  }
};
JordanHolderReport jordan_holder_check(unsigned p, int k, long long r);

// Coefficients on edges of the Jordan-Hölder style maps in an equivariant gauge: for a vertex v of
// weight Sym^k (x) det^r and the edge towards a neighbour, one value per monomial. mu(b) = a^{mu_a} d^{mu_d}.
class EdgeFrames {
 public:
  EdgeFrames(const FiniteField& F, const ChartAtlas& atlas);
  FVec coefficients(const Vertex& v, const Vertex& other, int k, long long r, long long mu_a, long long mu_d) const;

 private:
  const FiniteField* F_;
  const ChartAtlas* atlas_;
};

// Gluing complex of L with the equivariant gluing scalars (same dimensions as the unit gauge).
GluingComplex equivariant_complex(const FiniteField& F, const BundleClass& L, const Ball& ball, const ChartAtlas& atlas);

struct PhiTildeReport {
  int critical = 0;  // i: source parity
  std::size_t inputs = 0;
  bool support_ok = false;    // each single-vertex input maps onto exactly its neighbours
  bool proportional = false;  // a single scalar on all interior columns
  std::optional<FiniteField::Elem> lambda;
  bool ok() const { return support_ok && proportional && lambda && *lambda != 0; }
};
// Compares phi~ : V_i -> V_{i+1} with T on cind Sym^{k_{i+1}} (x) det^{-r_i} over the window interior.
PhiTildeReport phi_tilde(const FiniteField& F, const BundleClass& L, int i, const ChartAtlas& atlas,
                         const Vertex& center, int radius);

// dim V_i^{<=R} / T(V_{i+1}^{<=R-1}) on ball(s1, R).
long long supersingular_quotient_dim(const FiniteField& F, const ChartAtlas& atlas, int i, const WeightSigma& sigma,
                                     int radius);

struct SupersingularParams {
  FiniteField::Elem a = 1;
  int k = 0;
  long long r = 0;
  int parity = 1;
  auto operator<=>(const SupersingularParams&) const = default;
};
// Normal form: the parity-1 representative under pi^0_{a,k,r} = pi^1_{a,p-1-k,r+k}.
SupersingularParams normal_form(unsigned p, SupersingularParams s);

struct BijectionReport {
  unsigned p = 0;
  unsigned m = 0;
  std::size_t bundle_count = 0;
  std::size_t rep_count = 0;
  bool injective = false;
  bool surjective = false;
  bool parity_consistent = false;  // the parity-0 description normalises to the same class
  bool bijective() const { return injective && surjective && bundle_count == rep_count; }
};
// Map (a, r1, k0, k1) -> pi^1(a, k1, -r0), r0 = r1 + k1.
SupersingularParams bundle_to_supersingular(unsigned p, const BundleClass& L);
BijectionReport enumerate_and_match(unsigned p, unsigned m);

// Random element of GL_2(Z_(p)) with entries in [-bound, bound].
QMat2 random_compact(std::mt19937_64& rng, unsigned p, long bound = 0);

}  // namespace drinfeld
