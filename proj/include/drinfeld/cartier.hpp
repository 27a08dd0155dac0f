#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/finite_field.hpp"
#include "drinfeld/galois_ring.hpp"

namespace drinfeld {

// Square matrix over a Galois ring; column j holds the image of basis vector j.
struct RingMatrix {
  std::size_t n = 0;
  std::vector<GaloisRing::Elem> entries;  // row-major

  RingMatrix() = default;
  RingMatrix(const GaloisRing& ring, std::size_t size);
  GaloisRing::Elem& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  const GaloisRing::Elem& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

RingMatrix ring_mul(const GaloisRing& R, const RingMatrix& x, const RingMatrix& y);
// Entrywise sigma^e.
RingMatrix ring_frobenius(const GaloisRing& R, const RingMatrix& x, int e);
bool ring_equal(const RingMatrix& x, const RingMatrix& y);
// Valuations of the elementary divisors (Smith form over the chain ring GR(p^N, d)).
std::vector<unsigned> elementary_divisor_valuations(const GaloisRing& R, RingMatrix m);

// Index of x_{j,k} (j = 0, 1; k = grading) in the ordered basis (x00, x10, x01, x11).
constexpr std::size_t basis_index(int j, int k) { return static_cast<std::size_t>((j & 1) + 2 * (k & 1)); }

// The graded Cartier module M_y = M_{y,0} + M_{y,1} over GR(p^N, m) at a point y of the standard component.
class CartierPoint {
 public:
  // ring.residue_field() is F_{p^m}; K = Q_p so q = p.
  CartierPoint(const GaloisRing& ring, FiniteField::Elem y, int critical_index);

  const GaloisRing& ring() const { return *ring_; }
  FiniteField::Elem y() const { return y_; }
  int critical_index() const { return i_; }
  const RingMatrix& pi() const { return pi_; }
  const RingMatrix& frobenius() const { return fr_; }
  const RingMatrix& verschiebung() const { return ve_; }

  using Vec = std::array<GaloisRing::Elem, 4>;
  Vec apply_pi(const Vec& x) const;
  Vec apply_frobenius(const Vec& x) const;     // sigma-semilinear
  Vec apply_verschiebung(const Vec& x) const;  // sigma^{-1}-semilinear

  struct AxiomReport {
    bool pi_squared = false;
    bool fv = false;
    bool vf = false;
    bool graded = false;
    bool v_injective = false;
    bool ok() const { return pi_squared && fv && vf && graded && v_injective; }
  };
  AxiomReport check_axioms() const;

  // Images of x_{0,i+1} under Pi and F in the Lie quotient M_i / (V M_{i+1} + p M_i),
  // read off the matrices.
  std::pair<FiniteField::Elem, FiniteField::Elem> lie_scalars_from_matrices() const;

 private:
  Vec apply_matrix(const RingMatrix& m, const Vec& x) const;

  const GaloisRing* ring_;
  FiniteField::Elem y_;
  int i_;
  RingMatrix pi_, fr_, ve_;
};

struct LieMapScalars {
  FiniteField::Elem pi_scalar = 0;  // y - y^{1/q}
  FiniteField::Elem f_scalar = 0;   // y^q - y^{1/q}
};
LieMapScalars lie_map_scalars(const FiniteField& F, FiniteField::Elem y);

struct VanishingScan {
  unsigned q = 0;
  unsigned m = 0;
  std::vector<FiniteField::Elem> pi_zeros;
  std::vector<FiniteField::Elem> f_zeros;
  bool pi_zeros_are_base_field = false;    // zeros == F_q
  bool f_zeros_are_quadratic = false;      // zeros == F_{q^m} cap F_{q^2}
  long long pi_divisor_degree = 0;         // zeros plus the point at infinity
  long long f_divisor_degree = 0;
};
VanishingScan vanishing_scan(unsigned q, unsigned m);

// Dual numbers F[eps]/(eps^2): value = re + eps * du.
struct Dual {
  FiniteField::Elem re = 0;
  FiniteField::Elem du = 0;
  friend bool operator==(const Dual&, const Dual&) = default;
};

enum class LieBranch { pi, frobenius };

// Coefficient of x_{1,i} of Pi_* (or F_*) x_{0,i+1} in the Lie quotient of the deformation
// D = span(e_i(a), e_{i+1}(0)).
Dual deformation_lie_scalar(const FiniteField& F, FiniteField::Elem y, FiniteField::Elem a, LieBranch branch);

struct DeformationReport {
  unsigned dimension = 0;              // number of free parameters among (a0, a1)
  std::size_t stable_pairs = 0;        // number of (a0, a1) whose filtration is Pi-stable
  bool stable_under_v_and_f = false;   // every Pi-stable filtration is V- and F-stable
  bool a1_forced_zero = false;
};
DeformationReport classify_deformations(const FiniteField& F, FiniteField::Elem y, int critical_index = 0);

}  // namespace drinfeld
