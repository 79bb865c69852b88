#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace qndi::phase_space {

/// The three participating modes: two travelling light modes L and M, and the
/// stationary matter mode A (atomic ensemble or mechanical oscillator).
enum class Mode : int { L = 0, M = 1, A = 2 };

enum class Quadrature : int { x = 0, p = 1 };

/// Canonical variable ordering used by every matrix and every serialization
/// in this project:
///
///   index 0..5 = (x_L, p_L, x_M, p_M, x_A, p_A)
constexpr int quad_index(Mode m, Quadrature q) {
  return 2 * static_cast<int>(m) + static_cast<int>(q);
}

inline constexpr std::array<const char*, 6> kVariableNames = {
    "x_L", "p_L", "x_M", "p_M", "x_A", "p_A"};

constexpr int kPhaseDim = 6;

/// One quadrature of one mode, e.g. {M, x} is the x quadrature of mode M.
struct QuadratureIndex {
  Mode mode;
  Quadrature quad;

  int index() const { return quad_index(mode, quad); }
};

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat2x6 = Eigen::Matrix<double, 2, 6>;

/// The symplectic form Omega: block diagonal [[0,1],[-1,0]] per mode in the
/// canonical ordering, so [xi_i, xi_j] = i*Omega_ij.
Mat6 symplectic_form();

/// Real linear map on the 6-component quadrature vector. Gate constructors
/// below produce matrices satisfying S Omega S^T = Omega exactly up to
/// machine arithmetic; `symplectic_residual` measures the defect.
class SymplecticMatrix {
 public:
  SymplecticMatrix() : m_(Mat6::Identity()) {}
  explicit SymplecticMatrix(Mat6 m) : m_(std::move(m)) {}

  static SymplecticMatrix identity() { return SymplecticMatrix(); }

  const Mat6& matrix() const { return m_; }
  double operator()(int r, int c) const { return m_(r, c); }

  /// max |(S Omega S^T - Omega)_ij|
  double symplectic_residual() const;

  /// Inverse via the symplectic identity S^{-1} = -Omega S^T Omega.
  /// Exact (no linear solve) whenever S is symplectic.
  SymplecticMatrix inverse() const;

  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const {
    return SymplecticMatrix(m_ * rhs.m_);
  }

 private:
  Mat6 m_;
};

/// QND coupling with Hamiltonian ~ x_ctl * p_tgt and gain kappa:
///   x_tgt -> x_tgt + kappa * x_ctl
///   p_ctl -> p_ctl - kappa * p_tgt
/// all other quadratures unchanged. Throws ConfigError for ctl == tgt or a
/// non-finite gain.
SymplecticMatrix qnd_gate(Mode ctl, Mode tgt, double kappa);

/// Joint coupling with Hamiltonian ~ (x_A p_L + p_A x_M) and gain kappa:
///   x_L -> x_L + kappa x_A + (kappa^2/2) x_M
///   p_M -> p_M - kappa p_A + (kappa^2/2) p_L
///   x_A -> x_A + kappa x_M
///   p_A -> p_A - kappa p_L
/// with x_M and p_L unchanged.
SymplecticMatrix joint_qnd_gate(double kappa);

/// Squeezing of one mode with gain g: x -> x/g, p -> g*p (the position-kernel
/// convention |x> -> |x/g>). Throws ConfigError for g == 0.
SymplecticMatrix squeeze_gate(Mode mode, double gain);

/// Balanced beam splitter between two modes. Convention:
///   q_a -> (q_a + q_b)/sqrt(2),  q_b -> (q_a - q_b)/sqrt(2)   (q = x and p)
/// This matrix is an involution: applying it twice gives the identity.
SymplecticMatrix balanced_bs_gate(Mode a, Mode b);

/// Product of gates applied in temporal order: the first element of `gates`
/// acts first, so the result is gates[n-1] * ... * gates[0].
/// compose({}) is the identity.
SymplecticMatrix compose(const std::vector<SymplecticMatrix>& gates);

/// Heisenberg-picture map from the six input quadratures to the matter-mode
/// output pair (x_A_out, p_A_out) after homodyne measurement and displacement
/// feed-forward. Rows are ordered (x_A_out, p_A_out).
class ConditionalAffineMap {
 public:
  explicit ConditionalAffineMap(Mat2x6 rows) : rows_(std::move(rows)) {}

  const Mat2x6& matrix() const { return rows_; }
  double operator()(int r, int c) const { return rows_(r, c); }

  /// max |(M Omega M^T - omega)_ij| with omega = [[0,1],[-1,0]]; zero when
  /// the output pair is a valid conjugate pair.
  double commutator_residual() const;

 private:
  Mat2x6 rows_;
};

/// Conditional map after evolving with U, measuring `measured_x` (fed into
/// x_A with gain gain_x) and `measured_p` (fed into p_A with gain gain_p):
///
///   x_A_out = row_U(x_A) + gain_x * row_U(measured_x)
///   p_A_out = row_U(p_A) + gain_p * row_U(measured_p)
///
/// The measured quadratures must sit on the light modes L and M, one on each;
/// measuring the matter mode is rejected.
ConditionalAffineMap conditional_map(const SymplecticMatrix& u,
                                     QuadratureIndex measured_x,
                                     QuadratureIndex measured_p, double gain_x,
                                     double gain_p);

/// Closed-form pullback matrix of the pre-processed sequential chain (the
/// matrix that maps measured-frame variables back to input-frame variables),
/// kept as an independently written fixture for cross-checking
/// compose() + inverse(). It differs from the composed pullback by a parity
/// flip of mode L; see protocols::sequential_pullback for the relation.
SymplecticMatrix reference_pullback_matrix(double kappa1, double kappa2);

}  // namespace qndi::phase_space
