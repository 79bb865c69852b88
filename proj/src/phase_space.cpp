#include "qndi/phase_space.hpp"

#include <cmath>

#include "qndi/errors.hpp"

namespace qndi::phase_space {

Mat6 symplectic_form() {
  Mat6 omega = Mat6::Zero();
  for (int m = 0; m < 3; ++m) {
    omega(2 * m, 2 * m + 1) = 1.0;
    omega(2 * m + 1, 2 * m) = -1.0;
  }
  return omega;
}

double SymplecticMatrix::symplectic_residual() const {
  const Mat6 omega = symplectic_form();
  return (m_ * omega * m_.transpose() - omega).cwiseAbs().maxCoeff();
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const Mat6 omega = symplectic_form();
  return SymplecticMatrix(-omega * m_.transpose() * omega);
}

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    throw ConfigError(std::string(name) + " must be finite");
}

}  // namespace

SymplecticMatrix qnd_gate(Mode ctl, Mode tgt, double kappa) {
  if (ctl == tgt)
    throw ConfigError("qnd_gate: control and target must be distinct modes");
  require_finite(kappa, "qnd_gate: kappa");
  Mat6 m = Mat6::Identity();
  m(quad_index(tgt, Quadrature::x), quad_index(ctl, Quadrature::x)) = kappa;
  m(quad_index(ctl, Quadrature::p), quad_index(tgt, Quadrature::p)) = -kappa;
  return SymplecticMatrix(m);
}

SymplecticMatrix joint_qnd_gate(double kappa) {
  require_finite(kappa, "joint_qnd_gate: kappa");
  const int xL = quad_index(Mode::L, Quadrature::x);
  const int pL = quad_index(Mode::L, Quadrature::p);
  const int xM = quad_index(Mode::M, Quadrature::x);
  const int pM = quad_index(Mode::M, Quadrature::p);
  const int xA = quad_index(Mode::A, Quadrature::x);
  const int pA = quad_index(Mode::A, Quadrature::p);
  Mat6 m = Mat6::Identity();
  m(xL, xA) = kappa;
  m(xL, xM) = 0.5 * kappa * kappa;
  m(pM, pA) = -kappa;
  m(pM, pL) = 0.5 * kappa * kappa;
  m(xA, xM) = kappa;
  m(pA, pL) = -kappa;
  return SymplecticMatrix(m);
}

SymplecticMatrix squeeze_gate(Mode mode, double gain) {
  require_finite(gain, "squeeze_gate: gain");
  if (gain == 0.0) throw ConfigError("squeeze_gate: gain must be nonzero");
  Mat6 m = Mat6::Identity();
  m(quad_index(mode, Quadrature::x), quad_index(mode, Quadrature::x)) =
      1.0 / gain;
  m(quad_index(mode, Quadrature::p), quad_index(mode, Quadrature::p)) = gain;
  return SymplecticMatrix(m);
}

SymplecticMatrix balanced_bs_gate(Mode a, Mode b) {
  if (a == b) throw ConfigError("balanced_bs_gate: modes must be distinct");
  const double s = 1.0 / std::sqrt(2.0);
  Mat6 m = Mat6::Identity();
  for (Quadrature q : {Quadrature::x, Quadrature::p}) {
    const int ia = quad_index(a, q);
    const int ib = quad_index(b, q);
    m(ia, ia) = s;
    m(ia, ib) = s;
    m(ib, ia) = s;
    m(ib, ib) = -s;
  }
  return SymplecticMatrix(m);
}

SymplecticMatrix compose(const std::vector<SymplecticMatrix>& gates) {
  Mat6 acc = Mat6::Identity();
  for (const auto& g : gates) acc = g.matrix() * acc;
  return SymplecticMatrix(acc);
}

double ConditionalAffineMap::commutator_residual() const {
  const Mat6 omega = symplectic_form();
  Eigen::Matrix2d small;
  small << 0.0, 1.0, -1.0, 0.0;
  return (rows_ * omega * rows_.transpose() - small).cwiseAbs().maxCoeff();
}

ConditionalAffineMap conditional_map(const SymplecticMatrix& u,
                                     QuadratureIndex measured_x,
                                     QuadratureIndex measured_p, double gain_x,
                                     double gain_p) {
  if (measured_x.mode == Mode::A || measured_p.mode == Mode::A)
    throw ConfigError("conditional_map: cannot measure the matter mode");
  if (measured_x.mode == measured_p.mode)
    throw ConfigError(
        "conditional_map: measured quadratures must sit on distinct light "
        "modes");
  require_finite(gain_x, "conditional_map: gain_x");
  require_finite(gain_p, "conditional_map: gain_p");
  const auto& m = u.matrix();
  Mat2x6 rows;
  rows.row(0) = m.row(quad_index(Mode::A, Quadrature::x)) +
                gain_x * m.row(measured_x.index());
  rows.row(1) = m.row(quad_index(Mode::A, Quadrature::p)) +
                gain_p * m.row(measured_p.index());
  return ConditionalAffineMap(rows);
}

SymplecticMatrix reference_pullback_matrix(double kappa1, double kappa2) {
  if (kappa1 == 0.0 || kappa2 == 0.0)
    throw ConfigError("reference_pullback_matrix: gains must be nonzero");
  require_finite(kappa1, "reference_pullback_matrix: kappa1");
  require_finite(kappa2, "reference_pullback_matrix: kappa2");
  const double k1 = kappa1;
  const double k2 = kappa2;
  Mat6 u;
  // clang-format off
  u <<        0.0,              0.0,  1.0 / k1, 0.0,     -1.0,       0.0,
              0.0,        -1.0 / k2,       0.0, 0.0,      0.0,      -1.0,
          k1 * k2,              0.0,       1.0, 0.0,      -k1,       0.0,
              0.0,  1.0 / (k1 * k2),       0.0, 1.0,      0.0,  1.0 / k1,
              -k2,              0.0,       0.0, 0.0,      1.0,       0.0,
              0.0,              0.0,       0.0,  k1,      0.0,       1.0;
  // clang-format on
  return SymplecticMatrix(u);
}

}  // namespace qndi::phase_space
