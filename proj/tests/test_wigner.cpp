#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qndi/errors.hpp"
#include "qndi/metrics.hpp"
#include "qndi/phase_space.hpp"
#include "qndi/wigner.hpp"

using namespace qndi;
using wigner::GaussPolyWigner;
using wigner::MultiPoly;

namespace {

constexpr double kPi = std::numbers::pi;

/// Random positive-definite instance with a bounded spectrum, for the
/// analytic-vs-trapezoid oracle suite.
GaussPolyWigner random_instance(std::mt19937& rng, int dim, int max_degree) {
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  Eigen::MatrixXd r(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r(i, j) = entry(rng);
  Eigen::MatrixXd a = r * r.transpose() +
                      0.4 * Eigen::MatrixXd::Identity(dim, dim);
  Eigen::VectorXd b(dim);
  for (int i = 0; i < dim; ++i) b(i) = 0.5 * entry(rng);
  MultiPoly poly(dim);
  std::uniform_int_distribution<int> expo(0, max_degree);
  for (int t = 0; t < 4; ++t) {
    MultiPoly::Exponents e(static_cast<std::size_t>(dim), 0);
    int budget = max_degree;
    for (int i = 0; i < dim; ++i) {
      const int k = std::min(budget, expo(rng));
      e[static_cast<std::size_t>(i)] = k;
      budget -= k;
    }
    poly.add_term(e, entry(rng));
  }
  poly.add_term(MultiPoly::Exponents(static_cast<std::size_t>(dim), 0), 1.5);
  return GaussPolyWigner(poly, a, b, entry(rng) - 1.0);
}

/// Box that covers the Gaussian mass: per-axis |mean| + 7.5 sigma.
double oracle_halfwidth(const GaussPolyWigner& w) {
  const Eigen::MatrixXd sigma = w.quad_form().inverse();
  const Eigen::VectorXd mu = sigma * w.linear();
  double h = 0.0;
  for (int i = 0; i < w.dim(); ++i)
    h = std::max(h, std::abs(mu(i)) + 7.5 * std::sqrt(sigma(i, i)));
  return h;
}

phase_space::SymplecticMatrix random_symplectic(std::mt19937& rng) {
  using namespace phase_space;
  std::uniform_real_distribution<double> gain(0.2, 1.8);
  std::uniform_real_distribution<double> sk(-1.5, 1.5);
  const Mode modes[3] = {Mode::L, Mode::M, Mode::A};
  std::vector<SymplecticMatrix> gates;
  for (int t = 0; t < 4; ++t) {
    const Mode a = modes[rng() % 3];
    Mode b = modes[rng() % 3];
    while (b == a) b = modes[rng() % 3];
    switch (rng() % 4) {
      case 0: gates.push_back(qnd_gate(a, b, sk(rng))); break;
      case 1: gates.push_back(joint_qnd_gate(sk(rng))); break;
      case 2: gates.push_back(squeeze_gate(a, gain(rng))); break;
      default: gates.push_back(balanced_bs_gate(a, b)); break;
    }
  }
  return compose(gates);
}

}  // namespace

TEST_CASE("thermal states are normalized and vacuum peaks at 1/pi") {
  const auto vac = GaussPolyWigner::vacuum();
  CHECK(vac.evaluate(0.0, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  CHECK(wigner::total_integral(vac) == doctest::Approx(1.0).epsilon(1e-12));
  const auto hot = GaussPolyWigner::thermal(5.0);
  CHECK(wigner::total_integral(hot) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(GaussPolyWigner::thermal(0.49), ConfigError);
}

TEST_CASE("single photon: negative origin, unit norm, unit purity") {
  const auto sp = GaussPolyWigner::single_photon();
  CHECK(sp.evaluate(0.0, 0.0) == doctest::Approx(-1.0 / kPi).epsilon(1e-12));
  CHECK(wigner::total_integral(sp) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(2.0 * kPi * wigner::overlap(sp, sp) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("overlaps of the elementary states") {
  const auto sp = GaussPolyWigner::single_photon();
  const auto vac = GaussPolyWigner::vacuum();
  CHECK(2.0 * kPi * wigner::overlap(vac, vac) == doctest::Approx(1.0));
  CHECK(std::abs(wigner::overlap(sp, vac)) < 1e-15);  // orthogonal states
  // thermal purity drops as 1/(2V)
  const auto hot = GaussPolyWigner::thermal(5.0);
  CHECK(2.0 * kPi * wigner::overlap(hot, hot) == doctest::Approx(0.1));
}

TEST_CASE("product_embed builds the block-diagonal joint state") {
  using phase_space::Mode;
  const auto sp = GaussPolyWigner::single_photon();
  const auto joint = wigner::product_embed({{sp, Mode::L},
                                            {GaussPolyWigner::vacuum(), Mode::M},
                                            {GaussPolyWigner::thermal(5.0),
                                             Mode::A}});
  CHECK(joint.dim() == 6);
  CHECK(joint.quad_form()(0, 0) == doctest::Approx(2.0));
  CHECK(joint.quad_form()(2, 2) == doctest::Approx(2.0));
  CHECK(joint.quad_form()(4, 4) == doctest::Approx(0.2));
  CHECK(joint.quad_form()(0, 3) == 0.0);
  CHECK(wigner::total_integral(joint) == doctest::Approx(1.0).epsilon(1e-10));
  // three vacua: pure Gaussian with A = 2 I
  const auto vac3 = wigner::product_embed({{GaussPolyWigner::vacuum(), Mode::L},
                                           {GaussPolyWigner::vacuum(), Mode::M},
                                           {GaussPolyWigner::vacuum(), Mode::A}});
  CHECK((vac3.quad_form() - 2.0 * Eigen::MatrixXd::Identity(6, 6))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(vac3.poly().degree() == 0);
  CHECK_THROWS_AS(
      wigner::product_embed({{sp, Mode::L}, {sp, Mode::L}, {sp, Mode::A}}),
      ConfigError);
}

TEST_CASE("substitute_linear: identity, normalization, degree") {
  using phase_space::Mode;
  const auto sp = GaussPolyWigner::single_photon();
  const auto joint = wigner::product_embed({{sp, Mode::L},
                                            {GaussPolyWigner::vacuum(), Mode::M},
                                            {GaussPolyWigner::thermal(2.0),
                                             Mode::A}});
  const auto same =
      wigner::substitute_linear(joint, Eigen::MatrixXd::Identity(6, 6));
  const std::array<double, 6> pt{0.3, -0.2, 0.9, 0.1, -1.4, 0.5};
  CHECK(same.evaluate(pt) == doctest::Approx(joint.evaluate(pt)));

  std::mt19937 rng(7);
  for (int t = 0; t < 25; ++t) {
    const auto s = random_symplectic(rng);
    const auto sub = wigner::substitute_linear(joint, s);
    CHECK(wigner::total_integral(sub) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sub.poly().degree() == joint.poly().degree());
  }
  // same invariance on random degree-4 six-variable instances
  for (int t = 0; t < 15; ++t) {
    const auto w = random_instance(rng, 6, 4);
    const double before = wigner::total_integral(w);
    const double after =
        wigner::total_integral(wigner::substitute_linear(w, random_symplectic(rng)));
    CHECK(after == doctest::Approx(before).epsilon(1e-10));
  }
  CHECK_THROWS_AS(wigner::substitute_linear(joint, Eigen::MatrixXd::Zero(6, 6)),
                  ConfigError);
}

TEST_CASE("marginalizing one factor of a product leaves the other exactly") {
  using phase_space::Mode;
  const auto sp = GaussPolyWigner::single_photon();
  const auto vac = GaussPolyWigner::vacuum();
  const auto joint = wigner::product_embed(
      {{sp, Mode::L}, {vac, Mode::M}, {GaussPolyWigner::thermal(3.0), Mode::A}});
  // integrate out M and A entirely; what is left is the single photon
  const std::array<int, 4> vars{2, 3, 4, 5};
  const auto rest = wigner::marginalize_full(joint, vars);
  CHECK(rest.dim() == 2);
  for (double x : {-1.0, 0.0, 0.7})
    for (double p : {-0.4, 1.2})
      CHECK(rest.evaluate(x, p) ==
            doctest::Approx(sp.evaluate(x, p)).epsilon(1e-12));
}

TEST_CASE("single-photon position density via analytic marginalization") {
  const auto sp = GaussPolyWigner::single_photon();
  const std::array<int, 1> x_var{0};
  const auto density = wigner::marginalize_full(sp, x_var);
  // remaining variable p: density(p) = 2 p^2 exp(-p^2)/sqrt(pi)
  const std::array<double, 1> at{1.0};
  CHECK(density.evaluate(at) ==
        doctest::Approx(2.0 * std::exp(-1.0) / std::sqrt(kPi)).epsilon(1e-12));
  // 1-D trapezoid oracle: the density integrates to one
  const std::array<wigner::GridAxis, 1> axis{{{-8.0, 8.0, 4001}}};
  const double norm = wigner::brute_force_box(
      [&](std::span<const double> pt) { return density.evaluate(pt); }, axis);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("marginal covariance equals the dense Schur-complement oracle") {
  std::mt19937 rng(99);
  for (int t = 0; t < 20; ++t) {
    const auto w = random_instance(rng, 4, 0);
    const std::array<int, 2> u{1, 3};
    const auto marg = wigner::marginalize_full(w, u);
    // dense oracle: keep rows/cols {0,2} of the full covariance and invert
    const Eigen::MatrixXd sigma = w.quad_form().inverse();
    Eigen::Matrix2d sigma_vv;
    sigma_vv << sigma(0, 0), sigma(0, 2), sigma(2, 0), sigma(2, 2);
    const Eigen::Matrix2d expected = sigma_vv.inverse();
    CHECK((marg.quad_form() - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("marginalization preserves the total integral") {
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto w = random_instance(rng, 3, 3);
    const double before = wigner::total_integral(w);
    const std::array<int, 2> u{0, 2};
    const double after =
        wigner::total_integral(wigner::marginalize_full(w, u));
    CHECK(after == doctest::Approx(before).epsilon(1e-10));
  }
}

TEST_CASE("marginalization rejects bad subsets and ill-conditioned blocks") {
  const auto sp = GaussPolyWigner::single_photon();
  CHECK_THROWS_AS(wigner::marginalize_full(sp, std::array<int, 2>{0, 1}),
                  ConfigError);
  CHECK_THROWS_AS(wigner::marginalize_full(sp, std::array<int, 0>{}),
                  ConfigError);
  Eigen::MatrixXd a = Eigen::Vector3d(1e-7, 1.0, 1e6).asDiagonal();
  const GaussPolyWigner skewed(MultiPoly::constant(3, 1.0), a,
                               Eigen::VectorXd::Zero(3), 0.0);
  CHECK_THROWS_AS(wigner::marginalize_full(skewed, std::array<int, 2>{0, 2}),
                  NumericError);
}

TEST_CASE("gauss_legendre nodes integrate polynomials exactly") {
  const auto nodes = wigner::gauss_legendre(-1.0, 1.0, 6);
  double wsum = 0.0, x4 = 0.0;
  for (const auto& [x, w] : nodes) {
    wsum += w;
    x4 += w * x * x * x * x;
  }
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(x4 == doctest::Approx(2.0 / 5.0).epsilon(1e-14));
}

TEST_CASE("window_reduce: weights, constants, and slice evaluation") {
  using phase_space::Mode;
  const auto joint = wigner::product_embed(
      {{GaussPolyWigner::single_photon(), Mode::L},
       {GaussPolyWigner::vacuum(), Mode::M},
       {GaussPolyWigner::thermal(5.0), Mode::A}});
  const double q = 0.8;
  const auto slices = wigner::window_reduce(joint, 2, 3, q, 12);
  double wsum = 0.0;
  for (const auto& node : slices.nodes()) wsum += node.weight;
  CHECK(wsum == doctest::Approx(4.0 * q * q).epsilon(1e-10));
  CHECK(slices.slice_dim() == 4);
  CHECK(slices.nodes().size() == 144);

  // weighted slice sum at a point equals the windowed partial integral;
  // for the product state it factorizes through mode M's window mass
  const std::array<double, 4> rest{0.4, -0.1, 0.6, -0.3};
  const double lhs = slices.weighted_evaluate(rest);
  // W_L(x_L,p_L) * W_A(x_A,p_A) * integral of vacuum over the window
  const auto vac = GaussPolyWigner::vacuum();
  const auto window_nodes = wigner::gauss_legendre(-q, q, 32);
  double vac_mass = 0.0;
  for (const auto& [x, wx] : window_nodes)
    for (const auto& [p, wp] : window_nodes)
      vac_mass += wx * wp * vac.evaluate(x, p);
  const double rhs = GaussPolyWigner::single_photon().evaluate(0.4, -0.1) *
                     GaussPolyWigner::thermal(5.0).evaluate(0.6, -0.3) *
                     vac_mass;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  CHECK_THROWS_AS(wigner::window_reduce(joint, 2, 2, q, 12), ConfigError);
  CHECK_THROWS_AS(wigner::window_reduce(joint, 2, 3, -1.0, 12), ConfigError);
  CHECK_THROWS_AS(
      wigner::window_reduce(GaussPolyWigner::vacuum(), 0, 1, q, 12),
      ConfigError);
}

TEST_CASE("analytic totals match the trapezoid oracle on random instances") {
  std::mt19937 rng(2025);
  for (int t = 0; t < 12; ++t) {
    const int dim = 2 + static_cast<int>(rng() % 2);
    const auto w = random_instance(rng, dim, 4);
    const double analytic = wigner::total_integral(w);
    const double h = oracle_halfwidth(w);
    const int n = dim == 2 ? 321 : 161;
    const double brute = wigner::brute_force_integral(w, h, n, par::Exec::omp);
    CHECK(brute ==
          doctest::Approx(analytic).epsilon(1e-6).scale(std::abs(analytic) +
                                                        1e-6));
  }
}

TEST_CASE("brute-force oracle self-checks on normalized states") {
  CHECK(wigner::brute_force_integral(GaussPolyWigner::vacuum(), 6.0, 201) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(wigner::brute_force_integral(GaussPolyWigner::single_photon(), 6.0,
                                     201) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("thermal states stay positive, single photon dips to -1/pi") {
  const auto hot = GaussPolyWigner::thermal(1.5);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> pt(-5.0, 5.0);
  for (int t = 0; t < 200; ++t)
    CHECK(hot.evaluate(pt(rng), pt(rng)) >= 0.0);

  const auto sp = GaussPolyWigner::single_photon();
  const auto [minval, argmin] = metrics::minimize_on_plane(
      [&](double x, double p) { return sp.evaluate(x, p); }, {});
  CHECK(minval == doctest::Approx(-1.0 / kPi).epsilon(1e-9));
  CHECK(std::abs(argmin[0]) < 1e-4);
  CHECK(std::abs(argmin[1]) < 1e-4);
}

TEST_CASE("quadratic form validation") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 0.5, -0.5, 1.0;  // not symmetric
  CHECK_THROWS_AS(GaussPolyWigner(MultiPoly::constant(2, 1.0), bad,
                                  Eigen::VectorXd::Zero(2), 0.0),
                  ConfigError);
  Eigen::MatrixXd indef(2, 2);
  indef << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(GaussPolyWigner(MultiPoly::constant(2, 1.0), indef,
                                  Eigen::VectorXd::Zero(2), 0.0),
                  NumericError);
}
