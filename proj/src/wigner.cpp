#include "qndi/wigner.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "qndi/errors.hpp"

namespace qndi::wigner {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int n, int k) {
  double acc = 1.0;
  for (int i = 1; i <= k; ++i)
    acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
  return acc;
}

/// Central and raw moments of a Gaussian vector with covariance sigma.
/// All central moments up to the requested total degree are tabulated at
/// construction (Stein recursion), so lookups afterwards are const and safe
/// to share across threads.
class GaussianMoments {
 public:
  GaussianMoments(Eigen::MatrixXd sigma, int max_total_degree)
      : sigma_(std::move(sigma)) {
    const int d = static_cast<int>(sigma_.rows());
    std::vector<int> k(static_cast<std::size_t>(d), 0);
    tabulate(k, 0, max_total_degree);
  }

  double central(const std::vector<int>& k) const {
    auto it = memo_.find(k);
    if (it == memo_.end())
      throw NumericError("Gaussian moment outside tabulated degree");
    return it->second;
  }

  /// E[prod_i (mean_i + delta_i)^{alpha_i}]
  double raw(const std::vector<int>& alpha, const Eigen::VectorXd& mean) const {
    const int d = static_cast<int>(alpha.size());
    std::vector<int> k(alpha.size(), 0);
    double acc = 0.0;
    while (true) {
      double term = central(k);
      if (term != 0.0) {
        for (int i = 0; i < d; ++i) {
          const auto ui = static_cast<std::size_t>(i);
          term *= binomial(alpha[ui], k[ui]);
          for (int j = 0; j < alpha[ui] - k[ui]; ++j) term *= mean(i);
        }
        acc += term;
      }
      int pos = 0;
      while (pos < d && k[static_cast<std::size_t>(pos)] ==
                            alpha[static_cast<std::size_t>(pos)]) {
        k[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == d) break;
      ++k[static_cast<std::size_t>(pos)];
    }
    return acc;
  }

 private:
  void tabulate(std::vector<int>& k, int var, int remaining) {
    if (var == static_cast<int>(k.size())) {
      compute(k);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      k[static_cast<std::size_t>(var)] = v;
      tabulate(k, var + 1, remaining - v);
    }
    k[static_cast<std::size_t>(var)] = 0;
  }

  double compute(const std::vector<int>& k) {
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    const int d = static_cast<int>(k.size());
    const int total = std::accumulate(k.begin(), k.end(), 0);
    double val = 0.0;
    if (total == 0) {
      val = 1.0;
    } else if (total % 2 == 0) {
      int i = 0;
      while (k[static_cast<std::size_t>(i)] == 0) ++i;
      std::vector<int> rest = k;
      --rest[static_cast<std::size_t>(i)];
      for (int j = 0; j < d; ++j) {
        const int mult = rest[static_cast<std::size_t>(j)];
        if (mult == 0) continue;
        std::vector<int> next = rest;
        --next[static_cast<std::size_t>(j)];
        val += static_cast<double>(mult) * sigma_(i, j) * compute(next);
      }
    }
    memo_[k] = val;
    return val;
  }

  Eigen::MatrixXd sigma_;
  std::map<std::vector<int>, double> memo_;
};

struct GaussFactor {
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::MatrixXd sigma;
  double half_logdet = 0.0;
};

GaussFactor factor_quad_form(const Eigen::MatrixXd& a) {
  GaussFactor f;
  f.llt.compute(a);
  if (f.llt.info() != Eigen::Success)
    throw NumericError("quadratic form is not positive definite");
  const auto& l = f.llt.matrixLLT();
  for (int i = 0; i < a.rows(); ++i) f.half_logdet += std::log(l(i, i));
  f.sigma = f.llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.rows()));
  return f;
}

/// integral of P(xi) exp(-1/2 xi^T A xi + b.xi + c) using a prefactored A.
double integral_with_factor(const GaussFactor& f, const GaussianMoments& mom,
                            const MultiPoly& poly, const Eigen::VectorXd& b,
                            double c) {
  if (poly.is_zero()) return 0.0;
  const int d = static_cast<int>(b.size());
  const Eigen::VectorXd mu = f.llt.solve(b);
  const double log_z = c + 0.5 * b.dot(mu) +
                       0.5 * static_cast<double>(d) * std::log(2.0 * kPi) -
                       f.half_logdet;
  double expectation = 0.0;
  for (const auto& [e, coeff] : poly.terms())
    expectation += coeff * mom.raw(e, mu);
  return std::exp(log_z) * expectation;
}

void check_subset(int dim, std::span<const int> vars, std::vector<int>& sorted) {
  sorted.assign(vars.begin(), vars.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty()) throw ConfigError("variable subset must be non-empty");
  if (sorted.front() < 0 || sorted.back() >= dim)
    throw ConfigError("variable index out of range");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ConfigError("variable subset has duplicates");
}

}  // namespace

GaussPolyWigner::GaussPolyWigner(MultiPoly poly, Eigen::MatrixXd quad_form,
                                 Eigen::VectorXd linear, double log_scale,
                                 int degree_cap)
    : poly_(std::move(poly)),
      quad_form_(std::move(quad_form)),
      linear_(std::move(linear)),
      log_scale_(log_scale),
      degree_cap_(degree_cap) {
  const auto d = quad_form_.rows();
  if (quad_form_.cols() != d || linear_.size() != d || poly_.dim() != d)
    throw ConfigError("GaussPolyWigner: inconsistent dimensions");
  const double asym = (quad_form_ - quad_form_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12)
    throw ConfigError("GaussPolyWigner: quadratic form is not symmetric");
  quad_form_ = ((quad_form_ + quad_form_.transpose()) / 2.0).eval();
  Eigen::LLT<Eigen::MatrixXd> llt(quad_form_);
  if (llt.info() != Eigen::Success)
    throw NumericError("GaussPolyWigner: quadratic form not positive definite");
  if (poly_.degree() > degree_cap_)
    throw NumericError("GaussPolyWigner: polynomial degree exceeds cap");
}

GaussPolyWigner GaussPolyWigner::thermal(double variance) {
  if (!(variance >= 0.5))
    throw ConfigError(
        "thermal: sub-vacuum variance (V must be >= 1/2 in this convention)");
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2) / variance;
  return GaussPolyWigner(MultiPoly::constant(2, 1.0), a,
                         Eigen::VectorXd::Zero(2),
                         -std::log(2.0 * kPi * variance));
}

GaussPolyWigner GaussPolyWigner::single_photon() {
  MultiPoly p(2);
  p.add_term({2, 0}, 2.0);
  p.add_term({0, 2}, 2.0);
  p.add_term({0, 0}, -1.0);
  Eigen::MatrixXd a = 2.0 * Eigen::MatrixXd::Identity(2, 2);
  return GaussPolyWigner(p, a, Eigen::VectorXd::Zero(2), -std::log(kPi));
}

double GaussPolyWigner::evaluate(std::span<const double> point) const {
  const int d = dim();
  if (static_cast<int>(point.size()) != d)
    throw ConfigError("GaussPolyWigner::evaluate: dimension mismatch");
  double s = log_scale_;
  for (int i = 0; i < d; ++i) {
    double row = 0.0;
    for (int j = 0; j < d; ++j)
      row += quad_form_(i, j) * point[static_cast<std::size_t>(j)];
    s += (linear_(i) - 0.5 * row) * point[static_cast<std::size_t>(i)];
  }
  return poly_.evaluate(point) * std::exp(s);
}

GaussPolyWigner product_embed(const std::vector<ModeState>& states) {
  if (states.size() != 3)
    throw ConfigError("product_embed: exactly three single-mode states");
  std::array<const GaussPolyWigner*, 3> by_mode{nullptr, nullptr, nullptr};
  for (const auto& ms : states) {
    if (ms.state.dim() != 2)
      throw ConfigError("product_embed: each factor must be single-mode");
    auto& slot = by_mode[static_cast<std::size_t>(ms.mode)];
    if (slot != nullptr)
      throw ConfigError("product_embed: mode assigned twice");
    slot = &ms.state;
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(6, 6);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(6);
  double c = 0.0;
  int cap = 0;
  MultiPoly poly = MultiPoly::constant(6, 1.0);
  for (int m = 0; m < 3; ++m) {
    const auto& w = *by_mode[static_cast<std::size_t>(m)];
    a.block<2, 2>(2 * m, 2 * m) = w.quad_form();
    b.segment<2>(2 * m) = w.linear();
    c += w.log_scale();
    cap = std::max(cap, w.degree_cap());
    MultiPoly embedded(6);
    for (const auto& [e, coeff] : w.poly().terms()) {
      MultiPoly::Exponents e6(6, 0);
      e6[static_cast<std::size_t>(2 * m)] = e[0];
      e6[static_cast<std::size_t>(2 * m + 1)] = e[1];
      embedded.add_term(e6, coeff);
    }
    poly = poly.multiply(embedded, cap);
  }
  return GaussPolyWigner(std::move(poly), std::move(a), std::move(b), c, cap);
}

GaussPolyWigner substitute_linear(const GaussPolyWigner& w,
                                  const Eigen::MatrixXd& t) {
  const int d = w.dim();
  if (t.rows() != d || t.cols() != d)
    throw ConfigError("substitute_linear: matrix shape mismatch");
  const double det = t.determinant();
  if (!(std::abs(det) > 1e-12))
    throw ConfigError("substitute_linear: singular substitution matrix");
  Eigen::MatrixXd a = t.transpose() * w.quad_form() * t;
  Eigen::VectorXd b = t.transpose() * w.linear();
  return GaussPolyWigner(w.poly().substitute_linear(t), std::move(a),
                         std::move(b), w.log_scale(), w.degree_cap());
}

GaussPolyWigner substitute_linear(const GaussPolyWigner& w,
                                  const phase_space::SymplecticMatrix& t) {
  return substitute_linear(w, Eigen::MatrixXd(t.matrix()));
}

GaussPolyWigner marginalize_full(const GaussPolyWigner& w,
                                 std::span<const int> vars) {
  const int d = w.dim();
  std::vector<int> u;
  check_subset(d, vars, u);
  if (static_cast<int>(u.size()) == d)
    throw ConfigError("marginalize_full: must keep at least one variable");
  std::vector<int> v;
  for (int i = 0; i < d; ++i)
    if (!std::binary_search(u.begin(), u.end(), i)) v.push_back(i);
  const int nu = static_cast<int>(u.size());
  const int nv = static_cast<int>(v.size());

  Eigen::MatrixXd a_uu(nu, nu), a_uv(nu, nv), a_vv(nv, nv);
  Eigen::VectorXd b_u(nu), b_v(nv);
  for (int i = 0; i < nu; ++i) {
    b_u(i) = w.linear()(u[static_cast<std::size_t>(i)]);
    for (int j = 0; j < nu; ++j)
      a_uu(i, j) = w.quad_form()(u[static_cast<std::size_t>(i)],
                                 u[static_cast<std::size_t>(j)]);
    for (int j = 0; j < nv; ++j)
      a_uv(i, j) = w.quad_form()(u[static_cast<std::size_t>(i)],
                                 v[static_cast<std::size_t>(j)]);
  }
  for (int i = 0; i < nv; ++i) {
    b_v(i) = w.linear()(v[static_cast<std::size_t>(i)]);
    for (int j = 0; j < nv; ++j)
      a_vv(i, j) = w.quad_form()(v[static_cast<std::size_t>(i)],
                                 v[static_cast<std::size_t>(j)]);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a_uu);
  if (es.info() != Eigen::Success)
    throw NumericError("marginalize_full: eigen decomposition failed");
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0))
    throw NumericError("marginalize_full: integrated block not positive definite");
  if (hi / lo > kConditionLimit)
    throw NumericError(
        "marginalize_full: integrated block ill-conditioned (condition "
        "number " +
        std::to_string(hi / lo) + ")");
  const Eigen::MatrixXd sigma_u = es.eigenvectors() *
                                  es.eigenvalues().cwiseInverse().asDiagonal() *
                                  es.eigenvectors().transpose();
  double logdet = 0.0;
  for (int i = 0; i < nu; ++i) logdet += std::log(es.eigenvalues()(i));

  Eigen::MatrixXd a_new = a_vv - a_uv.transpose() * sigma_u * a_uv;
  a_new = ((a_new + a_new.transpose()) / 2.0).eval();
  Eigen::VectorXd b_new = b_v - a_uv.transpose() * sigma_u * b_u;
  const double c_new = w.log_scale() + 0.5 * b_u.dot(sigma_u * b_u) +
                       0.5 * static_cast<double>(nu) * std::log(2.0 * kPi) -
                       0.5 * logdet;

  // Conditional mean of the integrated block, affine in the kept variables:
  // m(v) = sigma_u b_u - sigma_u A_uv v.
  const Eigen::VectorXd m0 = sigma_u * b_u;
  const Eigen::MatrixXd mv = -sigma_u * a_uv;
  std::vector<std::vector<MultiPoly>> mean_powers(static_cast<std::size_t>(nu));
  auto mean_power = [&](int i, int n) -> const MultiPoly& {
    auto& cache = mean_powers[static_cast<std::size_t>(i)];
    if (cache.empty()) cache.push_back(MultiPoly::constant(nv, 1.0));
    while (static_cast<int>(cache.size()) <= n) {
      MultiPoly lin = MultiPoly::affine(mv.row(i).transpose(), m0(i));
      cache.push_back(cache.back().multiply(lin, w.degree_cap()));
    }
    return cache[static_cast<std::size_t>(n)];
  };

  GaussianMoments mom(sigma_u, w.poly().degree());
  MultiPoly poly_new(nv);
  std::vector<int> alpha(static_cast<std::size_t>(nu));
  MultiPoly::Exponents beta(static_cast<std::size_t>(nv));
  std::vector<int> k(static_cast<std::size_t>(nu));
  for (const auto& [e, coeff] : w.poly().terms()) {
    for (int i = 0; i < nu; ++i)
      alpha[static_cast<std::size_t>(i)] =
          e[static_cast<std::size_t>(u[static_cast<std::size_t>(i)])];
    for (int j = 0; j < nv; ++j)
      beta[static_cast<std::size_t>(j)] =
          e[static_cast<std::size_t>(v[static_cast<std::size_t>(j)])];
    // E[u^alpha | v] = sum_{k<=alpha} prod C(alpha_i,k_i) CM(k) m(v)^(alpha-k)
    std::fill(k.begin(), k.end(), 0);
    MultiPoly expect(nv);
    while (true) {
      const double cm = mom.central(k);
      if (cm != 0.0) {
        double factor = cm;
        MultiPoly mono = MultiPoly::constant(nv, 1.0);
        for (int i = 0; i < nu; ++i) {
          const auto ui = static_cast<std::size_t>(i);
          factor *= binomial(alpha[ui], k[ui]);
          if (alpha[ui] - k[ui] > 0)
            mono = mono.multiply(mean_power(i, alpha[ui] - k[ui]),
                                 w.degree_cap());
        }
        expect += mono * factor;
      }
      int pos = 0;
      while (pos < nu && k[static_cast<std::size_t>(pos)] ==
                             alpha[static_cast<std::size_t>(pos)]) {
        k[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == nu) break;
      ++k[static_cast<std::size_t>(pos)];
    }
    MultiPoly beta_mono(nv);
    beta_mono.add_term(beta, coeff);
    poly_new += beta_mono.multiply(expect, w.degree_cap());
  }

  return GaussPolyWigner(std::move(poly_new), std::move(a_new),
                         std::move(b_new), c_new, w.degree_cap());
}

double total_integral(const GaussPolyWigner& w) {
  const GaussFactor f = factor_quad_form(w.quad_form());
  const GaussianMoments mom(f.sigma, w.poly().degree());
  return integral_with_factor(f, mom, w.poly(), w.linear(), w.log_scale());
}

GaussPolyWigner product(const GaussPolyWigner& a, const GaussPolyWigner& b) {
  if (a.dim() != b.dim()) throw ConfigError("product: dimension mismatch");
  const int cap = std::max(a.degree_cap(), b.degree_cap());
  return GaussPolyWigner(a.poly().multiply(b.poly(), cap),
                         a.quad_form() + b.quad_form(),
                         a.linear() + b.linear(),
                         a.log_scale() + b.log_scale(), cap);
}

double overlap(const GaussPolyWigner& a, const GaussPolyWigner& b) {
  return total_integral(product(a, b));
}

std::vector<std::pair<double, double>> gauss_legendre(double a, double b,
                                                      int order) {
  if (order < 1) throw ConfigError("gauss_legendre: order must be positive");
  gsl_integration_glfixed_table* table =
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order));
  if (table == nullptr)
    throw NumericError("gauss_legendre: table allocation failed");
  std::vector<std::pair<double, double>> nodes;
  nodes.reserve(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    double x = 0.0, w = 0.0;
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &x, &w,
                                  table);
    nodes.emplace_back(x, w);
  }
  gsl_integration_glfixed_table_free(table);
  return nodes;
}

WindowSlices::WindowSlices(std::array<int, 2> vars, double q, int order,
                           std::vector<Node> nodes)
    : vars_(vars), q_(q), order_(order), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ConfigError("WindowSlices: no nodes");
  slice_dim_ = nodes_.front().state.dim();
  shared_quad_ = nodes_.front().state.quad_form();
  const std::size_t n = nodes_.size();
  weight_.resize(n);
  log_scale_.resize(n);
  lin_.resize(n);
  terms_.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& node = nodes_[s];
    weight_[s] = node.weight;
    log_scale_[s] = node.state.log_scale();
    lin_[s] = node.state.linear();
    for (const auto& [e, c] : node.state.poly().terms()) {
      FlatTerm t{};
      for (int i = 0; i < slice_dim_; ++i)
        t.expo[static_cast<std::size_t>(i)] =
            static_cast<std::int8_t>(e[static_cast<std::size_t>(i)]);
      t.coeff = c;
      terms_[s].push_back(t);
    }
  }
}

double WindowSlices::weighted_total(par::Exec exec) const {
  const GaussFactor f = factor_quad_form(shared_quad_);
  int max_degree = 0;
  for (const auto& node : nodes_)
    max_degree = std::max(max_degree, node.state.poly().degree());
  const GaussianMoments mom(f.sigma, max_degree);
  return par::sum(
      static_cast<std::int64_t>(nodes_.size()),
      [&](std::int64_t s) {
        const auto& node = nodes_[static_cast<std::size_t>(s)];
        return node.weight * integral_with_factor(f, mom, node.state.poly(),
                                                  node.state.linear(),
                                                  node.state.log_scale());
      },
      exec);
}

double WindowSlices::weighted_evaluate(std::span<const double> point) const {
  const int d = slice_dim_;
  if (static_cast<int>(point.size()) != d)
    throw ConfigError("WindowSlices::weighted_evaluate: dimension mismatch");
  double quad = 0.0;
  for (int i = 0; i < d; ++i) {
    double row = 0.0;
    for (int j = 0; j < d; ++j)
      row += shared_quad_(i, j) * point[static_cast<std::size_t>(j)];
    quad += row * point[static_cast<std::size_t>(i)];
  }
  const double common = -0.5 * quad;
  double acc = 0.0;
  for (std::size_t s = 0; s < nodes_.size(); ++s) {
    double arg = common + log_scale_[s];
    const auto& b = lin_[s];
    for (int i = 0; i < d; ++i)
      arg += b(i) * point[static_cast<std::size_t>(i)];
    double p = 0.0;
    for (const auto& t : terms_[s]) {
      double term = t.coeff;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < t.expo[static_cast<std::size_t>(i)]; ++j)
          term *= point[static_cast<std::size_t>(i)];
      p += term;
    }
    acc += weight_[s] * p * std::exp(arg);
  }
  return acc;
}

void WindowSlices::evaluate_grid(std::span<const double> flat_points,
                                 std::span<double> out, par::Exec exec) const {
  const int d = slice_dim_;
  const std::int64_t npts = static_cast<std::int64_t>(out.size());
  if (flat_points.size() != out.size() * static_cast<std::size_t>(d))
    throw ConfigError("WindowSlices::evaluate_grid: size mismatch");
  par::for_index(
      npts,
      [&](std::int64_t i) {
        out[static_cast<std::size_t>(i)] = weighted_evaluate(
            flat_points.subspan(static_cast<std::size_t>(i * d),
                                static_cast<std::size_t>(d)));
      },
      exec);
}

WindowSlices window_reduce(const GaussPolyWigner& w, int var_a, int var_b,
                           double q, int order) {
  if (!(q > 0.0)) throw ConfigError("window_reduce: Q must be positive");
  if (order < 2) throw ConfigError("window_reduce: order must be >= 2");
  if (var_a == var_b) throw ConfigError("window_reduce: variables must differ");
  const int d = w.dim();
  if (var_a < 0 || var_b < 0 || var_a >= d || var_b >= d)
    throw ConfigError("window_reduce: variable index out of range");
  if (d < 3)
    throw ConfigError("window_reduce: need at least one remaining variable");

  std::array<int, 2> u{std::min(var_a, var_b), std::max(var_a, var_b)};
  std::vector<int> v;
  for (int i = 0; i < d; ++i)
    if (i != u[0] && i != u[1]) v.push_back(i);
  const int nv = static_cast<int>(v.size());

  Eigen::Matrix2d a_uu;
  Eigen::MatrixXd a_uv(2, nv), a_vv(nv, nv);
  Eigen::Vector2d b_u;
  Eigen::VectorXd b_v(nv);
  for (int i = 0; i < 2; ++i) {
    b_u(i) = w.linear()(u[static_cast<std::size_t>(i)]);
    for (int j = 0; j < 2; ++j)
      a_uu(i, j) = w.quad_form()(u[static_cast<std::size_t>(i)],
                                 u[static_cast<std::size_t>(j)]);
    for (int j = 0; j < nv; ++j)
      a_uv(i, j) = w.quad_form()(u[static_cast<std::size_t>(i)],
                                 v[static_cast<std::size_t>(j)]);
  }
  for (int i = 0; i < nv; ++i) {
    b_v(i) = w.linear()(v[static_cast<std::size_t>(i)]);
    for (int j = 0; j < nv; ++j)
      a_vv(i, j) = w.quad_form()(v[static_cast<std::size_t>(i)],
                                 v[static_cast<std::size_t>(j)]);
  }

  const auto nodes_1d = gauss_legendre(-q, q, order);
  std::vector<WindowSlices::Node> nodes;
  nodes.reserve(nodes_1d.size() * nodes_1d.size());
  for (const auto& [xa, wa] : nodes_1d) {
    for (const auto& [xb, wb] : nodes_1d) {
      const Eigen::Vector2d t(xa, xb);
      Eigen::VectorXd b_slice = b_v - a_uv.transpose() * t;
      const double c_slice =
          w.log_scale() + b_u.dot(t) - 0.5 * t.dot(a_uu * t);
      const std::array<double, 2> fixed{xa, xb};
      MultiPoly p_slice = w.poly().partial_evaluate(
          std::span<const int>(u.data(), 2),
          std::span<const double>(fixed.data(), 2));
      nodes.push_back(WindowSlices::Node{
          wa * wb, fixed,
          GaussPolyWigner(std::move(p_slice), a_vv, std::move(b_slice),
                          c_slice, w.degree_cap())});
    }
  }
  return WindowSlices(u, q, order, std::move(nodes));
}

double brute_force_integral(const GaussPolyWigner& w, double box_halfwidth,
                            int grid_n, par::Exec exec) {
  if (!(box_halfwidth > 0.0) || grid_n < 2)
    throw ConfigError("brute_force_integral: bad grid");
  std::vector<GridAxis> axes(static_cast<std::size_t>(w.dim()),
                             GridAxis{-box_halfwidth, box_halfwidth, grid_n});
  return brute_force_box(
      [&](std::span<const double> pt) { return w.evaluate(pt); }, axes, exec);
}

}  // namespace qndi::wigner
