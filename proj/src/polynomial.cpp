#include "qndi/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qndi/errors.hpp"

namespace qndi::wigner {

MultiPoly::MultiPoly(int dim) : dim_(dim) {
  if (dim < 0) throw ConfigError("MultiPoly: dimension must be non-negative");
}

MultiPoly MultiPoly::constant(int dim, double value) {
  MultiPoly p(dim);
  p.add_term(Exponents(static_cast<std::size_t>(dim), 0), value);
  return p;
}

MultiPoly MultiPoly::variable(int dim, int index) {
  if (index < 0 || index >= dim)
    throw ConfigError("MultiPoly::variable: index out of range");
  MultiPoly p(dim);
  Exponents e(static_cast<std::size_t>(dim), 0);
  e[static_cast<std::size_t>(index)] = 1;
  p.add_term(e, 1.0);
  return p;
}

MultiPoly MultiPoly::affine(const Eigen::VectorXd& coeffs, double constant) {
  const int dim = static_cast<int>(coeffs.size());
  MultiPoly p(dim);
  p.add_term(Exponents(static_cast<std::size_t>(dim), 0), constant);
  for (int i = 0; i < dim; ++i) {
    Exponents e(static_cast<std::size_t>(dim), 0);
    e[static_cast<std::size_t>(i)] = 1;
    p.add_term(e, coeffs(i));
  }
  return p;
}

int MultiPoly::degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_)
    deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

double MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

void MultiPoly::add_term(const Exponents& e, double coeff) {
  if (static_cast<int>(e.size()) != dim_)
    throw ConfigError("MultiPoly::add_term: exponent length mismatch");
  auto [it, inserted] = terms_.try_emplace(e, coeff);
  if (!inserted) it->second += coeff;
  if (it->second == 0.0) terms_.erase(it);
}

double MultiPoly::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dim_)
    throw ConfigError("MultiPoly::evaluate: point dimension mismatch");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (int i = 0; i < dim_; ++i) {
      const int k = e[static_cast<std::size_t>(i)];
      for (int j = 0; j < k; ++j) term *= point[static_cast<std::size_t>(i)];
    }
    acc += term;
  }
  return acc;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  if (rhs.dim_ != dim_) throw ConfigError("MultiPoly: dimension mismatch");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

MultiPoly MultiPoly::operator+(const MultiPoly& rhs) const {
  MultiPoly out = *this;
  out += rhs;
  return out;
}

MultiPoly MultiPoly::operator*(double s) const {
  MultiPoly out = *this;
  out *= s;
  return out;
}

MultiPoly MultiPoly::multiply(const MultiPoly& rhs, int max_degree) const {
  if (rhs.dim_ != dim_) throw ConfigError("MultiPoly: dimension mismatch");
  if (max_degree >= 0 && !is_zero() && !rhs.is_zero() &&
      degree() + rhs.degree() > max_degree)
    throw NumericError("polynomial degree cap exceeded in product");
  MultiPoly out(dim_);
  Exponents e(static_cast<std::size_t>(dim_), 0);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (int i = 0; i < dim_; ++i)
        e[static_cast<std::size_t>(i)] = ea[static_cast<std::size_t>(i)] +
                                         eb[static_cast<std::size_t>(i)];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly MultiPoly::pow(int n, int max_degree) const {
  if (n < 0) throw ConfigError("MultiPoly::pow: negative exponent");
  MultiPoly out = constant(dim_, 1.0);
  for (int i = 0; i < n; ++i) out = out.multiply(*this, max_degree);
  return out;
}

MultiPoly MultiPoly::substitute_linear(const Eigen::MatrixXd& t) const {
  if (static_cast<int>(t.rows()) != dim_)
    throw ConfigError("MultiPoly::substitute_linear: row count mismatch");
  const int new_dim = static_cast<int>(t.cols());
  // Per-variable replacement polynomials and their powers, built on demand.
  std::vector<std::vector<MultiPoly>> powers(static_cast<std::size_t>(dim_));
  auto power_of = [&](int var, int n) -> const MultiPoly& {
    auto& cache = powers[static_cast<std::size_t>(var)];
    if (cache.empty()) cache.push_back(MultiPoly::constant(new_dim, 1.0));
    while (static_cast<int>(cache.size()) <= n) {
      MultiPoly lin = MultiPoly::affine(t.row(var).transpose(), 0.0);
      cache.push_back(cache.back().multiply(lin));
    }
    return cache[static_cast<std::size_t>(n)];
  };
  MultiPoly out(new_dim);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(new_dim, c);
    for (int i = 0; i < dim_; ++i) {
      const int k = e[static_cast<std::size_t>(i)];
      if (k > 0) term = term.multiply(power_of(i, k));
    }
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::partial_evaluate(std::span<const int> vars,
                                      std::span<const double> values) const {
  if (vars.size() != values.size())
    throw ConfigError("MultiPoly::partial_evaluate: size mismatch");
  std::vector<int> remap(static_cast<std::size_t>(dim_), -1);
  std::vector<double> fixed(static_cast<std::size_t>(dim_), 0.0);
  std::vector<bool> is_fixed(static_cast<std::size_t>(dim_), false);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const int v = vars[i];
    if (v < 0 || v >= dim_ || is_fixed[static_cast<std::size_t>(v)])
      throw ConfigError("MultiPoly::partial_evaluate: bad variable list");
    is_fixed[static_cast<std::size_t>(v)] = true;
    fixed[static_cast<std::size_t>(v)] = values[i];
  }
  int new_dim = 0;
  for (int i = 0; i < dim_; ++i)
    if (!is_fixed[static_cast<std::size_t>(i)]) remap[static_cast<std::size_t>(i)] = new_dim++;
  MultiPoly out(new_dim);
  Exponents e_out(static_cast<std::size_t>(new_dim), 0);
  for (const auto& [e, c] : terms_) {
    double coeff = c;
    std::fill(e_out.begin(), e_out.end(), 0);
    for (int i = 0; i < dim_; ++i) {
      const int k = e[static_cast<std::size_t>(i)];
      if (k == 0) continue;
      if (is_fixed[static_cast<std::size_t>(i)]) {
        for (int j = 0; j < k; ++j) coeff *= fixed[static_cast<std::size_t>(i)];
      } else {
        e_out[static_cast<std::size_t>(remap[static_cast<std::size_t>(i)])] = k;
      }
    }
    out.add_term(e_out, coeff);
  }
  return out;
}

}  // namespace qndi::wigner
