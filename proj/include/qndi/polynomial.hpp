#pragma once

#include <Eigen/Dense>

#include <map>
#include <span>
#include <vector>

namespace qndi::wigner {

/// Sparse real polynomial in a fixed number of variables. Exponent vectors
/// always have length dim(); terms with exactly zero coefficient are dropped.
class MultiPoly {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, double>;

  explicit MultiPoly(int dim);

  static MultiPoly constant(int dim, double value);
  static MultiPoly variable(int dim, int index);
  /// coeffs . xi + constant
  static MultiPoly affine(const Eigen::VectorXd& coeffs, double constant);

  int dim() const { return dim_; }
  int degree() const;
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, double coeff);

  double evaluate(std::span<const double> point) const;

  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator*=(double s);
  MultiPoly operator+(const MultiPoly& rhs) const;
  MultiPoly operator*(double s) const;

  /// Product, with an optional cap on the total degree of the result.
  /// Exceeding the cap throws NumericError before any work is done.
  MultiPoly multiply(const MultiPoly& rhs, int max_degree = -1) const;

  MultiPoly pow(int n, int max_degree = -1) const;

  /// P(T xi): substitute variable i by row i of T acting on the new
  /// variables. T has dim() rows; its column count sets the new dimension.
  MultiPoly substitute_linear(const Eigen::MatrixXd& t) const;

  /// Fix the variables listed in `vars` (ascending, with matching `values`)
  /// and re-index the remaining ones in their original relative order.
  MultiPoly partial_evaluate(std::span<const int> vars,
                             std::span<const double> values) const;

 private:
  int dim_;
  TermMap terms_;
};

}  // namespace qndi::wigner
