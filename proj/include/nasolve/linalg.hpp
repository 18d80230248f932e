#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nasolve {

using Vector = std::vector<double>;

/// Base for every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pivot collapsed during elimination: the iterate reached the singular set.
class SingularMatrix : public Error {
 public:
  SingularMatrix(std::size_t pivot_row, double pivot);
  std::size_t row() const noexcept { return row_; }
  double pivot() const noexcept { return pivot_; }

 private:
  std::size_t row_;
  double pivot_;
};

/// Two consecutive steps coincide, so the mixing coefficient is undefined.
class DegenerateSteps : public Error {
 public:
  using Error::Error;
};

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Upper bidiagonal matrix whose last row holds a single (n,n) corner entry.
///
/// Rows 0..n-2 carry `diag[i]` at (i,i) and `super[i]` at (i,i+1); row n-1
/// carries only `corner` at (n-1,n-1). Both arrays have length n-1.
struct UpperTriangularPlus {
  Vector diag;
  Vector super;
  double corner = 0.0;

  std::size_t dim() const noexcept { return diag.size() + 1; }
};

/// Matrix-free Jacobian: an action x -> Jx and a solve b -> J^{-1}b.
struct LinearOperator {
  std::size_t dim = 0;
  std::function<Vector(std::span<const double>)> apply;
  std::function<Vector(std::span<const double>)> solve;
};

using JacobianMatrix = std::variant<DenseMatrix, UpperTriangularPlus, LinearOperator>;

std::size_t dimension(const JacobianMatrix& jac);

/// y = J x
Vector multiply(const JacobianMatrix& jac, std::span<const double> x);

/// y = J^T x. Not available for LinearOperator.
Vector multiply_transpose(const JacobianMatrix& jac, std::span<const double> x);

/// Solves J x = b with the representation's native solver.
Vector solve(const JacobianMatrix& jac, std::span<const double> b);

/// Dense copy of a Dense or UpperTriangularPlus Jacobian.
DenseMatrix densify(const JacobianMatrix& jac);

/// LU factorization with partial (row) pivoting.
class LuFactorization {
 public:
  /// Throws SingularMatrix when a pivot falls below eps * max|A|.
  explicit LuFactorization(DenseMatrix a);

  Vector solve(std::span<const double> b) const;
  /// Solves A^T x = b with the same factors.
  Vector solve_transpose(std::span<const double> b) const;

  std::size_t dim() const noexcept { return lu_.rows(); }

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

Vector lu_solve(const DenseMatrix& a, std::span<const double> b);

/// O(n) back substitution for the upper bidiagonal-plus-corner structure.
/// Throws SingularMatrix on a zero pivot or a non-finite solution entry.
Vector structured_solve(const UpperTriangularPlus& a, std::span<const double> b);

/// Solves (J^T J + mu I) x = rhs. Dense via LU, UpperTriangularPlus via an
/// O(n) tridiagonal sweep.
Vector normal_equations_solve(const JacobianMatrix& jac, double mu, std::span<const double> rhs);

/// Least-squares mixing coefficient (w_next - w_prev)^T w_next / |w_next - w_prev|^2.
/// Throws DegenerateSteps when |w_next - w_prev| <= eps (|w_next| + |w_prev|).
double lstsq_gamma(std::span<const double> w_next, std::span<const double> w_prev);

// Vector utilities.
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double distance(std::span<const double> a, std::span<const double> b);
Vector axpy(double alpha, std::span<const double> x, std::span<const double> y);  // alpha x + y
Vector subtract(std::span<const double> a, std::span<const double> b);
Vector scaled(double alpha, std::span<const double> x);
Vector matvec(const DenseMatrix& a, std::span<const double> x);

}  // namespace nasolve
