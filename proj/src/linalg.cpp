#include "nasolve/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace nasolve {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string singular_message(std::size_t row, double pivot) {
  std::ostringstream out;
  out << "singular matrix: pivot " << pivot << " at row " << row;
  return out.str();
}

void require_size(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    std::ostringstream out;
    out << what << ": dimension mismatch (" << expected << " vs " << got << ")";
    throw std::invalid_argument(out.str());
  }
}

}  // namespace

SingularMatrix::SingularMatrix(std::size_t pivot_row, double pivot)
    : Error(singular_message(pivot_row, pivot)), row_(pivot_row), pivot_(pivot) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------------------
// Vector utilities

double dot(std::span<const double> a, std::span<const double> b) {
  require_size(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) {
  // Scaled accumulation keeps tiny null-space errors from underflowing.
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (double v : a) {
    const double t = v / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
  return norm2(subtract(a, b));
}

Vector axpy(double alpha, std::span<const double> x, std::span<const double> y) {
  require_size(x.size(), y.size(), "axpy");
  Vector out(y.begin(), y.end());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += alpha * x[i];
  return out;
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  require_size(a.size(), b.size(), "subtract");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scaled(double alpha, std::span<const double> x) {
  Vector out(x.begin(), x.end());
  for (double& v : out) v *= alpha;
  return out;
}

Vector matvec(const DenseMatrix& a, std::span<const double> x) {
  require_size(a.cols(), x.size(), "matvec");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

// ---------------------------------------------------------------------------
// Dense LU

LuFactorization::LuFactorization(DenseMatrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
  if (lu_.rows() != lu_.cols()) throw std::invalid_argument("LU: matrix is not square");
  const std::size_t n = lu_.rows();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  const double threshold = kEps * lu_.max_abs();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        p = i;
      }
    }
    if (best <= threshold) throw SingularMatrix(k, best);
    if (p != k) {
      std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
      std::swap(perm_[k], perm_[p]);
    }
    const double pivot = lu_(k, k);
    auto pivot_row = lu_.row(k);
    for (std::size_t i = k + 1; i < n; ++i) {
      auto r = lu_.row(i);
      const double m = r[k] / pivot;
      r[k] = m;
      if (m == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) r[j] -= m * pivot_row[j];
    }
  }
}

Vector LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = dim();
  require_size(n, b.size(), "LU solve");
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i) {
    auto r = lu_.row(i);
    double s = x[i];
    for (std::size_t j = 0; j < i; ++j) s -= r[j] * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    auto r = lu_.row(i);
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= r[j] * x[j];
    x[i] = s / r[i];
  }
  return x;
}

Vector LuFactorization::solve_transpose(std::span<const double> b) const {
  // P A = L U  =>  A^T = U^T L^T P, so solve U^T z = b, L^T y = z, x = P^T y.
  const std::size_t n = dim();
  require_size(n, b.size(), "LU transpose solve");
  Vector z(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = z[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * z[j];
    z[i] = s / lu_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = z[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(j, i) * z[j];
    z[i] = s;
  }
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = z[i];
  return x;
}

Vector lu_solve(const DenseMatrix& a, std::span<const double> b) {
  return LuFactorization(a).solve(b);
}

// ---------------------------------------------------------------------------
// Structured Jacobian

Vector structured_solve(const UpperTriangularPlus& a, std::span<const double> b) {
  const std::size_t n = a.dim();
  require_size(n - 1, a.super.size(), "structured solve (superdiagonal)");
  require_size(n, b.size(), "structured solve");

  // Back substitution has no pivot growth, so only a vanishing pivot or a
  // non-finite result is treated as singular.
  auto check = [](std::size_t row, double pivot, double value) {
    if (pivot == 0.0 || !std::isfinite(value)) throw SingularMatrix(row, pivot);
  };
  Vector x(n);
  x[n - 1] = b[n - 1] / a.corner;
  check(n - 1, a.corner, x[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = (b[i] - a.super[i] * x[i + 1]) / a.diag[i];
    check(i, a.diag[i], x[i]);
  }
  return x;
}

// ---------------------------------------------------------------------------
// JacobianMatrix dispatch

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Vector structured_apply(const UpperTriangularPlus& a, std::span<const double> x) {
  const std::size_t n = a.dim();
  require_size(n, x.size(), "structured apply");
  Vector y(n);
  for (std::size_t i = 0; i + 1 < n; ++i) y[i] = a.diag[i] * x[i] + a.super[i] * x[i + 1];
  y[n - 1] = a.corner * x[n - 1];
  return y;
}

Vector structured_apply_transpose(const UpperTriangularPlus& a, std::span<const double> x) {
  const std::size_t n = a.dim();
  require_size(n, x.size(), "structured apply transpose");
  Vector y(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    y[i] += a.diag[i] * x[i];
    y[i + 1] += a.super[i] * x[i];
  }
  y[n - 1] += a.corner * x[n - 1];
  return y;
}

Vector dense_apply_transpose(const DenseMatrix& a, std::span<const double> x) {
  require_size(a.rows(), x.size(), "apply transpose");
  Vector y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += r[j] * x[i];
  }
  return y;
}

// (J^T J + mu I) is tridiagonal and SPD for the bidiagonal-plus-corner form.
Vector structured_normal_solve(const UpperTriangularPlus& a, double mu, std::span<const double> rhs) {
  const std::size_t n = a.dim();
  require_size(n, rhs.size(), "normal equations");
  auto column_diag = [&](std::size_t j) { return j + 1 < n ? a.diag[j] : a.corner; };

  Vector main(n), upper(n > 0 ? n - 1 : 0);
  for (std::size_t j = 0; j < n; ++j) {
    const double d = column_diag(j);
    main[j] = d * d + mu + (j > 0 ? a.super[j - 1] * a.super[j - 1] : 0.0);
    if (j + 1 < n) upper[j] = d * a.super[j];
  }

  double scale = 0.0;
  for (double v : main) scale = std::max(scale, std::abs(v));
  const double threshold = kEps * scale;

  // Thomas sweep; the matrix is symmetric so the lower band equals `upper`.
  Vector c(n, 0.0), d(rhs.begin(), rhs.end());
  double denom = main[0];
  if (std::abs(denom) <= threshold) throw SingularMatrix(0, denom);
  if (n > 1) c[0] = upper[0] / denom;
  d[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = main[i] - upper[i - 1] * c[i - 1];
    if (std::abs(denom) <= threshold) throw SingularMatrix(i, denom);
    if (i + 1 < n) c[i] = upper[i] / denom;
    d[i] = (d[i] - upper[i - 1] * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
  return d;
}

}  // namespace

std::size_t dimension(const JacobianMatrix& jac) {
  return std::visit(overloaded{[](const DenseMatrix& a) { return a.rows(); },
                               [](const UpperTriangularPlus& a) { return a.dim(); },
                               [](const LinearOperator& a) { return a.dim; }},
                    jac);
}

Vector multiply(const JacobianMatrix& jac, std::span<const double> x) {
  return std::visit(overloaded{[&](const DenseMatrix& a) { return matvec(a, x); },
                               [&](const UpperTriangularPlus& a) { return structured_apply(a, x); },
                               [&](const LinearOperator& a) { return a.apply(x); }},
                    jac);
}

Vector multiply_transpose(const JacobianMatrix& jac, std::span<const double> x) {
  return std::visit(
      overloaded{[&](const DenseMatrix& a) { return dense_apply_transpose(a, x); },
                 [&](const UpperTriangularPlus& a) { return structured_apply_transpose(a, x); },
                 [](const LinearOperator&) -> Vector {
                   throw std::logic_error("transpose action unavailable for a matrix-free Jacobian");
                 }},
      jac);
}

Vector solve(const JacobianMatrix& jac, std::span<const double> b) {
  return std::visit(overloaded{[&](const DenseMatrix& a) { return lu_solve(a, b); },
                               [&](const UpperTriangularPlus& a) { return structured_solve(a, b); },
                               [&](const LinearOperator& a) { return a.solve(b); }},
                    jac);
}

DenseMatrix densify(const JacobianMatrix& jac) {
  return std::visit(overloaded{[](const DenseMatrix& a) { return a; },
                               [](const UpperTriangularPlus& a) {
                                 const std::size_t n = a.dim();
                                 DenseMatrix m(n, n);
                                 for (std::size_t i = 0; i + 1 < n; ++i) {
                                   m(i, i) = a.diag[i];
                                   m(i, i + 1) = a.super[i];
                                 }
                                 m(n - 1, n - 1) = a.corner;
                                 return m;
                               },
                               [](const LinearOperator& a) {
                                 DenseMatrix m(a.dim, a.dim);
                                 Vector e(a.dim, 0.0);
                                 for (std::size_t j = 0; j < a.dim; ++j) {
                                   e[j] = 1.0;
                                   const Vector col = a.apply(e);
                                   for (std::size_t i = 0; i < a.dim; ++i) m(i, j) = col[i];
                                   e[j] = 0.0;
                                 }
                                 return m;
                               }},
                    jac);
}

Vector normal_equations_solve(const JacobianMatrix& jac, double mu, std::span<const double> rhs) {
  if (const auto* s = std::get_if<UpperTriangularPlus>(&jac)) return structured_normal_solve(*s, mu, rhs);
  if (std::holds_alternative<LinearOperator>(jac))
    throw std::logic_error("normal equations need an explicit Jacobian");

  const auto& a = std::get<DenseMatrix>(jac);
  const std::size_t n = a.cols();
  DenseMatrix m(n, n);
  for (std::size_t k = 0; k < a.rows(); ++k) {
    auto r = a.row(k);
    for (std::size_t i = 0; i < n; ++i) {
      if (r[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) m(i, j) += r[i] * r[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) m(i, i) += mu;
  return lu_solve(m, rhs);
}

double lstsq_gamma(std::span<const double> w_next, std::span<const double> w_prev) {
  const Vector dw = subtract(w_next, w_prev);
  const double dw_norm = norm2(dw);
  if (dw_norm <= kEps * (norm2(w_next) + norm2(w_prev))) {
    throw DegenerateSteps("consecutive Newton steps coincide; mixing coefficient undefined");
  }
  // Normalize before squaring so tiny steps near the root do not underflow.
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < dw.size(); ++i) {
    const double u = dw[i] / dw_norm;
    num += u * w_next[i];
    den += u * u;
  }
  return num / (den * dw_norm);
}

}  // namespace nasolve
