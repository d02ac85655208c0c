#include "arcipm/kernels.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "arcipm/errors.hpp"

namespace arcipm::kernels {
namespace {

/// Pivot search and row swap for column k. Returns the pivot value.
double pivot_column(Matrix& a, std::vector<int>& perm, Eigen::Index k) {
  const Eigen::Index n = a.rows();
  Eigen::Index best = k;
  double best_abs = std::abs(a(k, k));
  for (Eigen::Index i = k + 1; i < n; ++i) {
    const double v = std::abs(a(i, k));
    if (v > best_abs) {
      best_abs = v;
      best = i;
    }
  }
  if (best != k) {
    a.row(k).swap(a.row(best));
    std::swap(perm[static_cast<std::size_t>(k)],
              perm[static_cast<std::size_t>(best)]);
  }
  return a(k, k);
}

template <bool Parallel>
LuStatus lu_factor_impl(Matrix& a, std::vector<int>& perm,
                        double pivot_floor) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) {
    throw InvalidArguments("LU factorization needs a square matrix");
  }
  perm.resize(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);

  LuStatus status;
  status.min_pivot = n == 0 ? 0.0 : HUGE_VAL;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double pivot = pivot_column(a, perm, k);
    status.min_pivot = std::min(status.min_pivot, std::abs(pivot));
    if (!(std::abs(pivot) >= pivot_floor) || pivot == 0.0) {
      status.singular_column = static_cast<int>(k);
      return status;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      a(i, k) /= pivot;
    }
    // Each trailing column is updated independently, so splitting the
    // columns across threads leaves every entry's arithmetic unchanged.
    const Eigen::Index first = k + 1;
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static) if (n - first > 32)
      for (Eigen::Index j = first; j < n; ++j) {
        const double akj = a(k, j);
        if (akj == 0.0) continue;
        for (Eigen::Index i = first; i < n; ++i) {
          a(i, j) -= a(i, k) * akj;
        }
      }
    } else {
      for (Eigen::Index j = first; j < n; ++j) {
        const double akj = a(k, j);
        if (akj == 0.0) continue;
        for (Eigen::Index i = first; i < n; ++i) {
          a(i, j) -= a(i, k) * akj;
        }
      }
    }
  }
  return status;
}

template <bool Parallel>
Vector contraction_impl(const HessianFunction& hessian, const Vector& x,
                        const Vector& xdot, double eps_hat) {
  const Eigen::Index n = x.size();
  if (xdot.size() != n) {
    throw InvalidArguments("third-order contraction: dimension mismatch");
  }
  DirectionalHessianDifference diff(hessian, x, eps_hat);

  std::vector<Vector> terms(static_cast<std::size_t>(n));
  std::vector<std::optional<std::string>> errors(static_cast<std::size_t>(n));
  auto term = [&](Eigen::Index i) {
    const auto idx = static_cast<std::size_t>(i);
    if (xdot(i) == 0.0) {
      terms[idx] = Vector::Zero(n);
      return;
    }
    try {
      terms[idx] = xdot(i) * (diff(static_cast<int>(i)) * xdot);
    } catch (const NumericalFailure& e) {
      errors[idx] = e.what();
    }
  };

  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index i = 0; i < n; ++i) {
      term(i);
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      term(i);
    }
  }

  Vector out = Vector::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (errors[idx]) {
      throw NumericalFailure(*errors[idx], static_cast<int>(i));
    }
    out += terms[idx];
  }
  return out;
}

}  // namespace

LuStatus lu_factor_serial(Matrix& a, std::vector<int>& perm,
                          double pivot_floor) {
  return lu_factor_impl<false>(a, perm, pivot_floor);
}

LuStatus lu_factor_parallel(Matrix& a, std::vector<int>& perm,
                            double pivot_floor) {
  return lu_factor_impl<true>(a, perm, pivot_floor);
}

Vector lu_solve(const Matrix& lu, const std::vector<int>& perm,
                const Vector& b) {
  const Eigen::Index n = lu.rows();
  Vector x(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    x(k) = b(perm[static_cast<std::size_t>(k)]);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      x(i) -= lu(i, j) * x(j);
    }
  }
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      x(i) -= lu(i, j) * x(j);
    }
    x(i) /= lu(i, i);
  }
  return x;
}

Vector lu_solve_transpose(const Matrix& lu, const std::vector<int>& perm,
                          const Vector& b) {
  // A' = U' L' P, so solve U' t = b, then L' u = t, then x = P' u.
  const Eigen::Index n = lu.rows();
  Vector t = b;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      t(i) -= lu(j, i) * t(j);
    }
    t(i) /= lu(i, i);
  }
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      t(i) -= lu(j, i) * t(j);
    }
  }
  Vector x(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    x(perm[static_cast<std::size_t>(k)]) = t(k);
  }
  return x;
}

Vector third_order_contraction_serial(const HessianFunction& hessian,
                                      const Vector& x, const Vector& xdot,
                                      double eps_hat) {
  return contraction_impl<false>(hessian, x, xdot, eps_hat);
}

Vector third_order_contraction_parallel(const HessianFunction& hessian,
                                        const Vector& x, const Vector& xdot,
                                        double eps_hat) {
  return contraction_impl<true>(hessian, x, xdot, eps_hat);
}

}  // namespace arcipm::kernels
