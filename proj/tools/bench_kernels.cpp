// Times the serial reference kernels against their OpenMP versions and
// checks that both produce identical bits.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include <omp.h>

#include "arcipm/kernels.hpp"

namespace {

using arcipm::Matrix;
using arcipm::Vector;

template <typename Fn>
double best_seconds(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

Matrix random_matrix(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      a(i, j) = dist(rng);
    }
  }
  return a;
}

void bench_lu(int n, std::mt19937_64& rng) {
  const Matrix a = random_matrix(n, rng);
  Matrix serial;
  Matrix parallel;
  std::vector<int> perm_s;
  std::vector<int> perm_p;
  const double ts = best_seconds(3, [&] {
    serial = a;
    arcipm::kernels::lu_factor_serial(serial, perm_s, 0.0);
  });
  const double tp = best_seconds(3, [&] {
    parallel = a;
    arcipm::kernels::lu_factor_parallel(parallel, perm_p, 0.0);
  });
  const bool same = serial == parallel && perm_s == perm_p;
  std::printf("lu_factor         n=%4d  serial %9.4f ms  parallel %9.4f ms  "
              "speedup %5.2fx  identical=%s\n",
              n, 1e3 * ts, 1e3 * tp, ts / tp, same ? "yes" : "NO");
}

void bench_contraction(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector c(n);
  for (int i = 0; i < n; ++i) c(i) = dist(rng);
  // Hessian of sum (x_i - c_i)^4 + x_i x_{i+1}^2: nonzero third derivatives
  // and a dense enough evaluation to be worth parallelizing.
  arcipm::HessianFunction hess = [c](const Vector& x) {
    const auto n = x.size();
    Matrix h = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      h(i, i) += 12.0 * (x(i) - c(i)) * (x(i) - c(i));
      if (i + 1 < n) {
        h(i + 1, i + 1) += 2.0 * x(i);
        h(i, i + 1) += 2.0 * x(i + 1);
        h(i + 1, i) += 2.0 * x(i + 1);
      }
    }
    return h;
  };
  Vector x(n);
  Vector xdot(n);
  for (int i = 0; i < n; ++i) {
    x(i) = dist(rng);
    xdot(i) = dist(rng);
  }
  Vector serial;
  Vector parallel;
  const double ts = best_seconds(3, [&] {
    serial = arcipm::kernels::third_order_contraction_serial(hess, x, xdot,
                                                             1e-4);
  });
  const double tp = best_seconds(3, [&] {
    parallel = arcipm::kernels::third_order_contraction_parallel(hess, x, xdot,
                                                                 1e-4);
  });
  std::printf("third_order       n=%4d  serial %9.4f ms  parallel %9.4f ms  "
              "speedup %5.2fx  identical=%s\n",
              n, 1e3 * ts, 1e3 * tp, ts / tp, serial == parallel ? "yes" : "NO");
}

}  // namespace

int main() {
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  std::mt19937_64 rng(20240917);
  for (int n : {64, 256, 512}) {
    bench_lu(n, rng);
  }
  for (int n : {50, 200, 400}) {
    bench_contraction(n, rng);
  }
  return 0;
}
