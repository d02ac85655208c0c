#include "arcipm/registry.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "arcipm/errors.hpp"

namespace arcipm {
namespace {

/// 1/2 x'Qx + c'x + d.
ScalarFunction quadratic(Matrix q, Vector c, double d = 0.0) {
  ScalarFunction fn;
  fn.value = [q, c, d](const Vector& x) {
    return 0.5 * x.dot(q * x) + c.dot(x) + d;
  };
  fn.gradient = [q, c](const Vector& x) -> Vector { return q * x + c; };
  fn.hessian = [q](const Vector&) -> Matrix { return q; };
  return fn;
}

ScalarFunction affine(Vector a, double b) {
  const auto n = a.size();
  return quadratic(Matrix::Zero(n, n), std::move(a), b);
}

/// x_i - lo >= 0.
ScalarFunction lower_bound(int n, int i, double lo) {
  Vector a = Vector::Zero(n);
  a(i) = 1.0;
  return affine(std::move(a), -lo);
}

/// hi - x_i >= 0.
ScalarFunction upper_bound(int n, int i, double hi) {
  Vector a = Vector::Zero(n);
  a(i) = -1.0;
  return affine(std::move(a), hi);
}

/// radius_sq - ||x||^2 >= 0. Appended to equality-only problems so that
/// p >= 1; the radius is chosen so the constraint is slack at the solution.
ScalarFunction ball(int n, double radius_sq) {
  return quadratic(-2.0 * Matrix::Identity(n, n), Vector::Zero(n), radius_sq);
}

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) {
    v(i++) = x;
  }
  return v;
}

Matrix mat(int rows, int cols, std::initializer_list<double> row_major) {
  Matrix out(rows, cols);
  auto it = row_major.begin();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      out(r, c) = *it++;
    }
  }
  return out;
}

ProblemDef maratos() {
  // tau (x1^2 + x2^2 - 1) - x1 with tau = 1e-6.
  constexpr double tau = 1e-6;
  auto f = quadratic(2.0 * tau * Matrix::Identity(2, 2), vec({-1.0, 0.0}),
                     -tau);
  auto h = quadratic(2.0 * Matrix::Identity(2, 2), Vector::Zero(2), -1.0);
  return make_problem("MARATOS", ProblemTag::kQcqp, vec({1.1, 0.1}), f, {h},
                      {ball(2, 4.0)}, -1.0);
}

ProblemDef hs8() {
  ScalarFunction f = affine(Vector::Zero(2), -1.0);
  auto h1 = quadratic(2.0 * Matrix::Identity(2, 2), Vector::Zero(2), -25.0);
  auto h2 = quadratic(mat(2, 2, {0, 1, 1, 0}), Vector::Zero(2), -9.0);
  return make_problem("HS8", ProblemTag::kQcqp, vec({2.0, 1.0}), f, {h1, h2},
                      {ball(2, 50.0)}, -1.0);
}

ProblemDef hs10() {
  auto f = affine(vec({1.0, -1.0}), 0.0);
  // -3 x1^2 + 2 x1 x2 - x2^2 + 1
  auto g = quadratic(mat(2, 2, {-6, 2, 2, -2}), Vector::Zero(2), 1.0);
  return make_problem("HS10", ProblemTag::kQcqp, vec({-10.0, 10.0}), f, {},
                      {g}, -1.0);
}

ProblemDef hs12() {
  // 0.5 x1^2 + x2^2 - x1 x2 - 7 x1 - 7 x2
  auto f = quadratic(mat(2, 2, {1, -1, -1, 2}), vec({-7.0, -7.0}));
  auto g = quadratic(mat(2, 2, {-8, 0, 0, -2}), Vector::Zero(2), 25.0);
  return make_problem("HS12", ProblemTag::kQcqp, vec({0.0, 0.0}), f, {}, {g},
                      -30.0);
}

ProblemDef hs22() {
  // (x1 - 2)^2 + (x2 - 1)^2
  auto f = quadratic(2.0 * Matrix::Identity(2, 2), vec({-4.0, -2.0}), 5.0);
  auto g1 = affine(vec({-1.0, -1.0}), 2.0);
  auto g2 = quadratic(mat(2, 2, {-2, 0, 0, 0}), vec({0.0, 1.0}));
  return make_problem("HS22", ProblemTag::kQcqp, vec({2.0, 2.0}), f, {},
                      {g1, g2}, 1.0);
}

ProblemDef hs30() {
  auto f = quadratic(2.0 * Matrix::Identity(3, 3), Vector::Zero(3));
  auto g = quadratic(mat(3, 3, {2, 0, 0, 0, 2, 0, 0, 0, 0}), Vector::Zero(3),
                     -1.0);
  return make_problem("HS30", ProblemTag::kQcqp, vec({1.0, 1.0, 1.0}), f, {},
                      {g, lower_bound(3, 0, 1.0), upper_bound(3, 0, 10.0),
                       lower_bound(3, 1, -10.0), upper_bound(3, 1, 10.0),
                       lower_bound(3, 2, -10.0), upper_bound(3, 2, 10.0)},
                      1.0);
}

ProblemDef hs42() {
  // (x1-1)^2 + (x2-2)^2 + (x3-3)^2 + (x4-4)^2
  auto f = quadratic(2.0 * Matrix::Identity(4, 4), vec({-2, -4, -6, -8}), 30.0);
  auto h1 = affine(vec({1, 0, 0, 0}), -2.0);
  auto h2 = quadratic(mat(4, 4, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0,
                                 2}),
                      Vector::Zero(4), -2.0);
  return make_problem("HS42", ProblemTag::kQcqp, vec({1, 1, 1, 1}), f,
                      {h1, h2}, {ball(4, 20.0)}, 28.0 - 10.0 * std::sqrt(2.0));
}

ProblemDef hs43() {
  // Rosen-Suzuki.
  auto f = quadratic(mat(4, 4, {2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 4, 0, 0, 0, 0,
                                2}),
                     vec({-5, -5, -21, 7}));
  auto g1 = quadratic(-2.0 * Matrix::Identity(4, 4), vec({-1, 1, -1, 1}), 8.0);
  auto g2 = quadratic(mat(4, 4, {-2, 0, 0, 0, 0, -4, 0, 0, 0, 0, -2, 0, 0, 0,
                                 0, -4}),
                      vec({1, 0, 0, 1}), 10.0);
  auto g3 = quadratic(mat(4, 4, {-4, 0, 0, 0, 0, -2, 0, 0, 0, 0, -2, 0, 0, 0,
                                 0, 0}),
                      vec({-2, 1, 0, 1}), 5.0);
  return make_problem("HS43", ProblemTag::kQcqp, vec({0, 0, 0, 0}), f, {},
                      {g1, g2, g3}, -44.0);
}

ProblemDef hs63() {
  // 1000 - x1^2 - 2 x2^2 - x3^2 - x1 x2 - x1 x3
  auto f = quadratic(mat(3, 3, {-2, -1, -1, -1, -4, 0, -1, 0, -2}),
                     Vector::Zero(3), 1000.0);
  auto h1 = affine(vec({8, 14, 7}), -56.0);
  auto h2 = quadratic(2.0 * Matrix::Identity(3, 3), Vector::Zero(3), -25.0);
  return make_problem("HS63", ProblemTag::kQcqp, vec({2, 2, 2}), f, {h1, h2},
                      {lower_bound(3, 0, 0.0), lower_bound(3, 1, 0.0),
                       lower_bound(3, 2, 0.0)},
                      961.7151721);
}

ProblemDef hs65() {
  // (x1 - x2)^2 + (x1 + x2 - 10)^2 / 9 + (x3 - 5)^2
  const double a = 2.0 + 2.0 / 9.0;
  const double b = -2.0 + 2.0 / 9.0;
  auto f = quadratic(mat(3, 3, {a, b, 0, b, a, 0, 0, 0, 2}),
                     vec({-20.0 / 9.0, -20.0 / 9.0, -10.0}),
                     100.0 / 9.0 + 25.0);
  auto g = quadratic(-2.0 * Matrix::Identity(3, 3), Vector::Zero(3), 48.0);
  return make_problem("HS65", ProblemTag::kQcqp, vec({-5, 5, 0}), f, {},
                      {g, lower_bound(3, 0, -4.5), upper_bound(3, 0, 4.5),
                       lower_bound(3, 1, -4.5), upper_bound(3, 1, 4.5),
                       lower_bound(3, 2, -5.0), upper_bound(3, 2, 5.0)},
                      0.9535288567);
}

ProblemDef hs40() {
  ScalarFunction f;
  f.value = [](const Vector& x) { return -x(0) * x(1) * x(2) * x(3); };
  f.gradient = [](const Vector& x) -> Vector {
    return vec({-x(1) * x(2) * x(3), -x(0) * x(2) * x(3),
                -x(0) * x(1) * x(3), -x(0) * x(1) * x(2)});
  };
  f.hessian = [](const Vector& x) -> Matrix {
    Matrix hm = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        double prod = -1.0;
        for (int k = 0; k < 4; ++k) {
          if (k != i && k != j) prod *= x(k);
        }
        hm(i, j) = prod;
      }
    }
    return hm;
  };

  ScalarFunction h1;  // x1^3 + x2^2 - 1
  h1.value = [](const Vector& x) { return std::pow(x(0), 3) + x(1) * x(1) - 1.0; };
  h1.gradient = [](const Vector& x) -> Vector {
    return vec({3.0 * x(0) * x(0), 2.0 * x(1), 0.0, 0.0});
  };
  h1.hessian = [](const Vector& x) -> Matrix {
    Matrix hm = Matrix::Zero(4, 4);
    hm(0, 0) = 6.0 * x(0);
    hm(1, 1) = 2.0;
    return hm;
  };

  ScalarFunction h2;  // x1^2 x4 - x3
  h2.value = [](const Vector& x) { return x(0) * x(0) * x(3) - x(2); };
  h2.gradient = [](const Vector& x) -> Vector {
    return vec({2.0 * x(0) * x(3), 0.0, -1.0, x(0) * x(0)});
  };
  h2.hessian = [](const Vector& x) -> Matrix {
    Matrix hm = Matrix::Zero(4, 4);
    hm(0, 0) = 2.0 * x(3);
    hm(0, 3) = hm(3, 0) = 2.0 * x(0);
    return hm;
  };

  auto h3 = quadratic(mat(4, 4, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                                 2}),
                      vec({0, -1, 0, 0}));  // x4^2 - x2

  return make_problem("HS40", ProblemTag::kOther, vec({0.8, 0.8, 0.8, 0.8}),
                      f, {h1, h2, h3}, {ball(4, 8.0)}, -0.25);
}

ProblemDef hs78() {
  ScalarFunction f;  // x1 x2 x3 x4 x5
  f.value = [](const Vector& x) { return x.prod(); };
  f.gradient = [](const Vector& x) -> Vector {
    Vector gr(5);
    for (int i = 0; i < 5; ++i) {
      double prod = 1.0;
      for (int k = 0; k < 5; ++k) {
        if (k != i) prod *= x(k);
      }
      gr(i) = prod;
    }
    return gr;
  };
  f.hessian = [](const Vector& x) -> Matrix {
    Matrix hm = Matrix::Zero(5, 5);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        if (i == j) continue;
        double prod = 1.0;
        for (int k = 0; k < 5; ++k) {
          if (k != i && k != j) prod *= x(k);
        }
        hm(i, j) = prod;
      }
    }
    return hm;
  };

  auto h1 = quadratic(2.0 * Matrix::Identity(5, 5), Vector::Zero(5), -10.0);
  Matrix q2 = Matrix::Zero(5, 5);  // x2 x3 - 5 x4 x5
  q2(1, 2) = q2(2, 1) = 1.0;
  q2(3, 4) = q2(4, 3) = -5.0;
  auto h2 = quadratic(q2, Vector::Zero(5));

  ScalarFunction h3;  // x1^3 + x2^3 + 1
  h3.value = [](const Vector& x) {
    return std::pow(x(0), 3) + std::pow(x(1), 3) + 1.0;
  };
  h3.gradient = [](const Vector& x) -> Vector {
    return vec({3.0 * x(0) * x(0), 3.0 * x(1) * x(1), 0.0, 0.0, 0.0});
  };
  h3.hessian = [](const Vector& x) -> Matrix {
    Matrix hm = Matrix::Zero(5, 5);
    hm(0, 0) = 6.0 * x(0);
    hm(1, 1) = 6.0 * x(1);
    return hm;
  };

  return make_problem("HS78", ProblemTag::kOther,
                      vec({-2.0, 1.5, 2.0, -1.0, -1.0}), f, {h1, h2, h3},
                      {ball(5, 20.0)}, -2.91970041);
}

/// Objective shared by BT11 and HS79:
/// (x1-1)^2 + (x1-x2)^2 + (x2-x3)^2 + (x3-x4)^4 + (x4-x5)^4.
ScalarFunction bt11_objective() {
  ScalarFunction f;
  f.value = [](const Vector& x) {
    return std::pow(x(0) - 1.0, 2) + std::pow(x(0) - x(1), 2) +
           std::pow(x(1) - x(2), 2) + std::pow(x(2) - x(3), 4) +
           std::pow(x(3) - x(4), 4);
  };
  f.gradient = [](const Vector& x) -> Vector {
    const double a = x(0) - x(1);
    const double b = x(1) - x(2);
    const double c = x(2) - x(3);
    const double d = x(3) - x(4);
    return vec({2.0 * (x(0) - 1.0) + 2.0 * a, -2.0 * a + 2.0 * b,
                -2.0 * b + 4.0 * c * c * c, -4.0 * c * c * c + 4.0 * d * d * d,
                -4.0 * d * d * d});
  };
  f.hessian = [](const Vector& x) -> Matrix {
    const double c2 = 12.0 * std::pow(x(2) - x(3), 2);
    const double d2 = 12.0 * std::pow(x(3) - x(4), 2);
    Matrix hm = Matrix::Zero(5, 5);
    hm(0, 0) = 4.0;
    hm(0, 1) = hm(1, 0) = -2.0;
    hm(1, 1) = 4.0;
    hm(1, 2) = hm(2, 1) = -2.0;
    hm(2, 2) = 2.0 + c2;
    hm(2, 3) = hm(3, 2) = -c2;
    hm(3, 3) = c2 + d2;
    hm(3, 4) = hm(4, 3) = -d2;
    hm(4, 4) = d2;
    return hm;
  };
  return f;
}

/// x1 + x2^2 + x3^3 - rhs.
ScalarFunction cubic_chain(double rhs) {
  ScalarFunction fn;
  fn.value = [rhs](const Vector& x) {
    return x(0) + x(1) * x(1) + std::pow(x(2), 3) - rhs;
  };
  fn.gradient = [](const Vector& x) -> Vector {
    return vec({1.0, 2.0 * x(1), 3.0 * x(2) * x(2), 0.0, 0.0});
  };
  fn.hessian = [](const Vector& x) -> Matrix {
    Matrix hm = Matrix::Zero(5, 5);
    hm(1, 1) = 2.0;
    hm(2, 2) = 6.0 * x(2);
    return hm;
  };
  return fn;
}

/// x2 - x3^2 + x4 - rhs.
ScalarFunction quad_chain(double rhs) {
  Matrix q = Matrix::Zero(5, 5);
  q(2, 2) = -2.0;
  return quadratic(q, vec({0, 1, 0, 1, 0}), -rhs);
}

ProblemDef bt11() {
  const double r2 = std::sqrt(2.0);
  auto h3 = affine(vec({1, 0, 0, 0, -1}), -2.0);  // x1 - x5 - 2
  return make_problem("BT11", ProblemTag::kOther, Vector::Constant(5, 2.0),
                      bt11_objective(),
                      {cubic_chain(-2.0 + 3.0 * r2), quad_chain(-2.0 + 2.0 * r2),
                       h3},
                      {ball(5, 40.0)}, 0.82489178);
}

ProblemDef hs79() {
  const double r2 = std::sqrt(2.0);
  Matrix q = Matrix::Zero(5, 5);  // x1 x5 - 2
  q(0, 4) = q(4, 0) = 1.0;
  auto h3 = quadratic(q, Vector::Zero(5), -2.0);
  return make_problem("HS79", ProblemTag::kOther, Vector::Constant(5, 2.0),
                      bt11_objective(),
                      {cubic_chain(2.0 + 3.0 * r2), quad_chain(-2.0 + 2.0 * r2),
                       h3},
                      {ball(5, 40.0)}, 0.0787768209);
}

/// Quartic tracking objective on a sphere, x >= 0:
///   min sum_i (x_i - c_i)^4 + 1/2 sum_i (x_{i+1} - x_i)^2,  c_i = 2 i / n
///   s.t. ||x||^2 = n / 2.
/// Not from the collections; a non-quadratic instance with n = 10 whose
/// third derivatives do not vanish.
ProblemDef quartsph10() {
  constexpr int n = 10;
  Vector c(n);
  for (int i = 0; i < n; ++i) {
    c(i) = 2.0 * (i + 1) / n;
  }
  Matrix lap = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    lap(i, i) += 1.0;
    lap(i + 1, i + 1) += 1.0;
    lap(i, i + 1) -= 1.0;
    lap(i + 1, i) -= 1.0;
  }

  ScalarFunction f;
  f.value = [c, lap](const Vector& x) {
    return (x - c).array().pow(4).sum() + 0.5 * x.dot(lap * x);
  };
  f.gradient = [c, lap](const Vector& x) -> Vector {
    return 4.0 * (x - c).array().pow(3).matrix() + lap * x;
  };
  f.hessian = [c, lap](const Vector& x) -> Matrix {
    Matrix hm = lap;
    hm.diagonal() += 12.0 * (x - c).array().square().matrix();
    return hm;
  };

  auto h = quadratic(2.0 * Matrix::Identity(n, n), Vector::Zero(n),
                     -0.5 * n);
  std::vector<ScalarFunction> bounds;
  for (int i = 0; i < n; ++i) {
    bounds.push_back(lower_bound(n, i, 0.0));
  }
  return make_problem("QUARTSPH10", ProblemTag::kOther,
                      Vector::Constant(n, 0.5), f, {h}, std::move(bounds),
                      1.2735108574);
}

}  // namespace

ProblemRegistry::ProblemRegistry() {
  add(maratos());
  add(hs8());
  add(hs10());
  add(hs12());
  add(hs22());
  add(hs30());
  add(hs42());
  add(hs43());
  add(hs63());
  add(hs65());
  add(hs40());
  add(hs78());
  add(bt11());
  add(hs79());
  add(quartsph10());
}

void ProblemRegistry::add(ProblemDef prob) {
  const std::string name = prob.name;
  tags_[name] = prob.tag;
  entries_.emplace(name, std::move(prob));
}

const ProblemDef& ProblemRegistry::get(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    std::string available;
    for (const auto& [key, _] : entries_) {
      available += available.empty() ? key : ", " + key;
    }
    throw UnknownProblem("unknown problem '" + name +
                         "'; available: " + available);
  }
  return it->second;
}

bool ProblemRegistry::contains(const std::string& name) const {
  return entries_.contains(name);
}

ProblemTag ProblemRegistry::tag(const std::string& name) const {
  get(name);
  return tags_.at(name);
}

std::vector<std::string> ProblemRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [key, _] : entries_) {
    out.push_back(key);
  }
  return out;
}

std::vector<std::string> ProblemRegistry::names_with_tag(ProblemTag t) const {
  std::vector<std::string> out;
  for (const auto& [key, value] : tags_) {
    if (value == t) out.push_back(key);
  }
  return out;
}

const ProblemRegistry& registry() {
  static const ProblemRegistry instance;
  return instance;
}

const ProblemDef& registry_get(const std::string& name) {
  return registry().get(name);
}

}  // namespace arcipm
