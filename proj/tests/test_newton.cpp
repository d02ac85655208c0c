#include <doctest.h>

#include <cmath>
#include <string>

#include "arcipm/errors.hpp"
#include "arcipm/newton.hpp"
#include "arcipm/registry.hpp"
#include "arcipm/solvers.hpp"
#include "arcipm/step_control.hpp"
#include "oracles/oracles.hpp"

using namespace arcipm;

namespace {

struct Setup {
  const ProblemDef* prob;
  IterateV v;
  KktResidual res;
};

Setup at_start(const std::string& name) {
  const auto& prob = registry_get(name);
  IterateV v = initialize(prob);
  return {&prob, v, residual(prob, v)};
}

}  // namespace

TEST_CASE("KKT solves agree with a QR reference") {
  for (std::string name : {"MARATOS", "HS63", "HS78", "QUARTSPH10"}) {
    CAPTURE(name);
    auto st = at_start(name);
    const auto jac = jacobian(*st.prob, st.v);
    const auto fact = factorize(jac);
    const Vector rhs = st.res.stacked();
    const Vector u = fact.solve(rhs);
    const Vector ref = oracles::qr_solve(jac.matrix, rhs);
    CHECK((u - ref).norm() <= 1e-9 * (1.0 + ref.norm()));
  }
}

TEST_CASE("condition estimate brackets the exact value") {
  for (std::string name : {"HS22", "HS65", "BT11"}) {
    CAPTURE(name);
    auto st = at_start(name);
    const auto jac = jacobian(*st.prob, st.v);
    const double est = factorize(jac).cond_estimate();
    const double exact = oracles::exact_rcond(jac.matrix);
    // Hager's method never overestimates ||A^-1||_1, so the reciprocal
    // estimate is never below the exact value.
    CHECK(est >= exact * (1.0 - 1e-12));
    CHECK(est <= 10.0 * exact);
  }
}

TEST_CASE("serial and parallel factorizations coincide") {
  auto st = at_start("QUARTSPH10");
  const auto jac = jacobian(*st.prob, st.v);
  const auto a = KktFactorization::factorize(jac, ExecPolicy::kSerial);
  const auto b = KktFactorization::factorize(jac, ExecPolicy::kParallel);
  CHECK(a.packed_lu() == b.packed_lu());
  CHECK(a.permutation() == b.permutation());
}

TEST_CASE("rank-deficient constraints raise SingularKkt") {
  ScalarFunction f;
  f.value = [](const Vector& x) { return x.squaredNorm(); };
  f.gradient = [](const Vector& x) -> Vector { return 2.0 * x; };
  f.hessian = [](const Vector& x) -> Matrix {
    return 2.0 * Matrix::Identity(x.size(), x.size());
  };
  auto linear = [](double a0, double a1, double b) {
    ScalarFunction h;
    h.value = [=](const Vector& x) { return a0 * x(0) + a1 * x(1) + b; };
    h.gradient = [=](const Vector&) -> Vector {
      return (Vector(2) << a0, a1).finished();
    };
    h.hessian = [](const Vector&) -> Matrix { return Matrix::Zero(2, 2); };
    return h;
  };
  // h1 and h2 have parallel gradients.
  const auto prob = make_problem(
      "DUP", ProblemTag::kOther, Vector::Ones(2), f,
      {linear(1.0, 0.0, -1.0), linear(2.0, 0.0, -2.0)},
      {linear(0.0, 1.0, 5.0)});
  const IterateV v = initialize(prob);
  try {
    factorize(jacobian(prob, v));
    FAIL("expected SingularKkt");
  } catch (const SingularKkt& e) {
    CHECK(e.cond_estimate() > 1e11);
  }

  SolverConfig cfg;
  const auto report = solve(prob, cfg);
  CHECK(report.status == SolveStatus::kUnattained);
  CHECK(report.failed_iteration == 0);
  CHECK(report.reason.find("singular") != std::string::npos);
}

TEST_CASE("first- and second-order systems") {
  auto st = at_start("HS78");
  const auto& prob = *st.prob;
  const auto jac = jacobian(prob, st.v);
  const auto fact = factorize(jac);
  const double sigma = 0.125;

  const IterateV vdot = solve_first_order(fact, st.res, sigma);
  Vector expected = st.res.stacked();
  expected.tail(prob.p).array() -= sigma * st.res.mu;
  CHECK((jac.matrix * vdot.stacked() - expected).norm() <
        1e-9 * expected.norm());
  // The fourth block row forces wdot = zdot when w = z.
  CHECK((vdot.w - vdot.z).cwiseAbs().maxCoeff() < 1e-12);

  const IterateV simple = solve_simplified_second_order(fact, vdot.z, vdot.s);
  Vector rhs = Vector::Zero(jac.layout.size());
  rhs.tail(prob.p) = -2.0 * vdot.z.cwiseProduct(vdot.s);
  CHECK((jac.matrix * simple.stacked() - rhs).norm() < 1e-9 * rhs.norm());
}

TEST_CASE("ellipse error is third order, line error second order") {
  // F(v(a)) should follow (1 - sin a) F + sigma mu sin a e_bar to O(a^3)
  // on the ellipse and only to O(a^2) on the line. Halving a should cut the
  // error by about 8 and 4 respectively.
  for (std::string name : {"HS40", "HS63", "QUARTSPH10", "BT11"}) {
    CAPTURE(name);
    auto st = at_start(name);
    const auto& prob = *st.prob;
    const double sigma = 0.125;
    const auto fact = factorize(jacobian(prob, st.v));
    ArcDerivatives arc;
    arc.vdot = solve_first_order(fact, st.res, sigma);
    arc.vddot = solve_second_order(
        fact, contract_third_order(prob, st.v, arc.vdot, 1e-4));
    ArcDerivatives line{arc.vdot, IterateV::zeros(prob.n, prob.m, prob.p),
                        SecondOrderMode::kSimplified};

    auto error = [&](const ArcDerivatives& d, double a) {
      const Vector f =
          residual(prob, ellipse_point(st.v, d, a)).stacked();
      Vector target = (1.0 - std::sin(a)) * st.res.stacked();
      target.tail(prob.p).array() += sigma * st.res.mu * std::sin(a);
      return (f - target).norm();
    };
    const double a = 0.02;
    const double arc_ratio = error(arc, a) / error(arc, a / 2);
    const double line_ratio = error(line, a) / error(line, a / 2);
    CHECK(arc_ratio > 6.0);
    CHECK(arc_ratio < 10.0);
    CHECK(line_ratio > 3.0);
    CHECK(line_ratio < 5.0);
  }
}

TEST_CASE("solve rejects a right-hand side of the wrong size") {
  auto st = at_start("HS22");
  const auto fact = factorize(jacobian(*st.prob, st.v));
  CHECK_THROWS_AS(fact.solve(Vector::Ones(3)), InvalidArguments);
}
