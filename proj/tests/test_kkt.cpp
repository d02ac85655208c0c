#include <doctest.h>

#include "arcipm/errors.hpp"
#include "arcipm/kkt.hpp"
#include "arcipm/registry.hpp"
#include "arcipm/solvers.hpp"
#include "oracles/oracles.hpp"

using namespace arcipm;

namespace {

/// Interior point near x0 with random multipliers and w == z.
IterateV random_iterate(const ProblemDef& prob, oracles::Rng& rng) {
  IterateV v;
  v.x = prob.x0 + rng.vector(prob.n, -0.3, 0.3);
  v.y = rng.vector(prob.m, -1.0, 1.0);
  v.w = rng.vector(prob.p, 0.2, 2.0);
  v.s = rng.vector(prob.p, 0.2, 2.0);
  v.z = v.w;
  return v;
}

}  // namespace

TEST_CASE("stacked layout round-trips") {
  oracles::Rng rng(21);
  const auto& prob = registry_get("HS63");
  const IterateV v = random_iterate(prob, rng);
  const Vector s = v.stacked();
  CHECK(s.size() == prob.n + prob.m + 3 * prob.p);
  const IterateV back = IterateV::from_stacked(s, prob.n, prob.m, prob.p);
  CHECK(back.stacked() == s);
  CHECK_THROWS_AS(IterateV::from_stacked(s, prob.n + 1, prob.m, prob.p),
                  InvalidArguments);

  const BlockLayout lay{prob.n, prob.m, prob.p};
  CHECK(s.segment(lay.y(), prob.m) == v.y);
  CHECK(s.segment(lay.s(), prob.p) == v.s);
  CHECK(s.segment(lay.z(), prob.p) == v.z);
}

TEST_CASE("residual blocks on a hand-checked point") {
  // HS22: f = (x1-2)^2 + (x2-1)^2, g1 = 2 - x1 - x2, g2 = x2 - x1^2.
  const auto& prob = registry_get("HS22");
  IterateV v;
  v.x = (Vector(2) << 1.0, 2.0).finished();
  v.y = Vector::Zero(0);
  v.w = (Vector(2) << 0.5, 2.0).finished();
  v.s = (Vector(2) << 1.0, 3.0).finished();
  v.z = (Vector(2) << 0.5, 1.0).finished();
  const auto res = residual(prob, v);

  // grad f = (-2, 2); grad g1 = (-1, -1); grad g2 = (-2, 1).
  // grad L = grad f - 0.5 grad g1 - 2 grad g2 = (-2 + 0.5 + 4, 2 + 0.5 - 2).
  CHECK(res.grad_lag_x(0) == doctest::Approx(2.5));
  CHECK(res.grad_lag_x(1) == doctest::Approx(0.5));
  // g(x) = (-1, 1), minus s.
  CHECK(res.ineq_res(0) == doctest::Approx(-2.0));
  CHECK(res.ineq_res(1) == doctest::Approx(-2.0));
  CHECK(res.dual_res(0) == 0.0);
  CHECK(res.dual_res(1) == 1.0);
  CHECK(res.comp_res(0) == 0.5);
  CHECK(res.comp_res(1) == 3.0);
  CHECK(res.mu == doctest::Approx(1.75));
  const double merit = 2.5 * 2.5 + 0.25 + 4.0 + 4.0 + 1.0 + 0.25 + 9.0;
  CHECK(res.merit == doctest::Approx(merit));
  CHECK(res.merit == doctest::Approx(res.stacked().squaredNorm()));
}

TEST_CASE("merit vanishes exactly at a KKT point") {
  // HS22 optimum x = (1, 1) with both constraints active;
  // grad f = (-2, 0) = w1 (-1, -1) + w2 (-2, 1) gives w = (2/3, 2/3).
  const auto& prob = registry_get("HS22");
  IterateV v;
  v.x = (Vector(2) << 1.0, 1.0).finished();
  v.y = Vector::Zero(0);
  v.w = Vector::Constant(2, 2.0 / 3.0);
  v.s = Vector::Zero(2);
  v.z = v.w;
  CHECK(residual(prob, v).merit < 1e-30);
}

TEST_CASE("Jacobian-vector products match central differences of F") {
  oracles::Rng rng(22);
  for (const auto& name : registry().names()) {
    CAPTURE(name);
    const auto& prob = registry_get(name);
    for (int trial = 0; trial < 3; ++trial) {
      const IterateV v = random_iterate(prob, rng);
      const Vector u = rng.vector(v.size(), -1.0, 1.0);
      const Matrix jac = jacobian(prob, v).matrix;
      auto f = [&](const Vector& vv) {
        return residual(prob, IterateV::from_stacked(vv, prob.n, prob.m,
                                                     prob.p))
            .stacked();
      };
      const Vector fd = oracles::central_directional(f, v.stacked(), u);
      const Vector jv = jac * u;
      CHECK((jv - fd).norm() <= 1e-4 * std::max(1.0, fd.norm()));
    }
  }
}

TEST_CASE("second-order right-hand side") {
  oracles::Rng rng(23);

  SUBCASE("third-order term vanishes on a quadratic problem") {
    const auto& prob = registry_get("HS22");
    const IterateV v = random_iterate(prob, rng);
    const IterateV vdot = IterateV::from_stacked(
        rng.vector(v.size(), -1, 1), prob.n, prob.m, prob.p);
    HessianFunction l_hess = [&](const Vector& x) {
      return lagrangian_hessian(prob, x, v.y, v.w);
    };
    CHECK(kernels::third_order_contraction(l_hess, v.x, vdot.x, 1e-4,
                                           ExecPolicy::kSerial)
              .isZero(0.0));
  }

  SUBCASE("blocks match hand contraction on HS63") {
    // h2 = |x|^2 - 25 has Hessian 2I, h1 is affine, g are bounds.
    const auto& prob = registry_get("HS63");
    const IterateV v = random_iterate(prob, rng);
    const IterateV vdot = IterateV::from_stacked(
        rng.vector(v.size(), -1, 1), prob.n, prob.m, prob.p);
    const auto rhs =
        contract_third_order(prob, v, vdot, 1e-4, ExecPolicy::kSerial);
    const Vector& xd = vdot.x;

    CHECK(rhs.eq_block(0) == 0.0);
    CHECK(rhs.eq_block(1) == doctest::Approx(-2.0 * xd.squaredNorm()));
    CHECK(rhs.ineq_block.isZero(0.0));
    CHECK(rhs.dual_block.isZero(0.0));
    CHECK(rhs.comp_block.isApprox(-2.0 * vdot.z.cwiseProduct(vdot.s)));
    // Third derivatives vanish; only -2 ydot_2 (2I) xdot remains.
    CHECK(rhs.x_block.isApprox(-4.0 * vdot.y(1) * xd));
  }

  SUBCASE("parallel contraction matches serial bitwise") {
    const auto& prob = registry_get("QUARTSPH10");
    const IterateV v = random_iterate(prob, rng);
    const IterateV vdot = IterateV::from_stacked(
        rng.vector(v.size(), -1, 1), prob.n, prob.m, prob.p);
    const auto a = contract_third_order(prob, v, vdot, 1e-4,
                                        ExecPolicy::kSerial);
    const auto b = contract_third_order(prob, v, vdot, 1e-4,
                                        ExecPolicy::kParallel);
    CHECK(a.stacked() == b.stacked());
  }
}
