#include <doctest.h>

#include <cmath>
#include <random>

#include "robinsym/counterexample.hpp"
#include "robinsym/errors.hpp"
#include "robinsym/oracle.hpp"
#include "test_support.hpp"

using namespace robinsym;
using namespace robinsym::oracle;

namespace {

CounterexampleModel canonical() {
  return CounterexampleModel::derive(BallGeometry::on_axis(2, 1.0, 0.5), RobinParameter(0.25));
}

ScalarField phi_field(const CounterexampleModel& m) {
  return [&m](std::span<const double> x) { return m.phi(x); };
}

double square_norm(std::span<const double> x) { return dot(x, x); }

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("fd_laplacian on simple fields") {
    const BallGeometry ball = BallGeometry::on_axis(2, 1.0, 0.0);
    const ScalarField quad = square_norm;
    const ScalarField constant = [](std::span<const double>) { return 3.25; };
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
      const Point x = testing::random_point_in_ball(rng, ball, 0.9);
      CHECK(fd_laplacian(quad, ball, x, {1e-3, false, 2}) == doctest::Approx(4.0).epsilon(2.5e-10));
      CHECK(fd_laplacian(constant, ball, x, {1e-3, false, 2}) == 0.0);
      CHECK(fd_laplacian(constant, ball, x, {1e-3, false, 4}) == 0.0);
    }
  }

  TEST_CASE("fd_laplacian matches the closed form for phi") {
    const auto m = canonical();
    const Point x0{0.5, 0.0};
    const double exact = m.laplacian_phi(x0);
    CHECK(std::abs(fd_laplacian(phi_field(m), m.geometry(), x0, {1e-3, false, 2}) - exact) <= 1e-5);
    CHECK(std::abs(fd_laplacian(phi_field(m), m.geometry(), x0, {1e-2, false, 4}) - exact) <= 1e-7);
    CHECK(std::abs(fd_laplacian(phi_field(m), m.geometry(), x0, {1e-2, true, 2}) - exact) <= 1e-7);
  }

  TEST_CASE("property: second-order stencil is exact on affine and quadratic fields") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 100; ++i) {
      const int n = std::uniform_int_distribution<int>(1, 4)(rng);
      const BallGeometry ball = BallGeometry::on_axis(n, 1.0, 0.0);
      Point lin(static_cast<std::size_t>(n));
      for (double& c : lin) c = testing::uniform(rng, -2.0, 2.0);
      const double q = testing::uniform(rng, -2.0, 2.0);
      const ScalarField affine = [&](std::span<const double> x) { return dot(lin, x) + 0.5; };
      const ScalarField quadratic = [&](std::span<const double> x) {
        return q * dot(x, x) + dot(lin, x);
      };
      const Point x = testing::random_point_in_ball(rng, ball, 0.7);
      const StencilConfig cfg{0.125, false, 2};
      CHECK(std::abs(fd_laplacian(affine, ball, x, cfg)) <= 1e-12);
      CHECK(std::abs(fd_laplacian(quadratic, ball, x, cfg) - 2.0 * n * q) <= 1e-12);
    }
  }

  TEST_CASE("fd_laplacian names the offset that leaves the ball") {
    const BallGeometry ball = BallGeometry::on_axis(2, 1.0, 0.0);
    const ScalarField quad = square_norm;
    try {
      (void)fd_laplacian(quad, ball, Point{0.999, 0.0}, {1e-2, false, 2});
      FAIL("expected a stencil-clearance error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kStencilClearance);
      CHECK(std::string(e.what()).find("+h*e1") != std::string::npos);
    }
    try {
      (void)fd_laplacian(quad, ball, Point{0.0, -0.985}, {1e-2, false, 4});
      FAIL("expected a stencil-clearance error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kStencilClearance);
      CHECK(std::string(e.what()).find("-2h*e2") != std::string::npos);
    }
    CHECK_THROWS_AS((void)fd_laplacian(quad, ball, Point{0.0, 0.0}, {0.0, false, 2}), Error);
    CHECK_THROWS_AS((void)fd_laplacian(quad, ball, Point{0.0, 0.0}, {1e-3, false, 3}), Error);
  }

  TEST_CASE("fd_normal_derivative") {
    const auto m = canonical();
    CHECK(std::abs(fd_normal_derivative(phi_field(m), m.geometry(), Point{1.0, 0.0},
                                        {1e-4, false, 2}) +
                   0.25) <= 1e-6);

    const BallGeometry ball = BallGeometry::on_axis(2, 1.0, 0.0);
    const ScalarField constant = [](std::span<const double>) { return -7.0; };
    CHECK(std::abs(fd_normal_derivative(constant, ball, Point{0.0, 1.0}, {1e-4, false, 2})) <= 1e-12);
    const ScalarField quad = square_norm;
    CHECK(std::abs(fd_normal_derivative(quad, ball, Point{0.6, 0.8}, {1e-4, false, 2}) - 2.0) <= 1e-6);
    CHECK(std::abs(fd_normal_derivative(quad, ball, Point{0.6, -0.8}, {1e-2, false, 4}) - 2.0) <= 1e-10);

    CHECK_THROWS_AS((void)fd_normal_derivative(quad, ball, Point{0.5, 0.0}, {1e-3, false, 2}), Error);
    try {
      (void)fd_normal_derivative(quad, ball, Point{1.0, 0.0}, {1.0, false, 2});
      FAIL("expected a stencil-clearance error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kStencilClearance);
    }
  }

  TEST_CASE("sample_interior contract") {
    const BallGeometry ball = BallGeometry::on_axis(2, 1.0, 0.0);
    const auto pts = sample_interior(ball, 100, 0.01, 7);
    REQUIRE(pts.size() == 100);
    for (const auto& p : pts) CHECK(norm(p) <= 0.99);
    CHECK(sample_interior(ball, 100, 0.01, 7) == pts);
    CHECK(sample_interior(ball, 100, 0.01, 8) != pts);

    const auto one = sample_interior(ball, 1, 0.01, 7);
    CHECK(one.size() == 1);
    CHECK(one == sample_interior(ball, 1, 0.01, 7));

    try {
      (void)sample_interior(ball, 10, 1.5, 7);
      FAIL("expected empty-domain error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kEmptyDomain);
    }
  }

  TEST_CASE("sample_boundary lies on the sphere") {
    for (const int n : {1, 2, 3, 4}) {
      const BallGeometry ball = BallGeometry::on_axis(n, 2.0, 0.0);
      const auto pts = sample_boundary(ball, 50);
      CHECK(pts.size() == (n == 1 ? 2u : 50u));
      for (const auto& p : pts) CHECK(norm(p) == doctest::Approx(2.0).epsilon(1e-14));
    }
  }

  TEST_CASE("convergence_order") {
    const auto m = canonical();
    const Point x0{0.5, 0.0};
    const auto second = convergence_order(phi_field(m), m.geometry(), x0, 1e-2, m.laplacian_phi(x0), 2);
    REQUIRE(second.order.has_value());
    CHECK(*second.order >= 1.8);
    CHECK(*second.order <= 2.2);

    const auto fourth = convergence_order(phi_field(m), m.geometry(), x0, 2e-2, m.laplacian_phi(x0), 4);
    REQUIRE(fourth.order.has_value());
    CHECK(*fourth.order >= 3.5);
    CHECK(*fourth.order <= 4.5);

    const BallGeometry ball = BallGeometry::on_axis(2, 1.0, 0.0);
    const ScalarField quad = square_norm;
    const auto flat = convergence_order(quad, ball, Point{0.3, 0.2}, 1e-2, 4.0, 2);
    CHECK_FALSE(flat.order.has_value());
  }

  TEST_CASE("property: halving h divides the Laplacian error by about four") {
    std::mt19937_64 rng(12);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
      const auto m = testing::random_model(rng);
      const Point x = testing::random_point_in_ball(rng, m.geometry(), 0.5);
      const double h = 2e-2 * m.radius();
      const auto est = convergence_order(phi_field(m), m.geometry(), x, h, m.laplacian_phi(x), 2);
      if (!est.order) continue;  // noise floor, nothing to say
      const double ratio = est.errors[0] / est.errors[1];
      CHECK(ratio >= 3.5);
      CHECK(ratio <= 4.5);
      ++checked;
    }
    CHECK(checked > 30);
  }

  TEST_CASE("residual_audit on the canonical model") {
    const auto report = residual_audit(canonical(), 1000, {1e-3, false, 2}, 7);
    CHECK(report.pass);
    CHECK(report.n_interior == 1000);
    CHECK(report.n_boundary == 1000);
    CHECK(report.max_pde_residual_fd <= 1e-4);
    CHECK(report.max_robin_residual_fd <= 1e-4);
    REQUIRE(report.observed_order.has_value());
    CHECK(*report.observed_order == doctest::Approx(2.0).epsilon(0.15));
  }

  TEST_CASE("residual_audit in one dimension") {
    const auto m1 =
        CounterexampleModel::derive(BallGeometry::on_axis(1, 1.0, 0.5), RobinParameter(1.0));
    const auto report = residual_audit(m1, 100, {1e-4, false, 2}, 7);
    CHECK(report.pass);
    CHECK(report.n_boundary == 2);
  }

  TEST_CASE("residual_audit fails for perturbed coefficients") {
    const auto bad = residual_audit(
        canonical().perturbed(CounterexampleModel::Coefficient::kC2, 0.1), 1000, {1e-3, false, 2}, 7);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_pde_residual_fd >= 1e-2);

    using C = CounterexampleModel::Coefficient;
    std::mt19937_64 rng(99);
    for (int i = 0; i < 12; ++i) {
      const auto m = testing::random_model(rng);
      for (const C which : {C::kC1, C::kC2, C::kC3}) {
        const auto report = residual_audit(m.perturbed(which, 1e-3), 200, {5e-4, false, 2}, 3);
        CHECK_FALSE(report.pass);
      }
    }
  }

  TEST_CASE("residual_audit reports clearance problems instead of throwing") {
    const auto report = residual_audit(canonical(), 10, {0.6, false, 2}, 7);
    CHECK_FALSE(report.pass);
    CHECK_FALSE(report.diagnostics.empty());
  }

  TEST_CASE("residual_audit is deterministic") {
    const auto a = residual_audit(canonical(), 300, {2e-3, true, 2}, 42);
    const auto b = residual_audit(canonical(), 300, {2e-3, true, 2}, 42);
    CHECK(a.max_pde_residual_fd == b.max_pde_residual_fd);
    CHECK(a.max_robin_residual_fd == b.max_robin_residual_fd);
    CHECK(a.observed_order == b.observed_order);
    CHECK(a.tolerance == b.tolerance);
  }

  TEST_CASE("closed_form_audit") {
    const auto r = closed_form_audit(canonical(), 1000, 7);
    CHECK(r.pass);
    CHECK(r.max_pde_residual_rel <= 1e-10);
    CHECK(r.max_robin_residual_rel <= 1e-12);
    CHECK_FALSE(closed_form_audit(canonical().perturbed(CounterexampleModel::Coefficient::kC3, 1e-6),
                                  100, 7)
                    .pass);
  }
}
