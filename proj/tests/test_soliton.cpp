#include <doctest.h>

#include "ctgeo/atlas.hpp"
#include "ctgeo/soliton.hpp"
#include "support/oracles.hpp"

using namespace ctgeo;

namespace {

const MetricField& metric_of(const char* name) { return builtin(name).structure.g; }

ProbeGrid grid_of(const MetricField& g, int n = 64) {
  return halton_grid(g.chart().box, n, 0, 1e-8);
}

const VectorField kZero = constant_vector(Point::Zero());

/// ∇f as a vector field, raised with the metric at each point.
VectorField gradient_field(const MetricField& g, const ScalarField& f) {
  VectorField v;
  for (int i = 0; i < 3; ++i)
    v[i] = ScalarField(
        [g, f, i](const std::array<double, 3>& at, int) {
          const Point p(at[0], at[1], at[2]);
          return grad(inverse3(g.evaluate(p, 3)), f(p, 3))(i);
        },
        "grad_" + std::to_string(i));
  return v;
}

}  // namespace

TEST_CASE("soliton residual") {
  SUBCASE("cosh warp with lambda = 2 is a soliton") {
    const MetricField& g = metric_of("paper_cosh_warp");
    for (const Point& p : grid_of(g).points)
      CHECK(soliton_residual(g, {kZero, 2.0, 0.0}, p).cwiseAbs().maxCoeff() <= 1e-8);
  }
  SUBCASE("rho = 0.1 leaves -0.6 g") {
    const MetricField& g = metric_of("paper_cosh_warp");
    for (const Point& p : grid_of(g, 16).points) {
      const Eigen::Matrix3d r = soliton_residual(g, {kZero, 2.0, 0.1}, p);
      CHECK((r + 0.6 * g.value(p)).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  SUBCASE("flat and steady") {
    const MetricField& g = metric_of("euclidean3");
    for (double rho : {0.0, 0.3, -2.0})
      CHECK(soliton_residual(g, {kZero, 0.0, rho}, Point(0.1, 0.2, 0.3)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("affine in lambda with slope g") {
    const MetricField& g = metric_of("paper_kenmotsu_exp");
    const VectorField v = parse_vector({"sin(t)", "x*y", "t^2"});
    for (const Point& p : grid_of(g, 16).points) {
      const Eigen::Matrix3d a = soliton_residual(g, {v, -1.5, 0.2}, p);
      const Eigen::Matrix3d b = soliton_residual(g, {v, 2.25, 0.2}, p);
      CHECK((b - a - 3.75 * g.value(p)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("gradient solitons") {
  SUBCASE("Hess f equals half the Lie derivative along grad f") {
    oracle::FieldFactory f(314);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto gs = f.metric();
      const MetricField g = parse_metric(Chart{}, {gs[0], gs[1], gs[2], gs[3], gs[4], gs[5]});
      const ScalarField pot = ScalarField::parse(f.wave(1.0) + " + " + f.polynomial(0.5));
      const Point p = f.point();
      const double lambda = f.u(-3, 3), rho = f.u(-0.5, 0.5);
      const Eigen::Matrix3d a = gradient_soliton_residual(g, pot, lambda, rho, p);
      const Eigen::Matrix3d b = soliton_residual(g, {gradient_field(g, pot), lambda, rho}, p);
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-7);
  }
  SUBCASE("Gaussian soliton") {
    const MetricField& g = metric_of("euclidean3");
    for (double lambda : {-2.0, 0.5, 3.0}) {
      const ScalarField pot =
          ScalarField::parse(std::to_string(-lambda / 2) + "*(x^2 + y^2 + t^2)");
      for (const Point& p : grid_of(g, 8).points)
        CHECK(gradient_soliton_residual(g, pot, lambda, 0.0, p).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
  SUBCASE("constant potential reduces to V = 0") {
    const MetricField& g = metric_of("paper_kenmotsu_exp");
    const Point p(0.1, 1.3, 0.2);
    CHECK(gradient_soliton_residual(g, ScalarField::constant(4.0), 1.0, 0.2, p) ==
          soliton_residual(g, {kZero, 1.0, 0.2}, p));
  }
}

TEST_CASE("solve_lambda") {
  const MetricField& g = metric_of("paper_cosh_warp");
  const ProbeGrid grid = grid_of(g);
  SUBCASE("lambda = 2, expanding") {
    const LambdaSolve s = solve_lambda(g, kZero, 0.0, grid);
    CHECK(std::abs(s.lambda_hat - 2.0) <= 1e-8);
    CHECK(s.residual_after <= 1e-8);
    CHECK(s.soliton_class == SolitonClass::kExpanding);
    CHECK(class_name(s.soliton_class) == "expanding");
  }
  SUBCASE("rho dependence 2 + 6 rho") {
    for (double rho : {0.1, 0.25}) {
      const LambdaSolve s = solve_lambda(g, kZero, rho, grid);
      CHECK(std::abs(s.lambda_hat - (2.0 + 6.0 * rho)) <= 1e-8);
      CHECK(s.residual_after <= 1e-8);
    }
  }
  SUBCASE("flat is steady") {
    const MetricField& flat = metric_of("euclidean3");
    for (double rho : {0.0, 0.7}) {
      const LambdaSolve s = solve_lambda(flat, kZero, rho, grid_of(flat, 8));
      CHECK(s.lambda_hat == 0.0);
      CHECK(s.soliton_class == SolitonClass::kSteady);
    }
  }
  SUBCASE("radial fields") {
    const MetricField& flat = metric_of("euclidean3");
    // V = −x∂x − y∂y − t∂t gives ½L_Vg = −g, so λ = 1.
    const LambdaSolve s = solve_lambda(flat, parse_vector({"-x", "-y", "-t"}), 0.0, grid_of(flat, 8));
    CHECK(s.lambda_hat == doctest::Approx(1.0));
    CHECK(s.soliton_class == SolitonClass::kExpanding);
    const LambdaSolve s2 = solve_lambda(flat, parse_vector({"x", "y", "t"}), 0.0, grid_of(flat, 8));
    CHECK(s2.soliton_class == SolitonClass::kShrinking);
  }
  SUBCASE("empty grid") {
    CHECK_THROWS_AS(solve_lambda(g, kZero, 0.0, ProbeGrid{}), ArgumentError);
  }
}

TEST_CASE("Bourguignon velocity") {
  CHECK(bourguignon_velocity(metric_of("euclidean3"), 0.2, Point(0, 0, 0)).value.cwiseAbs().maxCoeff() == 0.0);
  const MetricField& g = metric_of("paper_cosh_warp");
  for (const Point& p : grid_of(g, 16).points) {
    const BourguignonVelocity v = bourguignon_velocity(g, 0.0, p);
    CHECK((v.value - 4.0 * g.value(p)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK_FALSE(v.rho_warning);
    const Geometry3 geo = geometry_at(g, p);
    CHECK(v.value == -2.0 * as_matrix(values(geo.ricci)));
  }
  const BourguignonVelocity w = bourguignon_velocity(g, 0.3, Point(0, 1, 0));
  CHECK(w.rho_warning);
  // −2(Ric − ρRg) = −2(−2 + 1.8)g = 0.4g.
  CHECK((w.value - 0.4 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("Einstein-family flow") {
  SUBCASE("hyperbolic family expands linearly") {
    const FlowTrajectory t = einstein_family_flow(-2.0, 0.0, 1.0, 1.0, 1e-2);
    CHECK(std::abs(t.samples.back().s - 1.0) <= 1e-12);
    CHECK(std::abs(t.samples.back().c - 5.0) <= 1e-10);
    CHECK_FALSE(t.extinction);
    CHECK_FALSE(t.rho_warning);
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
      CHECK(t.samples[i].s > t.samples[i - 1].s);
      const double ds = t.samples[i].s - t.samples[i - 1].s;
      CHECK(std::abs((t.samples[i].c - t.samples[i - 1].c) / ds - 4.0) <= 1e-9);
    }
  }
  SUBCASE("spherical family goes extinct at s = 1/4") {
    const FlowTrajectory t = einstein_family_flow(2.0, 0.0, 1.0, 1.0, 1e-2);
    REQUIRE(t.extinction);
    CHECK(std::abs(*t.extinction - 0.25) <= 1e-10);
    for (const auto& s : t.samples) CHECK(s.c > 0.0);
  }
  SUBCASE("rho = 1/3 is stationary") {
    for (double kappa : {-2.0, 0.5, 7.0}) {
      const FlowTrajectory t = einstein_family_flow(kappa, 1.0 / 3.0, 2.0, 1.0, 0.1);
      for (const auto& s : t.samples) CHECK(std::abs(s.c - 2.0) <= 1e-14);
      CHECK(t.rho_warning);
    }
  }
  SUBCASE("slope law") {
    CHECK(einstein_family_slope(-2.0, 0.0) == 4.0);
    CHECK(einstein_family_slope(2.0, 0.0) == -4.0);
    CHECK(einstein_family_slope(1.0, 0.25) == doctest::Approx(-0.5));
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(einstein_family_flow(-2.0, 0.0, 0.0, 1.0, 0.1), ArgumentError);
    CHECK_THROWS_AS(einstein_family_flow(-2.0, 0.0, 1.0, -1.0, 0.1), ArgumentError);
    CHECK_THROWS_AS(einstein_family_flow(-2.0, 0.0, 1.0, 1.0, 0.0), ArgumentError);
    CHECK_THROWS_AS(einstein_family_flow(-2.0, 0.0, -1.0, 1.0, 0.1), ArgumentError);
  }
  SUBCASE("warning threshold") {
    CHECK_FALSE(einstein_family_flow(1.0, 0.2499, 1.0, 0.1, 0.1).rho_warning);
    CHECK(einstein_family_flow(1.0, 0.25, 1.0, 0.1, 0.1).rho_warning);
  }
}
