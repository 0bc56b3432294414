#include "ctgeo/soliton.hpp"

#include <cmath>

#include "ctgeo/frame.hpp"

namespace ctgeo {

namespace {

using Eigen::Matrix3d;

/// Ric + (λ + ρR)g, the V-independent part of the residual.
Matrix3d static_part(const Geometry3& geo, double lambda, double rho) {
  const Matrix3d g = values(geo.g);
  const Matrix3d ric = values(as_matrix(geo.ricci));
  return ric + (lambda + rho * geo.scalar.value()) * g;
}

Matrix3d half_lie_metric(const Geometry3& geo, const VectorField& v,
                         const Point& p) {
  const auto lg = lie_derivative(evaluate(v, p, 3), geo.metric_tensor());
  return 0.5 * values(as_matrix(lg));
}

}  // namespace

Matrix3d soliton_residual(const MetricField& g, const SolitonSpec& spec,
                          const Point& p) {
  const Geometry3 geo = geometry_at(g, p);
  return half_lie_metric(geo, spec.v, p) + static_part(geo, spec.lambda, spec.rho);
}

Matrix3d gradient_soliton_residual(const MetricField& g, const ScalarField& f,
                                   double lambda, double rho, const Point& p) {
  const Geometry3 geo = geometry_at(g, p);
  const Matrix3d h = values(as_matrix(hess(geo.gamma, f(p, 3))));
  return h + static_part(geo, lambda, rho);
}

std::string_view class_name(SolitonClass c) {
  switch (c) {
    case SolitonClass::kExpanding: return "expanding";
    case SolitonClass::kSteady: return "steady";
    case SolitonClass::kShrinking: return "shrinking";
  }
  return "unknown";
}

LambdaSolve solve_lambda(const MetricField& g, const VectorField& v, double rho,
                         const ProbeGrid& grid) {
  if (grid.points.empty()) throw ArgumentError("solve_lambda needs probes");
  std::vector<Matrix3d> framed;
  framed.reserve(grid.points.size());
  double diag_sum = 0.0;
  for (const auto& p : grid.points) {
    const Geometry3 geo = geometry_at(g, p);
    const Matrix3d t = half_lie_metric(geo, v, p) + static_part(geo, 0.0, rho);
    const Matrix3d e = values(orthonormal_frame<Jet3>(geo.g));
    framed.push_back(frame_form(e, t));
    diag_sum += framed.back().trace();
  }
  LambdaSolve out;
  out.lambda_hat = -diag_sum / (3.0 * static_cast<double>(framed.size()));
  for (const auto& f : framed) {
    const Matrix3d r = f + out.lambda_hat * Matrix3d::Identity();
    out.residual_after = std::max(out.residual_after, r.cwiseAbs().maxCoeff());
  }
  constexpr double kDeadBand = 1e-10;
  if (out.lambda_hat > kDeadBand) {
    out.soliton_class = SolitonClass::kExpanding;
  } else if (out.lambda_hat < -kDeadBand) {
    out.soliton_class = SolitonClass::kShrinking;
  }
  return out;
}

BourguignonVelocity bourguignon_velocity(const MetricField& g, double rho,
                                         const Point& p) {
  const Geometry3 geo = geometry_at(g, p);
  BourguignonVelocity out;
  out.value = -2.0 * (values(as_matrix(geo.ricci)) -
                      rho * geo.scalar.value() * values(geo.g));
  out.rho_warning = rho >= kRhoExistenceBound;
  return out;
}

double einstein_family_slope(double kappa, double rho) {
  // Ric(cg₀) = κg₀ and R(cg₀) = 3κ/c, so c′g₀ = −2(κg₀ − ρ(3κ/c)cg₀).
  return -2.0 * kappa * (1.0 - 3.0 * rho);
}

FlowTrajectory einstein_family_flow(double kappa, double rho, double c0,
                                    double horizon, double step) {
  if (!std::isfinite(kappa) || !std::isfinite(rho)) {
    throw ArgumentError("flow parameters must be finite");
  }
  if (!(c0 > 0.0)) throw ArgumentError("flow needs c0 > 0");
  if (!(horizon > 0.0)) throw ArgumentError("flow needs horizon > 0");
  if (!(step > 0.0)) throw ArgumentError("flow needs step > 0");

  const double slope = einstein_family_slope(kappa, rho);
  const auto rhs = [slope](double /*s*/, double /*c*/) { return slope; };

  FlowTrajectory traj;
  traj.kappa = kappa;
  traj.rho = rho;
  traj.rho_warning = rho >= kRhoExistenceBound;
  traj.samples.push_back({0.0, c0});

  const auto n = static_cast<long>(std::ceil(horizon / step - 1e-12));
  double c = c0;
  for (long i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) * step;
    const double s_next = std::min(horizon, static_cast<double>(i + 1) * step);
    const double h = s_next - s;
    const double k1 = rhs(s, c);
    const double k2 = rhs(s + h / 2, c + h / 2 * k1);
    const double k3 = rhs(s + h / 2, c + h / 2 * k2);
    const double k4 = rhs(s + h, c + h * k3);
    const double c_next = c + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (c_next <= 1e-12 * c0) {
      // The reduced law is linear, so the crossing inside the step is exact.
      traj.extinction = s + h * c / (c - c_next);
      break;
    }
    c = c_next;
    traj.samples.push_back({s_next, c});
  }
  return traj;
}

}  // namespace ctgeo
