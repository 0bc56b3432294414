#pragma once

// Ricci ρ-solitons and the Ricci-Bourguignon flow.

#include <optional>
#include <string_view>
#include <vector>

#include "ctgeo/field.hpp"
#include "ctgeo/probes.hpp"
#include "ctgeo/riemann.hpp"

namespace ctgeo {

struct SolitonSpec {
  VectorField v;
  double lambda = 0.0;
  double rho = 0.0;
};

/// ½L_Vg + Ric + (λ + ρR)g at p.
Eigen::Matrix3d soliton_residual(const MetricField& g, const SolitonSpec& spec,
                                 const Point& p);

/// Hess f + Ric + (λ + ρR)g at p.
Eigen::Matrix3d gradient_soliton_residual(const MetricField& g,
                                          const ScalarField& f, double lambda,
                                          double rho, const Point& p);

enum class SolitonClass { kExpanding, kSteady, kShrinking };
std::string_view class_name(SolitonClass c);

struct LambdaSolve {
  double lambda_hat = 0.0;
  /// Max frame component of the residual at λ̂ over the grid.
  double residual_after = 0.0;
  SolitonClass soliton_class = SolitonClass::kSteady;
};

/// Least-squares λ over the diagonal frame components of the residual.
LambdaSolve solve_lambda(const MetricField& g, const VectorField& v, double rho,
                         const ProbeGrid& grid);

/// Short-time existence of the flow is only known for ρ < 1/(2(n−1)) = 1/4.
inline constexpr double kRhoExistenceBound = 0.25;

struct BourguignonVelocity {
  Eigen::Matrix3d value;
  bool rho_warning = false;
};

/// −2(Ric − ρRg) at p.
BourguignonVelocity bourguignon_velocity(const MetricField& g, double rho,
                                         const Point& p);

struct FlowSample {
  double s = 0.0;
  double c = 0.0;
};

struct FlowTrajectory {
  std::vector<FlowSample> samples;
  double kappa = 0.0;
  double rho = 0.0;
  bool rho_warning = false;
  /// Flow time at which c reaches 0, if it does before the horizon.
  std::optional<double> extinction;
};

/// dc/ds for g(s) = c(s)g₀ with Ric(g₀) = κg₀ in dimension 3.
double einstein_family_slope(double kappa, double rho);

/// RK4 integration of the reduced flow from c(0) = c0 up to the horizon.
FlowTrajectory einstein_family_flow(double kappa, double rho, double c0,
                                    double horizon, double step);

}  // namespace ctgeo
