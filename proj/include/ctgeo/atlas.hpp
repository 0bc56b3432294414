#pragma once

// Built-in example manifolds and warped-product machinery.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ctgeo/contact.hpp"

namespace ctgeo {

struct Manifold {
  std::string name;
  Chart chart;
  AlmostContactStructure structure;
};

/// Registered names: euclidean3, paper_cosh_warp, paper_kenmotsu_exp.
const Manifold& builtin(std::string_view name);
std::vector<std::string> builtin_names();

/// The fiber-rotation lift φ∂x = ∂y, φ∂y = −∂x, φ∂t = 0, with ξ = ∂t, η = dt.
AlmostContactStructure rotation_structure(const MetricField& g);

/// A positive warp function γ(t), closed-form or sampled from an ODE solve.
class WarpProfile {
 public:
  /// γ given by an expression in the chart coordinate t.
  static WarpProfile closed_form(const Expr& gamma, double kn, Interval range);
  /// Samples of u = ln γ and u′ on a uniform grid, with u″ = kn·e^{2u}.
  static WarpProfile sampled(std::vector<double> u, std::vector<double> du,
                             double t0, double step, double kn);

  double kn() const { return kn_; }
  const Interval& range() const { return range_; }
  bool is_sampled() const { return !u_.empty(); }

  /// γ and its first four t-derivatives. Throws DomainError outside the range.
  std::array<double, 5> derivatives(double t) const;
  double gamma(double t) const { return derivatives(t)[0]; }
  /// γ as a jet in the chart coordinate t (index 2).
  Jet3 jet(double t, int order) const;
  /// ln γ without the derivative machinery; sampled profiles interpolate.
  double log_gamma(double t) const;
  /// Spacing of the samples; 0 for closed forms.
  double sample_step() const { return step_; }

 private:
  void check_range(double t) const;

  Expr expr_ = parse("1");
  double kn_ = 0.0;
  Interval range_;
  std::vector<double> u_, du_;
  double t0_ = 0.0;
  double step_ = 0.0;
};

enum class WarpMode {
  kInverseGamma,  // g = h/γ² + dt²
  kDirect,        // g = γ²h + dt²
};

/// Metric on (x, y, t) from a fiber metric h = (h_xx, h_xy, h_yy) in (x, y).
MetricField warped_product(const Chart& chart,
                           const std::array<ScalarField, 3>& fiber,
                           const WarpProfile& profile, WarpMode mode);

/// Half-plane fiber (dx² + dy²)/y², curvature −1.
std::array<ScalarField, 3> half_plane_fiber();
/// Flat fiber dx² + dy².
std::array<ScalarField, 3> flat_fiber();

/// (ln γ)″(t) − γ(t)²·K^N. Sampled profiles use a five-point stencil of ln γ
/// at the sample spacing, so the value is a genuine consistency check.
double warp_ode_residual(const WarpProfile& profile, double t);

/// RK4 on u = ln γ: u′ = v, v′ = K^N e^{2u}, from t = 0 to t_max.
WarpProfile solve_warp_ode(double kn, double gamma0, double dgamma0,
                           double t_max, double step);

struct FProfileOptions {
  bool limit_mode = false;
  /// |γ′| below this is treated as a zero of γ′.
  double epsilon = 1e-6;
};

/// f = (γ″ + (λ + ρR)γ + K^Nγ³)/γ′² − 3γ′/γ. At zeros of γ′ the limit mode
/// replaces the quotient by the ratio of second Taylor coefficients.
double soliton_f_profile(const WarpProfile& profile, double lambda, double rho,
                         double scalar_r, double t, FProfileOptions opts = {});

/// σ with ∂_t ln σ = 2(1 − β) and σ(0) = 1, integrated by RK4 on `range`.
/// β must depend on t only; the quadrature samples it on the line through
/// `anchor` = (x, y).
ScalarField sigma_gauge(const ScalarField& beta, Interval range,
                        double step = 1e-3,
                        std::array<double, 2> anchor = {0.0, 0.0});

}  // namespace ctgeo
