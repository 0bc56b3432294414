#include "ctgeo/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

namespace ctgeo {

namespace {

MetricField metric_from(const Chart& chart, const std::array<const char*, 6>& src) {
  std::array<std::string, 6> upper;
  std::copy(src.begin(), src.end(), upper.begin());
  return parse_metric(chart, upper);
}

Manifold make(std::string name, DomainBox box,
              const std::array<const char*, 6>& metric) {
  Chart chart;
  chart.box = box;
  const MetricField g = metric_from(chart, metric);
  return Manifold{std::move(name), chart, rotation_structure(g)};
}

const std::map<std::string, Manifold, std::less<>>& registry() {
  static const auto* reg = [] {
    auto* m = new std::map<std::string, Manifold, std::less<>>();
    const DomainBox cube{{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};
    const DomainBox half_plane{{{-1.0, 1.0}, {0.5, 3.0}, {-1.0, 1.0}}};
    m->emplace("euclidean3",
               make("euclidean3", cube, {"1", "0", "0", "1", "0", "1"}));
    m->emplace("paper_cosh_warp",
               make("paper_cosh_warp", half_plane,
                    {"cosh(t)^2/y^2", "0", "0", "cosh(t)^2/y^2", "0", "1"}));
    m->emplace("paper_kenmotsu_exp",
               make("paper_kenmotsu_exp", half_plane,
                    {"exp(2*t)/y^2", "0", "0", "exp(2*t)/y^2", "0", "1"}));
    return m;
  }();
  return *reg;
}

/// γ and its derivatives from u = ln γ and its derivatives (Bell polynomials).
std::array<double, 5> exp_derivatives(const std::array<double, 5>& u) {
  const double g = std::exp(u[0]);
  const double u1 = u[1], u2 = u[2], u3 = u[3], u4 = u[4];
  return {g, g * u1, g * (u2 + u1 * u1), g * (u3 + 3 * u1 * u2 + u1 * u1 * u1),
          g * (u4 + 4 * u1 * u3 + 3 * u2 * u2 + 6 * u1 * u1 * u2 +
               u1 * u1 * u1 * u1)};
}

double hermite(double y0, double d0, double y1, double d1, double h, double s) {
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 +
         (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
}

}  // namespace

const Manifold& builtin(std::string_view name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) {
    throw ArgumentError("unknown builtin '" + std::string(name) + "'");
  }
  return it->second;
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, m] : registry()) out.push_back(name);
  return out;
}

AlmostContactStructure rotation_structure(const MetricField& g) {
  const auto c = [](double v) { return ScalarField::constant(v); };
  EndomorphismField phi;
  for (auto& row : phi) row.fill(c(0.0));
  phi[0][1] = c(-1.0);
  phi[1][0] = c(1.0);
  return AlmostContactStructure{g, phi, constant_vector(Point(0, 0, 1)),
                                constant_vector(Point(0, 0, 1))};
}

// ---------------------------------------------------------------------------

WarpProfile WarpProfile::closed_form(const Expr& gamma, double kn,
                                     Interval range) {
  if (!(range.hi > range.lo)) throw ArgumentError("empty warp profile range");
  WarpProfile w;
  w.expr_ = gamma;
  w.kn_ = kn;
  w.range_ = range;
  return w;
}

WarpProfile WarpProfile::sampled(std::vector<double> u, std::vector<double> du,
                                 double t0, double step, double kn) {
  if (u.size() < 2 || u.size() != du.size()) {
    throw ArgumentError("sampled warp profile needs matching samples");
  }
  if (!(step > 0.0)) throw ArgumentError("sample step must be positive");
  WarpProfile w;
  w.kn_ = kn;
  w.t0_ = t0;
  w.step_ = step;
  w.range_ = {t0, t0 + step * static_cast<double>(u.size() - 1)};
  w.u_ = std::move(u);
  w.du_ = std::move(du);
  return w;
}

void WarpProfile::check_range(double t) const {
  const double slack = 1e-12 * std::max(1.0, range_.hi - range_.lo);
  if (!(t >= range_.lo - slack && t <= range_.hi + slack)) {
    throw DomainError("warp profile", t, "t outside the profile range");
  }
}

std::array<double, 5> WarpProfile::derivatives(double t) const {
  check_range(t);
  if (!is_sampled()) {
    // Nested jets in t: outer tiers times inner tiers reach the fourth derivative.
    using J2 = Jet<Jet3>;
    const J2 zero(Jet3::constant(0.0, 3));
    const J2 tv = J2::variable(2, Jet3::variable(2, t, 3), 3);
    const J2 r = expr_.evaluate<J2>({zero, zero, tv});
    const std::array<double, 5> d{r.value().value(), r.value().d1(2),
                                  r.value().d2(2, 2), r.value().d3(2, 2, 2),
                                  r.d1(2).d3(2, 2, 2)};
    if (!(d[0] > 0.0)) {
      throw DomainError("warp profile", d[0], "gamma must be positive");
    }
    return d;
  }
  const auto n = static_cast<double>(u_.size() - 1);
  const double pos = std::clamp((t - t0_) / step_, 0.0, n);
  const auto i = std::min(static_cast<std::size_t>(pos), u_.size() - 2);
  const double s = pos - static_cast<double>(i);
  const auto dv = [this](std::size_t k) { return kn_ * std::exp(2 * u_[k]); };
  const double u = hermite(u_[i], du_[i], u_[i + 1], du_[i + 1], step_, s);
  const double v = hermite(du_[i], dv(i), du_[i + 1], dv(i + 1), step_, s);
  const double e2u = std::exp(2 * u);
  const double u2 = kn_ * e2u;
  return exp_derivatives({u, v, u2, 2 * kn_ * e2u * v,
                          2 * kn_ * e2u * (2 * v * v + u2)});
}

Jet3 WarpProfile::jet(double t, int order) const {
  const auto d = derivatives(t);
  Jet3 j = Jet3::constant(d[0], order);
  if (order >= 1) j.raw_d1()[2] = d[1];
  if (order >= 2) j.raw_d2()[detail::kSym2[2][2]] = d[2];
  if (order >= 3) j.raw_d3()[detail::sym3(2, 2, 2)] = d[3];
  return j;
}

double WarpProfile::log_gamma(double t) const {
  if (!is_sampled()) return std::log(gamma(t));
  check_range(t);
  const auto n = static_cast<double>(u_.size() - 1);
  const double pos = std::clamp((t - t0_) / step_, 0.0, n);
  const auto i = std::min(static_cast<std::size_t>(pos), u_.size() - 2);
  const double s = pos - static_cast<double>(i);
  if (s == 0.0) return u_[i];
  return hermite(u_[i], du_[i], u_[i + 1], du_[i + 1], step_, s);
}

// ---------------------------------------------------------------------------

std::array<ScalarField, 3> half_plane_fiber() {
  const ScalarField d = ScalarField::parse("1/y^2");
  return {d, ScalarField::constant(0.0), d};
}

std::array<ScalarField, 3> flat_fiber() {
  return {ScalarField::constant(1.0), ScalarField::constant(0.0),
          ScalarField::constant(1.0)};
}

MetricField warped_product(const Chart& chart,
                           const std::array<ScalarField, 3>& fiber,
                           const WarpProfile& profile, WarpMode mode) {
  const auto scaled = [&profile, mode](const ScalarField& h) {
    return ScalarField(
        [h, profile, mode](const std::array<double, 3>& at, int order) {
          const Jet3 gamma = profile.jet(at[2], order);
          if (!(gamma.value() > 0.0)) {
            throw DomainError("warped_product", gamma.value(),
                              "warp function must be positive");
          }
          const Jet3 w = gamma * gamma;
          const Jet3 hv = h(Point(at[0], at[1], at[2]), order);
          return mode == WarpMode::kDirect ? w * hv : hv / w;
        },
        (mode == WarpMode::kDirect ? "gamma^2*(" : "(") + h.label() +
            (mode == WarpMode::kDirect ? ")" : ")/gamma^2"));
  };
  const ScalarField zero = ScalarField::constant(0.0);
  return MetricField(chart, {scaled(fiber[0]), scaled(fiber[1]), zero,
                             scaled(fiber[2]), zero, ScalarField::constant(1.0)});
}

double warp_ode_residual(const WarpProfile& profile, double t) {
  const auto d = profile.derivatives(t);
  const double kn_term = d[0] * d[0] * profile.kn();
  if (!profile.is_sampled()) {
    const double r = d[1] / d[0];
    return (d[2] / d[0] - r * r) - kn_term;
  }
  const double h = profile.sample_step();
  const auto& range = profile.range();
  const auto u = [&profile](double s) { return profile.log_gamma(s); };
  if (t - 2 * h >= range.lo && t + 2 * h <= range.hi) {
    const double second = (-u(t + 2 * h) + 16 * u(t + h) - 30 * u(t) +
                           16 * u(t - h) - u(t - 2 * h)) /
                          (12 * h * h);
    return second - kn_term;
  }
  // One-sided fourth-order stencil near the ends of the range.
  const double s = t - 5 * h >= range.lo ? -h : h;
  const double second = (45 * u(t) - 154 * u(t + s) + 214 * u(t + 2 * s) -
                         156 * u(t + 3 * s) + 61 * u(t + 4 * s) -
                         10 * u(t + 5 * s)) /
                        (12 * h * h);
  return second - kn_term;
}

WarpProfile solve_warp_ode(double kn, double gamma0, double dgamma0,
                           double t_max, double step) {
  if (!(gamma0 > 0.0)) throw ArgumentError("warp ODE needs gamma0 > 0");
  if (!(step > 0.0)) throw ArgumentError("warp ODE needs step > 0");
  if (!(t_max != 0.0) || !std::isfinite(t_max)) {
    throw ArgumentError("warp ODE needs a nonzero finite t_max");
  }
  const auto n = static_cast<std::size_t>(std::ceil(std::abs(t_max) / step - 1e-9));
  const double h = t_max / static_cast<double>(n);
  std::vector<double> u(n + 1), v(n + 1);
  u[0] = std::log(gamma0);
  v[0] = dgamma0 / gamma0;
  const auto acc = [kn](double uu) { return kn * std::exp(2 * uu); };
  for (std::size_t i = 0; i < n; ++i) {
    const double u0 = u[i], v0 = v[i];
    const double k1u = v0, k1v = acc(u0);
    const double k2u = v0 + h / 2 * k1v, k2v = acc(u0 + h / 2 * k1u);
    const double k3u = v0 + h / 2 * k2v, k3v = acc(u0 + h / 2 * k2u);
    const double k4u = v0 + h * k3v, k4v = acc(u0 + h * k3u);
    u[i + 1] = u0 + h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
    v[i + 1] = v0 + h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    if (!std::isfinite(u[i + 1]) || !std::isfinite(v[i + 1])) {
      throw DomainError("solve_warp_ode", h * static_cast<double>(i + 1),
                        "solution blew up");
    }
  }
  if (h < 0) {
    std::reverse(u.begin(), u.end());
    std::reverse(v.begin(), v.end());
    return WarpProfile::sampled(std::move(u), std::move(v), t_max, -h, kn);
  }
  return WarpProfile::sampled(std::move(u), std::move(v), 0.0, h, kn);
}

double soliton_f_profile(const WarpProfile& profile, double lambda, double rho,
                         double scalar_r, double t, FProfileOptions opts) {
  const auto d = profile.derivatives(t);
  const double a = lambda + rho * scalar_r;
  const double k = profile.kn();
  const double g = d[0], g1 = d[1], g2 = d[2], g3 = d[3], g4 = d[4];
  const double tail = 3 * g1 / g;
  const double n0 = g2 + a * g + k * g * g * g;
  if (std::abs(g1) > opts.epsilon) return n0 / (g1 * g1) - tail;
  if (!opts.limit_mode) {
    throw DomainError("soliton_f_profile", t,
                      "gamma' vanishes; the quotient needs limit mode");
  }
  // Taylor coefficients of numerator and γ′² about t; the quotient is
  // removable only if the numerator vanishes to second order as well.
  const double n1 = g3 + a * g1 + 3 * k * g * g * g1;
  const double n2 = g4 + a * g2 + 3 * k * (2 * g * g1 * g1 + g * g * g2);
  const double d2 = 2 * g2 * g2 + 2 * g1 * g3;
  const double scale = 1e-3 * (1.0 + std::abs(n2));
  if (std::abs(n0) > scale || std::abs(n1) > scale || !(std::abs(d2) > 1e-14)) {
    throw DomainError("soliton_f_profile", t,
                      "gamma' vanishes and the singularity is not removable");
  }
  return n2 / d2 - tail;
}

ScalarField sigma_gauge(const ScalarField& beta, Interval range, double step,
                        std::array<double, 2> anchor) {
  if (!(step > 0.0)) throw ArgumentError("sigma_gauge needs step > 0");
  const double lo = std::min(range.lo, 0.0), hi = std::max(range.hi, 0.0);
  const auto rate = [beta, anchor](double s) {
    return 2.0 * (1.0 - beta(Point(anchor[0], anchor[1], s), 0).value());
  };
  // u = ln σ on nodes k·step, separately towards +t and −t from u(0) = 0.
  const auto integrate = [&rate, step](double extent, double dir) {
    const auto n = static_cast<std::size_t>(std::ceil(extent / step)) + 1;
    std::vector<double> u(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double s = dir * step * static_cast<double>(k), h = dir * step;
      u[k + 1] = u[k] + h / 6 * (rate(s) + 4 * rate(s + h / 2) + rate(s + h));
    }
    return u;
  };
  const auto pos = std::make_shared<const std::vector<double>>(integrate(hi, 1.0));
  const auto neg = std::make_shared<const std::vector<double>>(integrate(-lo, -1.0));
  return ScalarField(
      [beta, pos, neg, lo, hi, step, rate](const std::array<double, 3>& at,
                                           int order) {
        const double t = at[2];
        if (t < lo - 1e-12 || t > hi + 1e-12) {
          throw DomainError("sigma_gauge", t, "t outside the integrated range");
        }
        const auto& nodes = t >= 0 ? *pos : *neg;
        const double dir = t >= 0 ? 1.0 : -1.0;
        const auto k = std::min(static_cast<std::size_t>(std::abs(t) / step),
                                nodes.size() - 1);
        const double s0 = dir * step * static_cast<double>(k), h = t - s0;
        const double u =
            nodes[k] + h / 6 * (rate(s0) + 4 * rate(s0 + h / 2) + rate(t));

        Jet3 uj = Jet3::constant(u, order);
        if (order >= 1) {
          const Jet3 b = beta(Point(at[0], at[1], t), order - 1);
          uj.raw_d1()[2] = 2.0 * (1.0 - b.value());
          if (order >= 2) uj.raw_d2()[detail::kSym2[2][2]] = -2.0 * b.d1(2);
          if (order >= 3) uj.raw_d3()[detail::sym3(2, 2, 2)] = -2.0 * b.d2(2, 2);
        }
        return exp(uj);
      },
      "sigma[" + beta.label() + "]");
}

}  // namespace ctgeo
