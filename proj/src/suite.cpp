#include "ctgeo/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "ctgeo/atlas.hpp"
#include "ctgeo/frame.hpp"
#include "ctgeo/soliton.hpp"

namespace ctgeo {

namespace {

using Eigen::Matrix3d;

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

double pick(const SuiteOptions& opts, double fallback) {
  return opts.tolerance.value_or(fallback);
}

/// One report from per-probe residuals, or a failed report on evaluation errors.
CheckReport per_probe(const std::string& name, const ProbeGrid& grid,
                      const std::function<double(const Point&)>& residual,
                      const std::function<std::string()>& note = {}) {
  try {
    std::vector<double> r;
    r.reserve(grid.points.size());
    for (const auto& p : grid.points) r.push_back(residual(p));
    return make_report(name, r, grid.tolerance, grid.seed, note ? note() : "");
  } catch (const Error& e) {
    return failed_report(name, grid.tolerance, grid.seed, e.what());
  }
}

void append(std::vector<CheckReport>& out, std::vector<CheckReport> more,
            const std::string& prefix = {}) {
  for (auto& r : more) {
    r.check_name = prefix + r.check_name;
    out.push_back(std::move(r));
  }
}

const AlmostContactStructure& require_contact(const Manifest& m) {
  if (!m.contact) {
    throw UsageError("manifest " + m.origin + " has no [contact] section");
  }
  return *m.contact;
}

std::string range_note(const char* label, const std::vector<double>& v) {
  if (v.empty()) return {};
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return std::string(label) + fmt(" in [%.17g, %.17g]", *lo, *hi);
}

// --- curvature -----------------------------------------------------------------

std::vector<CheckReport> curvature_suite(const Manifest& m, const ProbeGrid& grid) {
  std::array<std::vector<double>, 5> cols;
  std::vector<double> sectional_values, scalar_values;
  static const std::array<const char*, 5> kNames = {
      "curvature.antisymmetry", "curvature.pair_symmetry",
      "curvature.first_bianchi", "curvature.ricci_symmetric",
      "curvature.contracted_bianchi"};
  try {
    for (const auto& p : grid.points) {
      const Geometry3 geo = geometry_at(m.metric, p);
      const Matrix3d e = values(orthonormal_frame<Jet3>(geo.g));
      const Matrix3d g = values(geo.g);
      const auto r = values(geo.riemann);
      // Frame components R(a,b,c,d) = g(R(e_b,e_c)e_d, e_a).
      const Matrix3d lower = e.transpose() * g;
      Tensor<double, 0, 4> rf;
      for (int n = 0; n < rf.kSize; ++n) {
        const auto idx = rf.unflatten(n);
        double acc = 0.0;
        for (int l = 0; l < 3; ++l)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              for (int k = 0; k < 3; ++k)
                acc += lower(idx[0], l) * r(l, i, j, k) * e(i, idx[1]) *
                       e(j, idx[2]) * e(k, idx[3]);
        rf.flat(n) = acc;
      }
      double anti = 0, pair = 0, bianchi = 0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int c = 0; c < 3; ++c)
            for (int d = 0; d < 3; ++d) {
              const double v = rf(a, b, c, d);
              anti = std::max({anti, std::abs(v + rf(a, c, b, d)),
                               std::abs(v + rf(d, b, c, a))});
              pair = std::max(pair, std::abs(v - rf(c, d, a, b)));
              bianchi = std::max(bianchi, std::abs(v + rf(a, c, d, b) + rf(a, d, b, c)));
            }
      const Matrix3d ric = frame_form(e, values(as_matrix(geo.ricci)));
      const auto dric = covariant_derivative(geo.ricci, geo.gamma);
      Eigen::Vector3d div;
      for (int j = 0; j < 3; ++j) {
        double acc = -0.5 * geo.scalar.d1(j);
        for (int d = 0; d < 3; ++d)
          for (int i = 0; i < 3; ++i)
            acc += geo.g_inv(d, i).value() * dric(d, i, j).value();
        div[j] = acc;
      }
      cols[0].push_back(anti);
      cols[1].push_back(pair);
      cols[2].push_back(bianchi);
      cols[3].push_back((ric - ric.transpose()).cwiseAbs().maxCoeff());
      cols[4].push_back((e.transpose() * div).cwiseAbs().maxCoeff());
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
          sectional_values.push_back(
              sectional(geo, Point::Unit(a), Point::Unit(b)));
      scalar_values.push_back(geo.scalar.value());
    }
  } catch (const Error& err) {
    std::vector<CheckReport> failed;
    for (const char* n : kNames)
      failed.push_back(failed_report(n, grid.tolerance, grid.seed, err.what()));
    return failed;
  }
  std::vector<CheckReport> out;
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    std::string note;
    if (i == 0) {
      note = range_note("coordinate-plane sectional", sectional_values) + "; " +
             range_note("scalar", scalar_values);
    }
    out.push_back(make_report(kNames[i], cols[i], grid.tolerance, grid.seed, note));
  }
  return out;
}

// --- contact -----------------------------------------------------------------

/// True when the fitted β is identically 1 and the fit is exact.
bool is_kenmotsu(const BetaFitReport& fit, double tol) {
  if (!fit.report.pass) return false;
  return std::all_of(fit.beta.begin(), fit.beta.end(),
                     [tol](double b) { return std::abs(b - 1.0) <= tol; });
}

CheckReport xi_scalar_check(const std::string& name,
                            const AlmostContactStructure& acs,
                            const ProbeGrid& grid) {
  return per_probe(name, grid, [&acs](const Point& p) {
    const ContactJets c = contact_at(acs, p);
    double xi_r = 0.0;
    for (int i = 0; i < 3; ++i) xi_r += c.xi(i).value() * c.geo.scalar.d1(i);
    return xi_r + 2.0 * (6.0 + c.geo.scalar.value());
  });
}

std::vector<CheckReport> identities_suite(const AlmostContactStructure& acs,
                                          const ProbeGrid& grid) {
  std::vector<CheckReport> out;
  append(out, almost_kenmotsu_check(acs, grid));
  append(out, identity_suite(acs, grid));
  append(out, kenmotsu_reduction_checks(acs, grid));
  out.push_back(beta_kenmotsu_fit(acs, grid).report);
  return out;
}

std::vector<CheckReport> nullity_suite(const AlmostContactStructure& acs,
                                       const ProbeGrid& grid) {
  std::vector<CheckReport> out = nullity_diagnostics(acs, grid).reports;
  std::vector<double> alpha_res, beta_res, decomposition;
  std::vector<double> alphas, betas;
  try {
    for (const auto& p : grid.points) {
      const auto d = eta_einstein_decompose(contact_at(acs, p));
      decomposition.push_back(d.residual);
      alpha_res.push_back(d.kenmotsu_alpha_residual);
      beta_res.push_back(d.kenmotsu_beta_residual);
      alphas.push_back(d.alpha);
      betas.push_back(d.beta);
    }
  } catch (const Error& e) {
    out.push_back(failed_report("eta_einstein.residual", grid.tolerance,
                                grid.seed, e.what()));
    return out;
  }
  out.push_back(make_report("eta_einstein.residual", decomposition,
                            grid.tolerance, grid.seed,
                            range_note("alpha", alphas) + "; " +
                                range_note("beta", betas)));
  // The Kenmotsu-form relations only apply when the structure is Kenmotsu.
  const BetaFitReport fit = beta_kenmotsu_fit(acs, grid);
  if (is_kenmotsu(fit, grid.tolerance)) {
    out.push_back(make_report("eta_einstein.kenmotsu_alpha", alpha_res,
                              grid.tolerance, grid.seed));
    out.push_back(make_report("eta_einstein.kenmotsu_beta", beta_res,
                              grid.tolerance, grid.seed));
    out.push_back(xi_scalar_check("eta_einstein.xi_scalar", acs, grid));
  }
  return out;
}

// --- soliton -------------------------------------------------------------------

VectorField parse_v(const std::string& src, const CoordNames& coords) {
  std::array<std::string, 3> parts;
  std::istringstream in(src);
  std::string item;
  int n = 0;
  while (std::getline(in, item, ',')) {
    if (n == 3) throw UsageError("--v needs exactly three components");
    parts[n++] = item;
  }
  if (n != 3) throw UsageError("--v needs exactly three components");
  try {
    return parse_vector(parts, coords);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--v: ") + e.what());
  }
}

std::vector<CheckReport> soliton_suite(const Manifest& m, const SuiteOptions& opts,
                                       const ProbeGrid& grid) {
  if (!opts.v) throw UsageError("soliton suite needs --v");
  if (opts.solve_lambda == opts.lambda.has_value()) {
    throw UsageError("soliton suite needs exactly one of --lambda or --solve-lambda");
  }
  const VectorField v = parse_v(*opts.v, m.chart.coords);
  std::string note;
  double lambda = 0.0;
  if (opts.solve_lambda) {
    try {
      const LambdaSolve s = solve_lambda(m.metric, v, opts.rho, grid);
      lambda = s.lambda_hat;
      note = "lambda_hat=" + format_real(s.lambda_hat) +
             ", class=" + std::string(class_name(s.soliton_class));
      if (opts.rho != 0.0) {
        note += "; the fitted lambda absorbs rho*R, so it depends on rho unless "
                "V has nonzero divergence";
      }
    } catch (const Error& e) {
      return {failed_report("soliton.residual", grid.tolerance, grid.seed, e.what())};
    }
  } else {
    lambda = *opts.lambda;
    const SolitonClass cls = lambda > 1e-10    ? SolitonClass::kExpanding
                             : lambda < -1e-10 ? SolitonClass::kShrinking
                                               : SolitonClass::kSteady;
    note = "lambda=" + format_real(lambda) + ", class=" + std::string(class_name(cls));
  }
  if (opts.rho >= kRhoExistenceBound) {
    note += "; warning: rho >= 1/4, short-time existence of the flow is not guaranteed";
  }
  const SolitonSpec spec{v, lambda, opts.rho};
  return {per_probe(
      "soliton.residual", grid,
      [&](const Point& p) {
        const Matrix3d e = values(orthonormal_frame<Jet3>(m.metric.evaluate(p, 0)));
        return frame_form(e, soliton_residual(m.metric, spec, p)).cwiseAbs().maxCoeff();
      },
      [&note] { return note; })};
}

// --- deformation pipeline ------------------------------------------------------

struct Deformed {
  AlmostContactStructure result;
  BetaFitReport source_fit;
};

Deformed deform_by_fitted_beta(const Manifest& m, const ProbeGrid& grid) {
  const AlmostContactStructure& acs = require_contact(m);
  const auto& box = m.chart.box;
  const ScalarField beta = fitted_beta_field(acs);
  const ScalarField sigma =
      sigma_gauge(beta, box[2], 1e-3,
                  {0.5 * (box[0].lo + box[0].hi), 0.5 * (box[1].lo + box[1].hi)});
  return {d_homothetic(acs, sigma), beta_kenmotsu_fit(acs, grid)};
}

CheckReport beta_one_check(const std::string& name,
                           const AlmostContactStructure& acs, ProbeGrid grid) {
  const BetaFitReport fit = beta_kenmotsu_fit(acs, grid);
  if (!fit.report.pass && fit.beta.empty()) {
    return failed_report(name, grid.tolerance, grid.seed, fit.report.notes);
  }
  std::vector<double> r;
  for (std::size_t i = 0; i < fit.beta.size(); ++i)
    r.push_back(std::max(std::abs(fit.beta[i] - 1.0), fit.residual[i]));
  return make_report(name, r, grid.tolerance, grid.seed,
                     range_note("beta_hat", fit.beta));
}

std::vector<CheckReport> deform_suite(const Manifest& m, const SuiteOptions& opts,
                                      const ProbeGrid& base) {
  std::vector<CheckReport> out;
  ProbeGrid grid = base;
  try {
    const Deformed d = deform_by_fitted_beta(m, base);
    grid.tolerance = pick(opts, kAlgebraicTolerance);
    CheckReport fit = d.source_fit.report;
    fit.check_name = "deform.source_beta_fit";
    out.push_back(fit);
    append(out, validate_structure(d.result, grid), "deform.");
    grid.tolerance = pick(opts, 1e-7);
    out.push_back(beta_one_check("deform.beta_one", d.result, grid));
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    out.push_back(failed_report("deform.pipeline", grid.tolerance, grid.seed, e.what()));
  }
  return out;
}

std::vector<CheckReport> section4_suite(const Manifest& m, const SuiteOptions& opts,
                                        const ProbeGrid& base) {
  const AlmostContactStructure& acs = require_contact(m);
  const Manifold& target = builtin("paper_kenmotsu_exp");
  std::vector<CheckReport> out;
  ProbeGrid grid = base;
  const auto with_tol = [&](double t) {
    ProbeGrid g = base;
    g.tolerance = pick(opts, t);
    return g;
  };

  // β-fit against the closed form tanh t.
  grid = with_tol(kAlgebraicTolerance);
  const BetaFitReport fit = beta_kenmotsu_fit(acs, grid);
  {
    CheckReport r = fit.report;
    r.check_name = "section4.beta_fit";
    out.push_back(r);
  }
  if (fit.beta.size() == grid.points.size()) {
    std::vector<double> r;
    for (std::size_t i = 0; i < fit.beta.size(); ++i)
      r.push_back(fit.beta[i] - std::tanh(grid.points[i][2]));
    out.push_back(make_report("section4.beta_tanh", r, grid.tolerance, grid.seed));
  } else {
    out.push_back(failed_report("section4.beta_tanh", grid.tolerance, grid.seed,
                                fit.report.notes));
  }

  // σ from the closed-form β against e^{2t}/cosh²t.
  grid = with_tol(kOdeTolerance);
  const ScalarField sigma_closed =
      sigma_gauge(ScalarField::parse("tanh(t)"), m.chart.box[2]);
  out.push_back(per_probe("section4.sigma_closed_form", grid, [&](const Point& p) {
    const double c = std::cosh(p[2]);
    return sigma_closed.value(p) - std::exp(2 * p[2]) / (c * c);
  }));

  // Deformation by the fitted β, compared with the Kenmotsu target.
  try {
    const Deformed d = deform_by_fitted_beta(m, base);
    out.push_back(per_probe("section4.deformed_metric", grid, [&](const Point& p) {
      return (d.result.g.value(p) - target.structure.g.value(p)).cwiseAbs().maxCoeff();
    }));
    grid = with_tol(1e-7);
    out.push_back(beta_one_check("section4.beta_one", d.result, grid));
    append(out, identities_suite(d.result, grid), "section4.");
    out.push_back(xi_scalar_check("section4.xi_scalar", d.result, grid));
  } catch (const Error& e) {
    out.push_back(failed_report("section4.deformed_metric", grid.tolerance,
                                grid.seed, e.what()));
  }

  // λ for V = 0, ρ = 0 on the source metric.
  grid = with_tol(kAlgebraicTolerance);
  try {
    const LambdaSolve s = solve_lambda(m.metric, constant_vector(Point::Zero()), 0.0, grid);
    CheckReport r = make_report("section4.lambda", {s.residual_after},
                                grid.tolerance, grid.seed,
                                "lambda_hat=" + format_real(s.lambda_hat) + ", class=" +
                                    std::string(class_name(s.soliton_class)));
    r.probe_count = static_cast<int>(grid.points.size());
    out.push_back(r);
  } catch (const Error& e) {
    out.push_back(failed_report("section4.lambda", grid.tolerance, grid.seed, e.what()));
  }
  return out;
}

// --- standalone suites -----------------------------------------------------------

std::vector<CheckReport> warp_suite(const SuiteOptions& opts) {
  const std::uint64_t seed = opts.seed.value_or(0);
  std::vector<CheckReport> out;
  try {
    const WarpProfile closed =
        WarpProfile::closed_form(parse("1/cosh(t)"), -1.0, {-2.0, 2.0});
    std::vector<double> r;
    for (int i = 0; i < 50; ++i)
      r.push_back(warp_ode_residual(closed, -2.0 + 4.0 * i / 49.0));
    out.push_back(make_report("warp.closed_form_residual", r, pick(opts, 1e-10), seed));

    const WarpProfile solved = solve_warp_ode(-1.0, 1.0, 0.0, 2.0, 1e-3);
    r.clear();
    for (int i = 0; i <= 200; ++i) {
      const double t = 2.0 * i / 200.0;
      r.push_back(solved.gamma(t) - 1.0 / std::cosh(t));
    }
    out.push_back(make_report("warp.rk4_vs_closed_form", r, pick(opts, kOdeTolerance), seed));

    r.clear();
    for (int i = 10; i <= 1990; i += 10) r.push_back(warp_ode_residual(solved, i * 1e-3));
    out.push_back(make_report("warp.sampled_residual", r, pick(opts, kAlgebraicTolerance), seed));

    const auto max_error = [](double step) {
      const WarpProfile p = solve_warp_ode(-1.0, 1.0, 0.0, 2.0, step);
      double e = 0.0;
      for (int k = 0; k <= 10; ++k) {
        const double t = 0.2 * k;
        e = std::max(e, std::abs(p.gamma(t) - 1.0 / std::cosh(t)));
      }
      return e;
    };
    const double e1 = max_error(0.1), e2 = max_error(0.05), e3 = max_error(0.025);
    const double order = std::min(std::log2(e1 / e2), std::log2(e2 / e3));
    CheckReport conv = make_report("warp.convergence_order", {std::max(0.0, 3.8 - order)},
                                   0.0, seed, "measured order " + format_real(order) +
                                                  " (shortfall below 3.8)");
    out.push_back(conv);
  } catch (const Error& e) {
    out.push_back(failed_report("warp.pipeline", pick(opts, kOdeTolerance), seed, e.what()));
  }
  return out;
}

std::vector<CheckReport> flow_suite(const SuiteOptions& opts) {
  const std::uint64_t seed = opts.seed.value_or(0);
  FlowTrajectory traj;
  try {
    traj = einstein_family_flow(opts.kappa, opts.rho, opts.c0, opts.horizon, opts.step);
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
  const double slope = einstein_family_slope(opts.kappa, opts.rho);
  std::vector<double> r;
  for (const auto& s : traj.samples) r.push_back(s.c - (opts.c0 + slope * s.s));
  std::string note = "slope=" + format_real(slope) +
                     ", c_end=" + format_real(traj.samples.back().c) +
                     " at s=" + format_real(traj.samples.back().s);
  if (traj.extinction) {
    note += ", extinction at s=" + format_real(*traj.extinction);
    r.push_back(*traj.extinction - opts.c0 / -slope);
  }
  if (traj.rho_warning) {
    note += "; warning: rho >= 1/4, short-time existence of the flow is not guaranteed";
  }
  return {make_report("flow.linear_law", r, pick(opts, 1e-10), seed, note)};
}

}  // namespace

Suite parse_suite(std::string_view name) {
  static const std::array<std::pair<std::string_view, Suite>, 9> kNames = {{
      {"structure", Suite::kStructure},
      {"curvature", Suite::kCurvature},
      {"contact-identities", Suite::kContactIdentities},
      {"nullity", Suite::kNullity},
      {"soliton", Suite::kSoliton},
      {"section4", Suite::kSection4},
      {"deform", Suite::kDeform},
      {"warp-ode", Suite::kWarpOde},
      {"flow", Suite::kFlow},
  }};
  for (const auto& [n, s] : kNames)
    if (n == name) return s;
  throw UsageError("unknown suite '" + std::string(name) + "'");
}

std::string_view suite_name(Suite s) {
  switch (s) {
    case Suite::kStructure: return "structure";
    case Suite::kCurvature: return "curvature";
    case Suite::kContactIdentities: return "contact-identities";
    case Suite::kNullity: return "nullity";
    case Suite::kSoliton: return "soliton";
    case Suite::kSection4: return "section4";
    case Suite::kDeform: return "deform";
    case Suite::kWarpOde: return "warp-ode";
    case Suite::kFlow: return "flow";
  }
  return "unknown";
}

ProbeGrid make_grid(const Manifest& m, const SuiteOptions& opts,
                    double default_tolerance) {
  const int count = opts.probes.value_or(m.probe_count.value_or(kDefaultProbeCount));
  if (count <= 0) throw UsageError("probe count must be positive");
  const std::uint64_t seed = opts.seed.value_or(m.seed.value_or(0));
  const double tol = opts.tolerance.value_or(m.tolerance.value_or(default_tolerance));
  return halton_grid(m.chart.box, count, seed, tol);
}

std::vector<CheckReport> run_suite(const std::optional<Manifest>& m, Suite suite,
                                   const SuiteOptions& opts) {
  if (opts.tolerance && !(*opts.tolerance > 0.0)) {
    throw UsageError("--tol must be positive");
  }
  std::vector<CheckReport> out;
  if (suite == Suite::kWarpOde) {
    out = warp_suite(opts);
  } else if (suite == Suite::kFlow) {
    out = flow_suite(opts);
  } else {
    if (!m) throw UsageError("suite '" + std::string(suite_name(suite)) + "' needs a manifest");
    const ProbeGrid grid = make_grid(*m, opts, kAlgebraicTolerance);
    switch (suite) {
      case Suite::kStructure: out = validate_structure(require_contact(*m), grid); break;
      case Suite::kCurvature: out = curvature_suite(*m, grid); break;
      case Suite::kContactIdentities:
        out = identities_suite(require_contact(*m), grid);
        break;
      case Suite::kNullity: out = nullity_suite(require_contact(*m), grid); break;
      case Suite::kSoliton: out = soliton_suite(*m, opts, grid); break;
      case Suite::kSection4: out = section4_suite(*m, opts, grid); break;
      case Suite::kDeform: out = deform_suite(*m, opts, grid); break;
      default: break;
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) {
    return a.check_name < b.check_name;
  });
  return out;
}

}  // namespace ctgeo
