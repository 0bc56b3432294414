#pragma once

// Check suites over a manifest, as run by the command-line tool.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctgeo/manifest.hpp"
#include "ctgeo/report.hpp"

namespace ctgeo {

enum class Suite {
  kStructure,
  kCurvature,
  kContactIdentities,
  kNullity,
  kSoliton,
  kSection4,
  kDeform,
  kWarpOde,
  kFlow,
};

Suite parse_suite(std::string_view name);
std::string_view suite_name(Suite s);

inline constexpr double kAlgebraicTolerance = 1e-8;
inline constexpr double kOdeTolerance = 1e-6;
inline constexpr double kFiniteDifferenceTolerance = 1e-5;
inline constexpr int kDefaultProbeCount = 64;

struct SuiteOptions {
  std::optional<int> probes;
  std::optional<std::uint64_t> seed;
  /// Overrides every per-check default tolerance.
  std::optional<double> tolerance;

  // soliton
  std::optional<std::string> v;  // "ex,ey,et"
  std::optional<double> lambda;
  bool solve_lambda = false;
  double rho = 0.0;

  // flow
  double kappa = -2.0;
  double c0 = 1.0;
  double horizon = 1.0;
  double step = 1e-2;
};

/// Raised for missing or contradictory suite options (exit status 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Probe grid from options, then manifest, then defaults.
ProbeGrid make_grid(const Manifest& m, const SuiteOptions& opts,
                    double default_tolerance);

/// Runs one suite. Evaluation errors become failed reports; missing options
/// raise UsageError. Reports are ordered by check name.
/// `warp-ode` and `flow` need no manifest; every other suite does.
std::vector<CheckReport> run_suite(const std::optional<Manifest>& m, Suite suite,
                                   const SuiteOptions& opts);

}  // namespace ctgeo
