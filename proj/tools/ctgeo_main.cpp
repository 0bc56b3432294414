// Command-line front end: one verb per check suite.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ctgeo/atlas.hpp"
#include "ctgeo/manifest.hpp"
#include "ctgeo/soliton.hpp"
#include "ctgeo/suite.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CommonArgs {
  std::optional<std::string> manifest;
  std::optional<std::string> builtin;
  std::optional<int> probes;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string format = "text";
  std::optional<std::string> out;
};

struct Verb {
  const char* name;
  const char* help;
  ctgeo::Suite suite;
  const char* default_builtin;  // used when neither --manifest nor --builtin
};

void add_common(CLI::App* cmd, CommonArgs& a, bool manifest_flags) {
  if (manifest_flags) {
    auto* m = cmd->add_option("--manifest", a.manifest, "Manifest file");
    auto* b = cmd->add_option("--builtin", a.builtin, "Built-in manifold name");
    m->excludes(b);
    cmd->add_option("--probes", a.probes, "Number of probe points")
        ->check(CLI::PositiveNumber);
  }
  cmd->add_option("--seed", a.seed, "Probe seed");
  cmd->add_option("--tol", a.tol, "Tolerance override")->check(CLI::PositiveNumber);
  cmd->add_option("--format", a.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", a.out, "Write the report to this file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry checks for almost contact metric 3-manifolds"};
  app.require_subcommand(1);

  static const Verb kVerbs[] = {
      {"validate", "Structure axioms of the almost contact metric structure",
       ctgeo::Suite::kStructure, nullptr},
      {"curvature", "Curvature tensor symmetries and Bianchi identities",
       ctgeo::Suite::kCurvature, nullptr},
      {"identities", "Almost Kenmotsu identities, h/l tensors and beta fit",
       ctgeo::Suite::kContactIdentities, nullptr},
      {"nullity", "Generalized k-nullity and eta-Einstein diagnostics",
       ctgeo::Suite::kNullity, nullptr},
      {"soliton", "Ricci rho-soliton residual and lambda estimate",
       ctgeo::Suite::kSoliton, nullptr},
      {"warp-ode", "Warp-profile ODE residuals and RK4 convergence",
       ctgeo::Suite::kWarpOde, nullptr},
      {"deform", "Gauge deformation by the fitted beta",
       ctgeo::Suite::kDeform, "paper_cosh_warp"},
      {"flow", "Einstein-family reduction of the Ricci-Bourguignon flow",
       ctgeo::Suite::kFlow, nullptr},
      {"section4", "Warped-product to Kenmotsu pipeline",
       ctgeo::Suite::kSection4, "paper_cosh_warp"},
  };

  CommonArgs common;
  ctgeo::SuiteOptions opts;
  std::optional<std::string> v;
  std::optional<double> lambda;
  bool solve = false;
  std::optional<double> rho;

  for (const auto& verb : kVerbs) {
    auto* cmd = app.add_subcommand(verb.name, verb.help);
    const bool needs_manifest =
        verb.suite != ctgeo::Suite::kWarpOde && verb.suite != ctgeo::Suite::kFlow;
    add_common(cmd, common, needs_manifest);
    if (verb.suite == ctgeo::Suite::kSoliton) {
      cmd->add_option("--v", v, "Soliton vector field \"ex,ey,et\"");
      auto* l = cmd->add_option("--lambda", lambda, "Soliton constant");
      auto* s = cmd->add_flag("--solve-lambda", solve, "Fit lambda by least squares");
      l->excludes(s);
      cmd->add_option("--rho", rho, "Bourguignon parameter");
    }
    if (verb.suite == ctgeo::Suite::kFlow) {
      cmd->add_option("--kappa", opts.kappa, "Einstein constant of g0");
      cmd->add_option("--rho", rho, "Bourguignon parameter");
      cmd->add_option("--c0", opts.c0, "Initial conformal factor");
      cmd->add_option("--horizon", opts.horizon, "Final flow time");
      cmd->add_option("--step", opts.step, "RK4 step");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const CLI::App* cmd = app.get_subcommands().front();
  const Verb* verb = nullptr;
  for (const auto& candidate : kVerbs)
    if (cmd->get_name() == candidate.name) verb = &candidate;

  opts.probes = common.probes;
  opts.seed = common.seed;
  opts.tolerance = common.tol;
  opts.v = v;
  opts.lambda = lambda;
  opts.solve_lambda = solve;
  opts.rho = rho.value_or(0.0);

  try {
    std::optional<ctgeo::Manifest> manifest;
    if (common.manifest) {
      manifest = ctgeo::load_manifest(*common.manifest);
    } else if (common.builtin) {
      try {
        manifest = ctgeo::builtin_manifest(*common.builtin);
      } catch (const ctgeo::ArgumentError& e) {
        throw ctgeo::UsageError(e.what());
      }
    } else if (verb->default_builtin) {
      manifest = ctgeo::builtin_manifest(verb->default_builtin);
    }

    const auto reports = ctgeo::run_suite(manifest, verb->suite, opts);
    if (opts.rho >= ctgeo::kRhoExistenceBound &&
        (verb->suite == ctgeo::Suite::kSoliton || verb->suite == ctgeo::Suite::kFlow)) {
      std::cerr << "warning: rho >= 1/4; short-time existence of the flow is "
                   "not guaranteed\n";
    }
    const auto format =
        common.format == "json" ? ctgeo::ReportFormat::kJson : ctgeo::ReportFormat::kText;
    if (common.out) {
      std::ofstream out(*common.out, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << *common.out << "\n";
        return kExitUsage;
      }
      ctgeo::emit_report(reports, format, out);
    } else {
      ctgeo::emit_report(reports, format, std::cout);
    }
    return ctgeo::all_pass(reports) ? kExitPass : kExitFail;
  } catch (const ctgeo::ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ctgeo::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ctgeo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
