#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ctgeo {

/// Residual statistics of one named check over a probe set.
/// Invariant: pass == (max_residual <= tolerance); NaN never passes.
struct CheckReport {
  std::string check_name;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  int probe_count = 0;
  std::uint64_t seed = 0;
  bool pass = false;
  std::string notes;
};

CheckReport make_report(std::string name, const std::vector<double>& residuals,
                        double tolerance, std::uint64_t seed,
                        std::string notes = {});

/// Report for a check that could not be evaluated.
CheckReport failed_report(std::string name, double tolerance,
                          std::uint64_t seed, std::string notes);

enum class ReportFormat { kText, kJson };

void emit_report(const std::vector<CheckReport>& reports, ReportFormat format,
                 std::ostream& out);

bool all_pass(const std::vector<CheckReport>& reports);

/// %.17g formatting, the serialisation used for every real in reports.
std::string format_real(double v);

}  // namespace ctgeo
