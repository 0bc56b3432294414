#include "ctgeo/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "ctgeo/errors.hpp"

namespace ctgeo {

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string json_real(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  return format_real(v);
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CheckReport make_report(std::string name, const std::vector<double>& residuals,
                        double tolerance, std::uint64_t seed,
                        std::string notes) {
  if (residuals.empty()) throw ArgumentError("report '" + name + "' has no probes");
  CheckReport r;
  r.check_name = std::move(name);
  r.tolerance = tolerance;
  r.seed = seed;
  r.probe_count = static_cast<int>(residuals.size());
  r.notes = std::move(notes);
  double sum = 0.0;
  bool finite = true;
  for (const double x : residuals) {
    if (!std::isfinite(x)) finite = false;
    r.max_residual = std::max(r.max_residual, std::abs(x));
    sum += std::abs(x);
  }
  if (!finite) r.max_residual = std::numeric_limits<double>::quiet_NaN();
  r.mean_residual = sum / static_cast<double>(residuals.size());
  r.pass = finite && r.max_residual <= tolerance;
  return r;
}

CheckReport failed_report(std::string name, double tolerance,
                          std::uint64_t seed, std::string notes) {
  CheckReport r;
  r.check_name = std::move(name);
  r.max_residual = std::numeric_limits<double>::infinity();
  r.mean_residual = std::numeric_limits<double>::infinity();
  r.tolerance = tolerance;
  r.seed = seed;
  r.pass = false;
  r.notes = std::move(notes);
  return r;
}

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.pass; });
}

void emit_report(const std::vector<CheckReport>& reports, ReportFormat format,
                 std::ostream& out) {
  if (reports.empty()) throw ArgumentError("no reports to emit");
  if (format == ReportFormat::kJson) {
    out << "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      out << "  {\"check_name\":" << json_escape(r.check_name)
          << ",\"max_residual\":" << json_real(r.max_residual)
          << ",\"mean_residual\":" << json_real(r.mean_residual)
          << ",\"tolerance\":" << json_real(r.tolerance)
          << ",\"probe_count\":" << r.probe_count << ",\"seed\":" << r.seed
          << ",\"pass\":" << (r.pass ? "true" : "false") << ",\"notes\":"
          << (r.notes.empty() ? std::string("null") : json_escape(r.notes))
          << "}" << (i + 1 < reports.size() ? "," : "") << "\n";
    }
    out << "]\n";
    return;
  }
  int probes = 0;
  std::size_t width = 10;
  for (const auto& r : reports) {
    probes = std::max(probes, r.probe_count);
    width = std::max(width, r.check_name.size());
  }
  const int passed = static_cast<int>(std::count_if(
      reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; }));
  out << "# " << reports.size() << " checks, " << passed << " passed; seed "
      << reports.front().seed << ", probe_count " << probes << "\n";
  char line[512];
  std::snprintf(line, sizeof line, "%-*s  %-12s  %-12s  %-9s  %6s  %s\n",
                static_cast<int>(width), "check", "max_resid", "mean_resid",
                "tol", "probes", "status");
  out << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-*s  %-12.4e  %-12.4e  %-9.2e  %6d  %s",
                  static_cast<int>(width), r.check_name.c_str(), r.max_residual,
                  r.mean_residual, r.tolerance, r.probe_count,
                  r.pass ? "PASS" : "FAIL");
    out << line;
    if (!r.notes.empty()) out << "  " << r.notes;
    out << "\n";
  }
}

}  // namespace ctgeo
