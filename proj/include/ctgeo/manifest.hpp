#pragma once

// Sectioned manifest files describing a chart, a metric and optionally an
// almost contact structure.
//
//   # comment
//   builtin = "paper_cosh_warp"        (optional; replaces chart/metric/contact)
//   [chart]
//   coords = ["x", "y", "t"]
//   domain = [[-1, 1], [0.5, 3], [-1, 1]]
//   [metric]
//   g_xx = "cosh(t)^2/y^2"              (one key per upper-triangle entry)
//   [contact]
//   xi  = ["0", "0", "1"]
//   eta = ["0", "0", "1"]
//   phi = [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]
//   [probes]
//   count = 64
//   seed = 0
//   tolerance = 1e-8
//
// Values are JSON; expression entries may be strings or numbers.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ctgeo/contact.hpp"

namespace ctgeo {

/// Format or content problem in a manifest, located by file and line.
class ManifestError : public Error {
 public:
  ManifestError(std::string file, int line, const std::string& message)
      : Error(file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line) {}
  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

struct Manifest {
  std::string origin;
  std::optional<std::string> builtin;
  Chart chart;
  MetricField metric;
  std::optional<AlmostContactStructure> contact;
  std::optional<int> probe_count;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
};

Manifest parse_manifest(std::string_view text, const std::string& origin);
Manifest load_manifest(const std::filesystem::path& path);
Manifest builtin_manifest(std::string_view name);

}  // namespace ctgeo
