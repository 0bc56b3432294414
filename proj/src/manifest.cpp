#include "ctgeo/manifest.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ctgeo/atlas.hpp"

namespace ctgeo {

namespace {

using nlohmann::json;

struct Entry {
  json value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class Reader {
 public:
  Reader(std::string origin, std::map<std::string, Section> sections)
      : origin_(std::move(origin)), sections_(std::move(sections)) {}

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ManifestError(origin_, line, msg);
  }

  bool has(const std::string& section) const { return sections_.count(section) > 0; }

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  const Entry& require(const std::string& section, const std::string& key) const {
    if (const Entry* e = find(section, key)) return *e;
    const auto s = sections_.find(section);
    fail(s == sections_.end() ? 0 : first_line(s->second),
         "missing key '" + key + "' in section [" + section + "]");
  }

  std::string expression(const json& v, int line, const std::string& what) const {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) {
      std::ostringstream os;
      os.precision(17);
      os << v.get<double>();
      return os.str();
    }
    fail(line, what + " must be an expression string or a number");
  }

  ScalarField field(const json& v, int line, const std::string& what,
                    const CoordNames& coords) const {
    const std::string src = expression(v, line, what);
    try {
      return ScalarField::parse(src, coords);
    } catch (const ParseError& e) {
      fail(line, what + ": " + e.what());
    }
  }

  const std::map<std::string, Section>& sections() const { return sections_; }
  const std::string& origin() const { return origin_; }

 private:
  static int first_line(const Section& s) {
    int line = 0;
    for (const auto& [k, e] : s) line = line == 0 ? e.line : std::min(line, e.line);
    return line;
  }

  std::string origin_;
  std::map<std::string, Section> sections_;
};

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"", {"builtin"}},
      {"chart", {"coords", "domain"}},
      {"metric", {}},  // validated against the coordinate names
      {"contact", {"xi", "eta", "phi"}},
      {"probes", {"count", "seed", "tolerance"}},
  };
  return keys;
}

std::map<std::string, Section> split(std::string_view text,
                                     const std::string& origin) {
  std::map<std::string, Section> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ManifestError(origin, line, "unterminated section header");
      current = trim(std::string_view(s).substr(1, s.size() - 2));
      if (!known_keys().count(current) || current.empty()) {
        throw ManifestError(origin, line, "unknown section [" + current + "]");
      }
      if (sections.count(current)) {
        throw ManifestError(origin, line, "duplicate section [" + current + "]");
      }
      sections[current];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ManifestError(origin, line, "expected 'key = value'");
    }
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (key.empty()) throw ManifestError(origin, line, "empty key");
    const auto& allowed = known_keys().at(current);
    if (current != "metric" && !allowed.count(key)) {
      throw ManifestError(origin, line,
                          "unknown key '" + key + "'" +
                              (current.empty() ? "" : " in [" + current + "]"));
    }
    Entry e;
    e.line = line;
    try {
      e.value = json::parse(value);
    } catch (const json::parse_error& err) {
      throw ManifestError(origin, line, "value of '" + key + "' is not valid: " +
                                            std::string(err.what()));
    }
    if (!sections[current].emplace(key, std::move(e)).second) {
      throw ManifestError(origin, line, "duplicate key '" + key + "'");
    }
  }
  return sections;
}

Chart read_chart(const Reader& r) {
  Chart chart;
  if (const Entry* e = r.find("chart", "coords")) {
    if (!e->value.is_array() || e->value.size() != 3) {
      r.fail(e->line, "coords must list three names");
    }
    std::set<std::string> seen;
    for (int i = 0; i < 3; ++i) {
      if (!e->value[i].is_string()) r.fail(e->line, "coordinate names must be strings");
      chart.coords[i] = e->value[i].get<std::string>();
      if (chart.coords[i].empty() || !seen.insert(chart.coords[i]).second) {
        r.fail(e->line, "coordinate names must be distinct and nonempty");
      }
    }
  }
  const Entry& d = r.require("chart", "domain");
  if (!d.value.is_array() || d.value.size() != 3) {
    r.fail(d.line, "domain must list three [lo, hi] intervals");
  }
  for (int i = 0; i < 3; ++i) {
    const json& iv = d.value[i];
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
      r.fail(d.line, "domain entries must be [lo, hi] number pairs");
    }
    chart.box[i] = {iv[0].get<double>(), iv[1].get<double>()};
    if (!(chart.box[i].hi > chart.box[i].lo)) {
      r.fail(d.line, "domain interval for '" + chart.coords[i] + "' is empty");
    }
  }
  return chart;
}

MetricField read_metric(const Reader& r, const Chart& chart) {
  if (!r.has("metric")) r.fail(0, "missing section [metric]");
  const auto& c = chart.coords;
  std::map<std::string, int> slot;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) slot["g_" + c[i] + c[j]] = upper_index(i, j);
  std::array<std::optional<ScalarField>, 6> comps;
  for (const auto& [key, e] : r.sections().at("metric")) {
    const auto it = slot.find(key);
    if (it == slot.end()) r.fail(e.line, "unknown metric key '" + key + "'");
    if (comps[it->second]) r.fail(e.line, "metric entry '" + key + "' given twice");
    comps[it->second] = r.field(e.value, e.line, key, c);
  }
  std::array<ScalarField, 6> upper;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const int k = upper_index(i, j);
      if (!comps[k]) r.require("metric", "g_" + c[i] + c[j]);
      upper[k] = *comps[k];
    }
  return MetricField(chart, upper);
}

std::array<ScalarField, 3> read_triple(const Reader& r, const std::string& key,
                                       const CoordNames& coords) {
  const Entry& e = r.require("contact", key);
  if (!e.value.is_array() || e.value.size() != 3) {
    r.fail(e.line, key + " must have three components");
  }
  std::array<ScalarField, 3> out;
  for (int i = 0; i < 3; ++i)
    out[i] = r.field(e.value[i], e.line, key + "[" + std::to_string(i) + "]", coords);
  return out;
}

AlmostContactStructure read_contact(const Reader& r, const MetricField& g) {
  const auto& c = g.chart().coords;
  AlmostContactStructure acs{g, {}, read_triple(r, "xi", c), read_triple(r, "eta", c)};
  const Entry& e = r.require("contact", "phi");
  if (!e.value.is_array() || e.value.size() != 3) {
    r.fail(e.line, "phi must be a 3x3 array of rows");
  }
  for (int i = 0; i < 3; ++i) {
    const json& row = e.value[i];
    if (!row.is_array() || row.size() != 3) r.fail(e.line, "phi must be a 3x3 array of rows");
    for (int j = 0; j < 3; ++j)
      acs.phi[i][j] = r.field(row[j], e.line,
                              "phi[" + std::to_string(i) + "][" + std::to_string(j) + "]", c);
  }
  return acs;
}

void read_probes(const Reader& r, Manifest& m) {
  if (const Entry* e = r.find("probes", "count")) {
    if (!e->value.is_number_integer() || e->value.get<long long>() <= 0) {
      r.fail(e->line, "probe count must be a positive integer");
    }
    m.probe_count = e->value.get<int>();
  }
  if (const Entry* e = r.find("probes", "seed")) {
    if (!e->value.is_number_unsigned()) r.fail(e->line, "seed must be a nonnegative integer");
    m.seed = e->value.get<std::uint64_t>();
  }
  if (const Entry* e = r.find("probes", "tolerance")) {
    if (!e->value.is_number() || !(e->value.get<double>() > 0.0)) {
      r.fail(e->line, "tolerance must be a positive number");
    }
    m.tolerance = e->value.get<double>();
  }
}

}  // namespace

Manifest builtin_manifest(std::string_view name) {
  const Manifold& b = builtin(name);
  return Manifest{"builtin:" + b.name, b.name, b.chart, b.structure.g,
                  b.structure, std::nullopt, std::nullopt, std::nullopt};
}

Manifest parse_manifest(std::string_view text, const std::string& origin) {
  const Reader r(origin, split(text, origin));
  Manifest m = [&] {
    if (const Entry* e = r.find("", "builtin")) {
      if (!e->value.is_string()) r.fail(e->line, "builtin must be a name string");
      try {
        return builtin_manifest(e->value.get<std::string>());
      } catch (const ArgumentError& err) {
        r.fail(e->line, err.what());
      }
    }
    const Chart chart = read_chart(r);
    const MetricField g = read_metric(r, chart);
    std::optional<AlmostContactStructure> contact;
    if (r.has("contact")) contact = read_contact(r, g);
    return Manifest{origin, std::nullopt, chart, g, contact,
                    std::nullopt, std::nullopt, std::nullopt};
  }();
  m.origin = origin;
  read_probes(r, m);
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError(path.string(), 0, "cannot open manifest");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.string());
}

}  // namespace ctgeo
