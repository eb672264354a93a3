#include "spiga/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "spiga/error.hpp"

namespace spiga {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorKind::ConfigParseError, what);
}

double parse_double(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) config_error(key + ": trailing characters in '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    config_error(key + ": '" + text + "' is not a number");
  }
}

int parse_int(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) config_error(key + ": trailing characters in '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    config_error(key + ": '" + text + "' is not an integer");
  }
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  config_error(key + ": '" + text + "' is not a boolean");
}

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fixed2(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string pair_label(double eps1, double eps2) {
  return "eps1=" + number(eps1) + " eps2=" + number(eps2);
}

// Records grouped by parameter pair, in first-appearance order.
std::vector<std::vector<const ConvergenceRecord*>> group_by_pair(
    const std::vector<ConvergenceRecord>& records) {
  std::vector<std::vector<const ConvergenceRecord*>> groups;
  for (const auto& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.front()->eps1 == r.eps1 && g.front()->eps2 == r.eps2;
    });
    if (it == groups.end()) {
      groups.push_back({&r});
    } else {
      it->push_back(&r);
    }
  }
  return groups;
}

std::filesystem::path sibling(const std::filesystem::path& base, const std::string& suffix,
                              const std::string& extension) {
  auto out = base;
  out.replace_filename(base.stem().string() + suffix + extension);
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

Settings read_settings_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open config file " + path.string());
  Settings settings;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      config_error(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    settings[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return settings;
}

std::vector<double> parse_parameter_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      values.push_back(parse_double(token, "parameter list"));
      continue;
    }
    std::string hi_text = token.substr(dots + 2);
    double step = 1.0;
    if (const auto colon = hi_text.find(':'); colon != std::string::npos) {
      step = parse_double(trim(hi_text.substr(colon + 1)), "range step");
      hi_text = hi_text.substr(0, colon);
    }
    const double lo = parse_double(trim(token.substr(0, dots)), "range start");
    const double hi = parse_double(trim(hi_text), "range end");
    if (!(lo > 0.0 && hi > 0.0 && step > 0.0)) {
      config_error("decade range '" + token + "' needs positive bounds and step");
    }
    const double from = std::log10(lo);
    const double to = std::log10(hi);
    const double direction = to >= from ? 1.0 : -1.0;
    const bool exact_decades = from == std::round(from) && step == std::round(step);
    const int count = static_cast<int>(std::floor(std::abs(to - from) / step + 1e-9)) + 1;
    for (int k = 0; k < count; ++k) {
      const double exponent = from + direction * step * k;
      values.push_back(exact_decades ? std::pow(10.0, exponent)
                                     : lo * std::pow(10.0, direction * step * k));
    }
  }
  if (values.empty()) config_error("parameter list '" + text + "' is empty");
  return values;
}

ExperimentConfig config_from_settings(const Settings& settings) {
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    if (auto it = settings.find(key); it != settings.end()) return it->second;
    return std::nullopt;
  };
  static const std::vector<std::string> known = {
      "example", "strategy", "eps1",    "eps2",  "p_min",   "p_max", "p_max_knot",
      "interior_multiplicity", "quad_order", "samples", "b", "c", "f",
      "output",  "format",  "pivot",   "threads"};
  for (const auto& [key, value] : settings) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      config_error("unknown setting '" + key + "'");
    }
  }

  ExperimentConfig config;
  if (auto v = get("example")) {
    auto e = parse_example(*v);
    if (!e) config_error("unknown example '" + *v + "'");
    config.example = *e;
  }
  const StudyConfig defaults = preset(config.example);
  config.strategy = defaults.strategy;
  for (const auto& pair : defaults.parameters) {
    config.eps1_list.push_back(pair.eps1);
    config.eps2_list.push_back(pair.eps2);
  }
  config.p_min = defaults.p_min;
  config.p_max_sweep = defaults.p_max;

  if (auto v = get("strategy")) {
    if (*v == "auto") {
      config.strategy.reset();
    } else {
      auto s = parse_strategy(*v);
      if (!s) config_error("unknown strategy '" + *v + "'");
      config.strategy = *s;
    }
  }
  const auto eps1 = get("eps1");
  const auto eps2 = get("eps2");
  if (eps1) config.eps1_list = parse_parameter_list(*eps1);
  if (eps2) config.eps2_list = parse_parameter_list(*eps2);
  // Overriding one list alone keeps the other's default only when it still pairs up.
  if (eps1 && !eps2 && config.eps2_list.size() != config.eps1_list.size()) {
    config.eps2_list = {defaults.parameters.front().eps2};
  }
  if (eps2 && !eps1 && config.eps1_list.size() != config.eps2_list.size()) {
    config.eps1_list = {defaults.parameters.front().eps1};
  }
  if (auto v = get("p_min")) config.p_min = parse_int(*v, "p_min");
  if (auto v = get("p_max")) config.p_max_sweep = parse_int(*v, "p_max");
  if (auto v = get("p_max_knot")) config.p_max_knot = parse_int(*v, "p_max_knot");
  if (auto v = get("interior_multiplicity")) {
    if (*v == "p") {
      config.interior_multiplicity.reset();
    } else {
      config.interior_multiplicity = parse_int(*v, "interior_multiplicity");
      if (*config.interior_multiplicity < 1) config_error("interior_multiplicity must be >= 1 or 'p'");
    }
  }
  if (auto v = get("quad_order")) config.quad_order = parse_int(*v, "quad_order");
  if (auto v = get("samples")) config.samples_per_region = parse_int(*v, "samples");
  if (auto v = get("b")) config.custom.b = parse_double(*v, "b");
  if (auto v = get("c")) config.custom.c = parse_double(*v, "c");
  if (auto v = get("f")) config.custom.f = parse_double(*v, "f");
  if (auto v = get("format")) {
    if (*v == "csv") {
      config.format = OutputFormat::Csv;
    } else if (*v == "json") {
      config.format = OutputFormat::Json;
    } else {
      config_error("format must be csv or json, got '" + *v + "'");
    }
  }
  if (auto v = get("pivot")) config.pivot = parse_bool(*v, "pivot");
  if (auto v = get("threads")) {
    const int t = parse_int(*v, "threads");
    if (t < 1) config_error("threads must be >= 1");
    config.threads = static_cast<unsigned>(t);
  }
  if (auto v = get("output")) {
    config.output_path = *v;
  } else {
    config.output_path = std::string(to_string(config.example)) +
                         (config.format == OutputFormat::Csv ? ".csv" : ".json");
  }

  if (config.eps1_list.empty() || config.eps2_list.empty()) config_error("parameter lists must be nonempty");
  if (config.p_min < 1) config_error("p_min must be >= 1");
  if (config.p_max_sweep > 12) config_error("p_max must be <= 12");
  if (config.p_max_sweep < config.p_min) config_error("p_max must be >= p_min");
  if (config.p_max_knot < 1) config_error("p_max_knot must be >= 1");
  if (config.samples_per_region < 1) config_error("samples must be >= 1");
  if (config.quad_order < 0) config_error("quad_order must be >= 0");
  return config;
}

StudyConfig to_study_config(const ExperimentConfig& config) {
  const auto& e1 = config.eps1_list;
  const auto& e2 = config.eps2_list;
  if (e1.empty() || e2.empty()) config_error("parameter lists must be nonempty");
  if (e1.size() != e2.size() && e1.size() != 1 && e2.size() != 1) {
    config_error("eps1 and eps2 lists have lengths " + std::to_string(e1.size()) + " and " +
                 std::to_string(e2.size()) + "; they must match or one must have length 1");
  }
  StudyConfig study;
  study.example = config.example;
  study.custom = config.custom;
  study.strategy = config.strategy;
  const std::size_t n = std::max(e1.size(), e2.size());
  for (std::size_t k = 0; k < n; ++k) {
    study.parameters.push_back({e1[e1.size() == 1 ? 0 : k], e2[e2.size() == 1 ? 0 : k]});
  }
  study.p_min = config.p_min;
  study.p_max = config.p_max_sweep;
  study.knots.p_max = config.p_max_knot;
  study.knots.interior_multiplicity = config.interior_multiplicity;
  study.quad_order = config.quad_order;
  study.samples_per_region = config.samples_per_region;
  study.threads = config.threads;
  return study;
}

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.p << ',' << r.dof_label << ',' << r.basis_count << ',' << number(r.eps1) << ','
        << number(r.eps2) << ',' << to_string(r.strategy) << ',' << number(r.error_percent) << ','
        << r.status << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<ConvergenceRecord>& records) {
  json rows = json::array();
  for (const auto& r : records) {
    rows.push_back({{"p", r.p},
                    {"dof_label", r.dof_label},
                    {"basis_count", r.basis_count},
                    {"eps1", r.eps1},
                    {"eps2", r.eps2},
                    {"strategy", std::string(to_string(r.strategy))},
                    {"error_percent", std::isnan(r.error_percent) ? json(nullptr) : json(r.error_percent)},
                    {"status", r.status},
                    {"detail", r.detail}});
  }
  out << json{{"records", rows}}.dump(2) << '\n';
}

std::vector<ConvergenceRecord> read_json(std::istream& in) {
  std::vector<ConvergenceRecord> records;
  try {
    const json doc = json::parse(in);
    for (const auto& row : doc.at("records")) {
      ConvergenceRecord r;
      r.p = row.at("p").get<int>();
      r.dof_label = row.at("dof_label").get<int>();
      r.basis_count = row.at("basis_count").get<int>();
      r.eps1 = row.at("eps1").get<double>();
      r.eps2 = row.at("eps2").get<double>();
      const auto strategy = parse_strategy(row.at("strategy").get<std::string>());
      if (!strategy) config_error("unknown strategy in JSON record");
      r.strategy = *strategy;
      const auto& err = row.at("error_percent");
      r.error_percent = err.is_null() ? std::numeric_limits<double>::quiet_NaN() : err.get<double>();
      r.status = row.at("status").get<std::string>();
      r.detail = row.value("detail", std::string{});
      records.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    config_error(std::string("malformed JSON records: ") + e.what());
  }
  return records;
}

void write_pivot(std::ostream& out, const std::vector<ConvergenceRecord>& records) {
  const auto groups = group_by_pair(records);
  std::vector<int> labels;
  for (const auto& r : records) {
    if (std::find(labels.begin(), labels.end(), r.dof_label) == labels.end()) labels.push_back(r.dof_label);
  }
  std::sort(labels.begin(), labels.end());
  out << "dof_label";
  for (const auto& g : groups) out << ',' << pair_label(g.front()->eps1, g.front()->eps2);
  out << '\n';
  for (int label : labels) {
    out << label;
    for (const auto& g : groups) {
      out << ',';
      auto it = std::find_if(g.begin(), g.end(), [&](const auto* r) { return r->dof_label == label; });
      if (it != g.end()) out << ((*it)->ok() ? fixed2((*it)->error_percent) : (*it)->status);
    }
    out << '\n';
  }
}

void write_plot_data(std::ostream& out, const std::vector<ConvergenceRecord>& records,
                     OutputFormat format) {
  const auto groups = group_by_pair(records);
  if (format == OutputFormat::Csv) {
    out << "series,eps1,eps2,dof_label,log10_error\n";
    for (std::size_t k = 0; k < groups.size(); ++k) {
      for (const auto* r : groups[k]) {
        if (!r->ok() || !(r->error_percent > 0.0)) continue;
        out << k << ',' << number(r->eps1) << ',' << number(r->eps2) << ',' << r->dof_label << ','
            << number(std::log10(r->error_percent)) << '\n';
      }
    }
    return;
  }
  json series = json::array();
  for (const auto& g : groups) {
    json x = json::array();
    json y = json::array();
    for (const auto* r : g) {
      if (!r->ok() || !(r->error_percent > 0.0)) continue;
      x.push_back(r->dof_label);
      y.push_back(std::log10(r->error_percent));
    }
    series.push_back({{"label", pair_label(g.front()->eps1, g.front()->eps2)},
                      {"eps1", g.front()->eps1},
                      {"eps2", g.front()->eps2},
                      {"dof_label", x},
                      {"log10_error", y}});
  }
  out << json{{"series", series}}.dump(2) << '\n';
}

RunOutcome run(const ExperimentConfig& config) {
  RunOutcome outcome;
  outcome.records = run_convergence_study(to_study_config(config));

  const bool csv = config.format == OutputFormat::Csv;
  const std::string ext = csv ? ".csv" : ".json";
  {
    auto out = open_output(config.output_path);
    csv ? write_csv(out, outcome.records) : write_json(out, outcome.records);
    outcome.files.push_back(config.output_path);
  }
  {
    const auto path = sibling(config.output_path, "_plot", ext);
    auto out = open_output(path);
    write_plot_data(out, outcome.records, config.format);
    outcome.files.push_back(path);
  }
  if (config.pivot) {
    const auto path = sibling(config.output_path, "_pivot", ".csv");
    auto out = open_output(path);
    write_pivot(out, outcome.records);
    outcome.files.push_back(path);
  }
  const bool all_ok = std::all_of(outcome.records.begin(), outcome.records.end(),
                                  [](const auto& r) { return r.ok(); });
  outcome.exit_code = all_ok ? 0 : 1;
  return outcome;
}

}  // namespace spiga
