#include "mwave/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mwave/errors.hpp"
#include "mwave/parallel.hpp"

namespace mwave {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double unit_scale(const std::string& suffix, Unit unit) {
  const std::string s = lower(suffix);
  switch (unit) {
    case Unit::plain:
      break;
    case Unit::length:
      if (s == "m") return 1.0;
      if (s == "cm") return 1e-2;
      if (s == "mm") return 1e-3;
      if (s == "um") return 1e-6;
      break;
    case Unit::time:
      if (s == "s") return 1.0;
      if (s == "ms") return 1e-3;
      if (s == "us") return 1e-6;
      if (s == "ns") return 1e-9;
      if (s == "ps") return 1e-12;
      break;
    case Unit::frequency:
      if (s == "hz") return 1.0;
      if (s == "khz") return 1e3;
      if (s == "mhz") return 1e6;
      if (s == "ghz") return 1e9;
      break;
  }
  throw InvariantViolation("unsupported unit suffix '" + suffix + "'");
}

}  // namespace

double parse_quantity(const std::string& text, Unit unit) {
  const std::string t = trim(text);
  if (t.empty()) throw InvariantViolation("empty value");
  size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &pos);
  } catch (const std::exception&) {
    throw InvariantViolation("not a number: '" + t + "'");
  }
  const std::string suffix = trim(t.substr(pos));
  if (suffix.empty()) return value;
  return value * unit_scale(suffix, unit);
}

namespace {

long parse_integer(const std::string& text) {
  const std::string t = trim(text);
  size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(t, &pos);
  } catch (const std::exception&) {
    throw InvariantViolation("not an integer: '" + t + "'");
  }
  if (pos != t.size()) throw InvariantViolation("not an integer: '" + t + "'");
  return value;
}

bool parse_bool(const std::string& text) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "on" || t == "1") return true;
  if (t == "false" || t == "off" || t == "0") return false;
  throw InvariantViolation("not a boolean: '" + text + "'");
}

std::vector<double> parse_list(const std::string& text, Unit unit) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_quantity(item, unit));
  if (out.empty()) throw InvariantViolation("empty list");
  return out;
}

struct RawEntry {
  int line;
  std::string section;
  std::string key;
  std::string value;
};

const char* kSections[] = {"materials", "grid", "phantom", "array", "pulse",
                           "pipeline",  "sweep", "sar"};

std::vector<RawEntry> tokenize(const std::string& text) {
  std::vector<RawEntry> entries;
  std::stringstream ss(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (std::find_if(std::begin(kSections), std::end(kSections),
                       [&](const char* s) { return section == s; }) == std::end(kSections))
        throw ParseError(line_no, "unknown section [" + section + "]");
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    if (section.empty()) throw ParseError(line_no, "key outside of any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (value.empty()) throw ParseError(line_no, "empty value for key '" + key + "'");
    entries.push_back({line_no, section, key, value});
  }
  return entries;
}

void apply_material_entry(RunConfig& cfg, const RawEntry& e) {
  const size_t dot = e.key.find('.');
  if (dot == std::string::npos) throw UnknownKeyError(e.section, e.key);
  const std::string tissue = e.key.substr(0, dot);
  const std::string field = e.key.substr(dot + 1);
  if (!cfg.catalog.contains(tissue)) throw UnknownKeyError(e.section, e.key);
  MaterialProperties& m = cfg.catalog.entry(tissue);
  if (field == "eps_r")
    m.eps_r = parse_quantity(e.value, Unit::plain);
  else if (field == "sigma")
    m.sigma = parse_quantity(e.value, Unit::plain);
  else if (field == "rho")
    m.rho = parse_quantity(e.value, Unit::plain);
  else if (field == "atten_db_per_cm") {
    if (lower(trim(e.value)) == "none")
      m.atten_db_per_cm.reset();
    else
      m.atten_db_per_cm = parse_quantity(e.value, Unit::plain);
  } else {
    throw UnknownKeyError(e.section, e.key);
  }
}

}  // namespace

RunConfig default_config() { return RunConfig{}; }

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  bool t0_given = false;
  bool tumor_present = true;
  TumorSpec tumor = cfg.phantom.tumor.value();

  for (const RawEntry& e : tokenize(text)) {
    try {
      if (e.section == "materials") {
        apply_material_entry(cfg, e);
      } else if (e.section == "grid") {
        if (e.key == "dx")
          cfg.dx = parse_quantity(e.value, Unit::length);
        else if (e.key == "courant")
          cfg.courant = parse_quantity(e.value, Unit::plain);
        else if (e.key == "f_max")
          cfg.f_max = parse_quantity(e.value, Unit::frequency);
        else if (e.key == "pml_cells")
          cfg.pml_cells = static_cast<int>(parse_integer(e.value));
        else if (e.key == "margin")
          cfg.margin = parse_quantity(e.value, Unit::length);
        else
          throw UnknownKeyError(e.section, e.key);
      } else if (e.section == "phantom") {
        if (e.key == "breast_radius")
          cfg.phantom.breast_radius = parse_quantity(e.value, Unit::length);
        else if (e.key == "skin_thickness")
          cfg.phantom.skin_thickness = parse_quantity(e.value, Unit::length);
        else if (e.key == "tumor_present")
          tumor_present = parse_bool(e.value);
        else if (e.key == "tumor_diameter")
          tumor.diameter = parse_quantity(e.value, Unit::length);
        else if (e.key == "tumor_depth")
          tumor.depth = parse_quantity(e.value, Unit::length);
        else if (e.key == "tumor_angle_deg")
          tumor.angle_deg = parse_quantity(e.value, Unit::plain);
        else if (e.key == "background_material")
          cfg.phantom.materials.background = e.value;
        else if (e.key == "skin_material")
          cfg.phantom.materials.skin = e.value;
        else if (e.key == "fat_material")
          cfg.phantom.materials.fat = e.value;
        else if (e.key == "tumor_material")
          cfg.phantom.materials.tumor = e.value;
        else
          throw UnknownKeyError(e.section, e.key);
      } else if (e.section == "array") {
        if (e.key == "n_elements")
          cfg.n_elements = static_cast<int>(parse_integer(e.value));
        else if (e.key == "standoff")
          cfg.standoff = parse_quantity(e.value, Unit::length);
        else if (e.key == "arc_span_deg")
          cfg.arc_span_deg = parse_quantity(e.value, Unit::plain);
        else if (e.key == "arc_center_deg")
          cfg.arc_center_deg = parse_quantity(e.value, Unit::plain);
        else
          throw UnknownKeyError(e.section, e.key);
      } else if (e.section == "pulse") {
        if (e.key == "amplitude")
          cfg.pulse.amplitude = parse_quantity(e.value, Unit::plain);
        else if (e.key == "fwhm")
          cfg.pulse.fwhm = parse_quantity(e.value, Unit::time);
        else if (e.key == "t0") {
          cfg.pulse.t0 = parse_quantity(e.value, Unit::time);
          t0_given = true;
        } else if (e.key == "shape") {
          if (e.value == "gaussian")
            cfg.pulse.shape = PulseShape::gaussian;
          else if (e.value == "gaussian_derivative")
            cfg.pulse.shape = PulseShape::gaussian_derivative;
          else
            throw InvariantViolation("shape must be gaussian or gaussian_derivative");
        } else
          throw UnknownKeyError(e.section, e.key);
      } else if (e.section == "pipeline") {
        if (e.key == "n_steps")
          cfg.n_steps = parse_integer(e.value);
        else if (e.key == "tx_index")
          cfg.tx_index = static_cast<int>(parse_integer(e.value));
        else if (e.key == "equalize")
          cfg.equalize_enabled = parse_bool(e.value);
        else if (e.key == "spreading_per_leg")
          cfg.spreading_per_leg = parse_quantity(e.value, Unit::plain);
        else if (e.key == "focus_tissue")
          cfg.focus_tissue = e.value;
        else if (e.key == "recon_dx")
          cfg.recon_dx = parse_quantity(e.value, Unit::length);
        else if (e.key == "threshold_db")
          cfg.threshold_db = parse_quantity(e.value, Unit::plain);
        else if (e.key == "snapshot_every")
          cfg.snapshot_every = parse_integer(e.value);
        else if (e.key == "snapshot_format") {
          if (e.value != "pgm" && e.value != "csv")
            throw InvariantViolation("snapshot_format must be pgm or csv");
          cfg.snapshot_format = e.value;
        } else if (e.key == "threads")
          cfg.threads = static_cast<int>(parse_integer(e.value));
        else
          throw UnknownKeyError(e.section, e.key);
      } else if (e.section == "sweep") {
        if (e.key == "depths")
          cfg.sweep_depths = parse_list(e.value, Unit::length);
        else
          throw UnknownKeyError(e.section, e.key);
      } else if (e.section == "sar") {
        if (e.key == "frequencies")
          cfg.sar_frequencies = parse_list(e.value, Unit::frequency);
        else if (e.key == "amplitude")
          cfg.sar_amplitude = parse_quantity(e.value, Unit::plain);
        else if (e.key == "ramp_periods")
          cfg.sar_ramp_periods = static_cast<int>(parse_integer(e.value));
        else if (e.key == "measure_periods")
          cfg.sar_measure_periods = static_cast<int>(parse_integer(e.value));
        else
          throw UnknownKeyError(e.section, e.key);
      }
    } catch (const UnknownKeyError&) {
      throw;
    } catch (const InvariantViolation& err) {
      throw ParseError(e.line, std::string(err.what()) + " (key '" + e.key + "')");
    }
  }

  cfg.phantom.tumor = tumor_present ? std::optional<TumorSpec>(tumor) : std::nullopt;
  if (!t0_given) cfg.pulse.t0 = 3.0 * cfg.pulse.fwhm;
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void RunConfig::validate() const {
  catalog.validate();
  phantom.validate();
  pulse.validate();

  if (!(dx > 0.0)) throw InvariantViolation("grid: dx must be > 0");
  if (!(courant > 0.0) || courant > 1.0 / std::sqrt(2.0) - 1e-12)
    throw InvariantViolation("grid: courant must be in (0, 1/sqrt(2))");
  if (pml_cells < 1) throw InvariantViolation("grid: pml_cells must be >= 1");
  if (!(margin > 0.0)) throw InvariantViolation("grid: margin must be > 0");

  if (n_elements < 2) throw InvariantViolation("array: n_elements must be >= 2");
  if (!(standoff > 0.0)) throw InvariantViolation("array: standoff must be > 0");
  if (!(arc_span_deg > 0.0) || arc_span_deg > 360.0)
    throw InvariantViolation("array: arc_span_deg must be in (0, 360]");

  for (const std::string* t :
       {&phantom.materials.background, &phantom.materials.skin, &phantom.materials.fat,
        &phantom.materials.tumor, &focus_tissue})
    if (!catalog.contains(*t)) throw UnknownTissue(*t);

  // dx <= lambda_min/20 against the densest tissue this scene can contain.
  double max_eps = 1.0;
  for (const std::string* t : {&phantom.materials.background, &phantom.materials.skin,
                               &phantom.materials.fat, &phantom.materials.tumor})
    max_eps = std::max(max_eps, catalog.lookup_tissue(*t, 6e9).eps_r);
  validate_resolution(make_grid(3, 3, dx, courant), f_max, max_eps);

  if (!(recon_dx > 0.0)) throw InvariantViolation("pipeline: recon_dx must be > 0");
  if (!(threshold_db <= 0.0)) throw InvariantViolation("pipeline: threshold_db must be <= 0");
  if (n_steps < 0) throw InvariantViolation("pipeline: n_steps must be >= 0");
  if (tx_index < 0 || tx_index >= n_elements)
    throw InvariantViolation("pipeline: tx_index out of range");
  if (snapshot_every < 0) throw InvariantViolation("pipeline: snapshot_every must be >= 0");
  if (threads < 0) throw InvariantViolation("pipeline: threads must be >= 0");
  if (!(spreading_per_leg >= 0.0))
    throw InvariantViolation("pipeline: spreading_per_leg must be >= 0");

  for (double d : sweep_depths)
    if (!(d >= 0.0)) throw InvariantViolation("sweep: depths must be >= 0");
  for (double f : sar_frequencies)
    if (!(f > 0.0)) throw InvariantViolation("sar: frequencies must be > 0");
  if (sar_ramp_periods < 1 || sar_measure_periods < 1)
    throw InvariantViolation("sar: ramp_periods and measure_periods must be >= 1");
}

Scenario RunConfig::scenario() const {
  Scenario s;
  s.phantom = phantom;
  s.n_elements = n_elements;
  s.standoff = standoff;
  s.arc_span_deg = arc_span_deg;
  s.arc_center_deg = arc_center_deg;
  s.pulse = pulse;
  s.dx = dx;
  s.courant = courant;
  s.f_max = f_max;
  s.pml_cells = pml_cells;
  s.margin = margin;
  s.n_steps = n_steps;
  s.threads = resolved_threads();
  return s;
}

int RunConfig::resolved_threads() const {
  return threads > 0 ? threads : default_thread_count();
}

}  // namespace mwave
