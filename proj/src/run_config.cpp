#include "cvw/run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace cvw {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "inf") return INFINITY;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

long long parse_integer(const std::string& raw) {
  const std::string s = trim(raw);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (cur.empty()) throw ConfigError("empty item in list '" + s + "'");
    out.push_back(cur);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + num(v[k]);
  return s;
}

std::string join_int(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

using Section = std::map<std::string, std::string>;
using Document = std::map<std::string, Section>;

Document parse_document(const std::string& text) {
  Document doc;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(number) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      doc[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    if (section.empty()) throw ConfigError("line " + std::to_string(number) + ": key outside of a section");
    doc[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return doc;
}

/// Reads keys out of one section and complains about leftovers.
class SectionReader {
 public:
  SectionReader(const Document& doc, const std::string& name) : name_(name) {
    auto it = doc.find(name);
    if (it != doc.end()) section_ = it->second;
  }

  bool has(const std::string& key) const { return section_.count(key) > 0; }
  std::string take(const std::string& key) {
    used_.insert(key);
    return section_.at(key);
  }
  void str(const std::string& key, std::string& out) {
    if (has(key)) out = take(key);
  }
  void real(const std::string& key, double& out) {
    if (has(key)) out = parse_double(take(key));
  }
  void doubles(const std::string& key, std::vector<double>& out) {
    if (has(key)) out = parse_double_list(take(key));
  }
  template <class Int>
  void integer(const std::string& key, Int& out) {
    if (has(key)) out = static_cast<Int>(parse_integer(take(key)));
  }
  void finish() const {
    for (const auto& [k, v] : section_)
      if (!used_.count(k)) throw ConfigError("unknown key '" + k + "' in section [" + name_ + "]");
  }

 private:
  std::string name_;
  Section section_;
  std::set<std::string> used_;
};

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::scan: return "scan";
    case Command::ingest: return "ingest";
    case Command::sample: return "sample";
    default: return "eval";
  }
}

Command parse_command(const std::string& s) {
  for (Command c : {Command::eval, Command::scan, Command::ingest, Command::sample})
    if (command_name(c) == s) return c;
  throw ConfigError("unknown command '" + s + "'");
}

std::string scan_kind_name(ScanKind k) {
  switch (k) {
    case ScanKind::noon: return "noon";
    case ScanKind::cat: return "cat";
    default: return "hermite-gauss";
  }
}

ScanKind parse_scan_kind(const std::string& s) {
  for (ScanKind k : {ScanKind::hermite_gauss, ScanKind::noon, ScanKind::cat})
    if (scan_kind_name(k) == s) return k;
  throw ConfigError("unknown scan kind '" + s + "'");
}

StateDescriptor default_state(const std::string& family) {
  if (family == "vacuum") return {VacuumParams{}};
  if (family == "squeezed") return {SqueezedProductParams{}};
  if (family == "thermal") return {ThermalParams{}};
  if (family == "tmsv") return {TwoModeSqueezedParams{}};
  if (family == "hermite-gauss") return {HermiteGaussParams{}};
  if (family == "noon") return {NoonParams{}};
  if (family == "cat") return {CatParams{}};
  throw ConfigError("unknown state family '" + family + "'");
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(parse_double(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split(s, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<int>(parse_integer(item)));
      continue;
    }
    const auto lo = parse_integer(item.substr(0, dots));
    const auto hi = parse_integer(item.substr(dots + 2));
    if (hi < lo) throw ConfigError("empty range '" + item + "'");
    for (auto k = lo; k <= hi; ++k) out.push_back(static_cast<int>(k));
  }
  return out;
}

std::string RunConfig::resolved_name() const {
  if (!output_name.empty()) return output_name;
  switch (command) {
    case Command::scan: return "scan-" + scan_kind_name(scan_kind);
    case Command::ingest: return "ingest";
    case Command::sample: return "samples-" + state.family();
    default: return "eval-" + state.family();
  }
}

std::string RunConfig::to_ini() const {
  std::ostringstream o;
  o << "# cvw run configuration\n";
  o << "[run]\ncommand = " << command_name(command) << "\nseed = " << seed << "\nworkers = " << workers << "\n";

  o << "\n[state]\nfamily = " << state.family() << "\n";
  std::visit(overloaded{[&](const VacuumParams&) {},
                        [&](const SqueezedProductParams& s) { o << "r1 = " << num(s.r1) << "\nr2 = " << num(s.r2) << "\n"; },
                        [&](const ThermalParams& t) { o << "n1 = " << num(t.n1) << "\nn2 = " << num(t.n2) << "\n"; },
                        [&](const TwoModeSqueezedParams& t) { o << "r = " << num(t.r) << "\n"; },
                        [&](const HermiteGaussParams& h) {
                          o << "sigma_plus = " << num(h.sigma_plus) << "\nsigma_minus = " << num(h.sigma_minus) << "\n";
                        },
                        [&](const NoonParams& p) {
                          o << "n_photons = " << p.n_photons << "\nmax_photons = " << p.max_photons << "\n";
                        },
                        [&](const CatParams& c) {
                          o << "nu_re = " << num(c.nu.real()) << "\nnu_im = " << num(c.nu.imag()) << "\np = " << num(c.p)
                            << "\n";
                        }},
             state.params);

  o << "\n[grid]\npoints = " << grid.points << "\nhalf_width = " << num(grid.half_width) << "\n";

  const auto& e = evaluation;
  std::string names;
  for (std::size_t k = 0; k < e.criteria.size(); ++k)
    names += (k ? "," : "") + std::string(criterion_name(e.criteria[k]));
  std::string strong;
  for (std::size_t k = 0; k < e.strong_exponents.size(); ++k)
    strong += (k ? "," : "") + num(e.strong_exponents[k].first) + ":" + num(e.strong_exponents[k].second);
  o << "\n[criteria]\nenabled = " << names << "\nalphas = " << join(e.alphas) << "\nstrong_exponents = " << strong
    << "\ndiscrete_alphas = " << join(e.discrete_alphas) << "\ndeltas = " << join(e.deltas)
    << "\nbig_deltas = " << join(e.big_deltas) << "\nbin_offset = " << num(e.bin_offset)
    << "\ntheta1 = " << num(e.angles.theta1) << "\ntheta2 = " << num(e.angles.theta2)
    << "\ntolerance = " << num(e.tolerance) << "\n";

  o << "\n[scan]\nkind = " << scan_kind_name(scan_kind) << "\nalphas = " << join(scan_alphas)
    << "\nratios = " << join(ratios) << "\nnoon_n = " << join_int(noon_n) << "\nalpha1 = " << join(alpha1_grid)
    << "\nalpha2 = " << join(alpha2_grid) << "\nnu = " << join(nu_grid) << "\np = " << join(p_grid) << "\n";

  o << "\n[ingest]\nr_samples = " << r_samples << "\ns_samples = " << s_samples << "\ndelta = " << num(delta)
    << "\nbig_delta = " << num(big_delta) << "\nmin_samples = " << min_samples << "\n";

  o << "\n[sample]\ncount = " << sample_count << "\n";
  o << "\n[output]\ndir = " << output_dir << "\nname = " << output_name << "\n";
  return o.str();
}

RunConfig RunConfig::from_ini(const std::string& text) {
  const Document doc = parse_document(text);
  for (const auto& [name, section] : doc) {
    static const std::set<std::string> known{"run", "state", "grid", "criteria", "scan", "ingest", "sample", "output"};
    if (!known.count(name)) throw ConfigError("unknown section [" + name + "]");
  }
  RunConfig c;
  {
    SectionReader r(doc, "run");
    if (r.has("command")) c.command = parse_command(r.take("command"));
    r.integer("seed", c.seed);
    r.integer("workers", c.workers);
    r.finish();
  }
  {
    SectionReader r(doc, "state");
    if (r.has("family")) c.state = default_state(r.take("family"));
    std::visit(overloaded{[&](VacuumParams&) {},
                          [&](SqueezedProductParams& s) {
                            r.real("r1", s.r1);
                            r.real("r2", s.r2);
                          },
                          [&](ThermalParams& t) {
                            r.real("n1", t.n1);
                            r.real("n2", t.n2);
                          },
                          [&](TwoModeSqueezedParams& t) { r.real("r", t.r); },
                          [&](HermiteGaussParams& h) {
                            r.real("sigma_plus", h.sigma_plus);
                            r.real("sigma_minus", h.sigma_minus);
                          },
                          [&](NoonParams& p) {
                            r.integer("n_photons", p.n_photons);
                            r.integer("max_photons", p.max_photons);
                          },
                          [&](CatParams& k) {
                            double re = k.nu.real(), im = k.nu.imag();
                            r.real("nu_re", re);
                            r.real("nu_im", im);
                            k.nu = cplx(re, im);
                            r.real("p", k.p);
                          }},
               c.state.params);
    r.finish();
  }
  {
    SectionReader r(doc, "grid");
    r.integer("points", c.grid.points);
    r.real("half_width", c.grid.half_width);
    r.finish();
  }
  {
    SectionReader r(doc, "criteria");
    auto& e = c.evaluation;
    if (r.has("enabled")) {
      e.criteria.clear();
      for (const auto& name : split(r.take("enabled"), ',')) {
        auto id = parse_criterion(name);
        if (!id) throw ConfigError("unknown criterion '" + name + "'");
        e.criteria.push_back(*id);
      }
    }
    r.doubles("alphas", e.alphas);
    if (r.has("strong_exponents")) {
      e.strong_exponents.clear();
      for (const auto& pair : split(r.take("strong_exponents"), ',')) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos) throw ConfigError("strong exponent pair needs 'a1:a2', got '" + pair + "'");
        e.strong_exponents.emplace_back(parse_double(pair.substr(0, colon)), parse_double(pair.substr(colon + 1)));
      }
    }
    r.doubles("discrete_alphas", e.discrete_alphas);
    r.doubles("deltas", e.deltas);
    r.doubles("big_deltas", e.big_deltas);
    r.real("bin_offset", e.bin_offset);
    r.real("theta1", e.angles.theta1);
    r.real("theta2", e.angles.theta2);
    r.real("tolerance", e.tolerance);
    r.finish();
  }
  {
    SectionReader r(doc, "scan");
    if (r.has("kind")) c.scan_kind = parse_scan_kind(r.take("kind"));
    r.doubles("alphas", c.scan_alphas);
    r.doubles("ratios", c.ratios);
    if (r.has("noon_n")) c.noon_n = parse_int_list(r.take("noon_n"));
    r.doubles("alpha1", c.alpha1_grid);
    r.doubles("alpha2", c.alpha2_grid);
    r.doubles("nu", c.nu_grid);
    r.doubles("p", c.p_grid);
    r.finish();
  }
  {
    SectionReader r(doc, "ingest");
    r.str("r_samples", c.r_samples);
    r.str("s_samples", c.s_samples);
    r.real("delta", c.delta);
    r.real("big_delta", c.big_delta);
    r.integer("min_samples", c.min_samples);
    r.finish();
  }
  {
    SectionReader r(doc, "sample");
    r.integer("count", c.sample_count);
    r.finish();
  }
  {
    SectionReader r(doc, "output");
    r.str("dir", c.output_dir);
    r.str("name", c.output_name);
    r.finish();
  }
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_ini(ss.str());
}

void RunConfig::validate() const {
  if (grid.points < 8) throw ConfigError("grid needs at least 8 points");
  if (grid.half_width < 0) throw ConfigError("half width must be >= 0");
  if (evaluation.tolerance < 0) throw ConfigError("tolerance must be >= 0");
  if (workers < 0) throw ConfigError("workers must be >= 0");
  std::visit(overloaded{[](const HermiteGaussParams& h) { h.validate(); }, [](const NoonParams& p) { p.validate(); },
                        [](const CatParams& k) { k.validate(); },
                        [](const ThermalParams& t) {
                          if (t.n1 < 0 || t.n2 < 0) throw ConfigError("thermal occupation must be >= 0");
                        },
                        [](const auto&) {}},
             state.params);
  if (command == Command::ingest) {
    if (r_samples.empty() || s_samples.empty()) throw ConfigError("ingest needs both sample files");
    if (!(delta > 0) || !(big_delta > 0)) throw ConfigError("resolutions must be positive");
  }
  if (command == Command::sample && sample_count == 0) throw ConfigError("sample count must be positive");
  if (command == Command::scan) {
    switch (scan_kind) {
      case ScanKind::hermite_gauss:
        if (scan_alphas.empty() || ratios.empty()) throw ConfigError("hermite-gauss scan needs alphas and ratios");
        break;
      case ScanKind::noon:
        if (noon_n.empty() || alpha1_grid.empty() || alpha2_grid.empty())
          throw ConfigError("noon scan needs N values and both exponent grids");
        break;
      case ScanKind::cat:
        if (nu_grid.empty() || p_grid.empty() || scan_alphas.empty())
          throw ConfigError("cat scan needs nu, p and alpha values");
        break;
    }
  }
}

}  // namespace cvw
