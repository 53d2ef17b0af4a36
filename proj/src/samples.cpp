#include "cvw/samples.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace cvw {

namespace {

bool is_separator(char c) { return c == ',' || c == '\t' || c == ';' || c == ' '; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  const bool comma_like = line.find_first_of(",;\t") != std::string_view::npos;
  while (k <= line.size()) {
    std::size_t end = k;
    while (end < line.size() && !(comma_like ? (line[end] == ',' || line[end] == ';' || line[end] == '\t')
                                             : is_separator(line[end])))
      ++end;
    std::string_view f = line.substr(k, end - k);
    while (!f.empty() && f.front() == ' ') f.remove_prefix(1);
    while (!f.empty() && f.back() == ' ') f.remove_suffix(1);
    if (comma_like || !f.empty()) out.push_back(f);
    if (end >= line.size()) break;
    k = end + 1;
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw SampleFormatError(source + ":" + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view f, const std::string& source, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size() || f.empty())
    fail(source, line, "not a number: '" + std::string(f) + "'");
  if (!std::isfinite(v)) fail(source, line, "non-finite value");
  return v;
}

}  // namespace

SampleTable parse_sample_table(std::istream& in, const std::string& source) {
  SampleTable t;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto fields = split_fields(line);
    if (!header) {
      if (fields.size() != 2 || fields[0] != "q1" || fields[1] != "q2") fail(source, number, "expected header 'q1,q2'");
      header = true;
      continue;
    }
    if (fields.size() != 2) fail(source, number, "expected 2 fields, found " + std::to_string(fields.size()));
    t.rows.push_back({parse_number(fields[0], source, number), parse_number(fields[1], source, number)});
  }
  if (!header) throw SampleFormatError(source + ": missing header 'q1,q2'");
  return t;
}

SampleTable read_sample_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SampleFormatError("cannot open sample file " + path);
  return parse_sample_table(in, path);
}

void write_sample_table(const SampleTable& table, std::ostream& out) {
  out << table.labels[0] << ',' << table.labels[1] << '\n';
  char buf[64];
  for (const auto& r : table.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", r[0], r[1]);
    out << buf;
  }
}

void write_sample_table(const SampleTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_sample_table(table, out);
}

DiscreteDistribution histogram(const std::vector<double>& values, double bin_width, double offset) {
  if (values.empty()) throw std::invalid_argument("histogram of an empty sample");
  if (!(bin_width > 0) || !std::isfinite(bin_width)) throw std::invalid_argument("bin width must be positive");
  std::vector<long long> bins(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) bins[k] = static_cast<long long>(std::floor((values[k] - offset) / bin_width));
  const auto [lo, hi] = std::minmax_element(bins.begin(), bins.end());
  const long long first = *lo;
  std::vector<double> counts(static_cast<std::size_t>(*hi - first + 1), 0.0);
  for (long long b : bins) counts[static_cast<std::size_t>(b - first)] += 1.0;
  const double n = static_cast<double>(values.size());
  for (double& c : counts) c /= n;
  return {bin_width, offset + static_cast<double>(first) * bin_width, std::move(counts)};
}

IngestedDistributions ingest_samples(const SampleTable& r_table, const SampleTable& s_table, double delta,
                                     double big_delta, double offset, std::size_t min_samples) {
  if (r_table.rows.empty() || s_table.rows.empty()) throw std::invalid_argument("sample tables must not be empty");
  if (!(delta > 0) || !(big_delta > 0)) throw std::invalid_argument("resolutions must be positive");
  auto combine = [](const SampleTable& t, double sign) {
    std::vector<double> v(t.rows.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = t.rows[k][0] + sign * t.rows[k][1];
    return v;
  };
  IngestedDistributions d;
  d.Rplus = histogram(combine(r_table, 1.0), delta, offset);
  d.Rminus = histogram(combine(r_table, -1.0), delta, offset);
  d.Splus = histogram(combine(s_table, 1.0), big_delta, offset);
  d.Sminus = histogram(combine(s_table, -1.0), big_delta, offset);
  d.r_count = r_table.count();
  d.s_count = s_table.count();
  for (auto [count, name] : {std::pair{d.r_count, "r"}, std::pair{d.s_count, "s"}}) {
    if (count < min_samples) {
      d.warnings.push_back(std::string("only ") + std::to_string(count) + " " + name + " samples (minimum " +
                           std::to_string(min_samples) + ")");
    }
  }
  return d;
}

std::vector<WitnessVerdict> evaluate_ingested(const IngestedDistributions& d, const std::vector<double>& alphas,
                                              double tol) {
  std::vector<WitnessVerdict> out;
  auto attach = [&](WitnessVerdict v, Pairing p) {
    v.pairing = p;
    v.parameters.emplace_back("r_samples", static_cast<double>(d.r_count));
    v.parameters.emplace_back("s_samples", static_cast<double>(d.s_count));
    v.metadata.warnings.insert(v.metadata.warnings.end(), d.warnings.begin(), d.warnings.end());
    out.push_back(std::move(v));
  };
  for (double a : alphas) {
    for (Pairing p : {Pairing::plus_minus, Pairing::minus_plus}) {
      const auto& r = p == Pairing::plus_minus ? d.Rplus : d.Rminus;
      const auto& s = p == Pairing::plus_minus ? d.Sminus : d.Splus;
      for (Assignment as : {Assignment::alpha_on_r, Assignment::alpha_on_s}) {
        try {
          attach(renyi_weak_discrete(r, s, EntropyOrder(a), tol, as), p);
        } catch (const std::exception& e) {
          WitnessVerdict v = failed_verdict(CriterionId::renyi_weak_discrete, e.what());
          v.parameters = {{"alpha", a}};
          attach(std::move(v), p);
        }
      }
    }
  }
  for (double a : alphas) {
    if (EntropyOrder(a).is_shannon()) continue;
    for (Pairing p : {Pairing::plus_minus, Pairing::minus_plus}) {
      const auto& r = p == Pairing::plus_minus ? d.Rplus : d.Rminus;
      const auto& s = p == Pairing::plus_minus ? d.Sminus : d.Splus;
      for (Assignment as : {Assignment::alpha_on_r, Assignment::alpha_on_s}) {
        try {
          const EntropyOrder alpha(a);
          const EntropyOrder beta = conjugate_beta(alpha);
          const bool swap = as == Assignment::alpha_on_s;
          WitnessVerdict v = tsallis_witness(r, s, swap ? beta : alpha, swap ? alpha : beta, tol);
          v.assignment = as;
          attach(std::move(v), p);
        } catch (const std::exception& e) {
          WitnessVerdict v = failed_verdict(CriterionId::tsallis, e.what());
          v.parameters = {{"alpha", a}};
          attach(std::move(v), p);
        }
      }
    }
  }
  return out;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

SampleTable sample_joint(const JointDensity2D& joint, std::size_t count, std::uint64_t seed) {
  const std::size_t n2 = joint.grid2.n_points;
  std::vector<double> cdf(joint.values.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < cdf.size(); ++k) {
    acc += joint.values[k];
    cdf[k] = acc;
  }
  if (!(acc > 0)) throw NumericError("cannot sample a density with zero mass");
  std::mt19937_64 rng(seed);
  SampleTable t;
  t.rows.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double u = uniform01(rng) * acc;
    std::size_t k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (k >= cdf.size()) k = cdf.size() - 1;
    const std::size_t i = k / n2;
    const std::size_t j = k % n2;
    const double q1 = joint.grid1.point(i) + (uniform01(rng) - 0.5) * joint.grid1.spacing;
    const double q2 = joint.grid2.point(j) + (uniform01(rng) - 0.5) * joint.grid2.spacing;
    t.rows.push_back({q1, q2});
  }
  return t;
}

}  // namespace cvw
