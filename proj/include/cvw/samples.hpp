#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvw/marginals.hpp"
#include "cvw/states.hpp"
#include "cvw/witnesses.hpp"

namespace cvw {

/// Raised for unreadable or malformed sample files; the message carries
/// "source:line:" when a specific row is at fault.
class SampleFormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Joint measurement records (q1, q2), one row per shot.
struct SampleTable {
  std::array<std::string, 2> labels{"q1", "q2"};
  std::vector<std::array<double, 2>> rows;

  std::size_t count() const { return rows.size(); }
};

/// Header row `q1,q2`, then one pair of decimal numbers per line. Commas,
/// tabs, semicolons or blanks separate fields; blank lines are skipped.
SampleTable parse_sample_table(std::istream& in, const std::string& source = "<input>");
SampleTable read_sample_table(const std::string& path);
void write_sample_table(const SampleTable& table, std::ostream& out);
void write_sample_table(const SampleTable& table, const std::string& path);

inline constexpr std::size_t kDefaultMinSamples = 1000;

/// Histogram with bins [offset + kδ, offset + (k+1)δ), normalized.
DiscreteDistribution histogram(const std::vector<double>& values, double bin_width, double offset = 0.0);

struct IngestedDistributions {
  DiscreteDistribution Rplus, Rminus, Splus, Sminus;
  std::size_t r_count = 0;
  std::size_t s_count = 0;
  std::vector<std::string> warnings;
};

/// Forms r± = r1 ± r2 from the position-type table and s± from the other,
/// then bins them with widths δ and Δ. Empty tables are rejected; fewer than
/// `min_samples` rows adds a warning.
IngestedDistributions ingest_samples(const SampleTable& r_table, const SampleTable& s_table, double delta,
                                     double big_delta, double offset = 0.0,
                                     std::size_t min_samples = kDefaultMinSamples);

/// Discrete Rényi (every α) and Tsallis (α ≠ 1) verdicts on ingested data,
/// both pairings and both assignments. Ingestion warnings are attached.
std::vector<WitnessVerdict> evaluate_ingested(const IngestedDistributions& d, const std::vector<double>& alphas,
                                              double tol = kDefaultTolerance);

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double uniform01(std::mt19937_64& rng);

/// Draws `count` points from a gridded joint density: a cell by inverse CDF,
/// then a uniform position inside the cell.
SampleTable sample_joint(const JointDensity2D& joint, std::size_t count, std::uint64_t seed);

}  // namespace cvw
