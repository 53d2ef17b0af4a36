#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cvw/witnesses.hpp"

namespace cvw {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// JSON document {"context": {...}, "verdicts": [...]}; NaN and ∞ become null / "inf".
std::string verdicts_to_json(const std::vector<WitnessVerdict>& verdicts, const KeyValues& context = {});

/// One line per verdict: criterion, pairing, parameters, margin, DETECTED/-.
std::string verdict_line(const WitnessVerdict& v);

/// One line per criterion present: evaluated / detected / failed counts and the smallest margin.
std::vector<std::string> criterion_summary(const std::vector<WitnessVerdict>& verdicts);

}  // namespace cvw
