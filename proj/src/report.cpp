#include "cvw/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

namespace cvw {

namespace {

using nlohmann::json;

json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string_view status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::forbidden: return "forbidden";
    case VerdictStatus::failed: return "failed";
    default: return "evaluated";
  }
}

std::string fmt_param(double x) {
  if (std::isinf(x)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

std::string verdicts_to_json(const std::vector<WitnessVerdict>& verdicts, const KeyValues& context) {
  json ctx = json::object();
  for (const auto& [k, v] : context) ctx[k] = v;
  json list = json::array();
  for (const WitnessVerdict& v : verdicts) {
    json params = json::object();
    for (const auto& [k, x] : v.parameters) params[k] = number(x);
    json item = {{"criterion", std::string(criterion_name(v.criterion))},
                 {"pairing", std::string(pairing_name(v.pairing))},
                 {"assignment", std::string(assignment_name(v.assignment))},
                 {"parameters", params},
                 {"lhs", number(v.lhs)},
                 {"rhs", number(v.rhs)},
                 {"margin", number(v.margin)},
                 {"detected", v.detected},
                 {"status", std::string(status_name(v.status))},
                 {"renormalization", number(v.metadata.renormalization)},
                 {"warnings", v.metadata.warnings}};
    if (!v.message.empty()) item["message"] = v.message;
    list.push_back(std::move(item));
  }
  return json{{"context", ctx}, {"verdicts", list}}.dump(2) + "\n";
}

std::string verdict_line(const WitnessVerdict& v) {
  std::string s(criterion_name(v.criterion));
  if (v.pairing != Pairing::none) s += " " + std::string(pairing_name(v.pairing));
  if (v.assignment != Assignment::none) s += " " + std::string(assignment_name(v.assignment));
  for (const auto& [k, x] : v.parameters) s += " " + k + "=" + fmt_param(x);
  char buf[96];
  switch (v.status) {
    case VerdictStatus::forbidden: return s + " FPR (" + v.message + ")";
    case VerdictStatus::failed: return s + " ERROR: " + v.message;
    default: break;
  }
  std::snprintf(buf, sizeof buf, " lhs=%.6f rhs=%.6f margin=%+.6f %s", v.lhs, v.rhs, v.margin,
                v.detected ? "DETECTED" : "-");
  return s + buf;
}

std::vector<std::string> criterion_summary(const std::vector<WitnessVerdict>& verdicts) {
  std::vector<std::string> lines;
  for (CriterionId id : all_criteria()) {
    std::size_t evaluated = 0, detected = 0, failed = 0, forbidden = 0;
    double best = std::numeric_limits<double>::infinity();
    for (const WitnessVerdict& v : verdicts) {
      if (v.criterion != id) continue;
      switch (v.status) {
        case VerdictStatus::failed: ++failed; break;
        case VerdictStatus::forbidden: ++forbidden; break;
        default:
          ++evaluated;
          if (v.detected) ++detected;
          best = std::min(best, v.margin);
      }
    }
    if (evaluated + failed + forbidden == 0) continue;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-15s %s  evaluated=%zu detected=%zu failed=%zu forbidden=%zu min_margin=%s",
                  std::string(criterion_name(id)).c_str(), detected > 0 ? "DETECTED    " : "not detected", evaluated,
                  detected, failed, forbidden, evaluated > 0 ? fmt_param(best).c_str() : "nan");
    lines.emplace_back(buf);
  }
  return lines;
}

}  // namespace cvw
