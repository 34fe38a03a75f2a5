#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "noether/replay.hpp"

namespace noether {

namespace {

void text_into(std::ostringstream& out, const Report& r, bool verbose, const std::string& indent) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
  out << indent << "== " << r.params.describe() << ": " << (r.passed ? "PASS" : "FAIL") << " (" << secs << ")\n";
  for (const auto& s : r.steps) {
    out << indent << "  " << s.step_id << "  " << kind_name(s.kind) << "  " << status_name(s.status);
    if (s.oracle_trials > 0) out << "  oracle " << s.oracle_agree << "/" << s.oracle_trials;
    out << "\n";
    if (verbose || s.status == Status::Fail) out << indent << "      " << s.detail << "\n";
    for (const auto& d : s.delegated) text_into(out, d, verbose, indent + "    ");
  }
}

void json_into(nlohmann::ordered_json& arr, const Report& r) {
  for (const auto& s : r.steps) {
    nlohmann::ordered_json j;
    j["script"] = r.params.describe();
    j["step_id"] = s.step_id;
    j["kind"] = kind_name(s.kind);
    j["status"] = status_name(s.status);
    j["detail"] = s.detail;
    j["oracle_agree"] = s.oracle_agree;
    j["oracle_trials"] = s.oracle_trials;
    arr.push_back(std::move(j));
    for (const auto& d : s.delegated) json_into(arr, d);
  }
}

}  // namespace

std::string format_text(const Report& r, bool verbose) {
  std::ostringstream out;
  text_into(out, r, verbose, "");
  return out.str();
}

std::string format_json(const std::vector<Report>& reports, bool pretty) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) json_into(arr, r);
  return arr.dump(pretty ? 2 : -1) + "\n";
}

}  // namespace noether
