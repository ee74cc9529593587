#include "evco/report.hpp"

#include <algorithm>
#include <sstream>

namespace evco {

void Report::add(std::string kind, bool pass, std::string detail, std::optional<std::string> witness) {
  checks.push_back({std::move(kind), pass, false, std::move(witness), std::move(detail)});
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::size_t Report::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass && !c.expected_failure; }));
}

bool Report::ok() const { return failures() == 0; }

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["report_version"] = "1";
  j["suite"] = suite;
  j["instance_id"] = instance_id;
  j["ok"] = ok();
  auto& arr = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["kind"] = c.kind;
    e["pass"] = c.pass;
    if (c.expected_failure) e["expected_failure"] = true;
    if (c.witness) e["witness"] = *c.witness;
    if (!c.detail.empty()) e["detail"] = c.detail;
    arr.push_back(std::move(e));
  }
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

std::string Report::summary() const {
  std::ostringstream os;
  std::size_t expected = 0;
  for (const auto& c : checks) expected += (!c.pass && c.expected_failure);
  os << suite << " [" << instance_id << "]: " << (checks.size() - failures()) << "/" << checks.size()
     << " checks ok";
  if (expected) os << " (" << expected << " expected failures)";
  os << "\n";
  for (const auto& c : checks) {
    if (c.pass) continue;
    os << "  " << (c.expected_failure ? "expected " : "") << "FAIL " << c.kind;
    if (!c.detail.empty()) os << ": " << c.detail;
    if (c.witness) os << " at " << *c.witness;
    os << "\n";
  }
  for (const auto& n : notes) os << "  note: " << n << "\n";
  return os.str();
}

}  // namespace evco
