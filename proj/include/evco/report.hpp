#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace evco {

struct Check {
  std::string kind;
  bool pass = false;
  /// A failing check that the instance predicts (e.g. a non-e-convex
  /// fixture) still counts toward an ok report.
  bool expected_failure = false;
  std::optional<std::string> witness;
  std::string detail;
};

struct Report {
  std::string suite;
  std::string instance_id;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  void add(std::string kind, bool pass, std::string detail = {}, std::optional<std::string> witness = std::nullopt);
  void merge(const Report& other);
  bool ok() const;
  std::size_t failures() const;
  nlohmann::ordered_json to_json() const;
  std::string summary() const;
};

}  // namespace evco
