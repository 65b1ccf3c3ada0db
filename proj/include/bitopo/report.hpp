#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bitopo/nat.hpp"

namespace bitopo {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, inconclusive };

std::string to_string(Status s);

struct CheckRecord {
  std::string name;
  Status status = Status::pass;
  Json witness = Json::object();
  std::uint64_t fuel_used = 0;
};

/// Versioned run report. Failures carry a concrete counterexample in
/// `witness`; inconclusive records come only from exhausted searches.
struct Report {
  static constexpr int version = 1;

  std::string command;
  Json config = Json::object();
  std::vector<CheckRecord> checks;
  Json extra = Json::object();

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  void append(const std::vector<CheckRecord>& rs) { checks.insert(checks.end(), rs.begin(), rs.end()); }
  std::size_t count(Status s) const;
  bool passed() const { return count(Status::fail) == 0 && count(Status::inconclusive) == 0; }

  /// 0 pass, 1 any failure, 3 only inconclusive records besides passes.
  int exit_code() const;
  Json to_json() const;
  std::string to_text() const;
};

/// Decimal string of a natural, for JSON output of codes.
std::string nat_str(const Nat& n);

}  // namespace bitopo
