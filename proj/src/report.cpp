#include "bitopo/report.hpp"

#include <algorithm>
#include <sstream>

namespace bitopo {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [s](const CheckRecord& r) { return r.status == s; }));
}

int Report::exit_code() const {
  if (count(Status::fail) > 0) return 1;
  if (count(Status::inconclusive) > 0) return 3;
  return 0;
}

Json Report::to_json() const {
  Json j;
  j["report_version"] = version;
  j["command"] = command;
  j["config"] = config;
  Json list = Json::array();
  for (const auto& r : checks)
    list.push_back({{"name", r.name}, {"status", to_string(r.status)}, {"witness", r.witness}, {"fuel_used", r.fuel_used}});
  j["checks"] = list;
  if (!extra.empty()) j["details"] = extra;
  j["summary"] = {{"pass", count(Status::pass)}, {"fail", count(Status::fail)}, {"inconclusive", count(Status::inconclusive)}};
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << command;
  for (const auto& [k, v] : config.items()) os << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
  os << "\n";
  for (const auto& r : checks) {
    os << "  [" << to_string(r.status) << "] " << r.name;
    if (!r.witness.empty()) os << "  " << r.witness.dump();
    os << "  fuel=" << r.fuel_used << "\n";
  }
  for (const auto& [k, v] : extra.items()) os << "  " << k << ": " << v.dump() << "\n";
  os << "summary: " << count(Status::pass) << " pass, " << count(Status::fail) << " fail, "
     << count(Status::inconclusive) << " inconclusive\n";
  return os.str();
}

std::string nat_str(const Nat& n) { return n.str(); }

}  // namespace bitopo
