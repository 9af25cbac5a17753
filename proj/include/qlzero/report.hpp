#pragma once

#include <json.hpp>

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace qlzero {

enum class Status { pass, fail, skipped };

inline const char* status_str(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "skipped";
  }
}

// One verification outcome. `residual` is the size of what failed to vanish
// (0 for an exact identity that holds); `detail` carries suite-specific data
// such as dimensions, ranks and membership certificates.
struct CheckRecord {
  std::string id;      // stable identifier, e.g. "hecke/N3/S-hecke"
  std::string name;    // human-readable relation name
  std::string anchor;  // where the relation comes from
  Status status = Status::skipped;
  long residual = 0;
  nlohmann::json detail = nlohmann::json::object();
  double wall_ms = 0;

  nlohmann::json to_json(bool with_timing = true) const {
    nlohmann::json j{{"id", id}, {"name", name}, {"anchor", anchor}, {"status", status_str(status)},
                     {"residual", residual}, {"detail", detail}};
    if (with_timing) j["wall_ms"] = wall_ms;
    return j;
  }
};

struct CheckReport {
  std::string header;
  std::vector<CheckRecord> records;

  void add(CheckRecord r) { records.push_back(std::move(r)); }
  void append(const CheckReport& o) { records.insert(records.end(), o.records.begin(), o.records.end()); }
  bool all_pass() const {
    for (const auto& r : records)
      if (r.status == Status::fail) return false;
    return true;
  }
  std::size_t count(Status s) const {
    std::size_t n = 0;
    for (const auto& r : records) n += r.status == s;
    return n;
  }
  // line-delimited JSON, one record per line
  std::string jsonl(bool with_timing = true) const {
    std::string out;
    for (const auto& r : records) out += r.to_json(with_timing).dump() + "\n";
    return out;
  }
};

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

// build a record from a residual count
inline CheckRecord make_record(std::string id, std::string name, std::string anchor, long residual,
                               const Stopwatch& sw, nlohmann::json detail = nlohmann::json::object()) {
  CheckRecord r;
  r.id = std::move(id);
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.residual = residual;
  r.status = residual == 0 ? Status::pass : Status::fail;
  r.detail = std::move(detail);
  r.wall_ms = sw.ms();
  return r;
}

}  // namespace qlzero
