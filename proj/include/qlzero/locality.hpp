#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <string>

namespace qlzero {

// Runtime record of declared max-mode margins. Every operator application
// that is instrumented reports (declared margin, observed shift); a shift
// above the margin is a violation. Acceptance requires zero violations.
class LocalityLedger {
 public:
  static LocalityLedger& instance() {
    static LocalityLedger l;
    return l;
  }
  void declare(const std::string& op, int margin) {
    std::lock_guard<std::mutex> g(m_);
    entries_[op].margin = margin;
  }
  // observed: increase of max(m) from input to output support
  void observe(const std::string& op, int observed) {
    checks_.fetch_add(1, std::memory_order_relaxed);
    std::lock_guard<std::mutex> g(m_);
    auto& e = entries_[op];
    e.checks++;
    if (observed > e.worst) e.worst = observed;
    if (observed > e.margin) {
      e.violations++;
      violations_.fetch_add(1, std::memory_order_relaxed);
    }
  }
  long checks() const { return checks_.load(); }
  long violations() const { return violations_.load(); }
  struct Entry {
    int margin = 0;
    int worst = -1000000;
    long checks = 0;
    long violations = 0;
  };
  std::map<std::string, Entry> snapshot() const {
    std::lock_guard<std::mutex> g(m_);
    return entries_;
  }
  void reset() {
    std::lock_guard<std::mutex> g(m_);
    entries_.clear();
    checks_ = 0;
    violations_ = 0;
  }

 private:
  mutable std::mutex m_;
  std::map<std::string, Entry> entries_;
  std::atomic<long> checks_{0}, violations_{0};
};

}  // namespace qlzero
