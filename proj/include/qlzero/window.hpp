#pragma once

#include "qlzero/laurent.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlzero {

// Box of mode vectors m with lo <= m_j <= hi for every j. A symbol F_{eps,m}
// is the coefficient of z^{-m}, so the matching series monomials are
// z^e with -hi <= e_j <= -lo.
struct Window {
  int N = 1;
  int lo = -4;
  int hi = 0;

  std::size_t size() const {
    std::size_t s = 1;
    for (int i = 0; i < N; ++i) s *= static_cast<std::size_t>(hi - lo + 1);
    return s;
  }
  bool contains_modes(const Exps& m) const {
    for (int i = 0; i < N; ++i)
      if (m[i] < lo || m[i] > hi) return false;
    return true;
  }
  bool contains_exps(const Exps& e) const {
    for (int i = 0; i < N; ++i)
      if (-e[i] < lo || -e[i] > hi) return false;
    return true;
  }
  // all series exponents z^e of the window, lexicographic
  std::vector<Exps> exps() const {
    std::vector<Exps> out;
    Exps e;
    std::function<void(int)> rec = [&](int i) {
      if (i == N) {
        out.push_back(e);
        return;
      }
      for (int v = -hi; v <= -lo; ++v) {
        e[i] = static_cast<std::int16_t>(v);
        rec(i + 1);
      }
    };
    rec(0);
    return out;
  }
  std::string str() const { return std::to_string(lo) + ".." + std::to_string(hi); }

  static Window parse(int N, const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("window must be LO..HI");
    Window w;
    w.N = N;
    w.lo = std::stoi(s.substr(0, dots));
    w.hi = std::stoi(s.substr(dots + 2));
    if (w.lo > w.hi) throw std::invalid_argument("window LO must not exceed HI");
    return w;
  }
};

// compositions of d into n non-negative parts, lexicographically descending
// in the first part
inline void for_each_composition(int d, int n, const std::function<void(const Exps&)>& f) {
  Exps e;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      e[i] = static_cast<std::int16_t>(left);
      f(e);
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[i] = static_cast<std::int16_t>(a);
      rec(i + 1, left - a);
    }
  };
  if (n == 0) {
    if (d == 0) f(e);
    return;
  }
  rec(0, d);
}

}  // namespace qlzero
