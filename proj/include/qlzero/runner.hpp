#pragma once

#include "qlzero/affine.hpp"
#include "qlzero/character.hpp"
#include "qlzero/hecke.hpp"
#include "qlzero/modp.hpp"
#include "qlzero/ratfunc.hpp"
#include "qlzero/relations.hpp"
#include "qlzero/rewriter.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

namespace qlzero {

// invalid configuration: exit status 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s{"hecke", "affine-hecke", "lemmas",     "rhosg",    "chevalley",
                                          "prop8", "prop9",        "rhof",       "characters", "rewriter",
                                          "locality"};
  return s;
}

inline std::string canonical_suite(const std::string& s) {
  if (s == "affine") return "affine-hecke";
  if (s == "chars") return "characters";
  return s;
}

struct RunConfig {
  std::vector<std::string> suites;
  std::optional<int> n;               // one arity instead of the suite default list
  std::optional<std::string> window;  // LO..HI; suite default when unset
  std::optional<std::string> p;       // q3 | q4 | q5 | generic-sample; suite default when unset
  std::string cache_dir;
  std::string out;
  bool fast_prescreen = false;
  std::uint64_t seed = 7;
  int jobs = 0;  // 0: hardware concurrency

  nlohmann::json to_json() const {
    nlohmann::json j{{"suites", suites}, {"cache", cache_dir}, {"out", out}, {"fast_prescreen", fast_prescreen},
                     {"seed", seed}, {"jobs", jobs}};
    j["n"] = n ? nlohmann::json(*n) : nlohmann::json();
    j["window"] = window ? nlohmann::json(*window) : nlohmann::json();
    j["p"] = p ? nlohmann::json(*p) : nlohmann::json();
    return j;
  }
  static RunConfig from_json(const nlohmann::json& j) {
    RunConfig c;
    c.suites = j.value("suites", std::vector<std::string>{});
    if (j.contains("n") && !j["n"].is_null()) c.n = j["n"].get<int>();
    if (j.contains("window") && !j["window"].is_null()) c.window = j["window"].get<std::string>();
    if (j.contains("p") && !j["p"].is_null()) c.p = j["p"].get<std::string>();
    c.cache_dir = j.value("cache", "");
    c.out = j.value("out", "");
    c.fast_prescreen = j.value("fast_prescreen", false);
    c.seed = j.value("seed", std::uint64_t{7});
    c.jobs = j.value("jobs", 0);
    return c;
  }
};

// p = q^k exponents selected by the p option
inline std::vector<int> p_exponents(const std::string& p, std::uint64_t seed) {
  if (p == "q3") return {3};
  if (p == "q4") return {4};
  if (p == "q5") return {5};
  if (p == "generic-sample") {
    std::vector<int> pool{2, 6, 7, 8, 9};
    std::mt19937_64 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> ks(pool.begin(), pool.begin() + 2);
    std::sort(ks.begin(), ks.end());
    return ks;
  }
  throw ConfigError("unknown p '" + p + "' (expected q3, q4, q5 or generic-sample)");
}

// One unit of work. run(exact) evaluates over Q(q) when exact is true and
// over the prime field otherwise (prescreen only).
struct Task {
  std::string suite;
  std::string id;
  std::function<CheckReport(bool exact)> run;
};

namespace detail {

struct SuitePlan {
  std::vector<int> Ns;
  int lo, hi;  // default window
  int nmin, nmax;
  bool graded;  // modes <= 0 cone; the window gives the degree bound -lo
  int degree_cap;
};

inline SuitePlan plan_of(const std::string& s) {
  if (s == "hecke") return {{2, 3, 4, 5, 6}, -4, 0, 1, 8, false, 0};
  if (s == "affine-hecke") return {{1, 2, 3, 4}, -4, 0, 1, 5, false, 0};
  if (s == "lemmas") return {{0}, 0, 0, 0, 1000, true, 0};
  if (s == "rhosg") return {{1, 2, 3, 4}, -3, 0, 1, 5, true, 6};
  if (s == "prop8") return {{2, 3}, -3, 0, 2, 3, true, 6};
  if (s == "prop9") return {{2, 3, 4}, -3, 0, 2, 4, true, 6};
  if (s == "rhof") return {{2, 3, 4}, -2, 0, 2, 4, true, 6};
  if (s == "chevalley") return {{2, 3}, -3, 0, 2, 3, true, 5};
  if (s == "characters") return {{4}, -6, 0, 2, 8, true, 8};
  if (s == "rewriter") return {{3}, -6, 0, 1, 3, true, 6};
  if (s == "locality") return {{0}, 0, 0, 0, 1000, true, 1000};
  throw ConfigError("unknown suite '" + s + "'");
}

template <class F>
Task make_task(std::string suite, std::string id, F f) {
  return {std::move(suite), std::move(id), [f](bool exact) { return exact ? f(RatFuncQ{}) : f(ModP{}); }};
}

}  // namespace detail

// Validate the configuration and expand it into independent tasks.
// Throws ConfigError on any rule violation.
inline std::vector<Task> plan(const RunConfig& cfg) {
  std::vector<Task> tasks;
  for (const auto& raw : cfg.suites) {
    const std::string s = canonical_suite(raw);
    if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
      throw ConfigError("unknown suite '" + raw + "'");
    if (s == "locality") continue;  // ledger record appended after the other suites
    const auto sp = detail::plan_of(s);
    std::vector<int> Ns = sp.Ns;
    if (cfg.n) {
      if (*cfg.n < sp.nmin || *cfg.n > sp.nmax)
        throw ConfigError(s + ": N must be in " + std::to_string(sp.nmin) + ".." + std::to_string(sp.nmax));
      Ns = {*cfg.n};
    }
    int lo = sp.lo, hi = sp.hi;
    if (cfg.window) {
      Window w;
      try {
        w = Window::parse(1, *cfg.window);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("window: ") + e.what());
      }
      lo = w.lo, hi = w.hi;
    }
    if (sp.graded) {
      if (hi != 0)
        throw ConfigError(s + ": graded suites live on the mode cone, window HI must be 0 (got " +
                          std::to_string(hi) + ")");
      if (-lo > sp.degree_cap)
        throw ConfigError(s + ": degree " + std::to_string(-lo) + " exceeds the supported margin " +
                          std::to_string(sp.degree_cap));
    } else if (hi - lo > 8 || hi < lo) {
      throw ConfigError(s + ": box window too wide for the required margins");
    }
    const int dmax = -lo;
    std::vector<int> pks;
    if (cfg.p) pks = p_exponents(*cfg.p, cfg.seed);
    if (s == "rhof" || s == "chevalley") {
      if (cfg.p && pks != std::vector<int>{4}) throw ConfigError(s + ": fusion requires p=q^4");
      pks = {4};
    }
    if (pks.empty()) pks = s == "affine-hecke" ? std::vector<int>{3, 4, 5} : std::vector<int>{4};
    if (s == "rhosg" && !cfg.p) pks = {3, 4};
    const std::string win = std::to_string(lo) + ".." + std::to_string(hi);

    if (s == "hecke") {
      for (int N : Ns)
        tasks.push_back(detail::make_task(s, "hecke/N" + std::to_string(N), [=](auto c) {
          return hecke_suite<decltype(c)>(N, Window::parse(N, win));
        }));
    } else if (s == "affine-hecke") {
      for (int pk : pks)
        for (int N : Ns)
          tasks.push_back(detail::make_task(s, "affine/N" + std::to_string(N) + "/p=q" + std::to_string(pk),
                                            [=](auto c) {
                                              return affine_hecke_suite<decltype(c)>(N, pk, Window::parse(N, win));
                                            }));
    } else if (s == "lemmas") {
      const auto seed = cfg.seed;
      tasks.push_back(detail::make_task(s, "lemma", [=](auto c) { return lemma_suite<decltype(c)>(40, seed); }));
    } else if (s == "rhosg") {
      for (int pk : pks)
        for (int N : Ns)
          tasks.push_back(detail::make_task(s, "rhosg/N" + std::to_string(N) + "/p=q" + std::to_string(pk),
                                            [=](auto c) { return rhosg_check<decltype(c)>(N, std::min(dmax, N >= 4 ? 2 : dmax), pk); }));
    } else if (s == "prop8") {
      for (int N : Ns)
        tasks.push_back(detail::make_task(s, "prop8/N" + std::to_string(N),
                                          [=](auto c) { return prop8_check<decltype(c)>(N, dmax); }));
    } else if (s == "prop9") {
      for (int N : Ns)
        tasks.push_back(detail::make_task(s, "prop9/N" + std::to_string(N),
                                          [=](auto c) { return prop9_check<decltype(c)>(N, dmax); }));
    } else if (s == "rhof") {
      // both readings of the highest-weight condition: HWT cone (H = 0) and mode ceiling H = 1
      for (int H : {0, 1})
        for (int N : Ns) {
          if (H && N >= 4) continue;
          tasks.push_back(detail::make_task(s, "rhof/N" + std::to_string(N) + "/H" + std::to_string(H),
                                            [=](auto c) { return rhof_check<decltype(c)>(N, dmax, 4, H); }));
        }
    } else if (s == "chevalley") {
      for (int N : Ns)
        tasks.push_back(detail::make_task(s, "chevalley/N" + std::to_string(N), [=](auto c) {
          return chevalley_check<decltype(c)>(N, N >= 3 ? std::min(dmax, 2) : dmax, 4);
        }));
    } else if (s == "characters") {
      CharacterOptions o;
      o.Dmax = dmax;
      o.Nmax_even = Ns.front() % 2 ? Ns.front() - 1 : Ns.front();
      o.Nmax_odd = o.Nmax_even + 1;
      o.truncation_Dmax = std::min(dmax, 2);
      o.prescreen = cfg.fast_prescreen;
      o.cache_dir = cfg.cache_dir;
      tasks.push_back({s, "character", [o](bool exact) {
                         if (exact) return character_check<RatFuncQ, ModP>(o);
                         CharacterOptions m = o;
                         m.ring = "modp";
                         m.prescreen = false;
                         return character_check<ModP, ModP>(m);
                       }});
    } else if (s == "rewriter") {
      const auto seed = cfg.seed;
      for (int N : Ns)
        tasks.push_back(detail::make_task(s, "rewriter/N" + std::to_string(N),
                                          [=](auto c) { return rewriter_check<decltype(c)>(N, dmax, 4, seed); }));
    }
  }
  return tasks;
}

// Locality ledger summary as a check record
inline CheckRecord locality_record() {
  Stopwatch sw;
  nlohmann::json ops = nlohmann::json::object();
  for (const auto& [op, e] : LocalityLedger::instance().snapshot())
    ops[op] = {{"margin", e.margin}, {"worst", e.worst}, {"checks", e.checks}, {"violations", e.violations}};
  auto r = make_record("locality/ledger", "observed max-mode shifts stay within declared margins", "Lemmas 5-6",
                       LocalityLedger::instance().violations(), sw, {{"operators", ops}});
  r.wall_ms = 0;
  return r;
}

inline bool wants_locality(const RunConfig& cfg) {
  for (const auto& s : cfg.suites)
    if (s == "locality") return true;
  return false;
}

// Run the tasks on a pool of workers. Records are assembled in task order, so
// the report does not depend on scheduling. With prescreen, every task is first
// evaluated over the prime field and tasks whose prescreen fails run first;
// verdicts always come from the exact run.
inline CheckReport run(const RunConfig& cfg, const std::function<void(const CheckRecord&)>& on_record = {}) {
  auto tasks = plan(cfg);
  CheckReport rep;
  const bool ledger = wants_locality(cfg);
  if (tasks.empty() && !ledger) return rep;
  const int jobs = cfg.jobs > 0 ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());

  auto parallel = [&](const std::vector<std::size_t>& order, auto body) {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex m;
    for (int t = 0; t < std::min<int>(jobs, static_cast<int>(order.size())); ++t)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next++) < order.size();) {
          try {
            body(order[k]);
          } catch (...) {
            std::lock_guard<std::mutex> g(m);
            if (!err) err = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
  };

  std::vector<std::size_t> order(tasks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<int> screened(tasks.size(), -1);
  if (cfg.fast_prescreen) {
    parallel(order, [&](std::size_t i) {
      if (tasks[i].suite == "characters") return;  // prescreens internally
      screened[i] = tasks[i].run(false).all_pass() ? 1 : 0;
    });
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return screened[a] == 0 && screened[b] != 0; });
  }
  std::vector<CheckReport> results(tasks.size());
  std::mutex out_m;
  parallel(order, [&](std::size_t i) {
    results[i] = tasks[i].run(true);
    if (screened[i] >= 0)
      for (auto& r : results[i].records) r.detail["prescreen"] = screened[i] ? "pass" : "fail";
    if (on_record) {
      std::lock_guard<std::mutex> g(out_m);
      for (const auto& r : results[i].records) on_record(r);
    }
  });
  for (const auto& r : results) rep.append(r);
  if (ledger) {
    rep.add(locality_record());
    if (on_record) on_record(rep.records.back());
  }
  return rep;
}

}  // namespace qlzero
