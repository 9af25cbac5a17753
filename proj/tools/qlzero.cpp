// qlzero command line: check suites, build kernel caches, print character
// tables and operator matrices.
#include "qlzero/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace qlzero;

namespace {

enum Exit { ok = 0, check_failed = 1, config_error = 2, internal_error = 3 };

struct Options {
  RunConfig cfg;
  std::vector<std::string> suites;
  int n = 0;
  std::string window, p;
  int w = 0;
  bool w_set = false;
  int j = 0;
  std::string op = "S";
  bool print_config = false;
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw ConfigError("cannot open output file " + path);
  return file;
}

int cmd_check(const Options& o) {
  std::ofstream file;
  std::ostream& os = open_out(o.cfg.out, file);
  CheckReport rep = run(o.cfg, [&](const CheckRecord& r) {
    std::cerr << status_str(r.status) << "  " << r.id << "\n";
  });
  os << rep.jsonl();
  std::cerr << rep.count(Status::pass) << " pass, " << rep.count(Status::fail) << " fail, "
            << rep.count(Status::skipped) << " skipped\n";
  return rep.all_pass() ? ok : check_failed;
}

// grading of the kernel / dump commands from the shared flags
struct Slice {
  int N, w, d, H, pk;
};
Slice slice_of(const Options& o) {
  Slice s{o.n ? o.n : 2, 0, 2, 0, 4};
  s.w = o.w_set ? o.w : s.N % 2;
  if (!o.window.empty()) {
    Window win = Window::parse(1, o.window);
    s.d = -win.lo;
    s.H = win.hi;
    if (s.d < 0 || s.H < 0 || s.H > 2) throw ConfigError("window must satisfy LO <= 0 <= HI <= 2");
  }
  if (std::abs(s.w) > s.N || (s.N - s.w) % 2) throw ConfigError("weight must have the parity of N and |w| <= N");
  if (!o.p.empty()) {
    auto ks = p_exponents(o.p, o.cfg.seed);
    if (ks.size() != 1) throw ConfigError("a single p is required here");
    s.pk = ks.front();
  }
  return s;
}

int cmd_kernel(const Options& o) {
  const Slice s = slice_of(o);
  if (s.pk != 4) throw ConfigError("fusion requires p=q^4");
  KernelSpec spec;
  if (s.N >= 2) spec.sectors.push_back(s.N - 2);
  spec.sectors.push_back(s.N);
  spec.g = {s.w, s.d - kappa_sum(s.N), s.H};
  if (spec.g.D < 0) throw ConfigError("degree below the lowest grade of sector N");
  Level0<RatFuncQ> L(s.pk, s.H);
  const std::string key = "N" + std::to_string(s.N) + "_w" + std::to_string(s.w) + "_D" + std::to_string(spec.g.D) +
                          "_H" + std::to_string(s.H);
  namespace fs = std::filesystem;
  const fs::path dir = o.cfg.cache_dir.empty() ? fs::path() : fs::path(o.cfg.cache_dir) / "kernels" / key;
  std::string source = "built";
  std::optional<KernelBasis<RatFuncQ>> kb;
  if (!dir.empty() && fs::exists(dir / "manifest.json")) {
    kb = KernelBasis<RatFuncQ>::load(dir);
    source = "cache";
  } else {
    kb = build_kernel(spec, L);
    if (!dir.empty()) kb->save(dir);
  }
  nlohmann::json j{{"key", key}, {"source", source}, {"ambient", kb->ambient().size()}, {"rank", kb->rank()},
                   {"manifest", kb->manifest()}};
  if (!dir.empty()) j["dir"] = dir.string();
  j["manifest"].erase("row_provenance");
  std::ofstream file;
  open_out(o.cfg.out, file) << j.dump(2) << "\n";
  return ok;
}

int cmd_chars(const Options& o) {
  CharacterOptions opt;
  opt.Dmax = 4;
  if (!o.window.empty()) opt.Dmax = -Window::parse(1, o.window).lo;
  if (opt.Dmax < 0 || opt.Dmax > 8) throw ConfigError("character grades must be in 0..8");
  if (o.n) opt.Nmax_even = o.n - o.n % 2, opt.Nmax_odd = opt.Nmax_even + 1;
  opt.truncation_Dmax = std::min(opt.Dmax, 2);
  opt.cache_dir = o.cfg.cache_dir;
  opt.prescreen = o.cfg.fast_prescreen;
  const CheckReport rep = character_check<RatFuncQ, ModP>(opt);
  std::ofstream file;
  std::ostream& os = open_out(o.cfg.out, file);
  const auto& rec = rep.records.front();
  std::map<std::pair<int, int>, std::pair<long, long>> cell;
  for (const auto& c : rec.detail["cells"]) cell[{c["D"], c["w"]}] = {c["quotient"], c["weyl_kac"]};
  os << "# quotient dimension / level-1 oracle by grade D (rows) and weight w (columns)\n";
  os << "D\\w";
  for (int w = -opt.Nmax_odd; w <= opt.Nmax_odd; ++w) os << "\t" << w;
  os << "\n";
  for (int D = 0; D <= opt.Dmax; ++D) {
    os << D;
    for (int w = -opt.Nmax_odd; w <= opt.Nmax_odd; ++w) {
      auto it = cell.find({D, w});
      os << "\t" << (it == cell.end() ? "0" : std::to_string(it->second.first) + "/" + std::to_string(it->second.second));
    }
    os << "\n";
  }
  for (const auto& r : rep.records) os << "# " << r.id << ": " << status_str(r.status) << "\n";
  return rep.all_pass() ? ok : check_failed;
}

int cmd_dump(const Options& o) {
  const Slice s = slice_of(o);
  Level0<RatFuncQ> L(s.pk, s.H);
  using V = SymVec<RatFuncQ>;
  const bool pair = o.op == "S" || o.op == "G" || o.op == "SG";
  if ((pair && (o.j < 0 || o.j + 1 >= s.N)) || (!pair && o.op.front() == 'Y' && (o.j < 0 || o.j >= s.N)))
    throw ConfigError("slot j out of range for N");
  std::function<V(const V&)> f;
  if (o.op == "S") f = [&](const V& x) { return L.S(x, o.j); };
  else if (o.op == "G") f = [&](const V& x) { return L.Ghat(x, o.j); };
  else if (o.op == "SG") f = [&](const V& x) { return L.SG(x, o.j); };
  else if (o.op == "Y") f = [&](const V& x) { return L.Yhat(x, o.j, 1); };
  else if (o.op == "Yinv") f = [&](const V& x) { return L.Yhat(x, o.j, -1); };
  else if (o.op == "e0") f = [&](const V& x) { return L.e0(x); };
  else if (o.op == "f0") f = [&](const V& x) { return L.f0(x); };
  else throw ConfigError("unknown operator '" + o.op + "'");
  const auto cols = sector_symbols(s.N, s.w, s.d, -s.H);
  Ambient rows;
  std::vector<std::tuple<int, int, RatFuncQ>> entries;
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [sym, v] : f(sv_unit<RatFuncQ>(cols[c]))) {
      if (!rows.contains(sym)) rows.add(sym);
      entries.emplace_back(rows.at(sym), static_cast<int>(c), v);
    }
  std::ofstream file;
  std::ostream& os = open_out(o.cfg.out, file);
  os << "# op " << o.op << " j=" << o.j << " N=" << s.N << " w=" << s.w << " d=" << s.d << " H=" << s.H
     << " p=q^" << s.pk << "\n";
  for (std::size_t c = 0; c < cols.size(); ++c) os << "# col " << c << " " << cols[c].str() << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) os << "# row " << r << " " << rows.sym(static_cast<int>(r)).str() << "\n";
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  for (const auto& [r, c, v] : entries) os << r << " " << c << " " << v.str() << "\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of the level-0 action on level-1 spinon modules"};
  app.set_config("--config", "", "TOML config file mirroring the flags");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--suite", o.suites, "suites to run (repeat or comma separated)")->delimiter(',');
  app.add_option("--n", o.n, "spinon number N (replaces the suite default list)");
  app.add_option("--window", o.window, "mode window LO..HI");
  app.add_option("--p", o.p, "p = q^k selection")->check(CLI::IsMember({"q3", "q4", "q5", "generic-sample"}));
  app.add_option("--cache", o.cfg.cache_dir, "cache directory")->envname("QLZERO_CACHE");
  app.add_option("--out", o.cfg.out, "output file (default stdout)");
  app.add_flag("--fast-prescreen", o.cfg.fast_prescreen, "prime-field prescreen to order the exact work");
  app.add_option("--seed", o.cfg.seed, "seed for sampled parameters");
  app.add_option("--jobs", o.cfg.jobs, "worker threads (0: all cores)");
  app.add_flag("--print-config", o.print_config, "print the effective configuration and exit");

  auto* check = app.add_subcommand("check", "run verification suites");
  auto* kernel = app.add_subcommand("kernel", "build or load a cached kernel basis");
  auto* chars = app.add_subcommand("chars", "graded character table against the level-1 oracle");
  auto* dump = app.add_subcommand("dump", "print an operator's matrix on a graded slice");
  for (auto* sub : {kernel, dump}) {
    sub->add_option("--w", o.w, "weight (default N mod 2)")->each([&](const std::string&) { o.w_set = true; });
  }
  dump->add_option("--op", o.op, "operator")->check(CLI::IsMember({"S", "G", "SG", "Y", "Yinv", "e0", "f0"}));
  dump->add_option("--j", o.j, "slot index (0-based)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return config_error;
  }

  o.cfg.suites = o.suites;
  if (o.n) o.cfg.n = o.n;
  if (!o.window.empty()) o.cfg.window = o.window;
  if (!o.p.empty()) o.cfg.p = o.p;
  if (o.print_config) {
    std::cout << o.cfg.to_json().dump(2) << "\n";
    return ok;
  }
  try {
    if (*check) {
      plan(o.cfg);  // validate before any output is produced
      return cmd_check(o);
    }
    if (*kernel) return cmd_kernel(o);
    if (*chars) return cmd_chars(o);
    if (*dump) return cmd_dump(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return internal_error;
  }
  return ok;
}
