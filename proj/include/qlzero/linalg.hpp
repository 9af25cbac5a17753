#pragma once

#include "qlzero/symbols.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace qlzero {

template <class C>
using SparseVec = std::map<int, C>;

enum class Pivoting { leading, unit_preferring };

// Incremental exact echelon form. Each stored row has a pivot column with
// coefficient 1; a row stored at time t has zeros in the pivot columns of all
// rows stored before t. Reduction eliminates pivot columns in storage order,
// so the residual is supported on non-pivot columns and is unique.
template <class C>
class Echelon {
 public:
  struct Row {
    int pivot;
    SparseVec<C> v;
    int tag;  // caller provenance (generator index)
  };

  explicit Echelon(Pivoting p = Pivoting::leading) : piv_mode_(p) {}

  std::size_t rank() const { return rows_.size(); }
  const std::vector<Row>& rows() const { return rows_; }
  bool is_pivot(int col) const { return pivot_row_.count(col) > 0; }

  // x = sum cert[r] * row_r + residual
  SparseVec<C> reduce(SparseVec<C> x, std::map<int, C>* cert = nullptr) const {
    std::set<std::pair<int, int>> pending;  // (row id, col)
    for (const auto& [c, a] : x) {
      auto it = pivot_row_.find(c);
      if (it != pivot_row_.end()) pending.emplace(it->second, c);
    }
    while (!pending.empty()) {
      auto [rid, col] = *pending.begin();
      pending.erase(pending.begin());
      auto xi = x.find(col);
      if (xi == x.end()) continue;
      const C f = xi->second;
      if (cert) (*cert)[rid] += f;
      for (const auto& [c, a] : rows_[rid].v) {
        auto [it, fresh] = x.try_emplace(c, C(0));
        it->second -= f * a;
        if (it->second.is_zero()) {
          x.erase(it);
        } else if (fresh) {
          auto pr = pivot_row_.find(c);
          if (pr != pivot_row_.end()) pending.emplace(pr->second, c);
        }
      }
    }
    return x;
  }

  // returns true when x is independent of the stored rows
  bool insert(const SparseVec<C>& x, int tag = -1) {
    SparseVec<C> r = reduce(x);
    if (r.empty()) return false;
    int piv = choose_pivot(r);
    const C inv = r.at(piv).inverse();
    for (auto& [c, a] : r) a = a * inv;
    pivot_row_[piv] = static_cast<int>(rows_.size());
    rows_.push_back({piv, std::move(r), tag});
    return true;
  }

  // restore a stored row verbatim (persistence); row must be in stored order
  void restore(int pivot, SparseVec<C> v, int tag) {
    pivot_row_[pivot] = static_cast<int>(rows_.size());
    rows_.push_back({pivot, std::move(v), tag});
  }

 private:
  int choose_pivot(const SparseVec<C>& r) const {
    if (piv_mode_ == Pivoting::leading) return r.begin()->first;
    int best = -1;
    std::size_t bw = 0;
    for (const auto& [c, a] : r) {
      if (a.is_unit_monomial()) return c;
      if (best < 0 || a.weight() < bw) best = c, bw = a.weight();
    }
    return best;
  }

  Pivoting piv_mode_;
  std::vector<Row> rows_;
  std::unordered_map<int, int> pivot_row_;
};

// Column index of a finite ambient of symbols. Column order is the order of
// insertion: with leading pivoting, earlier columns are eliminated first.
class Ambient {
 public:
  int add(const Sym& s) {
    auto [it, fresh] = index_.try_emplace(s, static_cast<int>(cols_.size()));
    if (fresh) cols_.push_back(s);
    return it->second;
  }
  void add_all(const std::vector<Sym>& ss) {
    for (const auto& s : ss) add(s);
  }
  bool contains(const Sym& s) const { return index_.count(s) > 0; }
  int at(const Sym& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw std::out_of_range("symbol outside window: " + s.str());
    return it->second;
  }
  const Sym& sym(int c) const { return cols_[c]; }
  std::size_t size() const { return cols_.size(); }
  const std::vector<Sym>& cols() const { return cols_; }

  template <class C>
  SparseVec<C> encode(const SymVec<C>& v) const {
    SparseVec<C> r;
    for (const auto& [s, c] : v) r.emplace(at(s), c);
    return r;
  }
  template <class C>
  SymVec<C> decode(const SparseVec<C>& v) const {
    SymVec<C> r;
    for (const auto& [c, a] : v) r.emplace(cols_[c], a);
    return r;
  }

 private:
  std::vector<Sym> cols_;
  std::map<Sym, int> index_;
};

enum class Family { HEC = 0, FUS = 1, HWT = 2, EXTRA = 3 };
inline const char* family_str(Family f) {
  switch (f) {
    case Family::HEC: return "HEC";
    case Family::FUS: return "FUS";
    case Family::HWT: return "HWT";
    default: return "EXTRA";
  }
}

template <class C>
struct Membership {
  bool member = false;
  std::map<int, C> certificate;  // stored row id -> multiplier
  SymVec<C> residual;
  bool outside = false;  // support not contained in the ambient
};

// Exact basis of the span of kernel generators inside a finite ambient
template <class C>
class KernelBasis {
 public:
  explicit KernelBasis(Pivoting p = Pivoting::leading) : ech_(p) {}

  Ambient& ambient() { return amb_; }
  const Ambient& ambient() const { return amb_; }
  const Echelon<C>& echelon() const { return ech_; }
  std::size_t rank() const { return ech_.rank(); }
  std::size_t dim() const { return amb_.size(); }
  std::size_t quotient_dim() const { return amb_.size() - ech_.rank(); }
  long generators() const { return gens_; }
  const std::map<std::string, long>& generator_counts() const { return counts_; }
  nlohmann::json& manifest() { return manifest_; }
  const nlohmann::json& manifest() const { return manifest_; }

  bool add_generator(const SymVec<C>& g, Family fam) {
    counts_[family_str(fam)]++;
    const int tag = static_cast<int>(gens_++) * 4 + static_cast<int>(fam);
    if (g.empty()) return false;
    return ech_.insert(amb_.encode(g), tag);
  }

  Membership<C> member(const SymVec<C>& x) const {
    Membership<C> m;
    for (const auto& [s, c] : x)
      if (!amb_.contains(s)) {
        m.outside = true;
        m.residual = x;
        return m;
      }
    auto res = ech_.reduce(amb_.encode(x), &m.certificate);
    m.residual = amb_.decode(res);
    m.member = res.empty();
    return m;
  }

  // recombine a certificate and compare with x exactly
  bool verify_certificate(const SymVec<C>& x, const Membership<C>& m) const {
    SparseVec<C> acc = amb_.encode(x);
    for (const auto& [rid, f] : m.certificate)
      for (const auto& [c, a] : ech_.rows()[rid].v) {
        auto [it, fresh] = acc.try_emplace(c, C(0));
        it->second -= f * a;
        if (it->second.is_zero()) acc.erase(it);
      }
    SparseVec<C> res = amb_.encode(m.residual);
    return acc == res;
  }

  // reduced representative supported on non-pivot columns
  SymVec<C> normal_form(const SymVec<C>& x) const { return amb_.decode(ech_.reduce(amb_.encode(x))); }

  // Directory layout: manifest.json, columns.txt ("col N signs e1..eN"),
  // rows.txt ("row col value", first line of each row is its pivot).
  void save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    nlohmann::json man = manifest_;
    man["ambient_dim"] = amb_.size();
    man["rank"] = ech_.rank();
    man["generators"] = gens_;
    man["generator_counts"] = counts_;
    nlohmann::json prov = nlohmann::json::array();
    for (const auto& r : ech_.rows())
      prov.push_back({{"row", prov.size()}, {"generator", r.tag / 4}, {"family", family_str(Family(r.tag % 4))}});
    man["row_provenance"] = prov;
    std::ofstream(dir / "manifest.json") << man.dump(2) << "\n";
    std::ofstream cols(dir / "columns.txt");
    for (std::size_t c = 0; c < amb_.size(); ++c) {
      const Sym& s = amb_.sym(static_cast<int>(c));
      cols << c << " " << s.N << " " << signs_str(s.eps, s.N) << (s.N ? " " : "") << s.e.str(s.N) << "\n";
    }
    std::ofstream rows(dir / "rows.txt");
    for (std::size_t i = 0; i < ech_.rows().size(); ++i) {
      const auto& r = ech_.rows()[i];
      rows << i << " " << r.pivot << " " << r.v.at(r.pivot).str() << "\n";
      for (const auto& [c, a] : r.v)
        if (c != r.pivot) rows << i << " " << c << " " << a.str() << "\n";
    }
  }

  static KernelBasis load(const std::filesystem::path& dir, Pivoting p = Pivoting::leading) {
    KernelBasis kb(p);
    std::ifstream mf(dir / "manifest.json");
    if (!mf) throw std::runtime_error("missing kernel manifest in " + dir.string());
    kb.manifest_ = nlohmann::json::parse(mf);
    std::ifstream cols(dir / "columns.txt");
    std::string line;
    while (std::getline(cols, line)) {
      std::istringstream is(line);
      int c, N;
      is >> c >> N;
      std::string pm;
      if (N > 0) is >> pm;
      std::vector<int> e(N);
      for (auto& v : e) is >> v;
      if (kb.amb_.add({N, signs_from(pm), Exps::from(e)}) != c) throw std::runtime_error("corrupt columns.txt");
    }
    std::ifstream rows(dir / "rows.txt");
    const auto& prov = kb.manifest_.at("row_provenance");
    int cur = -1, piv = -1;
    SparseVec<C> v;
    auto flush = [&] {
      if (cur >= 0) {
        const auto& pr = prov.at(cur);
        const std::string fam = pr.at("family").get<std::string>();
        int f = 3;
        for (int k = 0; k < 3; ++k)
          if (fam == family_str(Family(k))) f = k;
        kb.ech_.restore(piv, std::move(v), pr.at("generator").get<int>() * 4 + f);
      }
      v.clear();
    };
    while (std::getline(rows, line)) {
      std::istringstream is(line);
      int r, c;
      is >> r >> c;
      std::string val;
      std::getline(is >> std::ws, val);
      if (r != cur) {
        flush();
        cur = r;
        piv = c;
      }
      v.emplace(c, C::parse(val));
    }
    flush();
    kb.gens_ = kb.manifest_.value("generators", 0L);
    kb.counts_ = kb.manifest_.value("generator_counts", std::map<std::string, long>{});
    if (kb.rank() != kb.manifest_.value("rank", 0UL)) throw std::runtime_error("kernel rank mismatch on load");
    return kb;
  }

 private:
  Ambient amb_;
  Echelon<C> ech_;
  long gens_ = 0;
  std::map<std::string, long> counts_;
  nlohmann::json manifest_ = nlohmann::json::object();
};

}  // namespace qlzero
