#include "parahoric/charring.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "parahoric/errors.hpp"

namespace parahoric::charring {

using rootdata::dominant_conjugate;
using rootdata::is_dominant;

namespace {

void require_same(const Character& a, const Character& b, const char* op) {
  if (a.datum().key() != b.datum().key()) throw DatumMismatch(std::string(op) + ": characters over different root data");
}

void accumulate(DominantMap& m, const Weight& w, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = m.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

} // namespace

// ------------------------------------------------------------------ Character

Character::Character(DatumPtr rd) : rd_(std::move(rd)) {}

Character::Character(DatumPtr rd, DominantMap mult) : rd_(std::move(rd)), mult_(std::move(mult)) {
  for (const auto& [w, m] : mult_) {
    if (m <= 0) throw Error("character multiplicity must be positive at " + to_string(w));
    if (!is_dominant(*rd_, w)) throw Error("character key " + to_string(w) + " is not dominant");
  }
}

Character Character::from_weights(DatumPtr rd, const std::vector<Weight>& weights) {
  std::map<Weight, std::int64_t> full;
  for (const auto& w : weights) ++full[w];
  DominantMap dom;
  for (const auto& [w, m] : full) {
    if (!is_dominant(*rd, w)) continue;
    for (const auto& v : rootdata::weyl_orbit(*rd, w)) {
      auto it = full.find(v);
      if (it == full.end() || it->second != m) throw Error("weight multiset is not W-invariant at " + to_string(v));
    }
    dom.emplace(w, m);
  }
  Character ch(std::move(rd), std::move(dom));
  std::size_t total = 0;
  for (const auto& [w, m] : ch.expand()) total += static_cast<std::size_t>(m);
  if (total != weights.size()) throw Error("weight multiset is not W-invariant");
  return ch;
}

std::int64_t Character::multiplicity(const Weight& w) const {
  auto it = mult_.find(dominant_conjugate(*rd_, w));
  return it == mult_.end() ? 0 : it->second;
}

std::vector<std::pair<Weight, std::int64_t>> Character::expand() const {
  std::vector<std::pair<Weight, std::int64_t>> out;
  for (const auto& [w, m] : mult_)
    for (auto& v : rootdata::weyl_orbit(*rd_, w)) out.emplace_back(std::move(v), m);
  std::sort(out.begin(), out.end());
  return out;
}

bool VirtualChiSum::nonnegative() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return kv.second >= 0; });
}

void VirtualChiSum::add(const Weight& w, std::int64_t c) { accumulate(coeffs, w, c); }

// ----------------------------------------------------------------- Freudenthal

namespace {

// W-invariant form (x,y) = sum over positive roots of <x,b^vee><y,b^vee>.
class InvariantForm {
public:
  explicit InvariantForm(const RootDatum& rd) {
    for (auto i : rd.positive_roots()) coroots_.push_back(&rd.roots()[i].coroot);
  }
  std::int64_t operator()(const Weight& x, const Weight& y) const {
    std::int64_t s = 0;
    for (auto* c : coroots_) s += parahoric::pair(x, *c) * parahoric::pair(y, *c);
    return s;
  }

private:
  std::vector<const Coweight*> coroots_;
};

DominantMap freudenthal(const RootDatum& rd, const Weight& lambda) {
  // dominant weights below lambda, connected through subtraction of positive roots
  std::set<Weight> dominant{lambda};
  std::deque<Weight> queue{lambda};
  while (!queue.empty()) {
    Weight mu = queue.front();
    queue.pop_front();
    for (auto i : rd.positive_roots()) {
      Weight nu = mu - rd.roots()[i].weight;
      if (is_dominant(rd, nu) && dominant.insert(nu).second) queue.push_back(std::move(nu));
    }
  }
  std::vector<std::pair<std::int64_t, Weight>> by_level;
  for (const auto& mu : dominant) {
    auto c = rd.root_lattice_coeffs(lambda - mu);
    std::int64_t level = 0;
    for (auto v : *c) level += v;
    by_level.emplace_back(level, mu);
  }
  std::sort(by_level.begin(), by_level.end());

  const InvariantForm form(rd);
  const Weight& two_rho = rd.two_rho();
  const std::int64_t lambda_norm = form(lambda, lambda);

  DominantMap mult;
  // full support seen so far, so string lookups avoid repeated conjugation
  std::unordered_map<Weight, std::int64_t, WeightHash> full;
  auto record = [&](const Weight& mu, std::int64_t m) {
    mult[mu] = m;
    for (auto& v : rootdata::weyl_orbit(rd, mu)) full.emplace(std::move(v), m);
  };
  record(lambda, 1);
  for (const auto& [level, mu] : by_level) {
    if (level == 0) continue;
    std::int64_t num = 0;
    for (auto i : rd.positive_roots()) {
      const Weight& alpha = rd.roots()[i].weight;
      Weight nu = mu + alpha;
      for (;;) {
        auto it = full.find(nu);
        if (it == full.end()) break; // alpha-strings of weights are unbroken
        num += it->second * form(nu, alpha);
        nu += alpha;
      }
    }
    num *= 2;
    const std::int64_t den = lambda_norm - form(mu, mu) + form(lambda - mu, two_rho);
    if (den <= 0 || num % den != 0) throw Error("Freudenthal recursion produced a non-integral multiplicity");
    const std::int64_t m = num / den;
    if (m > 0) record(mu, m);
  }
  return mult;
}

} // namespace

Character chi_char(const DatumPtr& rd, const Weight& lambda) {
  if (lambda.size() != rd->rank()) throw Error("weight " + to_string(lambda) + " has the wrong rank");
  if (!is_dominant(*rd, lambda)) throw NotDominant("chi_char: weight " + to_string(lambda) + " is not dominant");
  auto& cache = FreudenthalCache::global();
  if (auto hit = cache.find(*rd, lambda)) return Character(rd, std::move(*hit));
  auto mult = freudenthal(*rd, lambda);
  cache.insert(*rd, lambda, mult);
  return Character(rd, std::move(mult));
}

BigInt dim(const Character& ch) {
  BigInt d = 0;
  for (const auto& [w, m] : ch.dominant()) d += BigInt(m) * rootdata::weyl_orbit(ch.datum(), w).size();
  return d;
}

// ------------------------------------------------------------------ arithmetic

Character add(const Character& a, const Character& b) {
  require_same(a, b, "add");
  DominantMap m = a.dominant();
  for (const auto& [w, c] : b.dominant()) accumulate(m, w, c);
  return Character(a.datum_ptr(), std::move(m));
}

Character scale(const Character& ch, std::int64_t k) {
  if (k < 0) throw Error("scale: negative factor");
  DominantMap m;
  if (k > 0)
    for (const auto& [w, c] : ch.dominant()) m.emplace(w, c * k);
  return Character(ch.datum_ptr(), std::move(m));
}

std::optional<Character> subtract(const Character& a, const Character& b) {
  require_same(a, b, "subtract");
  DominantMap m = a.dominant();
  for (const auto& [w, c] : b.dominant()) accumulate(m, w, -c);
  for (const auto& [w, c] : m)
    if (c < 0) return std::nullopt;
  return Character(a.datum_ptr(), std::move(m));
}

Character tensor(const Character& a, const Character& b) {
  require_same(a, b, "tensor");
  const auto& rd = a.datum();
  const auto fa = a.expand();
  const auto fb = b.expand();
  DominantMap m;
  for (const auto& [wa, ma] : fa)
    for (const auto& [wb, mb] : fb) {
      Weight s = wa + wb;
      if (is_dominant(rd, s)) accumulate(m, s, ma * mb);
    }
  return Character(a.datum_ptr(), std::move(m));
}

Character dual(const Character& ch) {
  DominantMap m;
  for (const auto& [w, c] : ch.dominant()) m.emplace(dominant_conjugate(ch.datum(), -w), c);
  return Character(ch.datum_ptr(), std::move(m));
}

Character exterior_square(const Character& ch) {
  const auto& rd = ch.datum();
  const auto full = ch.expand();
  DominantMap m;
  for (std::size_t i = 0; i < full.size(); ++i) {
    const auto& [w, mw] = full[i];
    Weight twice = w + w;
    if (is_dominant(rd, twice)) accumulate(m, twice, mw * (mw - 1) / 2);
    for (std::size_t j = i + 1; j < full.size(); ++j) {
      Weight s = w + full[j].first;
      if (is_dominant(rd, s)) accumulate(m, s, mw * full[j].second);
    }
  }
  return Character(ch.datum_ptr(), std::move(m));
}

// ------------------------------------------------------------------ chi basis

std::optional<Normalized> chi_normalize(const RootDatum& rd, const Weight& mu) {
  // work with 2(mu + rho), which is integral even when rho is not
  Weight v = 2 * mu + rd.two_rho();
  int sign = 1;
  for (;;) {
    bool moved = false;
    for (std::size_t k = 0; k < rd.semisimple_rank(); ++k) {
      const auto& a = rd.simple_root(k);
      if (parahoric::pair(v, a.coroot) < 0) {
        v = rootdata::reflect(rd, a, v);
        sign = -sign;
        moved = true;
      }
    }
    if (!moved) break;
  }
  for (std::size_t k = 0; k < rd.semisimple_rank(); ++k)
    if (parahoric::pair(v, rd.simple_root(k).coroot) == 0) return std::nullopt;
  Weight out = v - rd.two_rho();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= 2;
  return Normalized{sign, std::move(out)};
}

namespace {

VirtualChiSum expand_map(const DatumPtr& rd, DominantMap rest) {
  VirtualChiSum out;
  while (!rest.empty()) {
    // a maximal weight in dominance order; ties broken lexicographically (largest)
    const Weight* top = nullptr;
    for (auto it = rest.rbegin(); it != rest.rend(); ++it) {
      bool maximal = true;
      for (const auto& [other, c] : rest)
        if (other != it->first && rootdata::dominates(*rd, other, it->first)) {
          maximal = false;
          break;
        }
      if (maximal) {
        top = &it->first;
        break;
      }
    }
    const Weight mu = *top;
    const std::int64_t c = rest.at(mu);
    out.add(mu, c);
    const auto ch = chi_char(rd, mu);
    for (const auto& [w, m] : ch.dominant()) accumulate(rest, w, -c * m);
  }
  return out;
}

} // namespace

VirtualChiSum chi_expand(const Character& ch) { return expand_map(ch.datum_ptr(), ch.dominant()); }

DominantMap chi_combination(const DatumPtr& rd, const VirtualChiSum& sum) {
  DominantMap m;
  for (const auto& [mu, c] : sum.coeffs) {
    const auto ch = chi_char(rd, mu);
    for (const auto& [w, k] : ch.dominant()) accumulate(m, w, c * k);
  }
  return m;
}

Character to_character(const DatumPtr& rd, const VirtualChiSum& sum) {
  auto m = chi_combination(rd, sum);
  for (const auto& [w, c] : m)
    if (c < 0) throw Error("virtual sum is not a genuine character (negative at " + to_string(w) + ")");
  return Character(rd, std::move(m));
}

// ----------------------------------------------------------------------- cache

std::string stable_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FreudenthalCache& FreudenthalCache::global() {
  static FreudenthalCache cache;
  return cache;
}

void FreudenthalCache::set_enabled(bool on) {
  std::lock_guard lock(mutex_);
  enabled_ = on;
}

bool FreudenthalCache::enabled() const {
  std::lock_guard lock(mutex_);
  return enabled_;
}

void FreudenthalCache::set_directory(std::optional<std::filesystem::path> dir) {
  std::lock_guard lock(mutex_);
  dir_ = std::move(dir);
}

void FreudenthalCache::clear() {
  std::lock_guard lock(mutex_);
  table_.clear();
}

std::size_t FreudenthalCache::size() const {
  std::lock_guard lock(mutex_);
  std::size_t n = 0;
  for (const auto& [k, v] : table_) n += v.size();
  return n;
}

std::optional<std::filesystem::path> FreudenthalCache::file_for(const RootDatum& rd, const Weight& lambda) const {
  if (!dir_) return std::nullopt;
  return *dir_ / stable_hash(rd.key()) / (to_string(lambda) + ".json");
}

std::optional<DominantMap> FreudenthalCache::find(const RootDatum& rd, const Weight& lambda) {
  std::lock_guard lock(mutex_);
  if (!enabled_) return std::nullopt;
  auto t = table_.find(rd.key());
  if (t != table_.end()) {
    auto e = t->second.find(lambda);
    if (e != t->second.end()) return e->second;
  }
  auto path = file_for(rd, lambda);
  if (!path || !std::filesystem::exists(*path)) return std::nullopt;
  try {
    std::ifstream in(*path);
    auto j = nlohmann::json::parse(in);
    DominantMap m;
    for (const auto& [k, v] : j.items()) m.emplace(parse_weight(k), v.get<std::int64_t>());
    table_[rd.key()][lambda] = m;
    return m;
  } catch (const std::exception&) {
    return std::nullopt; // unreadable entries are recomputed
  }
}

void FreudenthalCache::insert(const RootDatum& rd, const Weight& lambda, const DominantMap& mult) {
  std::lock_guard lock(mutex_);
  if (!enabled_) return;
  table_[rd.key()].emplace(lambda, mult);
  auto path = file_for(rd, lambda);
  if (!path) return;
  std::error_code ec;
  std::filesystem::create_directories(path->parent_path(), ec);
  if (ec) return;
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [w, m] : mult) j[to_string(w)] = m;
  // write-then-rename keeps concurrent readers from seeing a partial file
  auto tmp = *path;
  tmp += ".tmp" + stable_hash(std::to_string(reinterpret_cast<std::uintptr_t>(&j)));
  {
    std::ofstream out(tmp);
    out << j.dump() << '\n';
  }
  std::filesystem::rename(tmp, *path, ec);
}

} // namespace parahoric::charring
