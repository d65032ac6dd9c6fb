#include "parahoric/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "linalg.hpp"
#include "parahoric/errors.hpp"

namespace parahoric {

Weight parse_weight(const std::string& text) {
  std::vector<std::int64_t> coords;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
    if (token.empty()) throw ParseError("empty coordinate in weight '" + text + "'");
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw ParseError("bad coordinate '" + token + "' in weight '" + text + "'");
    }
    if (used != token.size()) throw ParseError("bad coordinate '" + token + "' in weight '" + text + "'");
    coords.push_back(v);
  }
  if (coords.empty()) throw ParseError("empty weight");
  return Weight(std::move(coords));
}

} // namespace parahoric

namespace parahoric::rootdata {

std::string to_string(const Component& c) {
  return std::string(1, static_cast<char>(c.family)) + std::to_string(c.rank);
}

// ---------------------------------------------------------------- DynkinSpec

DynkinSpec DynkinSpec::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (s.empty()) throw ParseError("empty type specification");

  auto parse_rank = [&](const std::string& digits) {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw ParseError("bad rank in type specification '" + text + "'");
    return std::stoi(digits);
  };

  DynkinSpec spec;
  std::vector<std::string> parts;
  {
    std::string cur;
    for (char ch : s) {
      if (ch == '+') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string& part = parts[i];
    if (part.empty()) throw ParseError("empty term in type specification '" + text + "'");
    if (part[0] == 'T') {
      spec.extra_torus_rank += parse_rank(part.substr(1));
      continue;
    }
    if (i != 0) throw ParseError("only torus terms may follow '+' in '" + text + "'");
    std::string cur;
    std::vector<std::string> comps;
    for (char ch : part) {
      if (ch == 'X') {
        comps.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    comps.push_back(cur);
    for (const auto& c : comps) {
      if (c.size() < 2 || std::string("ABCDEFG").find(c[0]) == std::string::npos)
        throw ParseError("bad component '" + c + "' in type specification '" + text + "'");
      spec.components.push_back({static_cast<Family>(c[0]), parse_rank(c.substr(1))});
    }
  }
  spec.validate();
  return spec;
}

void DynkinSpec::validate() const {
  if (extra_torus_rank < 0) throw IllegalRank("negative torus rank");
  for (const auto& c : components) {
    const int n = c.rank;
    bool ok = false;
    switch (c.family) {
      case Family::A: ok = n >= 1; break;
      case Family::B: ok = n >= 1; break;
      case Family::C: ok = n >= 1; break;
      case Family::D: ok = n >= 2; break;
      case Family::E: ok = n >= 6 && n <= 8; break;
      case Family::F: ok = n == 4; break;
      case Family::G: ok = n == 2; break;
    }
    if (!ok) throw IllegalRank("illegal rank for family: " + rootdata::to_string(c));
  }
}

DynkinSpec DynkinSpec::canonical() const {
  DynkinSpec out;
  out.extra_torus_rank = extra_torus_rank;
  for (const auto& c : components) {
    if ((c.family == Family::B || c.family == Family::C) && c.rank == 1) {
      out.components.push_back({Family::A, 1});
    } else if (c.family == Family::B && c.rank == 2) {
      out.components.push_back({Family::C, 2});
    } else if (c.family == Family::D && c.rank == 2) {
      out.components.push_back({Family::A, 1});
      out.components.push_back({Family::A, 1});
    } else if (c.family == Family::D && c.rank == 3) {
      out.components.push_back({Family::A, 3});
    } else {
      out.components.push_back(c);
    }
  }
  std::sort(out.components.begin(), out.components.end());
  return out;
}

std::string DynkinSpec::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) s += 'x';
    s += rootdata::to_string(components[i]);
  }
  if (extra_torus_rank > 0 || components.empty()) {
    if (!s.empty()) s += '+';
    s += "T" + std::to_string(extra_torus_rank);
  }
  return s;
}

bool same_type(const DynkinSpec& a, const DynkinSpec& b) { return a.canonical() == b.canonical(); }

// ------------------------------------------------------------ Cartan matrices

IntMatrix cartan_matrix(Component c) {
  const int n = c.rank;
  IntMatrix a(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (c.family) {
    case Family::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      if (n >= 2) a[n - 2][n - 1] = -2; // last node short
      break;
    case Family::C:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      if (n >= 2) a[n - 1][n - 2] = -2; // last node long
      break;
    case Family::D:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      if (n >= 3) link(n - 3, n - 1);
      break;
    case Family::E: {
      const int edges[][2] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
      for (auto [i, j] : edges)
        if (i < n && j < n) link(i, j);
      break;
    }
    case Family::F:
      link(0, 1);
      link(1, 2);
      link(2, 3);
      a[1][2] = -2;
      break;
    case Family::G:
      a[0][1] = -1;
      a[1][0] = -3;
      break;
  }
  return a;
}

namespace {

// Squared lengths up to a common scale, normalized so the shortest is 1.
std::vector<detail::Rational> squared_lengths(const IntMatrix& a) {
  const std::size_t n = a.size();
  std::vector<detail::Rational> len(n, detail::Rational(0));
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    len[start] = 1;
    seen[start] = true;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      auto i = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < n; ++j) {
        if (seen[j] || a[i][j] == 0) continue;
        // a_ij l_j = a_ji l_i
        len[j] = len[i] * detail::Rational(a[j][i], a[i][j]);
        seen[j] = true;
        queue.push_back(j);
      }
    }
  }
  return len;
}

} // namespace

Component classify_cartan(const IntMatrix& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) throw Error("empty Cartan matrix");
  if (n == 1) return {Family::A, 1};

  int max_bond = 0;
  std::vector<int> degree(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && a[i][j] != 0) {
        max_bond = std::max<int>(max_bond, static_cast<int>(a[i][j] * a[j][i]));
        ++degree[i];
      }

  if (max_bond == 3) return {Family::G, 2};
  if (max_bond == 2) {
    if (n == 2) return {Family::C, 2};
    auto len = squared_lengths(a);
    auto shortest = *std::min_element(len.begin(), len.end());
    int num_short = static_cast<int>(std::count(len.begin(), len.end(), shortest));
    if (num_short == 1) return {Family::B, n};
    if (num_short == n - 1) return {Family::C, n};
    if (n == 4 && num_short == 2) return {Family::F, 4};
    throw Error("unrecognized Cartan matrix");
  }

  auto branch = std::find(degree.begin(), degree.end(), 3);
  if (branch == degree.end()) return {Family::A, n};
  const int b = static_cast<int>(branch - degree.begin());
  std::vector<int> arms;
  for (int j = 0; j < n; ++j) {
    if (j == b || a[b][j] == 0) continue;
    int len = 1, prev = b, cur = j;
    for (;;) {
      int next = -1;
      for (int k = 0; k < n; ++k)
        if (k != cur && k != prev && a[cur][k] != 0) next = k;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms.size() != 3) throw Error("unrecognized Cartan matrix");
  if (arms[0] == 1 && arms[1] == 1) return {Family::D, n};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {Family::E, n};
  throw Error("unrecognized Cartan matrix");
}

DynkinSpec classify_simple_system(const IntMatrix& a, int torus_rank) {
  const std::size_t n = a.size();
  std::vector<int> comp(n, -1);
  DynkinSpec spec;
  spec.extra_torus_rank = torus_rank;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members{s};
    comp[s] = 1;
    for (std::size_t q = 0; q < members.size(); ++q)
      for (std::size_t j = 0; j < n; ++j)
        if (comp[j] < 0 && (a[members[q]][j] != 0 || a[j][members[q]] != 0)) {
          comp[j] = 1;
          members.push_back(j);
        }
    std::sort(members.begin(), members.end());
    IntMatrix block;
    for (auto i : members) {
      std::vector<std::int64_t> row;
      for (auto j : members) row.push_back(a[i][j]);
      block.push_back(std::move(row));
    }
    spec.components.push_back(classify_cartan(block));
  }
  return spec.canonical();
}

// ------------------------------------------------------------------ RootDatum

std::int64_t Root::height() const { return std::accumulate(coeffs.begin(), coeffs.end(), std::int64_t{0}); }

RootDatum RootDatum::from_simple_roots(std::size_t lattice_rank, std::vector<Weight> simple,
                                       std::vector<Coweight> simple_coroots) {
  const std::size_t r = simple.size();
  if (simple_coroots.size() != r) throw Error("simple roots and coroots differ in number");
  for (std::size_t i = 0; i < r; ++i)
    if (simple[i].size() != lattice_rank || simple_coroots[i].size() != lattice_rank)
      throw Error("simple root outside the ambient lattice");

  // connected components, in order of first simple root
  std::vector<int> comp(r, -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < r; ++s) {
    if (comp[s] >= 0) continue;
    std::deque<std::size_t> queue{s};
    comp[s] = ncomp;
    while (!queue.empty()) {
      auto i = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < r; ++j)
        if (comp[j] < 0 && (pair(simple[i], simple_coroots[j]) != 0 || pair(simple[j], simple_coroots[i]) != 0)) {
          comp[j] = ncomp;
          queue.push_back(j);
        }
    }
    ++ncomp;
  }
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return comp[x] < comp[y]; });
  {
    std::vector<Weight> s2;
    std::vector<Coweight> c2;
    std::vector<int> comp2;
    for (auto i : order) {
      s2.push_back(simple[i]);
      c2.push_back(simple_coroots[i]);
      comp2.push_back(comp[i]);
    }
    simple = std::move(s2);
    simple_coroots = std::move(c2);
    comp = std::move(comp2);
  }

  RootDatum rd;
  rd.rank_ = lattice_rank;
  rd.cartan_.assign(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rd.cartan_[i][j] = pair(simple[i], simple_coroots[j]);
  for (std::size_t i = 0; i < r; ++i)
    if (rd.cartan_[i][i] != 2) throw Error("simple root does not pair to 2 with its coroot");

  // offset of each simple root inside its component
  std::vector<std::size_t> local(r), comp_size(ncomp, 0);
  for (std::size_t i = 0; i < r; ++i) local[i] = comp_size[comp[i]]++;

  struct Raw {
    Weight w;
    Coweight c;
    std::vector<std::int64_t> coeffs;
  };
  std::vector<Raw> raw;
  std::unordered_map<Weight, std::size_t, WeightHash> seen;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<std::int64_t> e(r, 0);
    e[i] = 1;
    seen.emplace(simple[i], raw.size());
    raw.push_back({simple[i], simple_coroots[i], e});
  }
  constexpr std::size_t kMaxRoots = 100000;
  for (std::size_t idx = 0; idx < raw.size(); ++idx) {
    for (std::size_t k = 0; k < r; ++k) {
      const Raw cur = raw[idx];
      const auto p = pair(cur.w, simple_coroots[k]);
      if (p == 0) continue;
      Weight w = cur.w - p * simple[k];
      if (seen.contains(w)) continue;
      Coweight c = cur.c - pair(simple[k], cur.c) * simple_coroots[k];
      auto coeffs = cur.coeffs;
      coeffs[k] -= p;
      seen.emplace(w, raw.size());
      raw.push_back({std::move(w), std::move(c), std::move(coeffs)});
      if (raw.size() > kMaxRoots) throw Error("root closure does not terminate: not a finite root system");
    }
  }

  for (auto& x : raw) {
    Root root;
    root.weight = x.w;
    root.coroot = x.c;
    int cmp = -1;
    for (std::size_t i = 0; i < r; ++i)
      if (x.coeffs[i] != 0) {
        if (cmp < 0) cmp = comp[i];
        else if (cmp != comp[i]) throw Error("root supported on two components");
      }
    root.component = cmp;
    root.coeffs.assign(comp_size[cmp], 0);
    for (std::size_t i = 0; i < r; ++i)
      if (comp[i] == cmp) root.coeffs[local[i]] = x.coeffs[i];
    bool pos = std::all_of(root.coeffs.begin(), root.coeffs.end(), [](auto v) { return v >= 0; });
    bool neg = std::all_of(root.coeffs.begin(), root.coeffs.end(), [](auto v) { return v <= 0; });
    if (!pos && !neg) throw Error("root with mixed-sign coefficients");
    rd.roots_.push_back(std::move(root));
  }
  std::sort(rd.roots_.begin(), rd.roots_.end(), [](const Root& a, const Root& b) {
    if (a.component != b.component) return a.component < b.component;
    auto ha = a.height(), hb = b.height();
    if (ha != hb) return ha < hb;
    return a.coeffs > b.coeffs;
  });
  for (std::size_t i = 0; i < rd.roots_.size(); ++i) {
    rd.index_.emplace(rd.roots_[i].weight, i);
    if (rd.roots_[i].positive()) rd.positive_.push_back(i);
  }

  rd.components_.assign(ncomp, {});
  for (std::size_t i = 0; i < r; ++i) {
    auto idx = rd.index_.at(simple[i]);
    rd.components_[comp[i]].push_back(idx);
    rd.simple_.push_back(idx);
  }
  for (int c = 0; c < ncomp; ++c) {
    IntMatrix block;
    for (auto i : rd.components_[c]) {
      std::vector<std::int64_t> row;
      for (auto j : rd.components_[c]) row.push_back(pair(rd.roots_[i].weight, rd.roots_[j].coroot));
      block.push_back(std::move(row));
    }
    rd.types_.push_back(classify_cartan(block));
  }

  rd.two_rho_ = Weight(lattice_rank);
  for (auto i : rd.positive_) rd.two_rho_ += rd.roots_[i].weight;

  if (r > 0) {
    detail::RationalMatrix at(r, std::vector<detail::Rational>(r));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) at[i][j] = detail::Rational(rd.cartan_[j][i]);
    auto inv = detail::inverse(at);
    std::int64_t den = 1;
    for (auto& row : inv)
      for (auto& x : row) den = std::lcm(den, x.denominator());
    rd.cartan_inv_den_ = den;
    rd.cartan_inv_num_.assign(r, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        rd.cartan_inv_num_[i][j] = inv[i][j].numerator() * (den / inv[i][j].denominator());
  }

  std::ostringstream key;
  key << "n" << lattice_rank;
  for (std::size_t i = 0; i < r; ++i) key << ";" << to_string(simple[i]) << "|" << to_string(simple_coroots[i]);
  rd.key_ = key.str();
  return rd;
}

DynkinSpec RootDatum::type() const {
  DynkinSpec spec;
  spec.components = types_;
  spec.extra_torus_rank = static_cast<int>(rank_ - simple_.size());
  return spec;
}

Weight RootDatum::rho() const {
  Weight r = two_rho_;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] % 2 != 0) throw Error("rho is not integral in the ambient lattice");
    r[i] /= 2;
  }
  return r;
}

std::int64_t RootDatum::rho_pairing(const Root& r) const { return pair(two_rho_, r.coroot) / 2; }

std::optional<std::size_t> RootDatum::find_root(const Weight& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::vector<std::int64_t>> RootDatum::root_lattice_coeffs(const Weight& v) const {
  const std::size_t r = simple_.size();
  std::vector<std::int64_t> b(r);
  for (std::size_t k = 0; k < r; ++k) b[k] = pair(v, roots_[simple_[k]].coroot);
  std::vector<std::int64_t> n(r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < r; ++k) s += cartan_inv_num_[j][k] * b[k];
    if (s % cartan_inv_den_ != 0) return std::nullopt;
    n[j] = s / cartan_inv_den_;
  }
  Weight back(rank_);
  for (std::size_t j = 0; j < r; ++j) back += n[j] * roots_[simple_[j]].weight;
  if (back != v) return std::nullopt;
  return n;
}

// ----------------------------------------------------------------- operations

RootDatum build_root_datum(const DynkinSpec& input) {
  input.validate();
  // D2 is reducible; split it so that every component stays irreducible.
  std::vector<Component> comps;
  for (const auto& c : input.components) {
    if (c.family == Family::D && c.rank == 2) {
      comps.push_back({Family::A, 1});
      comps.push_back({Family::A, 1});
    } else {
      comps.push_back(c);
    }
  }
  std::size_t n = static_cast<std::size_t>(input.extra_torus_rank);
  for (const auto& c : comps) n += static_cast<std::size_t>(c.rank);

  std::vector<Weight> simple;
  std::vector<Coweight> coroots;
  std::size_t offset = 0;
  for (const auto& c : comps) {
    auto a = cartan_matrix(c);
    for (int i = 0; i < c.rank; ++i) {
      Weight w(n);
      Coweight cw(n);
      for (int j = 0; j < c.rank; ++j) w[offset + j] = a[i][j];
      cw[offset + i] = 1;
      simple.push_back(std::move(w));
      coroots.push_back(std::move(cw));
    }
    offset += static_cast<std::size_t>(c.rank);
  }
  return RootDatum::from_simple_roots(n, std::move(simple), std::move(coroots));
}

RootDatum build_root_datum(const std::string& spec) { return build_root_datum(DynkinSpec::parse(spec)); }

const Root& highest_root(const RootDatum& rd, std::size_t component) {
  if (component >= rd.num_components()) throw Error("component index out of range");
  const Root* best = nullptr;
  for (const auto& r : rd.roots())
    if (r.component == static_cast<int>(component) && (!best || r.height() > best->height())) best = &r;
  return *best;
}

std::int64_t pair(const RootDatum&, const Weight& w, const Root& alpha) { return parahoric::pair(w, alpha.coroot); }

Weight reflect(const RootDatum&, const Root& alpha, const Weight& w) {
  return w - parahoric::pair(w, alpha.coroot) * alpha.weight;
}

Weight simple_reflect(const RootDatum& rd, std::size_t k, const Weight& w) {
  return reflect(rd, rd.simple_root(k), w);
}

bool is_dominant(const RootDatum& rd, const Weight& w) {
  for (std::size_t k = 0; k < rd.semisimple_rank(); ++k)
    if (parahoric::pair(w, rd.simple_root(k).coroot) < 0) return false;
  return true;
}

std::vector<Weight> weyl_orbit(const RootDatum& rd, const Weight& w) {
  std::set<Weight> seen{w};
  std::deque<Weight> queue{w};
  while (!queue.empty()) {
    Weight cur = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < rd.semisimple_rank(); ++k) {
      const Root& a = rd.simple_root(k);
      if (parahoric::pair(cur, a.coroot) == 0) continue;
      Weight next = reflect(rd, a, cur);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

Weight dominant_conjugate(const RootDatum& rd, const Weight& w) {
  Weight cur = w;
  for (;;) {
    bool moved = false;
    for (std::size_t k = 0; k < rd.semisimple_rank(); ++k) {
      const Root& a = rd.simple_root(k);
      if (parahoric::pair(cur, a.coroot) < 0) {
        cur = reflect(rd, a, cur);
        moved = true;
      }
    }
    if (!moved) return cur;
  }
}

BigInt weyl_dim(const RootDatum& rd, const Weight& w) {
  if (!is_dominant(rd, w)) throw NotDominant("weyl_dim: weight " + to_string(w) + " is not dominant");
  BigInt num = 1, den = 1;
  for (auto i : rd.positive_roots()) {
    const Root& a = rd.roots()[i];
    const auto rp = rd.rho_pairing(a);
    num *= parahoric::pair(w, a.coroot) + rp;
    den *= rp;
  }
  if (num % den != 0) throw Error("Weyl degree formula gave a non-integer");
  return num / den;
}

BigInt weyl_group_order(const RootDatum& rd) {
  auto fact = [](int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  BigInt order = 1;
  for (std::size_t c = 0; c < rd.num_components(); ++c) {
    const auto t = rd.component_type(c);
    const int n = t.rank;
    switch (t.family) {
      case Family::A: order *= fact(n + 1); break;
      case Family::B:
      case Family::C: order *= (BigInt(1) << n) * fact(n); break;
      case Family::D: order *= (BigInt(1) << (n - 1)) * fact(n); break;
      case Family::E: order *= (n == 6 ? BigInt(51840) : n == 7 ? BigInt(2903040) : BigInt(696729600)); break;
      case Family::F: order *= 1152; break;
      case Family::G: order *= 12; break;
    }
  }
  return order;
}

bool dominates(const RootDatum& rd, const Weight& a, const Weight& b) {
  auto c = rd.root_lattice_coeffs(a - b);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](auto v) { return v >= 0; });
}

} // namespace parahoric::rootdata
