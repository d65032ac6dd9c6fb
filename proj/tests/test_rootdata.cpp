#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "parahoric/errors.hpp"
#include "parahoric/rootdata.hpp"

using namespace parahoric;
using namespace parahoric::rootdata;

namespace {

// Test-only oracle: the Weyl group as explicit integer matrices acting on
// fundamental-weight coordinates, generated from the Cartan matrix alone.
using Mat = std::vector<std::vector<std::int64_t>>;

Mat mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

std::set<Mat> weyl_group_matrices(const IntMatrix& cartan) {
  const std::size_t n = cartan.size();
  // s_i(w) = w - w_i * alpha_i, alpha_i = row i of the Cartan matrix; act on column vectors.
  std::vector<Mat> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Mat s(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j) s[j][j] = 1;
    for (std::size_t j = 0; j < n; ++j) s[j][i] -= cartan[i][j];
    gens.push_back(s);
  }
  Mat id(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) id[j][j] = 1;
  std::set<Mat> group{id};
  std::vector<Mat> frontier{id};
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        auto h = mul(s, g);
        if (group.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return group;
}

std::set<std::vector<std::int64_t>> oracle_roots(const IntMatrix& cartan) {
  std::set<std::vector<std::int64_t>> roots;
  for (const auto& g : weyl_group_matrices(cartan))
    for (std::size_t i = 0; i < cartan.size(); ++i) {
      std::vector<std::int64_t> r(cartan.size(), 0);
      for (std::size_t a = 0; a < cartan.size(); ++a)
        for (std::size_t b = 0; b < cartan.size(); ++b) r[a] += g[a][b] * cartan[i][b];
      roots.insert(r);
    }
  return roots;
}

std::size_t classical_count(Component c) {
  const std::size_t n = c.rank;
  switch (c.family) {
    case Family::A: return n * (n + 1);
    case Family::B:
    case Family::C: return 2 * n * n;
    case Family::D: return 2 * n * (n - 1);
    case Family::E: return n == 6 ? 72 : n == 7 ? 126 : 240;
    case Family::F: return 48;
    case Family::G: return 12;
  }
  return 0;
}

} // namespace

TEST_CASE("DynkinSpec grammar") {
  auto s = DynkinSpec::parse("a1xA1+t1");
  CHECK(s.components.size() == 2);
  CHECK(s.extra_torus_rank == 1);
  CHECK(s.to_string() == "A1xA1+T1");
  CHECK(DynkinSpec::parse("T2").to_string() == "T2");
  CHECK_THROWS_AS(DynkinSpec::parse("E5"), IllegalRank);
  CHECK_THROWS_AS(DynkinSpec::parse("F3"), IllegalRank);
  CHECK_THROWS_AS(DynkinSpec::parse("G3"), IllegalRank);
  CHECK_THROWS_AS(DynkinSpec::parse("D1"), IllegalRank);
  CHECK_THROWS_AS(DynkinSpec::parse("Q2"), ParseError);
  CHECK_THROWS_AS(DynkinSpec::parse("A"), ParseError);
  CHECK_THROWS_AS(DynkinSpec::parse("A2+"), ParseError);
  CHECK(same_type(DynkinSpec::parse("B2"), DynkinSpec::parse("C2")));
  CHECK(same_type(DynkinSpec::parse("D3"), DynkinSpec::parse("A3")));
  CHECK(same_type(DynkinSpec::parse("D2"), DynkinSpec::parse("A1xA1")));
  CHECK_FALSE(same_type(DynkinSpec::parse("B3"), DynkinSpec::parse("C3")));
}

TEST_CASE("build_root_datum examples") {
  auto a1 = build_root_datum("A1");
  CHECK(a1.roots().size() == 2);
  CHECK(a1.positive_roots().size() == 1);

  auto a2 = build_root_datum("A2");
  CHECK(a2.roots().size() == 6);
  CHECK(a2.positive_roots().size() == 3);

  auto g2 = build_root_datum("G2");
  CHECK(g2.roots().size() == 12);
  CHECK(g2.positive_roots().size() == 6);

  auto t = build_root_datum("A1+T1");
  CHECK(t.rank() == 2);
  CHECK(t.roots().size() == 2);
  CHECK(t.roots()[0].weight[1] == 0);
}

TEST_CASE("root closure agrees with the Weyl-group oracle") {
  for (const char* name : {"A2", "G2", "B3", "C3", "A3", "F4", "D4"}) {
    CAPTURE(name);
    auto spec = DynkinSpec::parse(name);
    auto rd = build_root_datum(spec);
    std::set<std::vector<std::int64_t>> got;
    for (const auto& r : rd.roots()) got.insert(r.weight.vec());
    CHECK(got == oracle_roots(cartan_matrix(spec.components[0])));
  }
}

TEST_CASE("root data invariants") {
  for (const char* name : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "G2", "F4", "E6",
                           "E7", "E8", "A1xA1", "A2xG2+T1"}) {
    CAPTURE(name);
    auto spec = DynkinSpec::parse(name);
    auto rd = build_root_datum(spec);
    std::size_t expected = 0;
    for (auto c : spec.components) expected += classical_count(c);
    CHECK(rd.roots().size() == expected);
    CHECK(rd.type() == spec.canonical());
    for (const auto& r : rd.roots()) {
      CHECK(parahoric::pair(r.weight, r.coroot) == 2);
      CHECK(rd.find_root(-r.weight).has_value());
      for (std::size_t k = 0; k < rd.semisimple_rank(); ++k)
        CHECK(rd.find_root(simple_reflect(rd, k, r.weight)).has_value());
      // weight coordinates are the Cartan image of the coefficients
      const auto& simple = rd.simple_indices(r.component);
      Weight w(rd.rank());
      for (std::size_t i = 0; i < simple.size(); ++i) w += r.coeffs[i] * rd.roots()[simple[i]].weight;
      CHECK(w == r.weight);
    }
    // deterministic order
    for (std::size_t i = 1; i < rd.roots().size(); ++i) {
      const auto& a = rd.roots()[i - 1];
      const auto& b = rd.roots()[i];
      CHECK((a.component < b.component || (a.component == b.component && a.height() <= b.height())));
    }
  }
}

TEST_CASE("highest_root") {
  CHECK(highest_root(build_root_datum("A1"), 0).coeffs == std::vector<std::int64_t>{1});
  CHECK(highest_root(build_root_datum("A2"), 0).coeffs == std::vector<std::int64_t>{1, 1});
  CHECK(highest_root(build_root_datum("C2"), 0).coeffs == std::vector<std::int64_t>{2, 1});
  CHECK(highest_root(build_root_datum("G2"), 0).coeffs == std::vector<std::int64_t>{3, 2});
  CHECK(highest_root(build_root_datum("F4"), 0).coeffs == std::vector<std::int64_t>{2, 3, 4, 2});
  CHECK(highest_root(build_root_datum("E8"), 0).coeffs == std::vector<std::int64_t>{2, 3, 4, 6, 5, 4, 3, 2});
  auto prod = build_root_datum("A1xA2");
  CHECK(highest_root(prod, 1).coeffs == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("pairing") {
  auto a2 = build_root_datum("A2");
  const auto& a1 = a2.simple_root(0);
  const auto& theta = highest_root(a2, 0);
  CHECK(pair(a2, Weight{1, 0}, a1) == 1);
  CHECK(pair(a2, Weight{3, 1}, theta) == 4);
  CHECK(pair(a2, a2.rho(), theta) == 2);
}

TEST_CASE("reflect") {
  auto a2 = build_root_datum("A2");
  const auto& a1 = a2.simple_root(0);
  CHECK(reflect(a2, a1, a1.weight) == -a1.weight);
  CHECK(reflect(a2, a1, Weight{1, 0}) == Weight{-1, 1});
  CHECK(reflect(a2, a1, Weight{0, 5}) == Weight{0, 5});

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-6, 6);
  for (const char* name : {"A2", "B3", "G2", "F4"}) {
    auto rd = build_root_datum(name);
    for (int trial = 0; trial < 50; ++trial) {
      Weight w(rd.rank());
      for (std::size_t i = 0; i < rd.rank(); ++i) w[i] = coord(rng);
      for (const auto& r : rd.roots()) CHECK(reflect(rd, r, reflect(rd, r, w)) == w);
    }
  }
}

TEST_CASE("weyl_orbit and dominant_conjugate") {
  auto a2 = build_root_datum("A2");
  CHECK(weyl_orbit(a2, Weight{0, 0}).size() == 1);
  CHECK(weyl_orbit(a2, Weight{1, 0}).size() == 3);
  CHECK(weyl_orbit(a2, a2.rho()).size() == 6);
  CHECK(dominant_conjugate(a2, Weight{2, 3}) == Weight{2, 3});
  CHECK(dominant_conjugate(a2, Weight{-1, 1}) == Weight{1, 0});
  CHECK(dominant_conjugate(a2, Weight{-1, -1}) == Weight{1, 1});

  for (const char* name : {"A3", "B3", "C3", "G2"}) {
    auto rd = build_root_datum(name);
    auto order = weyl_group_order(rd);
    CHECK(BigInt(weyl_orbit(rd, rd.two_rho()).size()) == order);
    Weight lam(rd.rank());
    lam[0] = 1;
    lam[rd.rank() - 1] = 2;
    auto orbit = weyl_orbit(rd, lam);
    CHECK(order % orbit.size() == 0);
    auto dom = dominant_conjugate(rd, lam);
    CHECK(dominant_conjugate(rd, dom) == dom);
    for (const auto& w : orbit) CHECK(dominant_conjugate(rd, w) == dom);
  }
}

TEST_CASE("weyl_dim") {
  auto a2 = build_root_datum("A2");
  CHECK(weyl_dim(a2, Weight{0, 0}) == 1);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) CHECK(weyl_dim(a2, Weight{a, b}) == (a + 1) * (b + 1) * (a + b + 2) / 2);
  CHECK(weyl_dim(a2, Weight{5, 0}) == 21);
  CHECK(weyl_dim(a2, Weight{3, 1}) == 24);
  CHECK(weyl_dim(a2, Weight{2, 0}) == 6);
  CHECK(weyl_dim(build_root_datum("C2"), Weight{0, 1}) == 5);
  CHECK(weyl_dim(build_root_datum("E8"), Weight{0, 0, 0, 0, 0, 0, 0, 1}) == 248);
  CHECK(weyl_dim(build_root_datum("G2"), Weight{1, 0}) == 7);
  CHECK_THROWS_AS(weyl_dim(a2, Weight{-1, 0}), NotDominant);
}

TEST_CASE("dominance order") {
  auto a2 = build_root_datum("A2");
  CHECK(dominates(a2, Weight{1, 1}, Weight{0, 0}));
  CHECK(dominates(a2, Weight{2, 0}, Weight{0, 1}));
  CHECK_FALSE(dominates(a2, Weight{1, 0}, Weight{0, 1}));
  CHECK_FALSE(dominates(a2, Weight{0, 0}, Weight{1, 1}));
}
