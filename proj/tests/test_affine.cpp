#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "parahoric/affine.hpp"
#include "parahoric/errors.hpp"

using namespace parahoric;
using namespace parahoric::affine;
using rootdata::build_root_datum;

namespace {

const std::vector<const char*> kRankAtMost4 = {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3",
                                               "C4", "D4", "G2", "F4", "A1xA1", "A1xA2", "A1xA1+T1"};

std::size_t root_index(const RootDatum& rd, const Weight& w) { return *rd.find_root(w); }

std::multiset<Weight> as_multiset(const std::vector<Weight>& ws) { return {ws.begin(), ws.end()}; }

} // namespace

TEST_CASE("extended_basis marks") {
  auto a1 = extended_basis(build_root_datum("A1"));
  CHECK(a1.components[0].marks == std::vector<std::int64_t>{1, 1});
  CHECK(a1.components[0].ell == 2);

  auto c2 = extended_basis(build_root_datum("C2"));
  CHECK(c2.components[0].marks == std::vector<std::int64_t>{2, 1, 1});
  CHECK(c2.components[0].ell == 4);

  CHECK(extended_basis(build_root_datum("G2")).components[0].ell == 6);
  CHECK(extended_basis(build_root_datum("A2")).components[0].ell == 3);
  CHECK(extended_basis(build_root_datum("F4")).components[0].ell == 12);
  CHECK(extended_basis(build_root_datum("E8")).components[0].ell == 30);
  CHECK_THROWS(extended_basis(build_root_datum("T2")));
}

TEST_CASE("affine_decompose") {
  auto a1 = build_root_datum("A1");
  auto b1 = extended_basis(a1);
  const auto a = a1.simple_indices(0)[0];
  const auto minus_a = root_index(a1, -a1.roots()[a].weight);
  CHECK(affine_decompose(a1, b1, {a, 0}) == std::vector<std::int64_t>{1, 0});
  CHECK(affine_decompose(a1, b1, {minus_a, 0}) == std::vector<std::int64_t>{-1, 0});

  auto a2 = build_root_datum("A2");
  auto b2 = extended_basis(a2);
  const auto minus_theta = b2.components[0].nodes.back().gradient;
  CHECK(affine_decompose(a2, b2, {minus_theta, 1}) == std::vector<std::int64_t>{0, 0, 1});

  // every affine root of small level decomposes sign-coherently and reconstructs
  for (const char* name : {"A3", "B3", "C3", "G2", "F4"}) {
    auto rd = build_root_datum(name);
    auto basis = extended_basis(rd);
    for (std::size_t i = 0; i < rd.roots().size(); ++i)
      for (std::int64_t g = -3; g <= 3; ++g) {
        auto t = affine_decompose(rd, basis, {i, g});
        Weight grad(rd.rank());
        std::int64_t level = 0;
        const auto& nodes = basis.components[0].nodes;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
          grad += t[k] * rd.roots()[nodes[k].gradient].weight;
          level += t[k] * nodes[k].level;
        }
        CHECK(grad == rd.roots()[i].weight);
        CHECK(level == g);
      }
  }
}

TEST_CASE("enumerate_facets counts") {
  CHECK(enumerate_facets(build_root_datum("A1")).size() == 3);
  CHECK(enumerate_facets(build_root_datum("A2")).size() == 7);
  CHECK(enumerate_facets(build_root_datum("C2")).size() == 7);
  CHECK(enumerate_facets(build_root_datum("A1xA1")).size() == 9);
  CHECK(enumerate_facets(build_root_datum("F4")).size() == 31);
}

TEST_CASE("FacetSpec grammar") {
  auto rd = build_root_datum("A1xA2");
  auto basis = extended_basis(rd);
  auto f = FacetSpec::parse("1,0/2", basis);
  CHECK(f.theta == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
  CHECK(f.to_string() == "0,1/2");
  CHECK_THROWS_AS(FacetSpec::parse("0,1", basis), ParseError);
  CHECK_THROWS_AS(FacetSpec::parse("0/", basis), ParseError);
  CHECK_THROWS_AS(FacetSpec::parse("0/3", basis), ParseError);
  CHECK_THROWS_AS(FacetSpec::parse("0,0/1", basis), ParseError);
  CHECK_THROWS_AS(FacetSpec::parse("x/1", basis), ParseError);
}

TEST_CASE("ell_theta") {
  auto a1 = build_root_datum("A1");
  auto b1 = extended_basis(a1);
  const auto a = a1.simple_indices(0)[0];
  CHECK(ell_theta(a1, b1, FacetSpec::parse("0,1", b1), {a, 0}) == 1);
  CHECK(ell_theta(a1, b1, FacetSpec::parse("1", b1), {a, 0}) == 0);

  auto a2 = build_root_datum("A2");
  auto b2 = extended_basis(a2);
  const auto theta_root = root_index(a2, Weight{1, 1});
  CHECK(ell_theta(a2, b2, FacetSpec::parse("0,2", b2), {theta_root, 0}) == 1);

  // shifting the level by one adds the depth
  for (const char* name : {"B3", "G2", "A1xA2"}) {
    auto rd = build_root_datum(name);
    auto basis = extended_basis(rd);
    for (const auto& f : enumerate_facets(rd)) {
      auto d = facet_depth(basis, f);
      for (std::size_t i = 0; i < rd.roots().size(); ++i)
        CHECK(ell_theta(rd, basis, f, {i, 1}) ==
              ell_theta(rd, basis, f, {i, 0}) + d[static_cast<std::size_t>(rd.roots()[i].component)]);
    }
  }
}

TEST_CASE("canonical_rep window") {
  auto a1 = build_root_datum("A1");
  auto b1 = extended_basis(a1);
  const auto a = a1.simple_indices(0)[0];
  const auto minus_a = root_index(a1, -a1.roots()[a].weight);

  auto hyperspecial = FacetSpec::parse("1", b1);
  CHECK(canonical_rep(a1, b1, hyperspecial, a) == AffineRoot{a, 0});

  auto other_vertex = FacetSpec::parse("0", b1);
  CHECK(canonical_rep(a1, b1, other_vertex, a) == AffineRoot{a, -1});
  CHECK(ell_theta(a1, b1, other_vertex, {a, -1}) == 0);

  auto alcove = FacetSpec::parse("0,1", b1);
  CHECK(canonical_rep(a1, b1, alcove, a) == AffineRoot{a, 0});
  CHECK(canonical_rep(a1, b1, alcove, minus_a) == AffineRoot{minus_a, 1});
  CHECK(ell_theta(a1, b1, alcove, {minus_a, 1}) == 1);
}

TEST_CASE("parahoric_model examples") {
  auto a1 = build_root_datum("A1");
  auto b1 = extended_basis(a1);

  auto hyper = parahoric_model(a1, FacetSpec::parse("1", b1));
  CHECK(hyper.quotient_roots.size() == 2);
  CHECK(hyper.dim_R == 0);
  CHECK(hyper.layers.empty());
  CHECK(hyper.quotient_datum.type().to_string() == "A1");
  CHECK(hyper.psi_literal_agrees);

  auto iwahori = parahoric_model(a1, FacetSpec::parse("0,1", b1));
  CHECK(iwahori.quotient_roots.empty());
  CHECK(iwahori.quotient_datum.type().to_string() == "T1");
  CHECK(iwahori.depth == std::vector<std::int64_t>{2});
  REQUIRE(iwahori.layers.size() == 1); // R_{d-1} = R_1 = 1
  CHECK(as_multiset(iwahori.layer_weights(1)) == std::multiset<Weight>{Weight{2}, Weight{-2}});
  CHECK(iwahori.dim_R == 2);

  auto a2 = build_root_datum("A2");
  auto b2 = extended_basis(a2);
  auto m = parahoric_model(a2, FacetSpec::parse("0,2", b2));
  const Weight alpha1{2, -1}, alpha2{-1, 2};
  std::set<Weight> q;
  for (auto i : m.quotient_roots) q.insert(a2.roots()[i].weight);
  CHECK(q == std::set<Weight>{alpha2, -alpha2});
  REQUIRE(m.layers.size() == 1);
  CHECK(as_multiset(m.layer_weights(1)) ==
        std::multiset<Weight>{alpha1, alpha1 + alpha2, -alpha1, -(alpha1 + alpha2)});
  CHECK(m.dim_R == 4);
  CHECK(m.quotient_roots.size() + static_cast<std::size_t>(m.dim_R) == 6);
}

TEST_CASE("psi_literal_agrees fails exactly when an affine node is missing") {
  auto a1 = build_root_datum("A1");
  auto b1 = extended_basis(a1);
  CHECK_FALSE(parahoric_model(a1, FacetSpec::parse("0", b1)).psi_literal_agrees);
}

TEST_CASE("quotient_by_deletion examples") {
  auto a2 = build_root_datum("A2");
  auto b2 = extended_basis(a2);
  CHECK(quotient_by_deletion(a2, FacetSpec::parse("2", b2)).to_string() == "A2");
  // every vertex of the A2 alcove is hyperspecial: the two surviving nodes stay joined
  CHECK(quotient_by_deletion(a2, FacetSpec::parse("0", b2)).to_string() == "A2");
  CHECK(parahoric_model(a2, FacetSpec::parse("0", b2)).quotient_datum.type().to_string() == "A2");

  auto c2 = build_root_datum("C2");
  auto bc = extended_basis(c2);
  // deleting the short (middle) node disconnects the extended diagram
  CHECK(quotient_by_deletion(c2, FacetSpec::parse("0", bc)).to_string() == "A1xA1");
  CHECK(quotient_by_deletion(c2, FacetSpec::parse("1", bc)).to_string() == "C2");
  CHECK(quotient_by_deletion(c2, FacetSpec::parse("0,1,2", bc)).to_string() == "T2");
}

TEST_CASE("facet sweep invariants, rank <= 4") {
  for (const char* name : kRankAtMost4) {
    CAPTURE(name);
    auto rd = build_root_datum(name);
    auto basis = extended_basis(rd);
    for (const auto& f : enumerate_facets(rd)) {
      CAPTURE(f.to_string());
      auto m = parahoric_model(rd, f);
      CHECK(m.quotient_roots.size() + static_cast<std::size_t>(m.dim_R) == rd.roots().size());

      std::set<Weight> q;
      for (auto i : m.quotient_roots) q.insert(rd.roots()[i].weight);
      for (const auto& a : q) {
        CHECK(q.contains(-a));
        for (const auto& b : q)
          if (rd.find_root(a + b)) CHECK(q.contains(a + b));
      }
      // the quotient datum regenerates exactly Phi_Theta
      std::set<Weight> regenerated;
      for (const auto& r : m.quotient_datum.roots()) regenerated.insert(r.weight);
      CHECK(regenerated == q);

      CHECK(rootdata::same_type(quotient_by_deletion(rd, f), m.quotient_datum.type()));

      const auto max_depth = *std::max_element(m.depth.begin(), m.depth.end());
      CHECK(static_cast<std::int64_t>(m.layers.size()) <= std::max<std::int64_t>(max_depth - 1, 0));

      bool all_affine = true;
      for (std::size_t c = 0; c < basis.components.size(); ++c)
        all_affine = all_affine && f.contains(c, basis.components[c].affine_node());
      CHECK(m.psi_literal_agrees == all_affine);
      if (all_affine)
        for (auto i : rd.positive_roots()) CHECK(canonical_rep(rd, basis, f, i).level == 0);

      // ell_theta vanishes exactly on the affine roots that vanish on the facet
      auto x = facet_barycenter(rd, basis, f);
      for (std::size_t i = 0; i < rd.roots().size(); ++i)
        for (std::int64_t g = -2; g <= 2; ++g) {
          const bool zero_ell = ell_theta(rd, basis, f, {i, g}) == 0;
          const bool vanishes = evaluate(rd, x, {i, g}).numerator() == 0;
          CHECK(zero_ell == vanishes);
        }
    }
  }
}

TEST_CASE("barycenter lies in the open facet") {
  auto rd = build_root_datum("G2");
  auto basis = extended_basis(rd);
  for (const auto& f : enumerate_facets(rd)) {
    auto x = facet_barycenter(rd, basis, f);
    for (std::size_t k = 0; k < basis.components[0].nodes.size(); ++k) {
      auto v = evaluate(rd, x, basis.components[0].nodes[k]);
      if (f.contains(0, k)) CHECK(v > Rational(0));
      else CHECK(v.numerator() == 0);
    }
  }
}
