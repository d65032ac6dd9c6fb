#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "parahoric/errors.hpp"
#include "parahoric/levicert.hpp"

using namespace parahoric;
using namespace parahoric::levicert;
using affine::FacetSpec;
using rootdata::build_root_datum;

namespace {

SplittingSequence sequence_for(const char* type, const char* theta) {
  auto rd = build_root_datum(type);
  return from_parahoric(affine::parahoric_model(rd, FacetSpec::parse(theta, affine::extended_basis(rd))));
}

const RuleRecord& rule(const LeviCertificate& c, const std::string& id) {
  for (const auto& r : c.rules)
    if (r.id == id) return r;
  throw Error("missing rule " + id);
}

int rank(Existence e) { return e == Existence::Certified ? 1 : 0; }
int rank(Conjugacy c) { return c == Conjugacy::Certified ? 2 : c == Conjugacy::ConditionalOnExistence ? 1 : 0; }

// Recompute each rule's verdict from the evidence it records.
bool evidence_consistent(const RuleRecord& r) {
  const auto& v = r.values;
  if (r.id == "T") return (v["semisimple_rank"] == 0) == r.satisfied;
  const auto bound = v["bound"].get<std::int64_t>();
  if (r.id == "C1") {
    bool ok = true;
    for (const auto& d : v["dims"]) ok = ok && d.get<std::int64_t>() < bound;
    return ok == r.satisfied;
  }
  auto nonneg = [](const nlohmann::ordered_json& ex) {
    for (const auto& [k, c] : ex.items())
      if (c.get<std::int64_t>() < 0) return false;
    return true;
  };
  if (r.id == "E1") return (v["dim_R"].get<std::int64_t>() <= bound && nonneg(v["expansion"])) == r.satisfied;
  if (r.id == "E2") {
    bool ok = true;
    for (std::size_t i = 0; i < v["dims"].size(); ++i)
      ok = ok && v["dims"][i].get<std::int64_t>() <= bound && nonneg(v["expansions"][i]);
    return ok == r.satisfied;
  }
  return false;
}

} // namespace

TEST_CASE("splitting sequences from parahoric models") {
  auto hyper = sequence_for("A1", "1");
  CHECK(hyper.layers.empty());
  CHECK(hyper.total_dim() == 0);

  auto iw = sequence_for("A1", "0,1");
  REQUIRE(iw.layers.size() == 1);
  CHECK(iw.dims == std::vector<std::int64_t>{2});
  CHECK(iw.quotient->semisimple_rank() == 0);

  auto s = sequence_for("A2", "0,2");
  REQUIRE(s.layers.size() == 1);
  CHECK(s.dims[0] == 4);
  auto ex = charring::chi_expand(s.layers[0]);
  CHECK(ex.coeffs.size() == 2);
  for (const auto& [mu, c] : ex.coeffs) {
    CHECK(c == 1);
    CHECK(charring::dim(charring::chi_char(s.quotient, mu)) == 2);
  }
}

TEST_CASE("certificates for the documented examples") {
  auto iw = certify(sequence_for("A1", "0,1"), 5, false);
  CHECK(iw.existence == Existence::Certified);
  CHECK(iw.conjugacy == Conjugacy::Certified);
  CHECK(rule(iw, "T").satisfied);

  auto a2 = certify(sequence_for("A2", "0,2"), 5, false);
  CHECK(a2.existence == Existence::Certified);
  CHECK(a2.conjugacy == Conjugacy::Certified);
  CHECK_FALSE(rule(a2, "T").satisfied);
  CHECK(rule(a2, "C1").satisfied);
  CHECK(rule(a2, "E1").satisfied);
  CHECK(rule(a2, "E2").satisfied);

  auto torus = certify(sequence_for("A2", "0,1,2"), 2, false);
  CHECK(torus.existence == Existence::Certified);
  CHECK(torus.conjugacy == Conjugacy::Certified);
  CHECK(rule(torus, "T").satisfied);
  CHECK_FALSE(rule(torus, "E1").satisfied);

  auto hyper = certify(sequence_for("A1", "1"), 3, false);
  CHECK(hyper.existence == Existence::Certified);
  CHECK(hyper.conjugacy == Conjugacy::Certified);

  // dim 4 > 3 and r = 1 leaves nothing to conclude
  auto small_p = certify(sequence_for("A2", "0,2"), 3, true);
  CHECK(small_p.existence == Existence::Inconclusive);
  CHECK(small_p.conjugacy == Conjugacy::Inconclusive);
  CHECK(small_p.notes.size() >= 2);

  CHECK_THROWS_AS(certify(sequence_for("A2", "0,2"), 4, false), NotPrime);
}

TEST_CASE("conditional conjugacy") {
  // an A1 layer whose chi-expansion is not effective: weights {2,-2} = chi(2) - chi(0)
  auto rd = charring::share(build_root_datum("A1"));
  auto layer = charring::Character::from_weights(rd, {Weight{2}, Weight{-2}});
  auto cert = certify(make_sequence(rd, {layer}), 5, false);
  CHECK(cert.existence == Existence::Inconclusive);
  CHECK(cert.conjugacy == Conjugacy::ConditionalOnExistence);
}

TEST_CASE("rank refinement only for a simple quotient") {
  auto rd = charring::share(build_root_datum("A1xA1"));
  auto layer = charring::chi_char(rd, Weight{1, 1});
  auto plain = certify(make_sequence(rd, {layer}), 3, false);
  auto refined = certify(make_sequence(rd, {layer}), 3, true);
  CHECK(plain == certify(make_sequence(rd, {layer}), 3, false));
  CHECK(refined.existence == plain.existence);
  CHECK(refined.conjugacy == plain.conjugacy);
  CHECK(refined.notes.size() == plain.notes.size() + 1);

  auto c2 = charring::share(build_root_datum("C2"));
  auto w2 = charring::chi_char(c2, Weight{0, 1});
  CHECK_FALSE(rule(certify(make_sequence(c2, {w2}), 5, false), "C1").satisfied);
  CHECK(rule(certify(make_sequence(c2, {w2}), 5, true), "C1").satisfied);
  CHECK(rule(certify(make_sequence(c2, {w2}), 5, false), "E1").satisfied);
}

TEST_CASE("certificate properties over all small facets") {
  std::size_t single_layer_only = 0;
  for (const char* type : {"A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2", "A1xA1", "A1xA2"}) {
    auto rd = build_root_datum(type);
    for (const auto& f : affine::enumerate_facets(rd)) {
      auto seq = from_parahoric(affine::parahoric_model(rd, f));
      for (std::int64_t p : {2, 3, 5, 7}) {
        CAPTURE(type);
        CAPTURE(f.to_string());
        CAPTURE(p);
        auto plain = certify(seq, p, false);
        auto refined = certify(seq, p, true);
        // monotone in the refinement flag
        CHECK(rank(refined.existence) >= rank(plain.existence));
        CHECK(rank(refined.conjugacy) >= rank(plain.conjugacy));
        for (const auto* c : {&plain, &refined}) {
          for (const auto& r : c->rules) CHECK(evidence_consistent(r));
          if (c->existence == Existence::Certified)
            CHECK((rule(*c, "T").satisfied || rule(*c, "E1").satisfied || rule(*c, "E2").satisfied));
          if (c->conjugacy == Conjugacy::Certified) CHECK((rule(*c, "T").satisfied || rule(*c, "C1").satisfied));
          if (rule(*c, "E1").satisfied) {
            CHECK((rule(*c, "E2").satisfied || seq.layers.size() == 1));
            if (!rule(*c, "E2").satisfied) ++single_layer_only;
          }
        }
      }
    }
  }
  MESSAGE("E1 without E2 on a single layer: " << single_layer_only);
}

TEST_CASE("unitary example") {
  for (std::int64_t n = 2; n <= 5; ++n)
    for (std::int64_t p : {3, 5}) {
      CAPTURE(n);
      CAPTURE(p);
      auto rep = unitary_report(n, p);
      Weight w2(static_cast<std::size_t>(n)), zero(static_cast<std::size_t>(n));
      w2[1] = 1;
      CHECK(rep.expansion.coeffs == charring::DominantMap{{zero, 1}, {w2, 1}});
      CHECK(rep.dim_exterior_square == n * (2 * n - 1));
      CHECK(rep.dim_W0 == 2 * n * n - n - 1);
      CHECK(rep.weyl_dim_w2 == rep.dim_W0);
      CHECK(rep.existence);
      CHECK(rep.conjugacy == (n % p != 0));
      CHECK(rep.trivial_summand_in_W0 == (n % p == 0));
    }
  CHECK(unitary_report(2, 3).conjugacy);
  CHECK_FALSE(unitary_report(3, 3).conjugacy);
  CHECK(unitary_report(4, 3).dim_exterior_square == 28);
  CHECK(unitary_report(2, 5).certificate.existence == Existence::Certified);
  CHECK_THROWS(unitary_report(1, 3));
  CHECK_THROWS(unitary_report(2, 2));
  CHECK_THROWS_AS(unitary_report(2, 9), NotPrime);
}
