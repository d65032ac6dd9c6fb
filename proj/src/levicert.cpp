#include "parahoric/levicert.hpp"

#include "parahoric/errors.hpp"
#include "parahoric/jantzen.hpp"

namespace parahoric::levicert {

namespace {

nlohmann::ordered_json expansion_json(const VirtualChiSum& s) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [w, c] : s.coeffs) j[to_string(w)] = c;
  return j;
}

std::int64_t small_dim(const Character& ch) { return charring::dim(ch).convert_to<std::int64_t>(); }

} // namespace

std::int64_t SplittingSequence::total_dim() const {
  std::int64_t s = 0;
  for (auto d : dims) s += d;
  return s;
}

SplittingSequence make_sequence(DatumPtr quotient, std::vector<Character> layers) {
  SplittingSequence seq{std::move(quotient), std::move(layers), {}};
  for (const auto& ch : seq.layers) {
    if (ch.datum().key() != seq.quotient->key()) throw DatumMismatch("layer is not a character of the quotient");
    seq.dims.push_back(small_dim(ch));
  }
  return seq;
}

SplittingSequence from_parahoric(const affine::ParahoricModel& model) {
  auto q = charring::share(model.quotient_datum);
  std::vector<Character> layers;
  for (std::size_t j = 1; j <= model.layers.size(); ++j)
    layers.push_back(Character::from_weights(q, model.layer_weights(j)));
  return make_sequence(q, std::move(layers));
}

const char* to_string(Existence e) { return e == Existence::Certified ? "Certified" : "Inconclusive"; }

const char* to_string(Conjugacy c) {
  switch (c) {
    case Conjugacy::Certified: return "Certified";
    case Conjugacy::ConditionalOnExistence: return "ConditionalOnExistence";
    case Conjugacy::Inconclusive: return "Inconclusive";
  }
  return "?";
}

LeviCertificate certify(const SplittingSequence& seq, std::int64_t p, bool use_rank_refinement) {
  jantzen::require_prime(p);
  const auto& q = *seq.quotient;
  const auto r = static_cast<std::int64_t>(q.semisimple_rank());
  LeviCertificate cert;

  const bool simple_quotient = q.num_components() == 1;
  const bool refine = use_rank_refinement && simple_quotient;
  if (use_rank_refinement && !simple_quotient)
    cert.notes.push_back("rank refinement ignored: quotient type " + q.type().to_string() +
                         " does not have a simple derived group");
  const std::int64_t bound = refine ? r * p : p;
  const std::string bound_text = refine ? "r*p" : "p";

  auto base_values = [&] {
    nlohmann::ordered_json v;
    v["p"] = p;
    v["r"] = r;
    v["bound"] = bound;
    v["rank_refinement"] = refine;
    return v;
  };

  // (T) diagonalizable quotient
  RuleRecord t{"T", "quotient has semisimple rank 0 (supplementary: higher cohomology of a diagonalizable group vanishes)",
               nlohmann::ordered_json{{"semisimple_rank", r}}, r == 0};
  cert.rules.push_back(t);

  // (C1) each layer below the bound
  RuleRecord c1{"C1", "dim V_i < " + bound_text + " for every layer (H^1 vanishing)", base_values(), true};
  c1.values["dims"] = seq.dims;
  for (auto d : seq.dims) c1.satisfied = c1.satisfied && d < bound;
  cert.rules.push_back(c1);

  // (E1) aggregate
  std::optional<Character> total;
  for (const auto& ch : seq.layers) total = total ? charring::add(*total, ch) : ch;
  VirtualChiSum agg = total ? charring::chi_expand(*total) : VirtualChiSum{};
  RuleRecord e1{"E1", "sum dim V_i <= " + bound_text + " and the sum of the layer characters is a sum of chi(mu_i)",
                base_values(), false};
  e1.values["dim_R"] = seq.total_dim();
  e1.values["expansion"] = expansion_json(agg);
  e1.satisfied = seq.total_dim() <= bound && agg.nonnegative();
  cert.rules.push_back(e1);

  // (E2) layer by layer, via H^2 vanishing for each V_i
  RuleRecord e2{"E2", "dim V_i <= " + bound_text + " and chi-expansion of V_i nonnegative for every layer (H^2 vanishing)",
                base_values(), true};
  e2.values["dims"] = seq.dims;
  e2.values["expansions"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < seq.layers.size(); ++i) {
    auto ex = charring::chi_expand(seq.layers[i]);
    e2.values["expansions"].push_back(expansion_json(ex));
    e2.satisfied = e2.satisfied && seq.dims[i] <= bound && ex.nonnegative();
  }
  cert.rules.push_back(e2);

  const bool exists = t.satisfied || e1.satisfied || e2.satisfied;
  cert.existence = exists ? Existence::Certified : Existence::Inconclusive;
  if (t.satisfied) {
    cert.conjugacy = Conjugacy::Certified;
    cert.notes.push_back("rule T is a supplementary standard fact, outside the C1/E1/E2 criteria");
  } else if (c1.satisfied) {
    cert.conjugacy = exists ? Conjugacy::Certified : Conjugacy::ConditionalOnExistence;
  } else {
    cert.conjugacy = Conjugacy::Inconclusive;
  }

  if (!exists) {
    for (const auto* rule : {&e1, &e2})
      if (!rule->satisfied) {
        cert.notes.push_back("existence inconclusive: first failed hypothesis is " + rule->id + ": " + rule->hypothesis);
        break;
      }
  }
  if (cert.conjugacy == Conjugacy::Inconclusive)
    cert.notes.push_back("conjugacy inconclusive: first failed hypothesis is C1: " + c1.hypothesis);
  return cert;
}

UnitaryReport unitary_report(std::int64_t n, std::int64_t p) {
  if (n < 2) throw Error("unitary_report: n must be at least 2");
  jantzen::require_prime(p);
  if (p == 2) throw Error("unitary_report: p must be odd");

  auto rd = charring::share(rootdata::build_root_datum("C" + std::to_string(n)));
  Weight w1 = rd->zero_weight(), w2 = rd->zero_weight();
  w1[0] = 1;
  w2[1] = 1;

  UnitaryReport rep;
  rep.n = n;
  rep.p = p;
  auto sq = charring::exterior_square(charring::chi_char(rd, w1));
  rep.dim_exterior_square = small_dim(sq);
  rep.expansion = charring::chi_expand(sq);
  rep.dim_W0 = rep.dim_exterior_square - 1;
  rep.weyl_dim_w2 = rootdata::weyl_dim(*rd, w2).convert_to<std::int64_t>();
  rep.trivial_summand_in_W0 = (2 * n) % p == 0;
  rep.existence = true;
  rep.conjugacy = n % p != 0;
  rep.certificate = certify(make_sequence(rd, {charring::chi_char(rd, w2)}), p, false);
  return rep;
}

} // namespace parahoric::levicert
