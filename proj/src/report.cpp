#include "parahoric/report.hpp"

#include "parahoric/errors.hpp"

#ifndef PARAHORIC_VERSION
#define PARAHORIC_VERSION "0.0.0"
#endif

namespace parahoric::report {

const char* const kToolVersion = PARAHORIC_VERSION;

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

levicert::Existence existence_from(const std::string& s) {
  if (s == "Certified") return levicert::Existence::Certified;
  if (s == "Inconclusive") return levicert::Existence::Inconclusive;
  throw ParseError("unknown existence verdict '" + s + "'");
}

levicert::Conjugacy conjugacy_from(const std::string& s) {
  if (s == "Certified") return levicert::Conjugacy::Certified;
  if (s == "ConditionalOnExistence") return levicert::Conjugacy::ConditionalOnExistence;
  if (s == "Inconclusive") return levicert::Conjugacy::Inconclusive;
  throw ParseError("unknown conjugacy verdict '" + s + "'");
}

} // namespace

Json weight_json(const Weight& w) { return Json(w.vec()); }

Weight weight_from_json(const Json& j) { return Weight(j.get<std::vector<std::int64_t>>()); }

Json dominant_map_json(const charring::DominantMap& m) {
  Json j = Json::object();
  for (const auto& [w, c] : m) j[to_string(w)] = c;
  return j;
}

charring::DominantMap dominant_map_from_json(const Json& j) {
  charring::DominantMap m;
  for (const auto& [k, v] : j.items()) m.emplace(parse_weight(k), v.get<std::int64_t>());
  return m;
}

// ------------------------------------------------------------------ parahoric

ParahoricRecord make_record(const affine::ParahoricModel& model) {
  ParahoricRecord r;
  r.type = model.ambient.type().to_string();
  r.theta = model.theta.to_string();
  r.depth = model.depth;
  r.quotient_type = model.quotient_datum.type().to_string();
  for (auto i : model.quotient_roots) r.quotient_roots.push_back(model.ambient.roots()[i].weight);
  for (std::size_t j = 1; j <= model.layers.size(); ++j) {
    auto ws = model.layer_weights(j);
    const auto n = static_cast<std::int64_t>(ws.size());
    r.layers.push_back({static_cast<std::int64_t>(j), std::move(ws), n});
  }
  r.dim_R = model.dim_R;
  r.psi_literal_agrees = model.psi_literal_agrees;
  return r;
}

Json to_json(const ParahoricRecord& r) {
  Json j;
  j["type"] = r.type;
  j["theta"] = r.theta;
  j["depth"] = r.depth;
  j["quotient_type"] = r.quotient_type;
  j["quotient_roots"] = Json::array();
  for (const auto& w : r.quotient_roots) j["quotient_roots"].push_back(weight_json(w));
  j["layers"] = Json::array();
  for (const auto& l : r.layers) {
    Json lj;
    lj["j"] = l.j;
    lj["weights"] = Json::array();
    for (const auto& w : l.weights) lj["weights"].push_back(weight_json(w));
    lj["dim"] = l.dim;
    j["layers"].push_back(std::move(lj));
  }
  j["dim_R"] = r.dim_R;
  j["psi_literal_agrees"] = r.psi_literal_agrees;
  return j;
}

ParahoricRecord parahoric_from_json(const Json& j) {
  return guarded("parahoric model", [&] {
    ParahoricRecord r;
    r.type = j.at("type").get<std::string>();
    r.theta = j.at("theta").get<std::string>();
    r.depth = j.at("depth").get<std::vector<std::int64_t>>();
    r.quotient_type = j.at("quotient_type").get<std::string>();
    for (const auto& w : j.at("quotient_roots")) r.quotient_roots.push_back(weight_from_json(w));
    for (const auto& lj : j.at("layers")) {
      LayerRecord l;
      l.j = lj.at("j").get<std::int64_t>();
      for (const auto& w : lj.at("weights")) l.weights.push_back(weight_from_json(w));
      l.dim = lj.at("dim").get<std::int64_t>();
      r.layers.push_back(std::move(l));
    }
    r.dim_R = j.at("dim_R").get<std::int64_t>();
    r.psi_literal_agrees = j.at("psi_literal_agrees").get<bool>();
    return r;
  });
}

// ---------------------------------------------------------------- certificate

Json to_json(const levicert::LeviCertificate& c) {
  Json j;
  j["existence"] = levicert::to_string(c.existence);
  j["conjugacy"] = levicert::to_string(c.conjugacy);
  j["rules"] = Json::array();
  for (const auto& r : c.rules)
    j["rules"].push_back(Json{{"id", r.id}, {"hypothesis", r.hypothesis}, {"values", r.values}, {"satisfied", r.satisfied}});
  j["notes"] = c.notes;
  return j;
}

levicert::LeviCertificate certificate_from_json(const Json& j) {
  return guarded("certificate", [&] {
    levicert::LeviCertificate c;
    c.existence = existence_from(j.at("existence").get<std::string>());
    c.conjugacy = conjugacy_from(j.at("conjugacy").get<std::string>());
    for (const auto& rj : j.at("rules"))
      c.rules.push_back({rj.at("id").get<std::string>(), rj.at("hypothesis").get<std::string>(), rj.at("values"),
                         rj.at("satisfied").get<bool>()});
    c.notes = j.at("notes").get<std::vector<std::string>>();
    return c;
  });
}

// -------------------------------------------------------------------- jantzen

JantzenRecord make_record(const jantzen::JantzenReport& r) {
  JantzenRecord out{r.lambda, r.p, r.J.coeffs, r.radical, std::nullopt, std::nullopt};
  if (r.chL) out.chL_dim = charring::dim(*r.chL).str();
  if (r.provenance) out.provenance = jantzen::to_string(*r.provenance);
  return out;
}

Json to_json(const JantzenRecord& r) {
  Json j;
  j["lambda"] = weight_json(r.lambda);
  j["p"] = r.p;
  j["J"] = dominant_map_json(r.J);
  j["radical"] = r.radical ? weight_json(*r.radical) : Json(nullptr);
  // dimensions can exceed 64 bits, so they travel as decimal strings
  j["chL_dim"] = r.chL_dim ? Json(*r.chL_dim) : Json(nullptr);
  j["provenance"] = r.provenance ? Json(*r.provenance) : Json(nullptr);
  return j;
}

JantzenRecord jantzen_from_json(const Json& j) {
  return guarded("jantzen report", [&] {
    JantzenRecord r;
    r.lambda = weight_from_json(j.at("lambda"));
    r.p = j.at("p").get<std::int64_t>();
    r.J = dominant_map_from_json(j.at("J"));
    if (!j.at("radical").is_null()) r.radical = weight_from_json(j.at("radical"));
    if (!j.at("chL_dim").is_null()) r.chL_dim = j.at("chL_dim").get<std::string>();
    if (!j.at("provenance").is_null()) r.provenance = j.at("provenance").get<std::string>();
    return r;
  });
}

// -------------------------------------------------------------------- unitary

Json to_json(const levicert::UnitaryReport& r) {
  Json j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["dim_exterior_square"] = r.dim_exterior_square;
  j["expansion"] = dominant_map_json(r.expansion.coeffs);
  j["dim_W0"] = r.dim_W0;
  j["weyl_dim_w2"] = r.weyl_dim_w2;
  j["trivial_summand_in_W0"] = r.trivial_summand_in_W0;
  j["existence"] = r.existence;
  j["conjugacy"] = r.conjugacy;
  j["certificate"] = to_json(r.certificate);
  return j;
}

// ------------------------------------------------------------------- envelope

Json to_json(const ReportEnvelope& e) {
  Json j;
  j["command"] = e.command;
  j["inputs"] = e.inputs;
  j["outputs"] = e.outputs;
  j["tool_version"] = e.tool_version;
  j["elapsed_ms"] = e.elapsed_ms;
  return j;
}

ReportEnvelope envelope_from_json(const Json& j) {
  return guarded("report envelope", [&] {
    ReportEnvelope e;
    e.command = j.at("command").get<std::string>();
    e.inputs = j.at("inputs");
    e.outputs = j.at("outputs");
    e.tool_version = j.at("tool_version").get<std::string>();
    e.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
    return e;
  });
}

} // namespace parahoric::report
