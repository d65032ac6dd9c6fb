#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "parahoric/affine.hpp"
#include "parahoric/jantzen.hpp"
#include "parahoric/levicert.hpp"

// JSON forms of the module results.  Each record is a plain value that
// serializes losslessly: from_json(to_json(x)) == x.
namespace parahoric::report {

using Json = nlohmann::ordered_json;

extern const char* const kToolVersion;

struct LayerRecord {
  std::int64_t j = 0;
  std::vector<Weight> weights;
  std::int64_t dim = 0;
  friend bool operator==(const LayerRecord&, const LayerRecord&) = default;
};

struct ParahoricRecord {
  std::string type;
  std::string theta;
  std::vector<std::int64_t> depth;
  std::string quotient_type;
  std::vector<Weight> quotient_roots;
  std::vector<LayerRecord> layers;
  std::int64_t dim_R = 0;
  bool psi_literal_agrees = false;
  friend bool operator==(const ParahoricRecord&, const ParahoricRecord&) = default;
};

ParahoricRecord make_record(const affine::ParahoricModel& model);
Json to_json(const ParahoricRecord& r);
ParahoricRecord parahoric_from_json(const Json& j);

Json to_json(const levicert::LeviCertificate& c);
levicert::LeviCertificate certificate_from_json(const Json& j);

struct JantzenRecord {
  Weight lambda;
  std::int64_t p = 0;
  charring::DominantMap J;
  std::optional<Weight> radical;
  std::optional<std::string> chL_dim; // decimal
  std::optional<std::string> provenance;
  friend bool operator==(const JantzenRecord&, const JantzenRecord&) = default;
};

JantzenRecord make_record(const jantzen::JantzenReport& r);
Json to_json(const JantzenRecord& r);
JantzenRecord jantzen_from_json(const Json& j);

Json to_json(const levicert::UnitaryReport& r);

Json dominant_map_json(const charring::DominantMap& m);
charring::DominantMap dominant_map_from_json(const Json& j);
Json weight_json(const Weight& w);
Weight weight_from_json(const Json& j);

struct ReportEnvelope {
  std::string command;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::string tool_version = kToolVersion;
  std::int64_t elapsed_ms = 0;
  friend bool operator==(const ReportEnvelope&, const ReportEnvelope&) = default;
};

Json to_json(const ReportEnvelope& e);
ReportEnvelope envelope_from_json(const Json& j);

} // namespace parahoric::report
