#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "parahoric/affine.hpp"
#include "parahoric/charring.hpp"

namespace parahoric::levicert {

using charring::Character;
using charring::DatumPtr;
using charring::VirtualChiSum;

/// Layers V_0, ..., V_{n-1} of a linearizable splitting sequence, as
/// characters of the reductive quotient.
struct SplittingSequence {
  DatumPtr quotient;
  std::vector<Character> layers;
  std::vector<std::int64_t> dims;

  std::int64_t total_dim() const;
};

/// Layer j of the model becomes V_{j-1}.
SplittingSequence from_parahoric(const affine::ParahoricModel& model);
SplittingSequence make_sequence(DatumPtr quotient, std::vector<Character> layers);

enum class Existence { Certified, Inconclusive };
enum class Conjugacy { Certified, ConditionalOnExistence, Inconclusive };
const char* to_string(Existence e);
const char* to_string(Conjugacy c);

struct RuleRecord {
  std::string id;          // "T", "C1", "E1", "E2"
  std::string hypothesis;  // human-readable statement of what was checked
  nlohmann::ordered_json values;
  bool satisfied = false;
  friend bool operator==(const RuleRecord&, const RuleRecord&) = default;
};

struct LeviCertificate {
  Existence existence = Existence::Inconclusive;
  Conjugacy conjugacy = Conjugacy::Inconclusive;
  std::vector<RuleRecord> rules;
  std::vector<std::string> notes;
  friend bool operator==(const LeviCertificate&, const LeviCertificate&) = default;
};

/// Evaluates every rule and records it, satisfied or not.  Only sufficient
/// conditions are checked: Inconclusive never means "no".  Throws NotPrime.
LeviCertificate certify(const SplittingSequence& seq, std::int64_t p, bool use_rank_refinement);

struct UnitaryReport {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::int64_t dim_exterior_square = 0;
  VirtualChiSum expansion;          // of the exterior square of the natural module
  std::int64_t dim_W0 = 0;
  std::int64_t weyl_dim_w2 = 0;
  bool trivial_summand_in_W0 = false; // 2n = 0 in k
  bool existence = true;
  bool conjugacy = false;
  LeviCertificate certificate;        // certify on the single layer W^0 = chi(w2)
};

/// Requires n >= 2 and p an odd prime; throws Error / NotPrime otherwise.
UnitaryReport unitary_report(std::int64_t n, std::int64_t p);

} // namespace parahoric::levicert
