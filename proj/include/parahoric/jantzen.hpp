#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "parahoric/charring.hpp"

namespace parahoric::jantzen {

using charring::Character;
using charring::DatumPtr;
using charring::DominantMap;
using charring::VirtualChiSum;
using rootdata::Root;
using rootdata::RootDatum;

bool is_prime(std::int64_t p);
/// Throws NotPrime.
void require_prime(std::int64_t p);

/// p-adic valuation of a nonzero integer.
std::int64_t valuation(std::int64_t p, std::int64_t n);

enum class Provenance { LowestAlcove, JantzenResolved };
const char* to_string(Provenance p);

struct LedgerEntry {
  Character ch;
  Provenance provenance;
  DominantMap radical; // simple factors of rad V(lambda) with multiplicity
  friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

/// Known simple characters at a fixed prime.  Values are only ever added;
/// merge() unions two ledgers and refuses conflicting entries.
class SimpleLedger {
public:
  explicit SimpleLedger(std::int64_t p);

  std::int64_t prime() const { return p_; }
  const LedgerEntry* find(const Weight& lambda) const;
  const std::map<Weight, LedgerEntry>& entries() const { return entries_; }

  /// Throws Error if lambda is already present with a different entry.
  void insert(const Weight& lambda, LedgerEntry entry);
  void merge(const SimpleLedger& other);

private:
  std::int64_t p_;
  std::map<Weight, LedgerEntry> entries_;
};

struct JantzenReport {
  Weight lambda;
  std::int64_t p = 0;
  VirtualChiSum J;
  std::optional<Weight> radical;       // set when rad V(lambda) is a single simple module
  std::optional<Character> chL;        // nullopt means undetermined
  std::optional<Provenance> provenance;
};

/// s_{alpha,n} . lambda = lambda - (<lambda + rho, alpha^vee> - n) alpha.
Weight dot_reflect(const RootDatum& rd, const Root& alpha, std::int64_t n, const Weight& lambda);

/// <lambda + rho, alpha^vee>.
std::int64_t shifted_pairing(const RootDatum& rd, const Weight& lambda, const Root& alpha);

/// Sum over alpha > 0 and 0 < mp < <lambda + rho, alpha^vee> of
/// nu_p(mp) chi(s_{alpha,mp} . lambda).  Throws NotDominant, NotPrime.
VirtualChiSum jantzen_sum(const RootDatum& rd, std::int64_t p, const Weight& lambda);

/// <lambda + rho, alpha^vee> <= p for every positive root.
bool lowest_alcove_test(const RootDatum& rd, std::int64_t p, const Weight& lambda);

/*
  Character of L(lambda) when it follows from the ledger: lambda in the
  closure of the lowest alcove, or J(lambda) equal to a single known simple
  character (then rad V(lambda) is that simple).  An empty Jantzen sum means
  V(lambda) is already simple.  Weights in the support of J are resolved
  first.  Returns the report and the ledger extended by what was learned.
*/
std::pair<JantzenReport, SimpleLedger> resolve_simple(const DatumPtr& rd, std::int64_t p, const Weight& lambda,
                                                      SimpleLedger ledger);

/// Multiplicity of L(gamma) in the (semisimple) rad V(tau) recorded in the ledger.
/// Throws HypothesisUnmet when gamma > tau or the radical is not known.
std::int64_t ext1_dim(const RootDatum& rd, std::int64_t p, const Weight& tau, const Weight& gamma,
                      const SimpleLedger& ledger);

/// dim Ext^2(L(lambda), L(gamma)) read off as dim Ext^1(L(mu), L(gamma)) when
/// rad V(lambda) = L(mu) and L(gamma) = H^0(gamma).  Throws HypothesisUnmet.
std::int64_t ext2_chain(const RootDatum& rd, std::int64_t p, const Weight& lambda, const Weight& mu,
                        const Weight& gamma, const SimpleLedger& ledger);

} // namespace parahoric::jantzen
