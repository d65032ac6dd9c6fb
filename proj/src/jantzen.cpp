#include "parahoric/jantzen.hpp"

#include "parahoric/errors.hpp"

namespace parahoric::jantzen {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
}

std::int64_t valuation(std::int64_t p, std::int64_t n) {
  std::int64_t v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

const char* to_string(Provenance p) {
  return p == Provenance::LowestAlcove ? "LowestAlcove" : "JantzenResolved";
}

// --------------------------------------------------------------------- ledger

SimpleLedger::SimpleLedger(std::int64_t p) : p_(p) { require_prime(p); }

const LedgerEntry* SimpleLedger::find(const Weight& lambda) const {
  auto it = entries_.find(lambda);
  return it == entries_.end() ? nullptr : &it->second;
}

void SimpleLedger::insert(const Weight& lambda, LedgerEntry entry) {
  auto [it, inserted] = entries_.try_emplace(lambda, entry);
  if (!inserted && !(it->second == entry)) throw Error("ledger conflict at " + parahoric::to_string(lambda));
}

void SimpleLedger::merge(const SimpleLedger& other) {
  if (other.p_ != p_) throw Error("cannot merge ledgers for different primes");
  for (const auto& [w, e] : other.entries_) insert(w, e);
}

// ---------------------------------------------------------------- dot action

std::int64_t shifted_pairing(const RootDatum& rd, const Weight& lambda, const Root& alpha) {
  return rootdata::pair(rd, lambda, alpha) + rd.rho_pairing(alpha);
}

Weight dot_reflect(const RootDatum& rd, const Root& alpha, std::int64_t n, const Weight& lambda) {
  return lambda - (shifted_pairing(rd, lambda, alpha) - n) * alpha.weight;
}

VirtualChiSum jantzen_sum(const RootDatum& rd, std::int64_t p, const Weight& lambda) {
  require_prime(p);
  if (!rootdata::is_dominant(rd, lambda))
    throw NotDominant("jantzen_sum: weight " + parahoric::to_string(lambda) + " is not dominant");
  VirtualChiSum J;
  for (auto i : rd.positive_roots()) {
    const Root& alpha = rd.roots()[i];
    const auto top = shifted_pairing(rd, lambda, alpha);
    for (std::int64_t mp = p; mp < top; mp += p) {
      if (auto n = charring::chi_normalize(rd, dot_reflect(rd, alpha, mp, lambda)))
        J.add(n->weight, n->sign * valuation(p, mp));
    }
  }
  return J;
}

bool lowest_alcove_test(const RootDatum& rd, std::int64_t p, const Weight& lambda) {
  for (auto i : rd.positive_roots())
    if (shifted_pairing(rd, lambda, rd.roots()[i]) > p) return false;
  return true;
}

// ----------------------------------------------------------------- resolution

namespace {

JantzenReport report_from(const Weight& lambda, std::int64_t p, VirtualChiSum J, const LedgerEntry& e) {
  JantzenReport r{lambda, p, std::move(J), std::nullopt, e.ch, e.provenance};
  if (e.radical.size() == 1 && e.radical.begin()->second == 1) r.radical = e.radical.begin()->first;
  return r;
}

} // namespace

std::pair<JantzenReport, SimpleLedger> resolve_simple(const DatumPtr& rd, std::int64_t p, const Weight& lambda,
                                                      SimpleLedger ledger) {
  if (ledger.prime() != p) throw Error("ledger prime differs from p");
  if (!rootdata::is_dominant(*rd, lambda))
    throw NotDominant("resolve_simple: weight " + parahoric::to_string(lambda) + " is not dominant");

  if (lowest_alcove_test(*rd, p, lambda)) {
    LedgerEntry e{charring::chi_char(rd, lambda), Provenance::LowestAlcove, {}};
    ledger.insert(lambda, e);
    return {report_from(lambda, p, jantzen_sum(*rd, p, lambda), e), std::move(ledger)};
  }

  VirtualChiSum J = jantzen_sum(*rd, p, lambda);
  if (const auto* known = ledger.find(lambda)) return {report_from(lambda, p, J, *known), std::move(ledger)};

  if (J.empty()) {
    LedgerEntry e{charring::chi_char(rd, lambda), Provenance::JantzenResolved, {}};
    ledger.insert(lambda, e);
    return {report_from(lambda, p, J, e), std::move(ledger)};
  }

  JantzenReport undetermined{lambda, p, J, std::nullopt, std::nullopt, std::nullopt};
  // J has to be a genuine character before it can be a simple one
  const DominantMap target = charring::chi_combination(rd, J);
  for (const auto& [w, c] : target)
    if (c < 0) return {undetermined, std::move(ledger)};

  for (const auto& [mu, c] : J.coeffs) {
    if (mu == lambda) continue;
    ledger = resolve_simple(rd, p, mu, std::move(ledger)).second;
    const auto* e = ledger.find(mu);
    if (!e || e->ch.dominant() != target) continue;
    auto diff = charring::subtract(charring::chi_char(rd, lambda), e->ch);
    if (!diff) continue;
    LedgerEntry mine{*diff, Provenance::JantzenResolved, DominantMap{{mu, 1}}};
    ledger.insert(lambda, mine);
    return {report_from(lambda, p, J, mine), std::move(ledger)};
  }
  return {undetermined, std::move(ledger)};
}

std::int64_t ext1_dim(const RootDatum& rd, std::int64_t p, const Weight& tau, const Weight& gamma,
                      const SimpleLedger& ledger) {
  require_prime(p);
  if (ledger.prime() != p) throw Error("ledger prime differs from p");
  if (gamma != tau && rootdata::dominates(rd, gamma, tau))
    throw HypothesisUnmet("ext1_dim: " + parahoric::to_string(gamma) + " > " + parahoric::to_string(tau));
  const auto* e = ledger.find(tau);
  if (!e) throw HypothesisUnmet("ext1_dim: rad V(" + parahoric::to_string(tau) + ") is not known");
  if (e->radical.size() > 1) throw HypothesisUnmet("ext1_dim: rad V(" + parahoric::to_string(tau) + ") not known to be semisimple");
  auto it = e->radical.find(gamma);
  return it == e->radical.end() ? 0 : it->second;
}

std::int64_t ext2_chain(const RootDatum& rd, std::int64_t p, const Weight& lambda, const Weight& mu,
                        const Weight& gamma, const SimpleLedger& ledger) {
  const auto* el = ledger.find(lambda);
  if (!el || el->radical != DominantMap{{mu, 1}})
    throw HypothesisUnmet("ext2_chain: ledger does not certify rad V(" + parahoric::to_string(lambda) + ") = L(" +
                          parahoric::to_string(mu) + ")");
  const auto* eg = ledger.find(gamma);
  if (!eg || eg->provenance != Provenance::LowestAlcove)
    throw HypothesisUnmet("ext2_chain: L(" + parahoric::to_string(gamma) + ") is not known to equal H^0");
  return ext1_dim(rd, p, mu, gamma, ledger);
}

} // namespace parahoric::jantzen
