#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "parahoric/rootdata.hpp"

namespace parahoric::charring {

using rootdata::RootDatum;
using DatumPtr = std::shared_ptr<const RootDatum>;

inline DatumPtr share(RootDatum rd) { return std::make_shared<const RootDatum>(std::move(rd)); }

/// Dominant weight -> multiplicity.  A W-invariant element of Z[X] is
/// determined by its restriction to the dominant cone.
using DominantMap = std::map<Weight, std::int64_t>;

/*
  Character of a finite-dimensional module: W-invariant, stored on the
  dominant cone only.  The full support is the union of the W-orbits of the
  stored keys.
*/
class Character {
public:
  explicit Character(DatumPtr rd);
  /// Throws Error unless every key is dominant and every value positive.
  Character(DatumPtr rd, DominantMap mult);

  /// From a full weight multiset; throws Error unless it is W-invariant.
  static Character from_weights(DatumPtr rd, const std::vector<Weight>& weights);

  const RootDatum& datum() const { return *rd_; }
  const DatumPtr& datum_ptr() const { return rd_; }
  const DominantMap& dominant() const { return mult_; }
  bool empty() const { return mult_.empty(); }

  /// Multiplicity of an arbitrary weight.
  std::int64_t multiplicity(const Weight& w) const;

  /// Full support with multiplicities, sorted by weight.
  std::vector<std::pair<Weight, std::int64_t>> expand() const;

  friend bool operator==(const Character& a, const Character& b) {
    return a.rd_->key() == b.rd_->key() && a.mult_ == b.mult_;
  }

private:
  DatumPtr rd_;
  DominantMap mult_;
};

/// Integer combination of the chi(mu) basis, keyed by dominant mu.
struct VirtualChiSum {
  DominantMap coeffs;

  bool nonnegative() const;
  bool empty() const { return coeffs.empty(); }
  void add(const Weight& w, std::int64_t c);
  friend bool operator==(const VirtualChiSum&, const VirtualChiSum&) = default;
};

/// Weyl character chi(lambda) by Freudenthal's recursion.  Throws NotDominant.
Character chi_char(const DatumPtr& rd, const Weight& lambda);

BigInt dim(const Character& ch);

/// Throws DatumMismatch.
Character add(const Character& a, const Character& b);
Character scale(const Character& ch, std::int64_t k);
/// a - b when that is a genuine character; nullopt otherwise.  Throws DatumMismatch.
std::optional<Character> subtract(const Character& a, const Character& b);

Character tensor(const Character& a, const Character& b);
Character dual(const Character& ch);
Character exterior_square(const Character& ch);

struct Normalized {
  int sign;
  Weight weight;
  friend bool operator==(const Normalized&, const Normalized&) = default;
};

/// chi(mu) for arbitrary mu rewritten as +-chi(w . mu) with w . mu dominant;
/// nullopt when mu + rho is singular.
std::optional<Normalized> chi_normalize(const RootDatum& rd, const Weight& mu);

VirtualChiSum chi_expand(const Character& ch);

/// Sum c * chi(mu) as a dominant map (possibly with negative entries).
DominantMap chi_combination(const DatumPtr& rd, const VirtualChiSum& sum);
/// As above, but must be a genuine character; throws Error otherwise.
Character to_character(const DatumPtr& rd, const VirtualChiSum& sum);

/*
  Memo table for chi_char, keyed by (datum key, lambda).  Append-only and
  guarded by a mutex, so one instance can be shared between threads.  With a
  directory set, entries are also written to and read from
  <dir>/<datum hash>/<lambda>.json in the character JSON format.
*/
class FreudenthalCache {
public:
  std::optional<DominantMap> find(const RootDatum& rd, const Weight& lambda);
  void insert(const RootDatum& rd, const Weight& lambda, const DominantMap& mult);

  void set_enabled(bool on);
  bool enabled() const;
  void set_directory(std::optional<std::filesystem::path> dir);
  void clear();
  std::size_t size() const;

  static FreudenthalCache& global();

private:
  std::optional<std::filesystem::path> file_for(const RootDatum& rd, const Weight& lambda) const;

  mutable std::mutex mutex_;
  bool enabled_ = true;
  std::optional<std::filesystem::path> dir_;
  std::map<std::string, std::map<Weight, DominantMap>> table_;
};

/// Stable 64-bit FNV-1a hash rendered in hex; used to name cache directories.
std::string stable_hash(const std::string& text);

} // namespace parahoric::charring
