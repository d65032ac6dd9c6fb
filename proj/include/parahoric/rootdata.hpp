#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "parahoric/lattice.hpp"

namespace parahoric::rootdata {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct Component {
  Family family;
  int rank;
  friend bool operator==(const Component&, const Component&) = default;
  friend auto operator<=>(const Component&, const Component&) = default;
};

std::string to_string(const Component& c);

/// Cartan type of a (possibly non-semisimple) split group: irreducible
/// components plus the rank of a central torus.
struct DynkinSpec {
  std::vector<Component> components;
  int extra_torus_rank = 0;

  /// Grammar: "A2", "C3", "A1xA1+T1", "T2"; case-insensitive.
  static DynkinSpec parse(const std::string& text);

  /// Throws IllegalRank.
  void validate() const;

  /// Isomorphism-class representative: B1,C1 -> A1, B2 -> C2, D2 -> A1xA1,
  /// D3 -> A3; components sorted.
  DynkinSpec canonical() const;

  std::string to_string() const;

  friend bool operator==(const DynkinSpec&, const DynkinSpec&) = default;
};

/// True when the two specs describe isomorphic root data.
bool same_type(const DynkinSpec& a, const DynkinSpec& b);

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Cartan matrix with entries <alpha_i, alpha_j^vee> (Bourbaki numbering).
IntMatrix cartan_matrix(Component c);

/// Identify a connected Cartan matrix.  Rank-2 double bonds are reported as C2.
Component classify_cartan(const IntMatrix& cartan);

/// Type of the root system with the given simple system (any Cartan matrix,
/// possibly disconnected), plus a central torus of the given rank.
DynkinSpec classify_simple_system(const IntMatrix& cartan, int torus_rank);

struct Root {
  Weight weight;
  Coweight coroot;
  std::vector<std::int64_t> coeffs; // over the simple roots of |component|
  int component = 0;

  std::int64_t height() const;
  bool positive() const { return height() > 0; }
};

/*
  A root datum inside an ambient lattice Z^n.

  Data built from a DynkinSpec use fundamental-weight coordinates on the
  semisimple part, followed by free torus coordinates; simple coroots are then
  coordinate vectors and pairings read off the Cartan matrix.  Data built with
  |from_simple_roots| (reductive quotients of parahorics) keep the ambient
  lattice of the group they came from, so weights of both can be compared
  directly.

  Immutable after construction.
*/
class RootDatum {
public:
  static RootDatum from_simple_roots(std::size_t lattice_rank, std::vector<Weight> simple,
                                     std::vector<Coweight> simple_coroots);

  std::size_t rank() const { return rank_; }
  std::size_t semisimple_rank() const { return simple_.size(); }
  std::size_t num_components() const { return components_.size(); }

  /// Deterministic order: component, height, lexicographic coefficients.
  const std::vector<Root>& roots() const { return roots_; }
  const std::vector<std::size_t>& positive_roots() const { return positive_; }

  /// Indices into roots() of the simple roots of component c.
  const std::vector<std::size_t>& simple_indices(std::size_t c) const { return components_[c]; }
  /// All simple roots, flattened in component order.
  const std::vector<std::size_t>& simple_roots() const { return simple_; }
  const Root& simple_root(std::size_t k) const { return roots_[simple_[k]]; }

  /// Block-diagonal over simple_roots().
  const IntMatrix& cartan() const { return cartan_; }
  Component component_type(std::size_t c) const { return types_[c]; }
  DynkinSpec type() const;

  /// Sum of the positive roots; always integral.
  const Weight& two_rho() const { return two_rho_; }
  /// rho itself; throws Error when 2rho is not divisible by 2 in the lattice.
  Weight rho() const;
  /// <rho, alpha^vee> for a root.
  std::int64_t rho_pairing(const Root& r) const;

  std::optional<std::size_t> find_root(const Weight& w) const;

  /// Coefficients of v over simple_roots() if v lies in the root lattice.
  std::optional<std::vector<std::int64_t>> root_lattice_coeffs(const Weight& v) const;

  /// Identity string used for caches and equality of data.
  const std::string& key() const { return key_; }
  friend bool operator==(const RootDatum& a, const RootDatum& b) { return a.key_ == b.key_; }

  Weight zero_weight() const { return Weight(rank_); }

private:
  std::size_t rank_ = 0;
  std::vector<Root> roots_;
  std::vector<std::size_t> positive_;
  std::vector<std::vector<std::size_t>> components_;
  std::vector<std::size_t> simple_;
  std::vector<Component> types_;
  IntMatrix cartan_;
  // rational inverse of the transposed Cartan matrix, as numerator / common denominator
  IntMatrix cartan_inv_num_;
  std::int64_t cartan_inv_den_ = 1;
  Weight two_rho_;
  std::string key_;
  std::unordered_map<Weight, std::size_t, WeightHash> index_;
};

/// Throws IllegalRank.
RootDatum build_root_datum(const DynkinSpec& spec);
RootDatum build_root_datum(const std::string& spec);

const Root& highest_root(const RootDatum& rd, std::size_t component);

std::int64_t pair(const RootDatum& rd, const Weight& w, const Root& alpha);
Weight reflect(const RootDatum& rd, const Root& alpha, const Weight& w);
Weight simple_reflect(const RootDatum& rd, std::size_t k, const Weight& w);

bool is_dominant(const RootDatum& rd, const Weight& w);

/// Closure of {w} under the simple reflections, sorted.
std::vector<Weight> weyl_orbit(const RootDatum& rd, const Weight& w);
Weight dominant_conjugate(const RootDatum& rd, const Weight& w);

/// Weyl degree formula.  Throws NotDominant.
BigInt weyl_dim(const RootDatum& rd, const Weight& w);

BigInt weyl_group_order(const RootDatum& rd);

/// a >= b in the dominance order of rd (a - b a nonnegative sum of simple roots).
bool dominates(const RootDatum& rd, const Weight& a, const Weight& b);

} // namespace parahoric::rootdata
