#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "parahoric/rootdata.hpp"

namespace parahoric::affine {

using rootdata::DynkinSpec;
using rootdata::Root;
using rootdata::RootDatum;

/// The affine function x -> a(x) + level, with gradient a = rd.roots()[gradient].
struct AffineRoot {
  std::size_t gradient = 0;
  std::int64_t level = 0;
  friend bool operator==(const AffineRoot&, const AffineRoot&) = default;
  friend auto operator<=>(const AffineRoot&, const AffineRoot&) = default;
};

/// Extended simple basis of one irreducible component: the simple roots
/// (a,0) in rootdata order, then the affine node (-highest, 1).
struct AffineComponent {
  std::vector<AffineRoot> nodes;
  std::vector<std::int64_t> marks; // delta = sum marks[k] * nodes[k]
  std::int64_t ell = 0;            // sum of the marks

  std::size_t affine_node() const { return nodes.size() - 1; }
};

struct AffineBasis {
  std::vector<AffineComponent> components;
};

/// Requires at least one semisimple component.
AffineBasis extended_basis(const RootDatum& rd);

/// Coefficients t over the nodes of the gradient's component with
/// alpha = sum t_k nodes[k]; all of one sign.
std::vector<std::int64_t> affine_decompose(const RootDatum& rd, const AffineBasis& basis, const AffineRoot& alpha);

/// A facet of the closed fundamental alcove, given by the nodes that are
/// strictly positive on it (one nonempty subset per component).
struct FacetSpec {
  std::vector<std::vector<std::size_t>> theta; // sorted node indices per component

  /// "0,2/1": comma-separated node indices, components separated by '/'.
  /// Indices follow AffineComponent::nodes (simple roots, then the affine node).
  static FacetSpec parse(const std::string& text, const AffineBasis& basis);
  std::string to_string() const;
  void validate(const AffineBasis& basis) const;

  bool contains(std::size_t component, std::size_t node) const;
  friend bool operator==(const FacetSpec&, const FacetSpec&) = default;
};

/// All facets, in lexicographic order of per-component node bitmasks.
std::vector<FacetSpec> enumerate_facets(const RootDatum& rd);

/// Sum of the marks of the nodes in Theta_i, per component.
std::vector<std::int64_t> facet_depth(const AffineBasis& basis, const FacetSpec& theta);

std::int64_t ell_theta(const RootDatum& rd, const AffineBasis& basis, const FacetSpec& theta, const AffineRoot& alpha);

/// The unique affine root with gradient rd.roots()[root] whose ell_theta
/// value lies in [0, depth - 1].
AffineRoot canonical_rep(const RootDatum& rd, const AffineBasis& basis, const FacetSpec& theta, std::size_t root);

using Rational = boost::rational<std::int64_t>;

/// Barycenter of the closure of F_Theta, recorded as the values of the simple
/// roots of each component at that point (the torus directions are free and
/// never seen by an affine root).
struct FacetPoint {
  std::vector<std::vector<Rational>> simple_values;
};

FacetPoint facet_barycenter(const RootDatum& rd, const AffineBasis& basis, const FacetSpec& theta);
Rational evaluate(const RootDatum& rd, const FacetPoint& x, const AffineRoot& alpha);

struct ParahoricModel {
  RootDatum ambient;
  FacetSpec theta;
  std::vector<std::int64_t> depth;
  std::vector<std::size_t> quotient_roots;         // indices into the ambient roots
  RootDatum quotient_datum;                        // same ambient lattice
  std::vector<std::vector<std::size_t>> layers;    // layers[j-1]: roots whose representative has value j
  std::int64_t dim_R = 0;
  bool psi_literal_agrees = false;

  std::vector<Weight> layer_weights(std::size_t j) const;
};

ParahoricModel parahoric_model(const RootDatum& rd, const FacetSpec& theta);

/// Type of the system whose simple roots are the gradients of the nodes not
/// in Theta; the torus rank is what remains of the ambient lattice.
DynkinSpec quotient_by_deletion(const RootDatum& rd, const FacetSpec& theta);

} // namespace parahoric::affine
