#include "parahoric/affine.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

#include "parahoric/errors.hpp"

namespace parahoric::affine {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

} // namespace

AffineBasis extended_basis(const RootDatum& rd) {
  if (rd.num_components() == 0) throw Error("extended_basis: root datum has no semisimple component");
  AffineBasis basis;
  for (std::size_t c = 0; c < rd.num_components(); ++c) {
    AffineComponent comp;
    for (auto idx : rd.simple_indices(c)) comp.nodes.push_back({idx, 0});
    const Root& top = rootdata::highest_root(rd, c);
    comp.nodes.push_back({*rd.find_root(-top.weight), 1});
    comp.marks = top.coeffs;
    comp.marks.push_back(1);

    // delta = (0,1) must come out exactly
    Weight grad(rd.rank());
    std::int64_t level = 0;
    for (std::size_t k = 0; k < comp.nodes.size(); ++k) {
      grad += comp.marks[k] * rd.roots()[comp.nodes[k].gradient].weight;
      level += comp.marks[k] * comp.nodes[k].level;
    }
    if (!grad.is_zero() || level != 1) throw Error("extended_basis: marks do not express delta");
    for (auto m : comp.marks) {
      if (m < 1) throw Error("extended_basis: nonpositive mark");
      comp.ell += m;
    }
    basis.components.push_back(std::move(comp));
  }
  return basis;
}

std::vector<std::int64_t> affine_decompose(const RootDatum& rd, const AffineBasis& basis, const AffineRoot& alpha) {
  const Root& a = rd.roots().at(alpha.gradient);
  const std::size_t c = static_cast<std::size_t>(a.component);
  const auto& marks = basis.components.at(c).marks;
  // (a, g) = sum_k (c_k + g h_k)(alpha_k, 0) + g (-highest, 1)
  std::vector<std::int64_t> t(marks.size());
  for (std::size_t k = 0; k + 1 < marks.size(); ++k) t[k] = a.coeffs[k] + alpha.level * marks[k];
  t.back() = alpha.level;
  bool nonneg = std::all_of(t.begin(), t.end(), [](auto v) { return v >= 0; });
  bool nonpos = std::all_of(t.begin(), t.end(), [](auto v) { return v <= 0; });
  if (!nonneg && !nonpos) throw Error("affine_decompose: coefficients of mixed sign");
  return t;
}

// ------------------------------------------------------------------ facets

void FacetSpec::validate(const AffineBasis& basis) const {
  if (theta.size() != basis.components.size())
    throw ParseError("facet has " + std::to_string(theta.size()) + " components, root datum has " +
                     std::to_string(basis.components.size()));
  for (std::size_t c = 0; c < theta.size(); ++c) {
    if (theta[c].empty()) throw ParseError("facet component " + std::to_string(c) + " is empty");
    for (std::size_t i = 0; i < theta[c].size(); ++i) {
      if (theta[c][i] >= basis.components[c].nodes.size())
        throw ParseError("facet node index " + std::to_string(theta[c][i]) + " out of range");
      if (i > 0 && theta[c][i] <= theta[c][i - 1]) throw ParseError("facet node indices must be distinct");
    }
  }
}

FacetSpec FacetSpec::parse(const std::string& text, const AffineBasis& basis) {
  FacetSpec f;
  std::string part;
  std::istringstream comps(text);
  while (std::getline(comps, part, '/')) {
    std::vector<std::size_t> nodes;
    std::string token;
    std::istringstream in(part);
    while (std::getline(in, token, ',')) {
      token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
      if (token.empty() || !std::all_of(token.begin(), token.end(), ::isdigit))
        throw ParseError("bad facet index '" + token + "' in '" + text + "'");
      nodes.push_back(std::stoul(token));
    }
    std::sort(nodes.begin(), nodes.end());
    f.theta.push_back(std::move(nodes));
  }
  if (!text.empty() && text.back() == '/') f.theta.emplace_back();
  f.validate(basis);
  return f;
}

std::string FacetSpec::to_string() const {
  std::string s;
  for (std::size_t c = 0; c < theta.size(); ++c) {
    if (c) s += '/';
    for (std::size_t i = 0; i < theta[c].size(); ++i) {
      if (i) s += ',';
      s += std::to_string(theta[c][i]);
    }
  }
  return s;
}

bool FacetSpec::contains(std::size_t component, std::size_t node) const {
  const auto& t = theta.at(component);
  return std::binary_search(t.begin(), t.end(), node);
}

std::vector<FacetSpec> enumerate_facets(const RootDatum& rd) {
  const auto basis = extended_basis(rd);
  std::vector<FacetSpec> out{FacetSpec{}};
  for (const auto& comp : basis.components) {
    const std::size_t k = comp.nodes.size();
    std::vector<FacetSpec> next;
    for (const auto& partial : out)
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        FacetSpec f = partial;
        std::vector<std::size_t> nodes;
        for (std::size_t i = 0; i < k; ++i)
          if (mask & (std::uint64_t{1} << i)) nodes.push_back(i);
        f.theta.push_back(std::move(nodes));
        next.push_back(std::move(f));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<std::int64_t> facet_depth(const AffineBasis& basis, const FacetSpec& theta) {
  std::vector<std::int64_t> d;
  for (std::size_t c = 0; c < basis.components.size(); ++c) {
    std::int64_t s = 0;
    for (auto k : theta.theta.at(c)) s += basis.components[c].marks.at(k);
    d.push_back(s);
  }
  return d;
}

std::int64_t ell_theta(const RootDatum& rd, const AffineBasis& basis, const FacetSpec& theta, const AffineRoot& alpha) {
  const auto t = affine_decompose(rd, basis, alpha);
  const std::size_t c = static_cast<std::size_t>(rd.roots()[alpha.gradient].component);
  std::int64_t s = 0;
  for (auto k : theta.theta.at(c)) s += t[k];
  return s;
}

AffineRoot canonical_rep(const RootDatum& rd, const AffineBasis& basis, const FacetSpec& theta, std::size_t root) {
  const std::size_t c = static_cast<std::size_t>(rd.roots().at(root).component);
  std::int64_t d = 0;
  for (auto k : theta.theta.at(c)) d += basis.components[c].marks[k];
  // ell_theta shifts by d per unit of level
  const auto l0 = ell_theta(rd, basis, theta, {root, 0});
  return {root, -floor_div(l0, d)};
}

// ---------------------------------------------------------- facet geometry

FacetPoint facet_barycenter(const RootDatum& rd, const AffineBasis& basis, const FacetSpec& theta) {
  theta.validate(basis);
  FacetPoint x;
  for (std::size_t c = 0; c < basis.components.size(); ++c) {
    const auto& comp = basis.components[c];
    const std::size_t r = comp.nodes.size() - 1;
    std::vector<Rational> y(r, Rational(0));
    // The closed alcove's vertex opposite node k is where every other node
    // vanishes: the origin for the affine node, otherwise alpha_k = 1/mark_k.
    for (auto k : theta.theta[c])
      if (k != comp.affine_node()) y[k] += Rational(1, comp.marks[k]);
    const Rational n(static_cast<std::int64_t>(theta.theta[c].size()));
    for (auto& v : y) v /= n;
    x.simple_values.push_back(std::move(y));
  }
  (void)rd;
  return x;
}

Rational evaluate(const RootDatum& rd, const FacetPoint& x, const AffineRoot& alpha) {
  const Root& a = rd.roots().at(alpha.gradient);
  const auto& y = x.simple_values.at(static_cast<std::size_t>(a.component));
  Rational v(alpha.level);
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) v += a.coeffs[k] * y[k];
  return v;
}

// ---------------------------------------------------------- parahoric model

std::vector<Weight> ParahoricModel::layer_weights(std::size_t j) const {
  std::vector<Weight> out;
  for (auto i : layers.at(j - 1)) out.push_back(ambient.roots()[i].weight);
  return out;
}

ParahoricModel parahoric_model(const RootDatum& rd, const FacetSpec& theta) {
  const auto basis = extended_basis(rd);
  theta.validate(basis);

  ParahoricModel m;
  m.ambient = rd;
  m.theta = theta;
  m.depth = facet_depth(basis, theta);
  const auto max_depth = *std::max_element(m.depth.begin(), m.depth.end());
  m.layers.assign(static_cast<std::size_t>(std::max<std::int64_t>(max_depth - 1, 0)), {});

  std::set<AffineRoot> reps;
  for (std::size_t i = 0; i < rd.roots().size(); ++i) {
    const auto rep = canonical_rep(rd, basis, theta, i);
    reps.insert(rep);
    const auto v = ell_theta(rd, basis, theta, rep);
    if (v == 0) {
      m.quotient_roots.push_back(i);
    } else {
      m.layers[static_cast<std::size_t>(v - 1)].push_back(i);
      ++m.dim_R;
    }
  }

  // simple system of the quotient: indecomposable positive quotient roots
  std::unordered_set<Weight, WeightHash> positive_quotient;
  for (auto i : m.quotient_roots)
    if (rd.roots()[i].positive()) positive_quotient.insert(rd.roots()[i].weight);
  std::vector<Weight> simple;
  std::vector<Coweight> coroots;
  for (auto i : m.quotient_roots) {
    const Root& q = rd.roots()[i];
    if (!q.positive()) continue;
    bool decomposable = false;
    for (const auto& x : positive_quotient)
      if (positive_quotient.contains(q.weight - x)) {
        decomposable = true;
        break;
      }
    if (!decomposable) {
      simple.push_back(q.weight);
      coroots.push_back(q.coroot);
    }
  }
  m.quotient_datum = RootDatum::from_simple_roots(rd.rank(), std::move(simple), std::move(coroots));

  // literal Psi_Theta: (a,0) and (-a, e_a) for a > 0, e_a = 0 iff a vanishes on the facet
  const auto x = facet_barycenter(rd, basis, theta);
  std::set<AffineRoot> psi;
  for (auto i : rd.positive_roots()) {
    psi.insert({i, 0});
    const bool vanishes = evaluate(rd, x, {i, 0}).numerator() == 0;
    psi.insert({*rd.find_root(-rd.roots()[i].weight), vanishes ? 0 : 1});
  }
  m.psi_literal_agrees = psi == reps;
  return m;
}

DynkinSpec quotient_by_deletion(const RootDatum& rd, const FacetSpec& theta) {
  const auto basis = extended_basis(rd);
  theta.validate(basis);
  std::vector<const Root*> survivors;
  for (std::size_t c = 0; c < basis.components.size(); ++c)
    for (std::size_t k = 0; k < basis.components[c].nodes.size(); ++k)
      if (!theta.contains(c, k)) survivors.push_back(&rd.roots()[basis.components[c].nodes[k].gradient]);
  rootdata::IntMatrix cartan(survivors.size(), std::vector<std::int64_t>(survivors.size()));
  for (std::size_t i = 0; i < survivors.size(); ++i)
    for (std::size_t j = 0; j < survivors.size(); ++j)
      cartan[i][j] = parahoric::pair(survivors[i]->weight, survivors[j]->coroot);
  return rootdata::classify_simple_system(cartan, static_cast<int>(rd.rank() - survivors.size()));
}

} // namespace parahoric::affine
