#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace parahoric {

using BigInt = boost::multiprecision::cpp_int;

/*
  Exact integer lattice vectors.  |Weight| lives in X^*(T), |Coweight| in
  X_*(T); the only coupling between the two is the pairing |pair|.
  Keeping them as distinct types stops a coroot from being added to a weight.
*/
template <class Tag>
class LatticeVector {
public:
  using value_type = std::int64_t;

  LatticeVector() = default;
  explicit LatticeVector(std::size_t n) : coords_(n, 0) {}
  explicit LatticeVector(std::vector<value_type> c) : coords_(std::move(c)) {}
  LatticeVector(std::initializer_list<value_type> c) : coords_(c) {}

  std::size_t size() const { return coords_.size(); }
  value_type operator[](std::size_t i) const { return coords_[i]; }
  value_type& operator[](std::size_t i) { return coords_[i]; }
  std::span<const value_type> coords() const { return coords_; }
  const std::vector<value_type>& vec() const { return coords_; }

  bool is_zero() const {
    for (auto c : coords_)
      if (c != 0) return false;
    return true;
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  LatticeVector& operator*=(value_type k) {
    for (auto& c : coords_) c *= k;
    return *this;
  }
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(value_type k, LatticeVector a) { return a *= k; }
  friend LatticeVector operator-(LatticeVector a) { return a *= -1; }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector& a, const LatticeVector& b) {
    return a.coords_ <=> b.coords_;
  }

private:
  std::vector<value_type> coords_;
};

struct WeightTag {};
struct CoweightTag {};
using Weight = LatticeVector<WeightTag>;
using Coweight = LatticeVector<CoweightTag>;

inline std::int64_t pair(const Weight& w, const Coweight& c) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * c[i];
  return s;
}

/// "a,b,c" rendering; also the weight grammar accepted on the command line.
template <class Tag>
std::string to_string(const LatticeVector<Tag>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

Weight parse_weight(const std::string& text);

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto c : w.coords()) {
      h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

} // namespace parahoric
