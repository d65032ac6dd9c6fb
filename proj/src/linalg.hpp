#pragma once

// Small exact linear algebra shared by the implementation files.

#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

namespace parahoric::detail {

// Compare against Rational(0) or via numerator(): mixed rational/int
// comparisons recurse forever under C++20 rewritten operators (Boost 1.74).
using Rational = boost::rational<std::int64_t>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Gauss-Jordan inverse of a nonsingular square matrix; throws Error otherwise.
RationalMatrix inverse(const RationalMatrix& m);

} // namespace parahoric::detail
