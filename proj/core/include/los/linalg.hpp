#pragma once

#include <optional>
#include <vector>

#include "los/rational.hpp"

namespace los {
namespace linalg {

using Matrix = std::vector<std::vector<Rational>>;
using Vector = std::vector<Rational>;

// Solves A x = rhs by exact Gaussian elimination (first-nonzero pivoting;
// magnitude is irrelevant in exact arithmetic). Returns nullopt when A is
// singular. A must be square and rhs.size() == A.size().
std::optional<Vector> solve(Matrix a, Vector rhs);

// Exact determinant, same elimination.
Rational det(Matrix a);

}  // namespace linalg
}  // namespace los
