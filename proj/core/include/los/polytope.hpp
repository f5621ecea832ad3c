#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "los/rational.hpp"
#include "los/sequence.hpp"

namespace los {

// Row label (i, j) of the inequality (j+1) x_j + x_i >= (j+1) i + eps_ij,
// with eps_ij = 1 iff i = j = 1.
struct Label {
    std::int64_t i = 0;
    std::int64_t j = 0;
    friend bool operator==(const Label&, const Label&) = default;
    friend auto operator<=>(const Label&, const Label&) = default;
};

struct LinearConstraint {
    std::map<std::int64_t, std::int64_t> coeffs;  // variable index (1-based) -> coefficient
    std::int64_t rhs = 0;
    Label label;
};

using PointQ = std::vector<Rational>;  // x_1..x_n, stored 0-based

// The full feasible region P: one row per pair 1 <= j <= i <= n, so
// n(n+1)/2 rows. Coefficients merge when i = j.
std::vector<LinearConstraint> constraints_P(std::int64_t n);

// The relaxation Q keeping only the row (i, b_i) for each i. The i = 1 row
// is emitted in the normalized form x_1 >= 1 so that its coefficient matches
// the certificate matrix and the dual system.
std::vector<LinearConstraint> constraints_Q(const LosTable& table);

struct FeasibilityResult {
    bool feasible = false;
    std::vector<Label> violated;
};

// Exact evaluation of every row at x; collects all violated labels.
// Throws std::invalid_argument when a row references a coordinate outside x.
FeasibilityResult check_feasible(std::span<const Rational> x,
                                 const std::vector<LinearConstraint>& cons);

// alpha = (a_1..a_n) satisfies a_i >= (p+1)(i - a_p) + eps_ip for all
// 1 <= p <= i <= n; checked exhaustively in integer arithmetic.
bool verify_alpha_feasible(std::int64_t n);
bool verify_alpha_feasible(const LosTable& table);

struct VertexReport {
    bool feasible = false;
    std::vector<Label> violated;
    std::vector<Label> tight;  // all tight P rows at alpha, sorted by (i, j)
    bool basis_nonsingular = false;
    bool is_vertex = false;
};

// Confirms alpha is a vertex of P: feasibility, tightness of the n rows
// (i, b_i), and exact nonsingularity of their normal matrix. That matrix is
// triangular once rows are ordered by i (b_i < i), so after normalizing the
// i = 1 row its determinant is exactly 1.
VertexReport verify_vertex(std::int64_t n);
VertexReport verify_vertex(const LosTable& table);

class GuardExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct EnumeratedVertex {
    PointQ x;
    std::vector<Label> basis;   // lexicographically first nonsingular tight basis
    std::vector<Label> tight;   // all tight rows at x
    std::uint64_t basis_count = 0;  // how many nonsingular bases produced x
};

struct EnumOptions {
    std::int64_t guard = 7;  // refuse beyond this dimension
    int threads = 1;
};

// All vertices of P by exhaustive basis enumeration: every n-subset of rows
// with nonsingular coefficient matrix is solved exactly, kept when feasible,
// and duplicates merged by exact coordinate equality. Output is sorted by
// coordinates and identical for any thread count. Throws GuardExceeded when
// n > guard.
std::vector<EnumeratedVertex> enumerate_vertices(std::int64_t n, const EnumOptions& opts = {});

}  // namespace los
