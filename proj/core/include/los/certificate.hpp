#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "los/rational.hpp"
#include "los/sequence.hpp"

namespace los {

// Signed chain coefficient d_{ij} (1 <= i < j <= b_n + 1): follow the block
// index map from k_1 = j - 1, k_{p+1} = b_{k_p}, down to the first k_m <= i.
// If the chain lands on i exactly, d = (-1)^m * prod_p (k_p + 1); otherwise 0.
// These are the entries of the inverse of the certificate matrix, grouped by
// blocks of columns.
std::int64_t d_coeff(const LosTable& table, std::int64_t i, std::int64_t j);

// The unit upper-triangular system matrix M: row j <= b_n carries the value
// j + 1 on the columns of block j (excluding column j itself and column 1),
// identity elsewhere. Determinant is 1 by construction.
struct CertificateMatrix {
    struct Row {
        std::int64_t j = 0;
        IndexInterval cols;      // block(j), clamped to n
        std::int64_t value = 0;  // j + 1
    };
    std::int64_t n = 0;
    std::vector<Row> rows;  // one per j in 1..b_n

    static CertificateMatrix build(const LosTable& table);

    std::int64_t entry(std::int64_t row, std::int64_t col) const;
    std::vector<Rational> apply(std::span<const Rational> x) const;  // M * x
};

enum class Method { DirectFormula, TriangularSolve, BothAgree };

// How an entry of a certificate was certified nonnegative.
enum class Mechanism : unsigned char {
    Exact,          // entry computed exactly
    TailBound,      // positive lower bound 1/a_i^2 - (i+1) * (block-i sum)
    EmptyTail,      // i > b_n, where the entry is exactly 1/a_i^2
    ExactFallback,  // bound inconclusive, entry recomputed exactly
};

// The dual certificate xi* for one dimension n. In full mode every entry is
// exact. In reduced mode entries certified through the tail bound hold the
// bound value (a certified lower bound on the true entry); min_entry is then
// a lower bound on the true minimum.
struct Certificate {
    std::int64_t n = 0;
    std::vector<Rational> xstar;  // entry i at index i-1
    Rational min_entry;
    std::optional<std::int64_t> first_nonpositive;  // smallest i with value <= 0
    Method method = Method::DirectFormula;
    std::vector<Mechanism> mechanism;  // per entry; all Exact in full mode

    // The conjectured sign condition: every certified value >= 0.
    bool conjecture_holds() const { return sgn(min_entry) >= 0; }
};

// xi* from the closed-form block summation:
//   x_i^* = 1/a_i^2 + sum_{j=i+1}^{b_n+1} d_{ij} * sum_{k=c_{j-2}}^{min(c_{j-1}-1, n)} 1/a_k^2
// (empty sums are zero, so x_i^* = 1/a_i^2 for i > b_n).
Certificate xstar_direct(const LosTable& table);
Certificate xstar_direct(std::int64_t n);

// xi* as the solution of M xi = v, v_i = 1/a_i^2, by back substitution on
// the unit-triangular block structure. Independent of the closed form; the
// two paths are mutual oracles.
Certificate xstar_solve(const LosTable& table);
Certificate xstar_solve(std::int64_t n);

enum class CheckMode { Full, Reduced };

// Full mode: computes xi* along both paths, requires them to agree entrywise
// (std::logic_error otherwise), and reports the sign of every entry.
// Reduced mode: exact entries only for i <= b_{b_{b_n}}; the rest certified
// through the tail bound backed by the chain lemma, with the mechanism
// recorded per entry and exact fallback if a bound were inconclusive.
// A negative entry is a finding reported through first_nonpositive / the
// verdict, never an exception.
Certificate check_conjecture(const LosTable& table, CheckMode mode);
Certificate check_conjecture(std::int64_t n, CheckMode mode);

// d_{i,i+1} = -(i+1) for 1 <= i <= b_n, and d_{ij} >= 0 for every
// i > b_{b_{b_n}}, i + 1 < j <= b_n + 1.
bool lemma_one_check(const LosTable& table);
bool lemma_one_check(std::int64_t n);

// Per-block margin 1/a_j^2 - (j+1) * (full block-j sum) > 0, together with
// the integer quantity e_j and the exact case identities that prove it for
// non-exceptional j.
struct LemmaTwoRecord {
    enum class Case { Interior, Boundary, Direct };

    std::int64_t j = 0;
    Rational margin;
    std::optional<BigInt> e_j;  // absent for the directly-computed cases
    Case kind = Case::Direct;
    bool ok = false;  // margin > 0 and, for non-direct cases, all identities held
};

std::vector<LemmaTwoRecord> lemma_two_check(std::int64_t j_max);

// Certified lower bound 1/a_i^2 - (i+1) * sum_{j in block(i)} 1/a_j^2 on
// x_i^*, valid for b_{b_{b_n}} < i <= n (the sum is clamped at n and empty
// for i > b_n). Verifies bound > 0 and bound <= x_i^* before returning;
// both are consequences of the proved lemmas, so a violation raises
// std::logic_error. Precondition violations raise std::invalid_argument.
Rational tail_bound_check(const LosTable& table, std::int64_t i);

// Primal value g(alpha) = sum 1/a_i, dual value r . xi* with r the
// (normalized) right-hand sides of Q, and the residual M xi* - v computed
// against the closed-form xi*. Exact equalities are the findings.
struct DualityReport {
    std::int64_t n = 0;
    Rational primal_value;
    Rational dual_value;
    std::vector<Rational> dual_residuals;
    bool nonneg_ok = false;

    bool residuals_zero() const;
    bool strong_duality() const { return primal_value == dual_value; }
    bool verified() const { return residuals_zero() && strong_duality() && nonneg_ok; }
};

DualityReport duality_check(const LosTable& table);
DualityReport duality_check(std::int64_t n);

// One line of a conjecture sweep.
struct SweepRecord {
    std::int64_t n = 0;
    bool positive = false;  // every certified value >= 0
    Rational min_entry;     // exact min (full) or certified lower bound (reduced)
    std::optional<std::int64_t> first_nonpositive;
    std::int64_t exact_count = 0;
    std::int64_t tail_count = 0;
    std::int64_t trivial_count = 0;
    std::int64_t fallback_count = 0;
};

// Runs the conjecture check for every n in [from, to], reusing block prefix
// sums incrementally so the reduced sweep costs O(1) amortized big-rational
// operations per n. Records arrive in ascending n regardless of the thread
// count; workers own disjoint n-ranges and private state.
void sweep_conjecture(std::int64_t from, std::int64_t to, CheckMode mode,
                      const std::function<void(const SweepRecord&)>& emit,
                      int threads = 1);

}  // namespace los
