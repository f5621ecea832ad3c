#pragma once

#include <cstdint>
#include <vector>

namespace los {

// Closed integer interval [lo, hi]; empty when lo > hi.
struct IndexInterval {
    std::int64_t lo = 1;
    std::int64_t hi = 0;
    bool empty() const { return lo > hi; }
    std::int64_t size() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(std::int64_t i) const { return lo <= i && i <= hi; }
};

// Tables of the self-generating Levine-O'Sullivan sequence and its block
// structure:
//
//   a_1 = 1,  a_2 = 2,  a_3 = 4,      a_i = (j+1)(i - a_j)   for i >= 4,
//
// where j is the unique block index with c_{j-1} <= i < c_j and the block
// boundaries are
//
//   c_0 = 2,      c_j = (j+2) a_{j+1} - (j+1) a_j.
//
// b_i records the block index of i (b_i = 1 for i <= 3). Both a and c are
// strictly increasing, which makes j well defined; construction is a single
// O(L) pass that carries the current block along.
//
// Indices are the 1-based paper indices (c starts at 0). Tables are value
// types, immutable after construction, and safe to share across threads.
class LosTable {
  public:
    // Table for dimension n with arrays covering 1..n+2, which is enough for
    // every c index the certificate needs (up to b_n + 1).
    static LosTable build(std::int64_t n);

    // Same dimension n, arrays extended to `length` >= n + 2. The longer
    // tables back the lemma sweeps, which read whole blocks far beyond n.
    static LosTable build_extended(std::int64_t n, std::int64_t length);

    std::int64_t n() const { return n_; }
    std::int64_t length() const { return static_cast<std::int64_t>(a_.size()) - 1; }

    std::int64_t a(std::int64_t i) const;  // 1 <= i <= length()
    std::int64_t b(std::int64_t i) const;  // 1 <= i <= length()
    std::int64_t c(std::int64_t j) const;  // 0 <= j <= length() - 1

    std::int64_t b_n() const { return b(n_); }
    std::int64_t bbb_n() const { return b(b(b_n())); }

    // Index interval covered by block j clamped to the dimension:
    // [c_{j-1}, min(c_j - 1, n)]. May be empty (c_{j-1} > n). Every i >= 2
    // in the interval has b_i = j. Requires 1 <= j <= b_n + 1.
    IndexInterval block(std::int64_t j) const;

    // Checks every structural invariant of the tables (base values, strict
    // monotonicity of a and c, the recurrence against b, the first-difference
    // law a_{i+1} - a_i = b_i + 1, convexity of a, b nondecreasing and below
    // its index). Throws std::logic_error naming the first violation.
    void validate() const;

  private:
    LosTable() = default;

    std::int64_t n_ = 0;
    // a_[i], b_[i] valid for 1 <= i <= L (slot 0 unused); c_[j] valid for
    // 0 <= j <= L - 1.
    std::vector<std::int64_t> a_, b_, c_;
};

}  // namespace los
