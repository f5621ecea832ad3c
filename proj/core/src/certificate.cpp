#include "los/certificate.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>

#include "los/polytope.hpp"

namespace los {

namespace {

Rational range_sum(const LosTable& t, std::int64_t lo, std::int64_t hi) {
    return sum_inv_squares(lo, hi, [&t](std::int64_t k) { return t.a(k); });
}

// Sum of 1/a_k^2 over block j clamped to the dimension; zero when the block
// lies entirely beyond n.
Rational clamped_block_sum(const LosTable& t, std::int64_t j) {
    return range_sum(t, t.c(j - 1), std::min(t.c(j) - 1, t.n()));
}

void finalize(Certificate& cert) {
    cert.min_entry = cert.xstar.front();
    for (std::int64_t i = 1; i <= cert.n; ++i) {
        const Rational& x = cert.xstar[i - 1];
        if (x < cert.min_entry) cert.min_entry = x;
        if (!cert.first_nonpositive && sgn(x) <= 0) cert.first_nonpositive = i;
    }
}

}  // namespace

std::int64_t d_coeff(const LosTable& table, std::int64_t i, std::int64_t j) {
    if (i < 1 || j <= i)
        throw std::invalid_argument("d_coeff: indices must satisfy 1 <= i < j");
    std::int64_t k = j - 1;
    std::int64_t prod = 1;
    std::int64_t m = 0;
    while (true) {
        ++m;
        prod *= k + 1;
        if (k <= i) break;
        k = table.b(k);
    }
    if (k != i) return 0;
    return (m % 2 == 0) ? prod : -prod;
}

CertificateMatrix CertificateMatrix::build(const LosTable& table) {
    CertificateMatrix m;
    m.n = table.n();
    const std::int64_t bn = table.b_n();
    m.rows.reserve(static_cast<std::size_t>(bn));
    for (std::int64_t j = 1; j <= bn; ++j) m.rows.push_back({j, table.block(j), j + 1});
    return m;
}

std::int64_t CertificateMatrix::entry(std::int64_t row, std::int64_t col) const {
    if (row < 1 || row > n || col < 1 || col > n)
        throw std::out_of_range("CertificateMatrix::entry: index out of range");
    if (row == col) return 1;
    if (row <= std::ssize(rows)) {
        const Row& r = rows[static_cast<std::size_t>(row - 1)];
        if (col >= 2 && col != r.j && r.cols.contains(col)) return r.value;
    }
    return 0;
}

std::vector<Rational> CertificateMatrix::apply(std::span<const Rational> x) const {
    if (std::ssize(x) != n)
        throw std::invalid_argument("CertificateMatrix::apply: dimension mismatch");
    std::vector<Rational> y(x.begin(), x.end());
    for (const Row& r : rows) {
        Rational s;
        for (std::int64_t k = std::max<std::int64_t>(r.cols.lo, 2); k <= r.cols.hi; ++k)
            if (k != r.j) s += x[static_cast<std::size_t>(k - 1)];
        y[static_cast<std::size_t>(r.j - 1)] += r.value * s;
    }
    return y;
}

Certificate xstar_direct(const LosTable& table) {
    const std::int64_t n = table.n();
    const std::int64_t bn = table.b_n();
    Certificate cert;
    cert.n = n;
    cert.method = Method::DirectFormula;
    cert.xstar.resize(static_cast<std::size_t>(n));
    cert.mechanism.assign(static_cast<std::size_t>(n), Mechanism::Exact);
    // tail_sum[j] = clamped sum over block j-1, the tail factor of column
    // group j in the inverse.
    std::vector<Rational> tail_sum(static_cast<std::size_t>(bn) + 2);
    for (std::int64_t j = 2; j <= bn + 1; ++j)
        tail_sum[static_cast<std::size_t>(j)] = clamped_block_sum(table, j - 1);
    for (std::int64_t i = 1; i <= n; ++i) {
        Rational x = inv_square(table.a(i));
        for (std::int64_t j = i + 1; j <= bn + 1; ++j) {
            const std::int64_t d = d_coeff(table, i, j);
            if (d != 0) x += d * tail_sum[static_cast<std::size_t>(j)];
        }
        cert.xstar[static_cast<std::size_t>(i - 1)] = std::move(x);
    }
    finalize(cert);
    return cert;
}

Certificate xstar_direct(std::int64_t n) { return xstar_direct(LosTable::build(n)); }

Certificate xstar_solve(const LosTable& table) {
    const std::int64_t n = table.n();
    const std::int64_t bn = table.b_n();
    Certificate cert;
    cert.n = n;
    cert.method = Method::TriangularSolve;
    cert.xstar.resize(static_cast<std::size_t>(n));
    cert.mechanism.assign(static_cast<std::size_t>(n), Mechanism::Exact);
    // M is unit upper triangular (every block column lies right of its row),
    // so back substitution from x_n is exact and division-free.
    for (std::int64_t i = n; i >= 1; --i) {
        Rational x = inv_square(table.a(i));
        if (i <= bn) {
            const IndexInterval cols = table.block(i);
            Rational s;
            for (std::int64_t k = std::max<std::int64_t>(cols.lo, 2); k <= cols.hi; ++k)
                if (k != i) s += cert.xstar[static_cast<std::size_t>(k - 1)];
            x -= (i + 1) * s;
        }
        cert.xstar[static_cast<std::size_t>(i - 1)] = std::move(x);
    }
    finalize(cert);
    return cert;
}

Certificate xstar_solve(std::int64_t n) { return xstar_solve(LosTable::build(n)); }

bool lemma_one_check(const LosTable& table) {
    const std::int64_t bn = table.b_n();
    const std::int64_t bbb = table.bbb_n();
    for (std::int64_t i = 1; i <= bn; ++i)
        if (d_coeff(table, i, i + 1) != -(i + 1)) return false;
    for (std::int64_t i = bbb + 1; i <= bn + 1; ++i)
        for (std::int64_t j = i + 2; j <= bn + 1; ++j)
            if (d_coeff(table, i, j) < 0) return false;
    return true;
}

bool lemma_one_check(std::int64_t n) { return lemma_one_check(LosTable::build(n)); }

std::vector<LemmaTwoRecord> lemma_two_check(std::int64_t j_max) {
    if (j_max < 1) throw std::invalid_argument("lemma_two_check: j_max must be >= 1");
    // The margin for block j reads a up to c_j - 1; grow the table until the
    // block of index `len` lies beyond j_max, i.e. len >= c_{j_max}.
    std::int64_t len = 64;
    std::optional<LosTable> grown;
    while (true) {
        grown = LosTable::build_extended(1, len);
        if (grown->b(len) > j_max) break;
        len *= 2;
    }
    const LosTable& t = *grown;

    const auto is_direct = [](std::int64_t j) {
        return j == 1 || j == 2 || j == 3 || j == 4 || j == 10 || j == 14;
    };

    std::vector<LemmaTwoRecord> out;
    out.reserve(static_cast<std::size_t>(j_max));
    for (std::int64_t j = 1; j <= j_max; ++j) {
        LemmaTwoRecord rec;
        rec.j = j;
        rec.margin = inv_square(t.a(j)) - (j + 1) * range_sum(t, t.c(j - 1), t.c(j) - 1);
        bool ok = sgn(rec.margin) > 0;
        if (is_direct(j)) {
            rec.kind = LemmaTwoRecord::Case::Direct;
        } else {
            // k is the block position of j shifted to half-open-from-the-left:
            // c_{k-1} < j <= c_k.
            std::int64_t k = t.b(j);
            if (j == t.c(k - 1)) --k;
            rec.kind = (j == t.c(k)) ? LemmaTwoRecord::Case::Boundary
                                     : LemmaTwoRecord::Case::Interior;

            const BigInt aj(t.a(j)), ak(t.a(k));
            const BigInt c_lo(t.c(j - 1)), c_hi(t.c(j)), ck(t.c(k));
            const BigInt width = c_hi - c_lo;
            const BigInt coef = BigInt(j + 1) - width;
            const BigInt ej = (j + 1) * c_lo * (c_lo - 2 * aj) + coef * aj * aj;
            rec.e_j = ej;

            ok = ok && (c_lo - 2 * aj == (k + 1) * ak) && sgn(ak) > 0;
            // Same quantity as (j+1)(c_{j-1} - a_j)^2 - width * a_j^2, the
            // scaled width-times-largest-term bound on the block sum.
            ok = ok && (ej == (j + 1) * (c_lo - aj) * (c_lo - aj) - width * aj * aj);
            ok = ok && sgn(ej) > 0;
            // e_j / ((j+1) a_j^2 (c_{j-1} - a_j)^2) understates the margin.
            ok = ok && rec.margin >= make_rational(ej, (j + 1) * aj * aj * (c_lo - aj) *
                                                           (c_lo - aj));
            if (rec.kind == LemmaTwoRecord::Case::Interior) {
                ok = ok && (coef == BigInt(j) - 2 * k - 1) && j - 2 * k - 1 >= 0;
            } else {
                ok = ok && (coef == -BigInt(2 * k + 3)) && k >= 4;
                const BigInt factored =
                    BigInt(k + 1) * (k + 1) *
                    ((ck + 1) * (2 * ck - ak) * ak - (2 * k + 3) * (ck - ak) * (ck - ak));
                const BigInt squares =
                    BigInt(k + 1) * (k + 1) * (ck - ak) * (ck - ak) * (2 * ak - (2 * k + 3));
                ok = ok && (ej == factored) && factored >= squares && sgn(squares) > 0;
            }
        }
        rec.ok = ok;
        out.push_back(std::move(rec));
    }
    return out;
}

Rational tail_bound_check(const LosTable& table, std::int64_t i) {
    const std::int64_t n = table.n();
    if (i <= table.bbb_n() || i > n)
        throw std::invalid_argument("tail_bound_check: need b_{b_{b_n}} < i <= n");
    const std::int64_t bn = table.b_n();
    const std::int64_t lo = table.c(i - 1);
    const std::int64_t hi = std::min(table.c(i) - 1, n);
    Rational bound = inv_square(table.a(i)) - (i + 1) * range_sum(table, lo, hi);
    if (i > bn) return bound;  // empty block sum: the bound is the entry itself
    if (sgn(bound) <= 0) throw std::logic_error("tail_bound_check: bound not positive");
    Rational exact = inv_square(table.a(i));
    for (std::int64_t j = i + 1; j <= bn + 1; ++j) {
        const std::int64_t d = d_coeff(table, i, j);
        if (d != 0) exact += d * clamped_block_sum(table, j - 1);
    }
    if (bound > exact) throw std::logic_error("tail_bound_check: bound exceeds the entry");
    return bound;
}

bool DualityReport::residuals_zero() const {
    for (const Rational& r : dual_residuals)
        if (sgn(r) != 0) return false;
    return true;
}

DualityReport duality_check(const LosTable& table) {
    const std::int64_t n = table.n();
    DualityReport rep;
    rep.n = n;
    const Certificate cert = xstar_direct(table);
    const CertificateMatrix m = CertificateMatrix::build(table);
    const std::vector<Rational> mx = m.apply(cert.xstar);
    rep.dual_residuals.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i)
        rep.dual_residuals[static_cast<std::size_t>(i - 1)] =
            mx[static_cast<std::size_t>(i - 1)] - inv_square(table.a(i));
    for (std::int64_t i = 1; i <= n; ++i) rep.primal_value += make_rational(1, table.a(i));
    const std::vector<LinearConstraint> rows = constraints_Q(table);
    for (std::int64_t i = 1; i <= n; ++i)
        rep.dual_value += rows[static_cast<std::size_t>(i - 1)].rhs *
                          cert.xstar[static_cast<std::size_t>(i - 1)];
    rep.nonneg_ok = cert.conjecture_holds();
    return rep;
}

DualityReport duality_check(std::int64_t n) { return duality_check(LosTable::build(n)); }

namespace {

// Incremental conjecture checker. Walks n upward while carrying
//   - full sums of 1/a^2 over every completed block,
//   - the partial sum over the block containing n,
//   - exact head entries (all i <= b_n in full mode, i <= b_{b_{b_n}} in
//     reduced mode), updated per step through the single new inverse column,
//   - in reduced mode, the cached per-block lower bounds and their minimum.
// Each step costs O(1) amortized big-rational operations.
class Sweeper {
  public:
    Sweeper(const LosTable& t, std::int64_t n0, CheckMode mode)
        : t_(t), mode_(mode), n_(n0) {
        if (n0 < 1 || n0 > t.n())
            throw std::invalid_argument("Sweeper: start dimension out of range");
        B_ = t_.b(n_);
        bbb_ = t_.b(t_.b(B_));
        block_sum_.assign(static_cast<std::size_t>(B_) + 1, Rational());
        for (std::int64_t j = 1; j < B_; ++j)
            block_sum_[static_cast<std::size_t>(j)] = range_sum(t_, t_.c(j - 1), t_.c(j) - 1);
        top_sum_ = range_sum(t_, t_.c(B_ - 1), n_);
        tracked_hi_ = (mode == CheckMode::Full) ? B_ : bbb_;
        exact_.assign(static_cast<std::size_t>(tracked_hi_) + 1, Rational());
        for (std::int64_t i = 1; i <= tracked_hi_; ++i)
            exact_[static_cast<std::size_t>(i)] = exact_entry(i);
        if (mode_ == CheckMode::Reduced) {
            bound_.assign(static_cast<std::size_t>(B_) + 1, Rational());
            for (std::int64_t j = bbb_ + 1; j < B_; ++j)
                bound_[static_cast<std::size_t>(j)] =
                    inv_square(t_.a(j)) - (j + 1) * block_sum_[static_cast<std::size_t>(j)];
            refresh_bound_cache();
            check_chain_lemma();
        }
    }

    std::int64_t n() const { return n_; }

    void advance() {
        const std::int64_t m = n_ + 1;
        if (m > t_.n()) throw std::logic_error("Sweeper::advance: past the table");
        const std::int64_t new_b = t_.b(m);
        const Rational inc = inv_square(t_.a(m));
        bool blocks_changed = false;
        if (new_b == B_) {
            top_sum_ += inc;
        } else if (new_b == B_ + 1) {
            // n was the last index of block B_: freeze its full sum and bound.
            block_sum_.resize(static_cast<std::size_t>(new_b) + 1);
            block_sum_[static_cast<std::size_t>(B_)] = top_sum_;
            if (mode_ == CheckMode::Reduced) {
                bound_.resize(static_cast<std::size_t>(new_b) + 1);
                bound_[static_cast<std::size_t>(B_)] =
                    inv_square(t_.a(B_)) - (B_ + 1) * top_sum_;
                if (B_ > bbb_) fold_bound(bound_[static_cast<std::size_t>(B_)]);
            }
            top_sum_ = inc;
            B_ = new_b;
            blocks_changed = true;
        } else {
            throw std::logic_error("Sweeper::advance: block index skipped");
        }
        n_ = m;
        // Every tracked entry picks up the new index through the top column
        // group; the coefficient is zero unless the chain lands on i.
        for (std::int64_t i = 1; i <= tracked_hi_; ++i) {
            const std::int64_t d = d_coeff(t_, i, B_ + 1);
            if (d != 0) exact_[static_cast<std::size_t>(i)] += d * inc;
        }
        if (mode_ == CheckMode::Full) {
            if (tracked_hi_ < B_) grow_tracked(B_);
            bbb_ = t_.b(t_.b(B_));
        } else {
            const std::int64_t new_bbb = t_.b(t_.b(B_));
            if (new_bbb != bbb_) {
                grow_tracked(new_bbb);
                bbb_ = new_bbb;
                refresh_bound_cache();
                check_chain_lemma();
            } else if (blocks_changed) {
                check_chain_lemma();
            }
        }
    }

    SweepRecord record() const {
        SweepRecord r;
        r.n = n_;
        bool has_min = false;
        const auto fold = [&](const Rational& v) {
            if (!has_min || v < r.min_entry) {
                r.min_entry = v;
                has_min = true;
            }
        };
        for (std::int64_t i = 1; i <= tracked_hi_; ++i) {
            const Rational& x = exact_[static_cast<std::size_t>(i)];
            fold(x);
            if (sgn(x) <= 0 && !r.first_nonpositive) r.first_nonpositive = i;
        }
        if (mode_ == CheckMode::Full) {
            r.exact_count = n_;
            if (n_ > tracked_hi_) fold(inv_square(t_.a(n_)));
        } else {
            r.exact_count = tracked_hi_;
            r.trivial_count = n_ - B_;
            if (B_ - 1 > bbb_) {
                if (have_bound_ && sgn(min_bound_) > 0) {
                    r.tail_count += B_ - 1 - bbb_;
                    fold(min_bound_);
                } else {
                    for (std::int64_t i = bbb_ + 1; i < B_; ++i)
                        certify_tail(i, bound_[static_cast<std::size_t>(i)], r, fold);
                }
            }
            if (B_ > bbb_)
                certify_tail(B_, inv_square(t_.a(B_)) - (B_ + 1) * top_sum_, r, fold);
            if (n_ > B_) fold(inv_square(t_.a(n_)));
        }
        r.positive = !r.first_nonpositive.has_value();
        return r;
    }

    // Full per-entry certificate at the current dimension.
    Certificate materialize() const {
        Certificate cert;
        cert.n = n_;
        cert.method = Method::DirectFormula;
        cert.xstar.resize(static_cast<std::size_t>(n_));
        cert.mechanism.assign(static_cast<std::size_t>(n_), Mechanism::Exact);
        for (std::int64_t i = 1; i <= tracked_hi_; ++i)
            cert.xstar[static_cast<std::size_t>(i - 1)] = exact_[static_cast<std::size_t>(i)];
        std::int64_t head = tracked_hi_;
        if (mode_ == CheckMode::Reduced) {
            for (std::int64_t i = bbb_ + 1; i <= B_; ++i) {
                Rational bound = (i == B_)
                                     ? Rational(inv_square(t_.a(B_)) - (B_ + 1) * top_sum_)
                                     : bound_[static_cast<std::size_t>(i)];
                auto& slot = cert.xstar[static_cast<std::size_t>(i - 1)];
                auto& mech = cert.mechanism[static_cast<std::size_t>(i - 1)];
                if (sgn(bound) > 0) {
                    slot = std::move(bound);
                    mech = Mechanism::TailBound;
                } else {
                    slot = exact_entry(i);
                    mech = Mechanism::ExactFallback;
                }
            }
            head = B_;
        }
        for (std::int64_t i = head + 1; i <= n_; ++i) {
            cert.xstar[static_cast<std::size_t>(i - 1)] = inv_square(t_.a(i));
            cert.mechanism[static_cast<std::size_t>(i - 1)] = Mechanism::EmptyTail;
        }
        finalize(cert);
        return cert;
    }

  private:
    // Exact x_i at the current n, assembled from the stored block sums.
    Rational exact_entry(std::int64_t i) const {
        Rational x = inv_square(t_.a(i));
        for (std::int64_t j = i + 1; j <= B_ + 1; ++j) {
            const std::int64_t d = d_coeff(t_, i, j);
            if (d == 0) continue;
            x += d * (j == B_ + 1 ? top_sum_ : block_sum_[static_cast<std::size_t>(j - 1)]);
        }
        return x;
    }

    void grow_tracked(std::int64_t hi) {
        exact_.resize(static_cast<std::size_t>(hi) + 1);
        for (std::int64_t i = tracked_hi_ + 1; i <= hi; ++i)
            exact_[static_cast<std::size_t>(i)] = exact_entry(i);
        tracked_hi_ = hi;
    }

    void fold_bound(const Rational& v) {
        if (!have_bound_ || v < min_bound_) {
            min_bound_ = v;
            have_bound_ = true;
        }
    }

    void refresh_bound_cache() {
        have_bound_ = false;
        for (std::int64_t j = bbb_ + 1; j < B_; ++j) fold_bound(bound_[static_cast<std::size_t>(j)]);
    }

    // The tail bound understates x_i only because d_{i,j} >= 0 beyond the
    // leading column group; verify that fact for the current index window.
    void check_chain_lemma() const {
        for (std::int64_t i = 1; i <= B_; ++i)
            if (d_coeff(t_, i, i + 1) != -(i + 1))
                throw std::logic_error("Sweeper: leading chain coefficient mismatch");
        for (std::int64_t i = bbb_ + 1; i <= B_ + 1; ++i)
            for (std::int64_t j = i + 2; j <= B_ + 1; ++j)
                if (d_coeff(t_, i, j) < 0)
                    throw std::logic_error("Sweeper: negative off-diagonal chain coefficient");
    }

    template <typename Fold>
    void certify_tail(std::int64_t i, Rational bound, SweepRecord& r, const Fold& fold) const {
        if (sgn(bound) > 0) {
            ++r.tail_count;
            fold(bound);
            return;
        }
        ++r.fallback_count;
        const Rational exact = exact_entry(i);
        fold(exact);
        if (sgn(exact) <= 0 && !r.first_nonpositive) r.first_nonpositive = i;
    }

    const LosTable& t_;
    CheckMode mode_;
    std::int64_t n_ = 0;
    std::int64_t B_ = 0;    // b_n
    std::int64_t bbb_ = 0;  // b_{b_{b_n}}
    std::int64_t tracked_hi_ = 0;
    std::vector<Rational> exact_;      // exact_[i], 1-based, i <= tracked_hi_
    std::vector<Rational> block_sum_;  // full block sums, valid for j < B_
    Rational top_sum_;                 // partial sum over block B_ up to n
    std::vector<Rational> bound_;      // complete-block bounds, valid bbb_ < j < B_
    Rational min_bound_;               // min of the valid bound_ range
    bool have_bound_ = false;
};

}  // namespace

Certificate check_conjecture(const LosTable& table, CheckMode mode) {
    if (mode == CheckMode::Full) {
        Certificate direct = xstar_direct(table);
        const Certificate solved = xstar_solve(table);
        if (direct.xstar != solved.xstar)
            throw std::logic_error("check_conjecture: formula and solve paths disagree");
        direct.method = Method::BothAgree;
        return direct;
    }
    return Sweeper(table, table.n(), CheckMode::Reduced).materialize();
}

Certificate check_conjecture(std::int64_t n, CheckMode mode) {
    return check_conjecture(LosTable::build(n), mode);
}

void sweep_conjecture(std::int64_t from, std::int64_t to, CheckMode mode,
                      const std::function<void(const SweepRecord&)>& emit, int threads) {
    if (from < 1 || to < from)
        throw std::invalid_argument("sweep_conjecture: need 1 <= from <= to");
    const LosTable table = LosTable::build(to);
    const std::int64_t count = to - from + 1;
    const int workers =
        static_cast<int>(std::clamp<std::int64_t>(threads, 1, std::min<std::int64_t>(count, 64)));
    if (workers == 1) {
        Sweeper sw(table, from, mode);
        while (true) {
            emit(sw.record());
            if (sw.n() == to) break;
            sw.advance();
        }
        return;
    }
    // Contiguous chunks with private sweepers; replaying the buffers in
    // order keeps the emitted stream identical for every thread count.
    std::vector<std::vector<SweepRecord>> buffers(static_cast<std::size_t>(workers));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = from + count * w / workers;
        const std::int64_t hi = from + count * (w + 1) / workers - 1;
        pool.emplace_back([&table, &buffers, &errors, mode, w, lo, hi] {
            try {
                Sweeper sw(table, lo, mode);
                while (true) {
                    buffers[static_cast<std::size_t>(w)].push_back(sw.record());
                    if (sw.n() == hi) break;
                    sw.advance();
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    for (const auto& part : buffers)
        for (const SweepRecord& rec : part) emit(rec);
}

}  // namespace los
