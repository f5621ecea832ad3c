#include "los/polytope.hpp"

#include <algorithm>
#include <thread>

#include "los/linalg.hpp"

namespace los {

namespace {

std::int64_t eps(std::int64_t i, std::int64_t j) { return (i == 1 && j == 1) ? 1 : 0; }

// Lexicographic order on exact coordinates; used for deterministic merging.
struct PointLess {
    bool operator()(const PointQ& x, const PointQ& y) const {
        const std::size_t k = std::min(x.size(), y.size());
        for (std::size_t t = 0; t < k; ++t) {
            const int c = cmp(x[t], y[t]);
            if (c != 0) return c < 0;
        }
        return x.size() < y.size();
    }
};

}  // namespace

std::vector<LinearConstraint> constraints_P(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("constraints_P: n must be >= 1");
    std::vector<LinearConstraint> rows;
    rows.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
    for (std::int64_t i = 1; i <= n; ++i) {
        for (std::int64_t j = 1; j <= i; ++j) {
            LinearConstraint row;
            row.coeffs[j] += j + 1;
            row.coeffs[i] += 1;  // merges into (j+2) x_i when i = j
            row.rhs = (j + 1) * i + eps(i, j);
            row.label = {i, j};
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<LinearConstraint> constraints_Q(const LosTable& table) {
    const std::int64_t n = table.n();
    std::vector<LinearConstraint> rows;
    rows.reserve(static_cast<std::size_t>(n));
    {
        // Row (1,1) is 3 x_1 >= 3; emit it as x_1 >= 1 so its coefficient
        // agrees with the certificate matrix row and the dual right-hand side.
        LinearConstraint row;
        row.coeffs[1] = 1;
        row.rhs = 1;
        row.label = {1, 1};
        rows.push_back(std::move(row));
    }
    for (std::int64_t i = 2; i <= n; ++i) {
        const std::int64_t bi = table.b(i);
        LinearConstraint row;
        row.coeffs[bi] += bi + 1;
        row.coeffs[i] += 1;
        row.rhs = (bi + 1) * i + eps(i, bi);
        row.label = {i, bi};
        rows.push_back(std::move(row));
    }
    return rows;
}

FeasibilityResult check_feasible(std::span<const Rational> x,
                                 const std::vector<LinearConstraint>& cons) {
    FeasibilityResult res;
    for (const auto& row : cons) {
        Rational lhs(0);
        for (const auto& [var, coeff] : row.coeffs) {
            if (var < 1 || static_cast<std::size_t>(var) > x.size())
                throw std::invalid_argument("check_feasible: constraint references x_" +
                                            std::to_string(var) + " beyond point dimension");
            lhs += Rational(coeff) * x[static_cast<std::size_t>(var - 1)];
        }
        if (lhs < row.rhs) res.violated.push_back(row.label);
    }
    res.feasible = res.violated.empty();
    return res;
}

bool verify_alpha_feasible(const LosTable& table) {
    const std::int64_t n = table.n();
    for (std::int64_t i = 1; i <= n; ++i) {
        const std::int64_t ai = table.a(i);
        for (std::int64_t p = 1; p <= i; ++p)
            if (ai < (p + 1) * (i - table.a(p)) + eps(i, p)) return false;
    }
    return true;
}

bool verify_alpha_feasible(std::int64_t n) {
    return verify_alpha_feasible(LosTable::build(n));
}

VertexReport verify_vertex(const LosTable& table) {
    const std::int64_t n = table.n();
    VertexReport rep;

    for (std::int64_t i = 1; i <= n; ++i) {
        const std::int64_t ai = table.a(i);
        for (std::int64_t j = 1; j <= i; ++j) {
            const std::int64_t lhs = (j + 1) * table.a(j) + ai;
            const std::int64_t rhs = (j + 1) * i + eps(i, j);
            if (lhs < rhs) rep.violated.push_back({i, j});
            else if (lhs == rhs) rep.tight.push_back({i, j});
        }
    }
    rep.feasible = rep.violated.empty();

    // The candidate basis is the rows (i, b_i). With rows ordered by i the
    // normal matrix is lower triangular (b_i < i for i >= 2) with unit
    // diagonal once the (1,1) row is normalized, so det = 1 exactly.
    bool basis_tight = true;
    bool triangular = true;
    for (std::int64_t i = 1; i <= n; ++i) {
        const std::int64_t bi = table.b(i);
        if (i >= 2 && bi >= i) triangular = false;
        if ((bi + 1) * table.a(bi) + table.a(i) != (bi + 1) * i + eps(i, bi))
            basis_tight = false;
    }
    rep.basis_nonsingular = triangular;
    rep.is_vertex = rep.feasible && rep.basis_nonsingular && basis_tight;
    return rep;
}

VertexReport verify_vertex(std::int64_t n) {
    return verify_vertex(LosTable::build(n));
}

namespace {

struct VertexAccum {
    std::vector<Label> basis;
    std::uint64_t count = 0;
};

using VertexMap = std::map<PointQ, VertexAccum, PointLess>;

// Advances an ascending index combination; returns false after the last one.
bool next_combination(std::vector<std::size_t>& comb, std::size_t m) {
    const std::size_t n = comb.size();
    std::size_t i = n;
    while (i-- > 0) {
        if (comb[i] != i + m - n) {
            ++comb[i];
            for (std::size_t k = i + 1; k < n; ++k) comb[k] = comb[k - 1] + 1;
            return true;
        }
    }
    return false;
}

void enumerate_worker(const std::vector<LinearConstraint>& cons, std::int64_t n,
                      unsigned worker, unsigned stride, VertexMap& out) {
    const std::size_t m = cons.size();
    const std::size_t nn = static_cast<std::size_t>(n);
    std::vector<std::size_t> comb(nn);
    for (std::size_t k = 0; k < nn; ++k) comb[k] = k;

    std::uint64_t index = 0;
    do {
        if (index++ % stride != worker) continue;

        linalg::Matrix a(nn, linalg::Vector(nn, Rational(0)));
        linalg::Vector rhs(nn);
        for (std::size_t r = 0; r < nn; ++r) {
            const auto& row = cons[comb[r]];
            for (const auto& [var, coeff] : row.coeffs)
                a[r][static_cast<std::size_t>(var - 1)] = coeff;
            rhs[r] = row.rhs;
        }
        auto x = linalg::solve(std::move(a), std::move(rhs));
        if (!x) continue;

        bool feasible = true;
        for (const auto& row : cons) {
            Rational lhs(0);
            for (const auto& [var, coeff] : row.coeffs)
                lhs += Rational(coeff) * (*x)[static_cast<std::size_t>(var - 1)];
            if (lhs < row.rhs) { feasible = false; break; }
        }
        if (!feasible) continue;

        std::vector<Label> basis(nn);
        for (std::size_t r = 0; r < nn; ++r) basis[r] = cons[comb[r]].label;
        auto [it, inserted] = out.try_emplace(std::move(*x));
        if (inserted || basis < it->second.basis) it->second.basis = std::move(basis);
        it->second.count += 1;
    } while (next_combination(comb, m));
}

}  // namespace

std::vector<EnumeratedVertex> enumerate_vertices(std::int64_t n, const EnumOptions& opts) {
    if (n < 1) throw std::invalid_argument("enumerate_vertices: n must be >= 1");
    if (n > opts.guard)
        throw GuardExceeded("enumerate_vertices: n = " + std::to_string(n) +
                            " exceeds the basis-enumeration guard " + std::to_string(opts.guard) +
                            " (" + std::to_string(n * (n + 1) / 2) + " choose " +
                            std::to_string(n) + " bases); raise --guard to override");

    const auto cons = constraints_P(n);
    const unsigned stride = static_cast<unsigned>(std::max(opts.threads, 1));

    std::vector<VertexMap> partial(stride);
    if (stride == 1) {
        enumerate_worker(cons, n, 0, 1, partial[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(stride);
        for (unsigned w = 0; w < stride; ++w)
            pool.emplace_back(enumerate_worker, std::cref(cons), n, w, stride,
                              std::ref(partial[w]));
        for (auto& th : pool) th.join();
    }

    VertexMap merged;
    for (auto& part : partial) {
        for (auto& [point, acc] : part) {
            auto [it, inserted] = merged.try_emplace(point);
            if (inserted || acc.basis < it->second.basis) it->second.basis = acc.basis;
            it->second.count += acc.count;
        }
    }

    std::vector<EnumeratedVertex> out;
    out.reserve(merged.size());
    for (auto& [point, acc] : merged) {
        EnumeratedVertex v;
        v.x = point;
        v.basis = acc.basis;
        v.basis_count = acc.count;
        for (const auto& row : cons) {
            Rational lhs(0);
            for (const auto& [var, coeff] : row.coeffs)
                lhs += Rational(coeff) * point[static_cast<std::size_t>(var - 1)];
            if (lhs == row.rhs) v.tight.push_back(row.label);
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace los
