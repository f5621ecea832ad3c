#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "los/polytope.hpp"
#include "los/rational.hpp"

namespace los {

// f(x) = sum_i 1/x_i. Every coordinate must be nonzero.
Rational evaluate_f(std::span<const Rational> x);

// Exhaustive exact search over the vertices of P.
struct BruteForceResult {
    std::int64_t n = 0;
    std::int64_t vertex_count = 0;
    PointQ best_vertex;
    Rational best_value;
    bool unique = false;         // exactly one vertex attains the maximum
    bool best_is_alpha = false;  // the argmax is the integer point (a_1, ..., a_n)
    std::vector<Rational> all_values;  // f at every vertex, in enumeration order
};

// Enumerates every vertex of P, evaluates f exactly at each, and reports the
// maximum. The dimension guard of EnumOptions applies unchanged.
BruteForceResult global_max_bruteforce(std::int64_t n, const EnumOptions& opts = {});

// Deterministic local sampling around alpha. Each sample adds a nonnegative
// perturbation per coordinate, drawn from the integer grid of 2^20 + 1 points
// scaled to [0, radius]; draws outside P are discarded and counted. The
// generator is a fixed splitmix64 stream indexed by (seed, draw index), so a
// report is reproducible bit for bit regardless of host or thread count.
struct ProbeReport {
    std::int64_t n = 0;
    std::int64_t samples = 0;
    Rational radius;
    std::uint64_t seed = 0;
    std::int64_t accepted = 0;
    std::int64_t discarded = 0;
    Rational f_alpha;
    Rational max_f_observed;  // over accepted samples; f_alpha when none accepted
    bool exceeded = false;    // some accepted sample had f > f_alpha
};

ProbeReport local_probe(std::int64_t n, const Rational& radius, std::int64_t samples,
                        std::uint64_t seed);

}  // namespace los
