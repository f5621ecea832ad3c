#include "los/oracle.hpp"

#include <stdexcept>

#include "los/sequence.hpp"

namespace los {

namespace {

constexpr std::uint64_t kGrid = std::uint64_t{1} << 20;

// Value k of the splitmix64 stream for `seed`; a pure function of both, so
// draws can be indexed without carrying generator state.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + (k + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

Rational evaluate_f(std::span<const Rational> x) {
    Rational f;
    for (const Rational& xi : x) {
        if (sgn(xi) == 0) throw std::invalid_argument("evaluate_f: zero coordinate");
        f += 1 / xi;
    }
    return f;
}

BruteForceResult global_max_bruteforce(std::int64_t n, const EnumOptions& opts) {
    const LosTable table = LosTable::build(n);
    const std::vector<EnumeratedVertex> vertices = enumerate_vertices(n, opts);
    if (vertices.empty())
        throw std::logic_error("global_max_bruteforce: no vertices enumerated");
    BruteForceResult res;
    res.n = n;
    res.vertex_count = std::ssize(vertices);
    res.all_values.reserve(vertices.size());
    std::size_t best = 0;
    std::int64_t ties = 0;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        res.all_values.push_back(evaluate_f(vertices[v].x));
        const Rational& f = res.all_values.back();
        if (v == 0 || f > res.all_values[best]) {
            best = v;
            ties = 1;
        } else if (f == res.all_values[best]) {
            ++ties;
        }
    }
    res.best_vertex = vertices[best].x;
    res.best_value = res.all_values[best];
    res.unique = ties == 1;
    res.best_is_alpha = true;
    for (std::int64_t i = 1; i <= n; ++i)
        if (res.best_vertex[static_cast<std::size_t>(i - 1)] != table.a(i)) {
            res.best_is_alpha = false;
            break;
        }
    return res;
}

ProbeReport local_probe(std::int64_t n, const Rational& radius, std::int64_t samples,
                        std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("local_probe: n must be >= 1");
    if (sgn(radius) <= 0) throw std::invalid_argument("local_probe: radius must be > 0");
    if (samples < 1) throw std::invalid_argument("local_probe: samples must be >= 1");
    const LosTable table = LosTable::build(n);
    const std::vector<LinearConstraint> cons = constraints_P(n);

    ProbeReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.radius = radius;
    rep.seed = seed;
    PointQ alpha(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i)
        alpha[static_cast<std::size_t>(i - 1)] = table.a(i);
    rep.f_alpha = evaluate_f(alpha);
    rep.max_f_observed = rep.f_alpha;

    PointQ x(static_cast<std::size_t>(n));
    for (std::int64_t s = 0; s < samples; ++s) {
        for (std::int64_t i = 0; i < n; ++i) {
            const std::uint64_t raw = splitmix64_at(
                seed, static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(n) +
                          static_cast<std::uint64_t>(i));
            const std::uint64_t z = raw % (kGrid + 1);
            x[static_cast<std::size_t>(i)] =
                alpha[static_cast<std::size_t>(i)] +
                radius * make_rational(static_cast<std::int64_t>(z),
                                       static_cast<std::int64_t>(kGrid));
        }
        if (!check_feasible(x, cons).feasible) {
            ++rep.discarded;
            continue;
        }
        ++rep.accepted;
        const Rational f = evaluate_f(x);
        if (f > rep.max_f_observed) {
            rep.max_f_observed = f;
            rep.exceeded = true;
        }
    }
    return rep;
}

}  // namespace los
