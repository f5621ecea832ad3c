#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "los/linalg.hpp"
#include "los/polytope.hpp"
#include "los/rational.hpp"
#include "los/sequence.hpp"

using namespace los;

namespace {

PointQ alpha_point(const LosTable& t) {
    PointQ x(static_cast<std::size_t>(t.n()));
    for (std::int64_t i = 1; i <= t.n(); ++i) x[static_cast<std::size_t>(i - 1)] = t.a(i);
    return x;
}

const LinearConstraint& row_of(const std::vector<LinearConstraint>& cons, Label l) {
    const auto it = std::find_if(cons.begin(), cons.end(),
                                 [&](const LinearConstraint& r) { return r.label == l; });
    REQUIRE(it != cons.end());
    return *it;
}

}  // namespace

TEST_CASE("full constraint system shape and sample rows") {
    const auto cons = constraints_P(4);
    CHECK(std::ssize(cons) == 10);

    const auto& r11 = row_of(cons, {1, 1});
    CHECK(r11.coeffs.at(1) == 3);  // merged 2 x_1 + x_1
    CHECK(r11.rhs == 3);           // 2*1 + 1, the only row with the +1 shift

    const auto& r42 = row_of(cons, {4, 2});
    CHECK(r42.coeffs.at(2) == 3);
    CHECK(r42.coeffs.at(4) == 1);
    CHECK(r42.rhs == 12);

    const auto& r33 = row_of(cons, {3, 3});
    CHECK(r33.coeffs.at(3) == 5);  // (j+1) + 1 merged on the diagonal
    CHECK(r33.rhs == 12);
}

TEST_CASE("relaxed system keeps one row per index and normalizes the first") {
    const LosTable t = LosTable::build(24);
    const auto q = constraints_Q(t);
    const auto p = constraints_P(24);
    REQUIRE(std::ssize(q) == 24);

    CHECK(q[0].label == Label{1, 1});
    CHECK(q[0].coeffs.size() == 1);
    CHECK(q[0].coeffs.at(1) == 1);
    CHECK(q[0].rhs == 1);

    for (std::int64_t i = 2; i <= 24; ++i) {
        const auto& row = q[static_cast<std::size_t>(i - 1)];
        CHECK(row.label == Label{i, t.b(i)});
        const auto& same = row_of(p, row.label);
        CHECK(row.coeffs == same.coeffs);
        CHECK(row.rhs == same.rhs);
    }
}

TEST_CASE("feasibility checker reports exact violations by label") {
    const LosTable t = LosTable::build(10);
    const auto cons = constraints_P(10);
    PointQ x = alpha_point(t);
    CHECK(check_feasible(x, cons).feasible);

    x[0] = make_rational(1, 2);  // x_1 below every row mentioning it
    const auto bad = check_feasible(x, cons);
    CHECK_FALSE(bad.feasible);
    CHECK(std::find(bad.violated.begin(), bad.violated.end(), Label{1, 1}) !=
          bad.violated.end());

    PointQ wrong_dim(3, Rational(1));
    CHECK_THROWS_AS(check_feasible(wrong_dim, cons), std::invalid_argument);
}

TEST_CASE("conjectured point is feasible across dimensions") {
    for (std::int64_t n = 1; n <= 200; ++n) CHECK(verify_alpha_feasible(n));
}

TEST_CASE("conjectured point is a vertex with a degenerate tight set") {
    const VertexReport rep = verify_vertex(24);
    CHECK(rep.feasible);
    CHECK(rep.basis_nonsingular);
    CHECK(rep.is_vertex);
    CHECK(rep.violated.empty());

    // The n basis rows are all tight...
    const LosTable t = LosTable::build(24);
    for (std::int64_t i = 2; i <= 24; ++i)
        CHECK(std::find(rep.tight.begin(), rep.tight.end(), Label{i, t.b(i)}) !=
              rep.tight.end());
    // ...and extra rows are tight too: a_4 = 6 satisfies the block-1 row
    // with equality, so the point is degenerate.
    CHECK(std::find(rep.tight.begin(), rep.tight.end(), Label{4, 1}) != rep.tight.end());
    CHECK(std::ssize(rep.tight) > 24);
    CHECK(std::is_sorted(rep.tight.begin(), rep.tight.end()));
}

TEST_CASE("vertex enumeration matches the hand-checked small cases") {
    const auto v1 = enumerate_vertices(1);
    REQUIRE(std::ssize(v1) == 1);
    CHECK(v1[0].x == PointQ{Rational(1)});

    const auto v2 = enumerate_vertices(2);
    REQUIRE(std::ssize(v2) == 2);
    CHECK(v2[0].x == PointQ{Rational(1), Rational(2)});
    CHECK(v2[1].x == PointQ{make_rational(5, 4), make_rational(3, 2)});

    const auto v3 = enumerate_vertices(3);
    REQUIRE(std::ssize(v3) == 4);
    CHECK(v3[0].x == PointQ{Rational(1), Rational(2), Rational(4)});
    CHECK(v3[1].x ==
          PointQ{make_rational(9, 8), make_rational(7, 4), make_rational(15, 4)});
    CHECK(v3[2].x ==
          PointQ{make_rational(5, 4), make_rational(3, 2), make_rational(9, 2)});
    CHECK(v3[3].x ==
          PointQ{make_rational(9, 5), make_rational(11, 5), make_rational(12, 5)});
}

TEST_CASE("vertex counts for small dimensions") {
    const std::int64_t expect[] = {1, 2, 4, 7, 15};
    for (std::int64_t n = 1; n <= 5; ++n)
        CHECK(std::ssize(enumerate_vertices(n)) == expect[n - 1]);
}

TEST_CASE("enumeration output is identical for any thread count") {
    EnumOptions serial;
    EnumOptions parallel;
    parallel.threads = 3;
    const auto a = enumerate_vertices(4, serial);
    const auto b = enumerate_vertices(4, parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].x == b[k].x);
        CHECK(a[k].basis == b[k].basis);
        CHECK(a[k].tight == b[k].tight);
        CHECK(a[k].basis_count == b[k].basis_count);
    }
}

TEST_CASE("degenerate vertices merge their bases") {
    // At n = 4 the conjectured point has more than four tight rows, so
    // several bases solve to it.
    const auto verts = enumerate_vertices(4);
    const LosTable t = LosTable::build(4);
    const PointQ alpha = alpha_point(t);
    const auto it = std::find_if(verts.begin(), verts.end(),
                                 [&](const EnumeratedVertex& v) { return v.x == alpha; });
    REQUIRE(it != verts.end());
    CHECK(it->basis_count > 1);
    CHECK(std::ssize(it->tight) > 4);
    CHECK(std::ssize(it->basis) == 4);
}

TEST_CASE("every enumerated vertex is feasible and genuinely tight on its basis") {
    const auto cons = constraints_P(5);
    for (const auto& v : enumerate_vertices(5)) {
        CHECK(check_feasible(v.x, cons).feasible);
        for (const Label& l : v.basis) {
            const auto& row = row_of(cons, l);
            Rational lhs;
            for (const auto& [var, coeff] : row.coeffs)
                lhs += coeff * v.x[static_cast<std::size_t>(var - 1)];
            CHECK(lhs == row.rhs);
        }
    }
}

TEST_CASE("dimension guard refuses big enumerations") {
    CHECK_THROWS_AS(enumerate_vertices(8), GuardExceeded);
    EnumOptions tight_guard;
    tight_guard.guard = 3;
    CHECK_THROWS_AS(enumerate_vertices(4, tight_guard), GuardExceeded);
    CHECK_THROWS_AS(enumerate_vertices(0), std::invalid_argument);
}

TEST_CASE("dense determinant agrees with the structural basis argument") {
    // The basis rows (i, b_i) ordered by i form a lower-triangular system
    // after normalizing the first row; its determinant is 1. Cross-check by
    // dense elimination for a range of n.
    for (std::int64_t n = 1; n <= 40; ++n) {
        const LosTable t = LosTable::build(n);
        const auto q = constraints_Q(t);
        linalg::Matrix m(static_cast<std::size_t>(n),
                         linalg::Vector(static_cast<std::size_t>(n), Rational(0)));
        for (std::int64_t i = 1; i <= n; ++i)
            for (const auto& [var, coeff] : q[static_cast<std::size_t>(i - 1)].coeffs)
                m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(var - 1)] = coeff;
        CHECK(linalg::det(m) == 1);
        CHECK(verify_vertex(t).basis_nonsingular);
    }
}
