#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "los/sequence.hpp"

using los::IndexInterval;
using los::LosTable;

TEST_CASE("base values and first block boundaries") {
    const LosTable t = LosTable::build(10);
    const std::int64_t expect_a[] = {1, 2, 4, 6, 9, 12, 15, 18, 21, 24};
    for (std::int64_t i = 1; i <= 10; ++i) CHECK(t.a(i) == expect_a[i - 1]);
    CHECK(t.c(0) == 2);
    CHECK(t.c(1) == 4);
    CHECK(t.c(2) == 10);
    CHECK(t.c(3) == 14);
    CHECK(t.b(1) == 1);
    CHECK(t.b(2) == 1);
    CHECK(t.b(3) == 1);
    CHECK(t.b(4) == 2);
    CHECK(t.b(9) == 2);
    CHECK(t.b(10) == 3);
}

TEST_CASE("dimension 24 landmarks") {
    const LosTable t = LosTable::build(24);
    CHECK(t.a(24) == 90);
    CHECK(t.c(4) == 24);
    CHECK(t.b_n() == 5);
    CHECK(t.n() == 24);
}

TEST_CASE("large-table landmarks") {
    const LosTable t1 = LosTable::build(1000);
    CHECK(t1.b_n() == 57);
    CHECK(t1.bbb_n() == 3);
    const LosTable t2 = LosTable::build(10000);
    CHECK(t2.b_n() == 245);
    CHECK(t2.bbb_n() == 5);
}

TEST_CASE("extended tables extend without changing the prefix") {
    const LosTable shortt = LosTable::build(100);
    const LosTable longt = LosTable::build_extended(100, 5000);
    CHECK(longt.n() == 100);
    CHECK(longt.length() == 5000);
    for (std::int64_t i = 1; i <= shortt.length(); ++i) {
        CHECK(longt.a(i) == shortt.a(i));
        CHECK(longt.b(i) == shortt.b(i));
    }
    for (std::int64_t j = 0; j <= shortt.length() - 1; ++j) CHECK(longt.c(j) == shortt.c(j));
    longt.validate();
}

TEST_CASE("deep block boundary frozen values") {
    // c_5000 and the last element of block 5000, from an independent
    // big-integer reimplementation of the recurrence.
    std::int64_t len = 64;
    while (true) {
        const LosTable t = LosTable::build_extended(1, len);
        if (t.b(len) > 5000) {
            CHECK(t.c(5000) == 1304422);
            CHECK(t.a(t.c(5000) - 1) == 4027410321LL);
            break;
        }
        len *= 2;
    }
}

TEST_CASE("structural invariants validate on a large table") {
    const LosTable t = LosTable::build(10000);
    t.validate();
}

TEST_CASE("first-difference law and convexity") {
    const LosTable t = LosTable::build(2000);
    for (std::int64_t i = 2; i < t.length(); ++i)
        CHECK(t.a(i + 1) - t.a(i) == t.b(i) + 1);
    for (std::int64_t i = 2; i + 1 < t.length(); ++i)
        CHECK(t.a(i + 2) - t.a(i + 1) >= t.a(i + 1) - t.a(i));
}

TEST_CASE("recurrence against the block index") {
    const LosTable t = LosTable::build(3000);
    for (std::int64_t i = 4; i <= t.length(); ++i)
        CHECK(t.a(i) == (t.b(i) + 1) * (i - t.a(t.b(i))));
}

TEST_CASE("b stays below its index and is nondecreasing") {
    const LosTable t = LosTable::build(3000);
    for (std::int64_t i = 2; i <= t.length(); ++i) {
        CHECK(t.b(i) < i);
        CHECK(t.b(i) >= t.b(i - 1));
    }
}

TEST_CASE("blocks partition the index range from 2") {
    const LosTable t = LosTable::build(500);
    std::int64_t expected_lo = 2;
    for (std::int64_t j = 1; j <= t.b_n(); ++j) {
        const IndexInterval blk = t.block(j);
        CHECK(blk.lo == expected_lo);
        CHECK_FALSE(blk.empty());
        for (std::int64_t i = blk.lo; i <= blk.hi; ++i) CHECK(t.b(i) == j);
        expected_lo = blk.hi + 1;
    }
    CHECK(expected_lo == t.n() + 1);
    // The block after the last full one starts past n.
    CHECK(t.block(t.b_n() + 1).empty());
}

TEST_CASE("accessors reject out-of-range indices") {
    const LosTable t = LosTable::build(10);
    CHECK_THROWS_AS(t.a(0), std::out_of_range);
    CHECK_THROWS_AS(t.a(t.length() + 1), std::out_of_range);
    CHECK_THROWS_AS(t.b(0), std::out_of_range);
    CHECK_THROWS_AS(t.c(-1), std::out_of_range);
    CHECK_THROWS_AS(t.c(t.length()), std::out_of_range);
    CHECK_THROWS_AS(t.block(0), std::out_of_range);
    CHECK_THROWS_AS(t.block(t.b_n() + 2), std::out_of_range);
    CHECK_THROWS_AS(LosTable::build(0), std::invalid_argument);
    CHECK_THROWS_AS(LosTable::build_extended(10, 5), std::invalid_argument);
}

TEST_CASE("every small prefix table validates") {
    for (std::int64_t n = 1; n <= 64; ++n) LosTable::build(n).validate();
}
