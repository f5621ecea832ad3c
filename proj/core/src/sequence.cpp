#include "los/sequence.hpp"

#include <stdexcept>
#include <string>

namespace los {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::logic_error("LosTable invariant violated: " + what);
}

}  // namespace

LosTable LosTable::build(std::int64_t n) {
    return build_extended(n, n + 2);
}

LosTable LosTable::build_extended(std::int64_t n, std::int64_t length) {
    if (n < 1) throw std::invalid_argument("LosTable: n must be >= 1");
    if (length < n + 2) throw std::invalid_argument("LosTable: length must be >= n + 2");

    LosTable t;
    t.n_ = n;
    const std::int64_t L = length;
    t.a_.assign(L + 1, 0);
    t.b_.assign(L + 1, 0);
    t.c_.assign(L, 0);

    t.a_[1] = 1;
    t.a_[2] = 2;
    t.a_[3] = 4;
    t.b_[1] = t.b_[2] = t.b_[3] = 1;
    t.c_[0] = 2;
    t.c_[1] = 3 * t.a_[2] - 2 * t.a_[1];  // = 4

    std::int64_t j = 1;
    for (std::int64_t i = 4; i <= L; ++i) {
        // Advance to the block containing i. c_j depends on a_{j+1}, which
        // is always below i at this point (b_i < i strictly).
        while (i >= t.c_[j]) {
            ++j;
            t.c_[j] = (j + 2) * t.a_[j + 1] - (j + 1) * t.a_[j];
        }
        t.a_[i] = (j + 1) * (i - t.a_[j]);
        t.b_[i] = j;
    }
    for (std::int64_t k = j + 1; k <= L - 1; ++k)
        t.c_[k] = (k + 2) * t.a_[k + 1] - (k + 1) * t.a_[k];
    return t;
}

std::int64_t LosTable::a(std::int64_t i) const {
    if (i < 1 || i > length()) throw std::out_of_range("LosTable::a index " + std::to_string(i));
    return a_[static_cast<std::size_t>(i)];
}

std::int64_t LosTable::b(std::int64_t i) const {
    if (i < 1 || i > length()) throw std::out_of_range("LosTable::b index " + std::to_string(i));
    return b_[static_cast<std::size_t>(i)];
}

std::int64_t LosTable::c(std::int64_t j) const {
    if (j < 0 || j > length() - 1) throw std::out_of_range("LosTable::c index " + std::to_string(j));
    return c_[static_cast<std::size_t>(j)];
}

IndexInterval LosTable::block(std::int64_t j) const {
    if (j < 1 || j > b_n() + 1)
        throw std::out_of_range("LosTable::block index " + std::to_string(j) +
                                " outside [1, b_n + 1]");
    return {c(j - 1), std::min(c(j) - 1, n_)};
}

void LosTable::validate() const {
    const std::int64_t L = length();
    if (a_[1] != 1 || a_[2] != 2 || a_[3] != 4) fail("base values a_1..a_3");
    if (c_[0] != 2) fail("c_0 = 2");
    if (b_[1] != 1 || b_[2] != 1 || b_[3] != 1) fail("b_i = 1 for i <= 3");

    for (std::int64_t i = 2; i <= L; ++i)
        if (a_[i] <= a_[i - 1]) fail("a strictly increasing at i=" + std::to_string(i));
    for (std::int64_t k = 1; k <= L - 1; ++k)
        if (c_[k] <= c_[k - 1]) fail("c strictly increasing at j=" + std::to_string(k));

    for (std::int64_t i = 2; i <= L - 1; ++i) {
        if (a_[i + 1] - a_[i] != b_[i] + 1)
            fail("first-difference law at i=" + std::to_string(i));
        if ((a_[i + 1] - a_[i]) - (a_[i] - a_[i - 1]) < 0)
            fail("second difference negative at i=" + std::to_string(i));
    }

    for (std::int64_t i = 4; i <= L; ++i) {
        const std::int64_t j = b_[i];
        if (j < 1 || j > L - 1) fail("b out of range at i=" + std::to_string(i));
        if (!(c_[j - 1] <= i && i < c_[j])) fail("block membership at i=" + std::to_string(i));
        if (a_[i] != (j + 1) * (i - a_[j])) fail("recurrence at i=" + std::to_string(i));
        if (b_[i] < b_[i - 1]) fail("b nondecreasing at i=" + std::to_string(i));
        if (j >= i) fail("b_i < i at i=" + std::to_string(i));
    }
    if (c_[1] != 4) fail("c_1 = 4");
}

}  // namespace los
