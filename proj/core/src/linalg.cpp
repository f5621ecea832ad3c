#include "los/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace los {
namespace linalg {

namespace {

void check_square(const Matrix& a) {
    for (const auto& row : a)
        if (row.size() != a.size()) throw std::invalid_argument("matrix not square");
}

}  // namespace

std::optional<Vector> solve(Matrix a, Vector rhs) {
    check_square(a);
    if (rhs.size() != a.size()) throw std::invalid_argument("rhs size mismatch");
    const std::size_t n = a.size();

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(rhs[piv], rhs[col]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[col][col];
            a[r][col] = 0;
            for (std::size_t k = col + 1; k < n; ++k)
                if (a[col][k] != 0) a[r][k] -= f * a[col][k];
            rhs[r] -= f * rhs[col];
        }
    }

    Vector x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational s = rhs[i];
        for (std::size_t k = i + 1; k < n; ++k)
            if (a[i][k] != 0) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

Rational det(Matrix a) {
    check_square(a);
    const std::size_t n = a.size();
    Rational d(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(a[piv], a[col]);
            d = -d;
        }
        d *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k)
                if (a[col][k] != 0) a[r][k] -= f * a[col][k];
        }
    }
    return d;
}

}  // namespace linalg
}  // namespace los
