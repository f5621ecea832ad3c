#include "los/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace los {

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    return make_rational(BigInt(num), BigInt(den));
}

Rational inv_square(std::int64_t v) {
    if (v == 0) throw std::invalid_argument("inv_square(0)");
    BigInt b(v);
    // num = 1, so the pair is already coprime; no canonicalize needed.
    return Rational(BigInt(1), b * b);
}

std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = s.find('/');
    const std::string num(s.substr(0, slash));
    std::string den = slash == std::string_view::npos
                          ? "1"
                          : std::string(s.substr(slash + 1));
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (k == t.size()) return false;
        for (; k < t.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
        return true;
    };
    if (!valid_int(num) || !valid_int(den))
        throw std::invalid_argument("malformed rational literal: " + std::string(s));
    return make_rational(BigInt(num), BigInt(den));
}

}  // namespace los
