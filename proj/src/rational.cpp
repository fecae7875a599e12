#include "minsim/rational.hpp"

#include <stdexcept>

namespace minsim {

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) {
        return r.numerator().str();
    }
    return r.numerator().str() + "/" + r.denominator().str();
}

Rational rational_from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        return Rational(BigInt(std::string(s)), BigInt(1));
    }
    BigInt num{std::string(s.substr(0, slash))};
    BigInt den{std::string(s.substr(slash + 1))};
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator: " + std::string(s));
    }
    return Rational(num, den);
}

BigInt factorial(unsigned n) {
    BigInt out = 1;
    for (unsigned i = 2; i <= n; ++i) {
        out *= i;
    }
    return out;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    BigInt out = 1;
    for (unsigned i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

}  // namespace minsim
