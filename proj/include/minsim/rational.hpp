#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <string>
#include <string_view>

namespace minsim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

inline double to_double(const Rational& r) {
    namespace mp = boost::multiprecision;
    mp::cpp_rational q(mp::cpp_rational(r.numerator()) / mp::cpp_rational(r.denominator()));
    return q.convert_to<double>();
}

std::string to_string(const Rational& r);

// Parses "num/den" or a bare integer.
Rational rational_from_string(std::string_view s);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

}  // namespace minsim
