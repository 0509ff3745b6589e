#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace thurston {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer ipow(Integer base, unsigned exp) {
    Integer r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

// Lowest terms, "p/q" with the "/q" omitted for integers.
inline std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline double rat_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

} // namespace thurston
