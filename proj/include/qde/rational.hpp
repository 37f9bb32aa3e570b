#pragma once
// Arbitrary-precision rational scalars and text conversions.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace qde {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

double to_double(const BigRational& r);
std::string to_string(const BigRational& r);

// Accepts "a/b", integers, and decimal literals ("-1.25" -> -5/4).
BigRational parse_rational(const std::string& text);

}  // namespace qde
