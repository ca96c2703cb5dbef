#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace sepi {

/// Exact rational backed by GMP's mpq_t. Always canonical: the denominator is
/// positive and gcd(|num|, den) = 1.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "p/q" or "p" (optional leading '-'). Throws InvalidInput on anything
/// else, including a zero denominator.
Rational parse_rational(std::string_view text);

/// Always "p/q", also for integers ("3/1"), so file formats stay uniform.
std::string to_string(const Rational& value);

}  // namespace sepi
