#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace wnl {

using Integer = mpz_class;
using Rational = mpq_class;

Integer factorial(unsigned n);

/// Binomial coefficient; zero whenever n < 0, k < 0 or k > n.
Integer binomial(long n, long k);

/// n! in 64 bits; n must not exceed 20.
std::int64_t factorial_i64(unsigned n);

/// C(n, k) saturated at UINT64_MAX.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k);

std::string to_string(const Integer& value);

Rational make_rational(long num, long den = 1);

/// Exact conversion of a finite double to a rational.
Rational rational_from_double(double value);

long double to_long_double(const Rational& value);

}  // namespace wnl
