#include "wnl/numeric.hpp"

#include <cmath>
#include <limits>

#include "wnl/errors.hpp"

namespace wnl {

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

std::int64_t factorial_i64(unsigned n) {
  if (n > 20) throw CapacityError("factorial_i64: n! overflows 64 bits for n > 20");
  std::int64_t out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(acc);
}

std::string to_string(const Integer& value) { return value.get_str(); }

Rational make_rational(long num, long den) {
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw ContractViolation("rational_from_double: non-finite value");
  Rational out;
  mpq_set_d(out.get_mpq_t(), value);
  return out;
}

long double to_long_double(const Rational& value) {
  // mpq_get_d truncates to double; split numerator/denominator for a little
  // more headroom on huge operands.
  const Integer& num = value.get_num();
  const Integer& den = value.get_den();
  long exp_num = 0;
  long exp_den = 0;
  const double mant_num = mpz_get_d_2exp(&exp_num, num.get_mpz_t());
  const double mant_den = mpz_get_d_2exp(&exp_den, den.get_mpz_t());
  return std::ldexp(static_cast<long double>(mant_num) / mant_den,
                    static_cast<int>(exp_num - exp_den));
}

}  // namespace wnl
