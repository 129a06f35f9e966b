#include "wnl/bellfamily.hpp"

#include <stdexcept>

#include "wnl/polytope.hpp"
#include "wnl/vertex_set.hpp"

namespace wnl {

namespace {

void require_even(int n, const char* who) {
  if (n < 2 || n % 2 != 0) throw ContractViolation(std::string(who) + ": n must be even and >= 2");
}

Rational pow2(int e) {
  Rational out(1);
  if (e >= 0) {
    mpz_mul_2exp(out.get_num_mpz_t(), out.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(out.get_den_mpz_t(), out.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return out;
}

Rational fact(int k) { return Rational(factorial(static_cast<unsigned>(k))); }

void check_tuple(int a, int b, int c, int d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) throw ContractViolation("family_classical_value: negative count");
  require_even(a + b + c + d, "family_classical_value");
}

}  // namespace

FamilyConstants family_constants(int n) {
  require_even(n, "family_constants");
  const int h = n / 2;
  FamilyConstants fc;
  fc.n = n;
  fc.F.assign(static_cast<std::size_t>(h) + 1, Rational(0));
  fc.G.assign(static_cast<std::size_t>(h) + 1, Rational(0));
  for (int k = 1; k <= h; ++k) {
    const int sign = k % 2 ? -1 : 1;
    fc.F[k] = make_rational(sign * (n - 2) * (n + 1 - 2 * k), 2) * Rational(binomial(h, k));
    fc.G[k] = make_rational(sign * (n + 2) * n, 2) * Rational(binomial(h - 1, k - 1));
  }
  fc.w = Rational(n * (n - 1) * (n + 2)) * pow2(n - 4) / Rational(binomial(n, h));
  fc.w.canonicalize();
  return fc;
}

Rational family_beta(int n) {
  const FamilyConstants fc = family_constants(n);
  return fact(n) * (fc.w - make_rational((n - 2) * (n + 1), 2));
}

BellFunctional family_coefficients(int n) {
  const FamilyConstants fc = family_constants(n);
  BellFunctional f = zero_functional(ProfileIndex::make(n, 2));
  const auto at = [&](int order, int r) -> Rational& {
    const int counts[2] = {r, order - r};
    return f.alpha[f.index->find(counts)];
  };
  for (int k = 1; k <= n / 2; ++k) {
    at(2 * k, 0) += fc.F[k];
    at(2 * k - 1, 1) += fc.G[k];
  }
  at(1, 1) += 2 * fc.w;
  at(2, 2) -= fc.w;
  f.beta = family_beta(n);
  return f;
}

Rational family_classical_value(int a, int b, int c, int d) {
  check_tuple(a, b, c, d);
  const int n = a + b + c + d;
  const int h = n / 2;
  int x = 0;
  if (a + c == b + d) {
    x = -4 + 4 * (c + d);
  } else if (a + c == b + d + 2) {
    x = -a + b + 3 * c + d - 2;
  } else if (a + c == b + d - 2) {
    x = a - b + c + 3 * d - 2;
  }
  const Rational k = fact(h) * fact(h) * pow2(n - 2) * (h + 1);
  const int cd = c + d;
  return k * x + k * (h * (n - 1) + 2 * cd * (1 - cd)) - Rational(h - 1) * fact(n + 1);
}

FamilySplitValue family_classical_value_split(int a, int b, int c, int d) {
  check_tuple(a, b, c, d);
  const int n = a + b + c + d;
  const int h = n / 2;
  int f1 = 0;
  if (2 * (b + d) == n) {
    f1 = 2;
  } else if (std::abs(2 * (b + d) - n) == 2) {
    f1 = 1;
  }
  int f2 = 0;
  if (a + c == b + d) {
    f2 = a + b - c - d;
  } else if (a + c == b + d + 2) {
    f2 = a - c;
  } else if (a + c == b + d - 2) {
    f2 = b - d;
  }
  const FamilyConstants fc = family_constants(n);
  const int cd = c + d;
  FamilySplitValue v;
  v.part_w = fc.w * fact(n - 2) * (n * (n - 1) + 4 * cd * (1 - cd));
  v.part_f = Rational(h - 1) * (pow2(n - 1) * (h + 1) * fact(h) * fact(h) * f1 - fact(n + 1));
  v.part_g = -Rational(f2) * pow2(n - 1) * fact(h) * fact(h + 1);
  return v;
}

FamilyLocalBound family_local_bound_enumerate(int n) {
  require_even(n, "family_local_bound_enumerate");
  if (n > 20) throw CapacityError("family_local_bound_enumerate: n above 20");
  const VertexSet vertices(n, 2);
  const BellFunctional f = family_coefficients(n);
  auto [value, argmax] = functional_max(f, vertices);
  return FamilyLocalBound{value, vertices.strategy(argmax)};
}

Rational family_alpha_p(int n) {
  const FamilyConstants fc = family_constants(n);
  return fact(n) * (fc.w - make_rational((n - 2) * (n - 1), 2));
}

Rational family_alpha_q(int n) {
  const FamilyConstants fc = family_constants(n);
  return fact(n) * (fc.w - make_rational(n * (n + 2), 2));
}

Rational family_quantum_value(int n, const Rational& p) {
  if (p < 0 || p > 1) throw ContractViolation("family_quantum_value: p outside [0, 1]");
  return (1 - p) * family_alpha_p(n) + p * family_alpha_q(n);
}

Rational pcrit_family_formula(int n) {
  require_even(n, "pcrit_family");
  return make_rational(2L * n - 4, 5L * n - 2);
}

Rational pcrit_family(int n) {
  const Rational beta = family_beta(n);
  const Rational ap = family_alpha_p(n);
  const Rational aq = family_alpha_q(n);
  Rational p = (beta - ap) / (aq - ap);
  p.canonicalize();
  if (p != pcrit_family_formula(n)) throw std::logic_error("pcrit_family: ingredient values disagree with the closed form");
  return p;
}

}  // namespace wnl
