#pragma once

// The even-n family of two-setting symmetric Bell inequalities I_n . S <= beta_n
// violated by W states, with exact coefficients and local bounds.

#include <vector>

#include "wnl/symcorr.hpp"

namespace wnl {

struct FamilyConstants {
  int n = 0;
  /// F[k] and G[k] for k = 1..n/2; index 0 is unused.
  std::vector<Rational> F;
  std::vector<Rational> G;
  Rational w;
};

FamilyConstants family_constants(int n);

/// n = 2 is accepted but degenerate: the inequality is never violated.
inline bool family_degenerate(int n) { return n == 2; }

/// Coefficients of I_n in the (n, 2) profile index, with beta the local bound
/// n!(w_n - (n-2)(n+1)/2).
BellFunctional family_coefficients(int n);
Rational family_beta(int n);

/// I_n on the deterministic strategy (a, b, c, d) via the four-case closed form.
Rational family_classical_value(int a, int b, int c, int d);

/// The same value assembled from the three partial sums over the w-terms, the
/// F-terms and the G-terms.
struct FamilySplitValue {
  Rational part_w;
  Rational part_f;
  Rational part_g;
  Rational total() const { return part_w + part_f + part_g; }
};
FamilySplitValue family_classical_value_split(int a, int b, int c, int d);

struct FamilyLocalBound {
  Rational value;
  StrategyCounts argmax;
};

/// Maximum of I_n over all C(n+3, 3) strategy classes, evaluated on vertex
/// images; the earliest maximizer in canonical class order is reported.
FamilyLocalBound family_local_bound_enumerate(int n);

/// I_n on the pure W state and on the vacuum, Z and X settings.
Rational family_alpha_p(int n);
Rational family_alpha_q(int n);

/// I_n on rho(n, p) with Z and X settings.
Rational family_quantum_value(int n, const Rational& p);

/// (2n - 4) / (5n - 2).
Rational pcrit_family_formula(int n);

/// (beta - alpha.P) / (alpha.Q - alpha.P) from the ingredient values;
/// throws std::logic_error if it disagrees with pcrit_family_formula.
Rational pcrit_family(int n);

}  // namespace wnl
