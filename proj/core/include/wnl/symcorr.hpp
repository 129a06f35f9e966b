#pragma once

// Permutation-symmetric correlator coordinates.
//
// A correlator of an n-party, m-setting, two-outcome Bell scenario that is
// symmetrized over all party permutations depends only on how many parties
// use each setting. Such a multiset is a SettingProfile; the vector of all
// symmetrized correlators (order >= 1) is a SymVector. Stored values are
// normalized by n!, so s(profile) = S(profile) / n! lies in [-1, 1] for any
// local deterministic strategy.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wnl/errors.hpp"
#include "wnl/numeric.hpp"

namespace wnl {

/// Counts of parties assigned to each of the m settings.
struct SettingProfile {
  int parties = 0;
  std::vector<int> counts;

  int order() const;
  int identity_count() const { return parties - order(); }
  int settings() const { return static_cast<int>(counts.size()); }

  friend bool operator==(const SettingProfile&, const SettingProfile&) = default;
};

/// Human-readable label; m=2 uses the S^o_r notation ("S^3_1").
std::string profile_label(const SettingProfile& profile);

/// Canonical coordinate system for (n, m).
///
/// Monomial 0 is the order-0 coordinate (all parties on the identity); the
/// profiles 1..C(n+m,m)-1 follow in increasing order o, and within one order
/// in decreasing lexicographic order of (r_1, ..., r_m). For m = 2 this is
/// S^1_1, S^1_0; S^2_2, S^2_1, S^2_0; ...
///
/// Profile index i refers to monomial i + 1.
class ProfileIndex {
 public:
  static std::shared_ptr<const ProfileIndex> make(int n, int m);

  int parties() const { return n_; }
  int settings() const { return m_; }

  /// Number of profiles with order >= 1.
  std::size_t size() const { return monomials_ - 1; }
  std::size_t monomial_count() const { return monomials_; }

  SettingProfile profile(std::size_t i) const;
  std::span<const std::uint8_t> counts(std::size_t i) const { return monomial_counts(i + 1); }
  int order(std::size_t i) const { return monomial_order(i + 1); }

  std::span<const std::uint8_t> monomial_counts(std::size_t mono) const {
    return {counts_.data() + mono * m_, static_cast<std::size_t>(m_)};
  }
  int monomial_order(std::size_t mono) const { return orders_[mono]; }

  /// Monomial index of mono - e_j, or -1 when that count is already zero.
  std::int32_t lower(std::size_t mono, int j) const { return lower_[mono * m_ + j]; }

  /// r_0! * prod_j r_j! for a monomial; only available for n <= 20.
  std::int64_t arrangement_weight(std::size_t mono) const;

  /// Profile index for the given counts; throws ContractViolation if absent.
  std::size_t find(std::span<const int> counts) const;
  std::size_t find(const SettingProfile& profile) const { return find(profile.counts); }

 private:
  ProfileIndex(int n, int m);
  std::uint64_t key(std::span<const int> counts) const;

  int n_;
  int m_;
  std::size_t monomials_ = 0;
  std::vector<std::uint8_t> counts_;
  std::vector<int> orders_;
  std::vector<std::int32_t> lower_;
  std::vector<std::int64_t> weights_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

using ProfileIndexPtr = std::shared_ptr<const ProfileIndex>;

/// All profiles with 1 <= o <= n in canonical order.
std::vector<SettingProfile> enumerate_profiles(int n, int m);

/// Normalized permutation-symmetric correlator vector. The order-0
/// coordinate is implicit and equal to one.
template <class T>
class SymVector {
 public:
  SymVector(ProfileIndexPtr index, std::vector<T> values)
      : index_(std::move(index)), values_(std::move(values)) {
    if (!index_ || values_.size() != index_->size()) {
      throw ContractViolation("SymVector: value count does not match profile index");
    }
  }

  const ProfileIndex& index() const { return *index_; }
  const ProfileIndexPtr& index_ptr() const { return index_; }
  int parties() const { return index_->parties(); }
  int settings() const { return index_->settings(); }
  std::size_t size() const { return values_.size(); }

  const T& operator[](std::size_t i) const { return values_[i]; }
  const T& at(const SettingProfile& profile) const { return values_[index_->find(profile)]; }
  std::span<const T> values() const { return values_; }

  bool same_space(const ProfileIndex& other) const {
    return other.parties() == parties() && other.settings() == settings();
  }

 private:
  ProfileIndexPtr index_;
  std::vector<T> values_;
};

using ExactSymVector = SymVector<Rational>;
using RealSymVector = SymVector<double>;

RealSymVector to_real(const ExactSymVector& exact);

/// Local deterministic strategy class: multiplicities of the 2^m outcome
/// sign-vectors over the parties. Type code bit (m-1-j) set means setting j
/// (0-based) outputs -1; for m = 2 the codes 0..3 are the types
/// A=(+1,+1), B=(+1,-1), C=(-1,+1), D=(-1,-1).
class StrategyCounts {
 public:
  StrategyCounts(int m, std::vector<int> counts);
  static StrategyCounts from_tuple(int a, int b, int c, int d);

  int settings() const { return m_; }
  int parties() const { return n_; }
  std::size_t type_count() const { return counts_.size(); }
  int count(unsigned code) const { return counts_.at(code); }
  std::span<const int> counts() const { return counts_; }

  static int sign(unsigned code, int setting, int m) {
    return ((code >> (m - 1 - setting)) & 1U) ? -1 : 1;
  }

  friend bool operator==(const StrategyCounts&, const StrategyCounts&) = default;

 private:
  int m_;
  int n_;
  std::vector<int> counts_;
};

std::string to_string(const StrategyCounts& strategy);

/// Coefficients of prod_v (1 + sum_j x_j v_j)^{t_v}, truncated at total degree
/// n, laid out in the monomial order of a ProfileIndex. Built by repeated
/// multiplication with linear factors.
class CorrelatorPolynomial {
 public:
  explicit CorrelatorPolynomial(const ProfileIndex& index);

  void reset();
  /// Multiplies by (1 + sum_j sign_j(code) x_j).
  void multiply_type(unsigned code) { multiply_in_place(*index_, code, coeffs_); }
  static void multiply_in_place(const ProfileIndex& index, unsigned code, std::span<std::int64_t> coeffs);
  std::span<const std::int64_t> coefficients() const { return coeffs_; }
  void assign(std::span<const std::int64_t> coeffs);

 private:
  const ProfileIndex* index_;
  std::vector<std::int64_t> coeffs_;
};

/// n! * s(profile) for every profile of a deterministic strategy (n <= 20).
std::vector<std::int64_t> scaled_vertex_image(const StrategyCounts& strategy, const ProfileIndex& index);

/// The normalized symmetric correlator vector of a deterministic strategy.
ExactSymVector vertex_image(const StrategyCounts& strategy, ProfileIndexPtr index);
ExactSymVector vertex_image(const StrategyCounts& strategy);

/// perm(M^{o,r}(a,b,c,d)) / n! for m = 2, n <= 14, evaluated with the Ryser
/// formula. Independent of the generating-function route in vertex_image.
Rational vertex_image_permanent(const StrategyCounts& strategy, const SettingProfile& profile);

/// The +-1 matrix whose permanent is S^o_r for strategy (a,b,c,d): rows
/// n-o < u <= n-o+r use setting 1, rows beyond use setting 2, the rest the
/// identity; columns are grouped by type A, B, C, D.
std::vector<int> correlator_matrix(const StrategyCounts& strategy, int order, int r);

/// Closed-form S^o_1 / n! for m = 2.
Rational s_o1_closed_form(int a, int b, int c, int d, int order);

/// Linear functional alpha . S <= beta over symmetric correlators.
/// `alpha` is aligned with the profile index; `beta` and the values returned by
/// apply_functional are in the un-normalized scale, i.e. include the n!.
struct BellFunctional {
  ProfileIndexPtr index;
  std::vector<Rational> alpha;
  Rational beta;

  int parties() const { return index->parties(); }
  int settings() const { return index->settings(); }
  bool is_zero() const;
  const Rational& coefficient(const SettingProfile& profile) const { return alpha[index->find(profile)]; }
};

BellFunctional zero_functional(ProfileIndexPtr index);

/// n! * sum_i alpha_i s_i.
Rational apply_functional(const BellFunctional& func, const ExactSymVector& point);
long double apply_functional(const BellFunctional& func, const RealSymVector& point);

/// Renders "12 S^1_1 - 12 S^2_2 - ... <= beta" (m = 2) or a profile-list
/// form for other m.
std::string format_functional(const BellFunctional& func);

}  // namespace wnl
