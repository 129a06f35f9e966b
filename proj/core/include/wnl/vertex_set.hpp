#pragma once

// Vertices of the symmetric local polytope: one entry per multiset of local
// deterministic strategy types (stars and bars over the 2^m sign vectors).

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wnl/symcorr.hpp"

namespace wnl {

struct VertexOptions {
  /// Largest number of strategy classes accepted.
  std::uint64_t class_cap = 5'000'000;
  /// Images are materialized when classes * profiles stays below this;
  /// larger sets are re-enumerated on every scan.
  std::uint64_t materialize_budget = 20'000'000;
};

/// C(n + 2^m - 1, 2^m - 1).
Integer vertex_class_count(int n, int m);

class VertexSet {
 public:
  /// Visitor arguments: class ordinal, type multiplicities, n! * image.
  using Visitor = std::function<void(std::size_t, std::span<const int>, std::span<const std::int64_t>)>;

  VertexSet(int n, int m, VertexOptions options = {});

  int parties() const { return index_->parties(); }
  int settings() const { return index_->settings(); }
  const ProfileIndexPtr& index_ptr() const { return index_; }
  const ProfileIndex& index() const { return *index_; }
  std::size_t size() const { return classes_; }
  std::size_t type_count() const { return types_; }
  bool materialized() const { return !scaled_.empty(); }

  /// Visits every class in canonical order: multiplicity tuples in
  /// decreasing lexicographic order, starting from (n, 0, ..., 0).
  void for_each(const Visitor& visit) const;

  StrategyCounts strategy(std::size_t ordinal) const;
  /// n! * image of one class. Cheap for materialized sets, a fresh
  /// polynomial expansion otherwise.
  std::vector<std::int64_t> scaled_image(std::size_t ordinal) const;
  ExactSymVector image(std::size_t ordinal) const;

 private:
  void enumerate(const Visitor& visit) const;
  std::vector<int> counts_of(std::size_t ordinal) const;

  ProfileIndexPtr index_;
  std::size_t types_;
  std::size_t classes_;
  std::vector<int> counts_;
  std::vector<std::int64_t> scaled_;
};

/// All vertex classes of the (n, m) symmetric local polytope.
VertexSet build_vertices(int n, int m, VertexOptions options = {});

}  // namespace wnl
