#include "wnl/vertex_set.hpp"

#include <algorithm>

namespace wnl {

Integer vertex_class_count(int n, int m) {
  if (n < 1 || m < 1) throw ContractViolation("vertex_class_count: need n >= 1 and m >= 1");
  if (m > 8) throw CapacityError("vertex_class_count: at most 8 settings are supported");
  const long types = 1L << m;
  return binomial(n + types - 1, types - 1);
}

namespace {

std::uint64_t compositions(std::uint64_t total, std::uint64_t parts) {
  if (parts == 0) return total == 0 ? 1 : 0;
  return binomial_saturating(total + parts - 1, parts - 1);
}

struct Dfs {
  const ProfileIndex& index;
  std::size_t types;
  const VertexSet::Visitor& visit;
  std::vector<std::vector<std::int64_t>> level;  // level[j]: product over types < j
  std::vector<int> counts;
  std::vector<std::int64_t> scaled;
  std::size_t ordinal = 0;

  void emit() {
    const auto& poly = level[types];
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = poly[i + 1] * index.arrangement_weight(i + 1);
    visit(ordinal++, counts, scaled);
  }

  void run(std::size_t j, int remaining) {
    if (j + 1 == types) {
      counts[j] = remaining;
      auto& out = level[types];
      out = level[j];
      for (int t = 0; t < remaining; ++t) CorrelatorPolynomial::multiply_in_place(index, static_cast<unsigned>(j), out);
      emit();
      return;
    }
    // Powers of the factor for type j, highest multiplicity first.
    std::vector<std::vector<std::int64_t>> powers(static_cast<std::size_t>(remaining) + 1);
    powers[0] = level[j];
    for (int t = 1; t <= remaining; ++t) {
      powers[t] = powers[t - 1];
      CorrelatorPolynomial::multiply_in_place(index, static_cast<unsigned>(j), powers[t]);
    }
    for (int t = remaining; t >= 0; --t) {
      counts[j] = t;
      level[j + 1] = powers[t];
      run(j + 1, remaining - t);
    }
    counts[j] = 0;
  }
};

}  // namespace

VertexSet::VertexSet(int n, int m, VertexOptions options) {
  if (n > 20) throw CapacityError("build_vertices: exact vertex images need n <= 20");
  const Integer count = vertex_class_count(n, m);
  if (count > Integer(static_cast<unsigned long>(options.class_cap))) {
    throw CapacityError("build_vertices: " + to_string(count) + " strategy classes exceed the cap of " +
                        std::to_string(options.class_cap));
  }
  index_ = ProfileIndex::make(n, m);
  types_ = std::size_t{1} << m;
  classes_ = static_cast<std::size_t>(count.get_ui());

  const long double entries = static_cast<long double>(classes_) * static_cast<long double>(index_->size());
  if (entries > static_cast<long double>(options.materialize_budget)) return;

  counts_.reserve(classes_ * types_);
  scaled_.reserve(classes_ * index_->size());
  enumerate([&](std::size_t, std::span<const int> counts, std::span<const std::int64_t> image) {
    counts_.insert(counts_.end(), counts.begin(), counts.end());
    scaled_.insert(scaled_.end(), image.begin(), image.end());
  });
}

void VertexSet::enumerate(const Visitor& visit) const {
  Dfs dfs{*index_, types_, visit, {}, {}, {}};
  dfs.level.assign(types_ + 1, std::vector<std::int64_t>(index_->monomial_count(), 0));
  dfs.level[0][0] = 1;
  dfs.counts.assign(types_, 0);
  dfs.scaled.assign(index_->size(), 0);
  dfs.run(0, index_->parties());
}

void VertexSet::for_each(const Visitor& visit) const {
  if (!materialized()) {
    enumerate(visit);
    return;
  }
  const std::size_t d = index_->size();
  for (std::size_t v = 0; v < classes_; ++v) {
    visit(v, std::span<const int>(counts_.data() + v * types_, types_),
          std::span<const std::int64_t>(scaled_.data() + v * d, d));
  }
}

std::vector<int> VertexSet::counts_of(std::size_t ordinal) const {
  if (ordinal >= classes_) throw ContractViolation("VertexSet: class ordinal out of range");
  if (materialized()) {
    return std::vector<int>(counts_.begin() + static_cast<std::ptrdiff_t>(ordinal * types_),
                            counts_.begin() + static_cast<std::ptrdiff_t>((ordinal + 1) * types_));
  }
  std::vector<int> out(types_, 0);
  std::uint64_t rest = ordinal;
  int remaining = parties();
  for (std::size_t j = 0; j + 1 < types_; ++j) {
    for (int t = remaining; t >= 0; --t) {
      const std::uint64_t block = compositions(static_cast<std::uint64_t>(remaining - t), types_ - j - 1);
      if (rest < block) {
        out[j] = t;
        remaining -= t;
        break;
      }
      rest -= block;
    }
  }
  out[types_ - 1] = remaining;
  return out;
}

StrategyCounts VertexSet::strategy(std::size_t ordinal) const { return StrategyCounts(settings(), counts_of(ordinal)); }

std::vector<std::int64_t> VertexSet::scaled_image(std::size_t ordinal) const {
  if (materialized()) {
    if (ordinal >= classes_) throw ContractViolation("VertexSet: class ordinal out of range");
    const std::size_t d = index_->size();
    return std::vector<std::int64_t>(scaled_.begin() + static_cast<std::ptrdiff_t>(ordinal * d),
                                     scaled_.begin() + static_cast<std::ptrdiff_t>((ordinal + 1) * d));
  }
  return wnl::scaled_vertex_image(strategy(ordinal), *index_);
}

ExactSymVector VertexSet::image(std::size_t ordinal) const { return vertex_image(strategy(ordinal), index_); }

VertexSet build_vertices(int n, int m, VertexOptions options) { return VertexSet(n, m, options); }

}  // namespace wnl
