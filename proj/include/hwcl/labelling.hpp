#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hwcl/graph.hpp"
#include "hwcl/types.hpp"

namespace hwcl {

/// Landmarks plus their exact pairwise distances.
///
/// The position of a landmark in `landmarks()` is its rank; label entries
/// refer to landmarks by rank.
class Highway {
 public:
  Highway() = default;
  Highway(std::vector<VertexId> landmarks, std::vector<Hops> dist);

  std::size_t size() const noexcept { return landmarks_.size(); }
  const std::vector<VertexId>& landmarks() const noexcept { return landmarks_; }
  VertexId landmark(std::size_t rank) const { return landmarks_.at(rank); }

  /// Distance between landmarks of rank i and j, or kInfinity.
  Hops distance(std::size_t i, std::size_t j) const noexcept {
    return dist_[i * landmarks_.size() + j];
  }
  /// Row-major k*k matrix.
  const std::vector<Hops>& matrix() const noexcept { return dist_; }

  friend bool operator==(const Highway&, const Highway&) = default;

 private:
  std::vector<VertexId> landmarks_;
  std::vector<Hops> dist_;
};

struct LabelEntry {
  std::uint16_t landmark_rank;
  std::uint8_t distance;

  friend bool operator==(const LabelEntry&, const LabelEntry&) = default;
  friend auto operator<=>(const LabelEntry&, const LabelEntry&) = default;
};

/// Per-vertex label lists in one flat buffer, each list sorted by rank.
class HighwayCoverLabelling {
 public:
  HighwayCoverLabelling() = default;

  /// Takes per-vertex lists. Each list must be strictly ascending by rank.
  explicit HighwayCoverLabelling(
      const std::vector<std::vector<LabelEntry>>& per_vertex);
  HighwayCoverLabelling(std::vector<std::uint64_t> offsets,
                        std::vector<LabelEntry> entries);

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::size_t size() const noexcept { return entries_.size(); }

  std::span<const LabelEntry> label(VertexId v) const;
  std::span<const LabelEntry> label_unchecked(VertexId v) const noexcept {
    return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
  }

  std::vector<std::vector<LabelEntry>> to_lists() const;

  friend bool operator==(const HighwayCoverLabelling&,
                         const HighwayCoverLabelling&) = default;

 private:
  std::vector<std::uint64_t> offsets_{0};
  std::vector<LabelEntry> entries_;
};

/// The k highest-degree vertices, ties by ascending id, in rank order.
std::vector<VertexId> select_landmarks(const Graph& g, std::size_t k);

struct BuildResult {
  HighwayCoverLabelling labelling;
  Highway highway;
};

/// Runs one pruned BFS per landmark and assembles the minimal highway
/// cover labelling together with the landmark distance matrix.
///
/// A non-landmark v receives (r, d) iff some shortest r-v path avoids all
/// other landmarks. Throws DomainError for empty/duplicate/out-of-range
/// landmarks and FormatError when a label distance exceeds 254.
BuildResult build(const Graph& g, std::span<const VertexId> landmarks);

/// Same output as `build`, running up to `workers` BFSs concurrently.
BuildResult build_parallel(const Graph& g, std::span<const VertexId> landmarks,
                           std::size_t workers);

std::span<const LabelEntry> label_of(const HighwayCoverLabelling& labelling,
                                     VertexId v);

struct LabellingStats {
  std::size_t size_total = 0;
  double avg_label_size = 0.0;  // size_total / (n - k)
  std::size_t max_label_size = 0;
  std::size_t k = 0;
};

LabellingStats labelling_stats(const HighwayCoverLabelling& labelling,
                               const Highway& highway);

}  // namespace hwcl
