#pragma once

#include <cstdint>
#include <vector>

#include "hwcl/graph.hpp"
#include "hwcl/labelling.hpp"
#include "hwcl/types.hpp"

namespace hwcl {

/// Per-query working memory for the bidirectional search. Visited marks
/// are epoch-tagged, so one scratch serves any number of queries but must
/// not be shared by two queries in flight.
class SearchScratch {
 public:
  SearchScratch() = default;
  explicit SearchScratch(std::size_t n) { resize(n); }

 private:
  friend class QueryEngine;

  void resize(std::size_t n) {
    if (forward_mark_.size() != n) {
      forward_mark_.assign(n, 0);
      reverse_mark_.assign(n, 0);
      epoch_ = 0;
    }
  }
  std::uint32_t next_epoch();

  std::vector<std::uint32_t> forward_mark_;
  std::vector<std::uint32_t> reverse_mark_;
  std::uint32_t epoch_ = 0;
  std::vector<VertexId> forward_q_, reverse_q_, next_q_;
};

enum class Via : std::uint8_t {
  kIdentity,        // s == t
  kLandmarkBound,   // landmark endpoint, or the bound was reached
  kSearchMet,       // the bidirectional search found a shorter path
  kUnreachable,
};

struct DistanceResult {
  Hops distance = kInfinity;
  Via via = Via::kUnreachable;
};

/// Read-only query bundle: graph, labelling, highway and landmark lookup.
/// Concurrent queries are safe as long as each uses its own SearchScratch.
class QueryEngine {
 public:
  QueryEngine(Graph graph, HighwayCoverLabelling labelling, Highway highway);

  const Graph& graph() const noexcept { return graph_; }
  const HighwayCoverLabelling& labelling() const noexcept { return labelling_; }
  const Highway& highway() const noexcept { return highway_; }

  bool is_landmark(VertexId v) const noexcept { return rank_of_[v] != kNoRank; }

  /// Label/highway upper bound on d(s, t). Landmark endpoints give the
  /// exact distance. Throws DomainError when s == t.
  ///
  /// With `common_landmark_shortcut`, landmarks shared by both labels are
  /// only paired with themselves; the cross terms they would generate can
  /// never be smaller.
  Hops upper_bound(VertexId s, VertexId t,
                   bool common_landmark_shortcut = true) const;

  /// Distance-bounded bidirectional BFS on the graph with landmarks removed.
  /// Returns the distance there if it is below `bound`, `bound` if the
  /// search radius reaches it, kInfinity if a frontier dies first.
  Hops bounded_search(VertexId s, VertexId t, Hops bound,
                      SearchScratch& scratch) const;

  DistanceResult distance(VertexId s, VertexId t, SearchScratch& scratch) const;
  DistanceResult distance(VertexId s, VertexId t) const;

  SearchScratch make_scratch() const { return SearchScratch(graph_.num_vertices()); }

 private:
  static constexpr std::uint32_t kNoRank = std::numeric_limits<std::uint32_t>::max();

  void check_vertex(VertexId v) const;

  Graph graph_;
  HighwayCoverLabelling labelling_;
  Highway highway_;
  std::vector<std::uint32_t> rank_of_;
};

/// Fraction of uniformly sampled connected pairs (s != t) whose upper bound
/// already equals the exact distance. Deterministic for a fixed seed.
double estimate_pair_coverage(const QueryEngine& engine, std::size_t samples,
                              std::uint64_t seed);

/// Same ratio over every unordered connected pair.
double exact_pair_coverage(const QueryEngine& engine);

}  // namespace hwcl
