#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hwcl/graph.hpp"
#include "hwcl/labelling.hpp"

/// Brute-force reference implementations. Slow on purpose; they share no
/// code with the labelling or query paths they are used to check.
namespace hwcl::oracle {

struct DistanceVector {
  VertexId source = 0;
  std::vector<Hops> dist;  // kInfinity when unreachable
};

DistanceVector bfs_distance(const Graph& g, VertexId s);

/// All-pairs distances by Floyd-Warshall, row-major n*n. Cubic; n <= ~200.
std::vector<Hops> floyd_warshall(const Graph& g);

/// Length of the shortest s-t walk forced through r: d(s,r) + d(r,t).
Hops r_constrained_distance(const Graph& g, VertexId r, VertexId s, VertexId t);

/// Labelling built from the definition: for each landmark, v gets an entry
/// iff v is reachable from r along some shortest path whose internal
/// vertices are all non-landmarks.
HighwayCoverLabelling reference_labelling(const Graph& g,
                                          std::span<const VertexId> landmarks);

/// Highway matrix from one plain BFS per landmark.
Highway reference_highway(const Graph& g, std::span<const VertexId> landmarks);

struct CoverReport {
  bool ok = true;
  /// (vertex, landmark rank) where the cover property fails.
  std::optional<std::pair<VertexId, std::size_t>> witness;
};

/// Checks that every landmark distance of every non-landmark is recovered
/// as min over its entries (r_i, d) of d + highway(r_i, r).
CoverReport check_highway_cover(const Graph& g, const HighwayCoverLabelling& labelling,
                                const Highway& highway);

/// True iff deleting any single entry makes check_highway_cover fail.
bool check_minimality(const Graph& g, const HighwayCoverLabelling& labelling,
                      const Highway& highway);

}  // namespace hwcl::oracle
