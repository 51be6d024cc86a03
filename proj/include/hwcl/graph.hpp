#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "hwcl/types.hpp"

namespace hwcl {

/// Immutable undirected unweighted graph in offset/target adjacency form.
///
/// Vertices are dense ids 0..n-1 assigned in order of first appearance in
/// the source; `original_id` maps them back. Neighbour lists are strictly
/// ascending, symmetric, and free of self-loops and duplicates.
class Graph {
 public:
  using OriginalId = std::uint32_t;
  using Edge = std::pair<OriginalId, OriginalId>;

  Graph() = default;

  /// Normalizes an edge list: symmetrizes, drops self-loops, merges
  /// parallel edges. Endpoints of self-loops still become vertices.
  static Graph from_edges(std::span<const Edge> edges);

  /// Builds directly from dense adjacency. `offsets`/`targets` must already
  /// satisfy every class invariant; this is checked.
  static Graph from_adjacency(std::vector<std::uint64_t> offsets,
                              std::vector<VertexId> targets,
                              std::vector<OriginalId> original_ids);

  std::size_t num_vertices() const noexcept { return original_ids_.size(); }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const;
  std::size_t degree(VertexId v) const;

  /// Unchecked variants for hot loops.
  std::span<const VertexId> neighbors_unchecked(VertexId v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }

  OriginalId original_id(VertexId v) const;
  const std::vector<OriginalId>& original_ids() const noexcept {
    return original_ids_;
  }
  const std::vector<std::uint64_t>& offsets() const noexcept { return offsets_; }
  const std::vector<VertexId>& targets() const noexcept { return targets_; }

  /// Subgraph induced by vertices with `keep[v]`, renumbered preserving
  /// relative order. Original ids carry over.
  Graph induced_subgraph(const std::vector<bool>& keep) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::uint64_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<OriginalId> original_ids_;
};

/// Reads "u v" lines; '#' and '%' start comment lines; blank lines allowed.
/// Throws ParseError on malformed tokens or when no edge line is present.
Graph parse_edge_list(std::istream& in);

/// Emits an edge list that re-parses to an identical Graph.
void write_edge_list(const Graph& g, std::ostream& out);

struct Components {
  std::vector<std::uint32_t> component_of;  // per vertex, dense from 0
  std::vector<std::size_t> sizes;           // per component id
};

/// Component ids are assigned in order of their smallest vertex.
Components connected_components(const Graph& g);

/// Largest connected component (ties: lowest component id).
Graph largest_component(const Graph& g);

}  // namespace hwcl
