#include "hwcl/oracle.hpp"

#include <algorithm>
#include <deque>

namespace hwcl::oracle {

namespace {

Hops plus(Hops a, Hops b) {
  return (a == kInfinity || b == kInfinity) ? kInfinity : a + b;
}

std::vector<bool> landmark_mask(const Graph& g, std::span<const VertexId> landmarks) {
  std::vector<bool> mask(g.num_vertices(), false);
  for (VertexId r : landmarks) {
    if (r >= g.num_vertices()) throw DomainError("landmark out of range");
    if (mask[r]) throw DomainError("duplicate landmark");
    mask[r] = true;
  }
  return mask;
}

}  // namespace

DistanceVector bfs_distance(const Graph& g, VertexId s) {
  if (s >= g.num_vertices()) throw DomainError("source out of range");
  DistanceVector out{s, std::vector<Hops>(g.num_vertices(), kInfinity)};
  std::deque<VertexId> queue{s};
  out.dist[s] = 0;
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (VertexId w : g.neighbors(u)) {
      if (out.dist[w] == kInfinity) {
        out.dist[w] = out.dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return out;
}

std::vector<Hops> floyd_warshall(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<Hops> d(n * n, kInfinity);
  for (VertexId u = 0; u < n; ++u) {
    d[u * n + u] = 0;
    for (VertexId w : g.neighbors(u)) d[u * n + w] = 1;
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i * n + j] = std::min(d[i * n + j], plus(d[i * n + m], d[m * n + j]));
      }
    }
  }
  return d;
}

Hops r_constrained_distance(const Graph& g, VertexId r, VertexId s, VertexId t) {
  auto from_r = bfs_distance(g, r);
  if (s >= g.num_vertices() || t >= g.num_vertices()) {
    throw DomainError("vertex out of range");
  }
  return plus(from_r.dist[s], from_r.dist[t]);
}

HighwayCoverLabelling reference_labelling(const Graph& g,
                                          std::span<const VertexId> landmarks) {
  const auto mask = landmark_mask(g, landmarks);
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<LabelEntry>> lists(n);
  for (std::size_t rank = 0; rank < landmarks.size(); ++rank) {
    const VertexId r = landmarks[rank];
    const auto d = bfs_distance(g, r).dist;
    // Process vertices by distance so every DAG predecessor is decided first.
    std::vector<VertexId> order;
    for (VertexId v = 0; v < n; ++v) {
      if (d[v] != kInfinity) order.push_back(v);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId a, VertexId b) { return d[a] < d[b]; });
    std::vector<bool> clean(n, false);
    clean[r] = true;
    for (VertexId v : order) {
      if (v == r || mask[v]) continue;
      for (VertexId u : g.neighbors(v)) {
        if (d[u] + 1 == d[v] && clean[u]) {
          clean[v] = true;
          break;
        }
      }
      if (clean[v]) {
        if (d[v] > kMaxLabelDistance) throw FormatError("label distance too large");
        lists[v].push_back({static_cast<std::uint16_t>(rank),
                            static_cast<std::uint8_t>(d[v])});
      }
    }
  }
  return HighwayCoverLabelling(lists);
}

Highway reference_highway(const Graph& g, std::span<const VertexId> landmarks) {
  landmark_mask(g, landmarks);
  const std::size_t k = landmarks.size();
  std::vector<Hops> matrix(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto d = bfs_distance(g, landmarks[i]).dist;
    for (std::size_t j = 0; j < k; ++j) matrix[i * k + j] = d[landmarks[j]];
  }
  return Highway(std::vector<VertexId>(landmarks.begin(), landmarks.end()),
                 std::move(matrix));
}

namespace {

/// Landmark rank at which vertex s fails the cover property, if any.
std::optional<std::size_t> failing_landmark(VertexId s, std::span<const LabelEntry> label,
                                            const Highway& highway,
                                            const std::vector<std::vector<Hops>>& rows) {
  for (std::size_t r = 0; r < highway.size(); ++r) {
    const Hops truth = rows[r][s];
    if (truth == kInfinity) continue;
    Hops best = kInfinity;
    for (const LabelEntry& e : label) {
      best = std::min(best, plus(e.distance, highway.distance(e.landmark_rank, r)));
    }
    if (best != truth) return r;
  }
  return std::nullopt;
}

std::vector<std::vector<Hops>> landmark_rows(const Graph& g, const Highway& highway) {
  std::vector<std::vector<Hops>> rows;
  for (VertexId r : highway.landmarks()) rows.push_back(bfs_distance(g, r).dist);
  return rows;
}

}  // namespace

CoverReport check_highway_cover(const Graph& g, const HighwayCoverLabelling& labelling,
                                const Highway& highway) {
  const auto mask = landmark_mask(g, highway.landmarks());
  const auto rows = landmark_rows(g, highway);
  for (VertexId s = 0; s < g.num_vertices(); ++s) {
    if (mask[s]) continue;
    if (auto r = failing_landmark(s, labelling.label(s), highway, rows)) {
      return {false, std::make_pair(s, *r)};
    }
  }
  return {};
}

bool check_minimality(const Graph& g, const HighwayCoverLabelling& labelling,
                      const Highway& highway) {
  if (!check_highway_cover(g, labelling, highway).ok) return false;
  const auto mask = landmark_mask(g, highway.landmarks());
  const auto rows = landmark_rows(g, highway);
  auto lists = labelling.to_lists();
  for (VertexId v = 0; v < lists.size(); ++v) {
    if (mask[v] && !lists[v].empty()) return false;  // landmarks need no label
    if (mask[v]) continue;
    for (std::size_t i = 0; i < lists[v].size(); ++i) {
      const LabelEntry removed = lists[v][i];
      lists[v].erase(lists[v].begin() + static_cast<std::ptrdiff_t>(i));
      // Only v's own label changed, so only v can start failing.
      const bool still_covers = !failing_landmark(v, lists[v], highway, rows);
      lists[v].insert(lists[v].begin() + static_cast<std::ptrdiff_t>(i), removed);
      if (still_covers) return false;
    }
  }
  return true;
}

}  // namespace hwcl::oracle
