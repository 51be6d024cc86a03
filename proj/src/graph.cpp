#include "hwcl/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

namespace hwcl {

namespace {

void check_vertex(const Graph& g, VertexId v) {
  if (v >= g.num_vertices()) {
    throw DomainError("vertex " + std::to_string(v) + " out of range (n=" +
                      std::to_string(g.num_vertices()) + ")");
  }
}

}  // namespace

Graph Graph::from_edges(std::span<const Edge> edges) {
  std::unordered_map<OriginalId, VertexId> dense;
  std::vector<OriginalId> original_ids;
  auto intern = [&](OriginalId id) {
    auto [it, inserted] =
        dense.try_emplace(id, static_cast<VertexId>(original_ids.size()));
    if (inserted) original_ids.push_back(id);
    return it->second;
  };

  std::vector<std::pair<VertexId, VertexId>> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) {
    VertexId u = intern(a);
    VertexId v = intern(b);
    if (u == v) continue;
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  const std::size_t n = original_ids.size();
  Graph g;
  g.original_ids_ = std::move(original_ids);
  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(arcs.size());
  for (const auto& [u, v] : arcs) {
    ++g.offsets_[u + 1];
    g.targets_.push_back(v);
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  return g;
}

Graph Graph::from_adjacency(std::vector<std::uint64_t> offsets,
                            std::vector<VertexId> targets,
                            std::vector<OriginalId> original_ids) {
  const std::size_t n = original_ids.size();
  if (offsets.size() != n + 1 || offsets.front() != 0 ||
      offsets.back() != targets.size() || targets.size() % 2 != 0) {
    throw DomainError("inconsistent adjacency arrays");
  }
  for (std::size_t u = 0; u < n; ++u) {
    if (offsets[u] > offsets[u + 1]) throw DomainError("offsets not monotone");
    for (std::uint64_t i = offsets[u]; i < offsets[u + 1]; ++i) {
      VertexId v = targets[i];
      if (v >= n || v == u) throw DomainError("bad neighbour entry");
      if (i > offsets[u] && targets[i - 1] >= v) {
        throw DomainError("neighbour list not strictly ascending");
      }
      auto first = targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
      auto last = targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
      if (!std::binary_search(first, last, static_cast<VertexId>(u))) {
        throw DomainError("adjacency not symmetric");
      }
    }
  }
  Graph g;
  g.offsets_ = std::move(offsets);
  g.targets_ = std::move(targets);
  g.original_ids_ = std::move(original_ids);
  return g;
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
  check_vertex(*this, v);
  return neighbors_unchecked(v);
}

std::size_t Graph::degree(VertexId v) const {
  check_vertex(*this, v);
  return offsets_[v + 1] - offsets_[v];
}

Graph::OriginalId Graph::original_id(VertexId v) const {
  check_vertex(*this, v);
  return original_ids_[v];
}

Graph Graph::induced_subgraph(const std::vector<bool>& keep) const {
  const std::size_t n = num_vertices();
  if (keep.size() != n) throw DomainError("mask size does not match graph");
  constexpr VertexId kDropped = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> remap(n, kDropped);
  Graph g;
  for (VertexId v = 0; v < n; ++v) {
    if (keep[v]) {
      remap[v] = static_cast<VertexId>(g.original_ids_.size());
      g.original_ids_.push_back(original_ids_[v]);
    }
  }
  g.offsets_.assign(1, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (remap[v] == kDropped) continue;
    for (VertexId w : neighbors_unchecked(v)) {
      // Renumbering is monotone, so lists stay sorted.
      if (remap[w] != kDropped) g.targets_.push_back(remap[w]);
    }
    g.offsets_.push_back(g.targets_.size());
  }
  return g;
}

Graph parse_edge_list(std::istream& in) {
  std::vector<Graph::Edge> edges;
  std::string line;
  std::size_t line_no = 0;

  auto parse_token = [&](std::string_view& rest) -> Graph::OriginalId {
    std::size_t start = rest.find_first_not_of(" \t\r");
    if (start == std::string_view::npos) {
      throw ParseError("expected two vertex ids", line_no);
    }
    rest.remove_prefix(start);
    std::size_t end = rest.find_first_of(" \t\r");
    std::string_view token = rest.substr(0, end);
    Graph::OriginalId value{};
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc::result_out_of_range) {
      throw ParseError("vertex id '" + std::string(token) +
                           "' exceeds 32-bit range",
                       line_no);
    }
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError("malformed vertex id '" + std::string(token) + "'",
                       line_no);
    }
    rest.remove_prefix(token.size());
    return value;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    std::size_t first = rest.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (rest[first] == '#' || rest[first] == '%') continue;
    Graph::OriginalId u = parse_token(rest);
    Graph::OriginalId v = parse_token(rest);
    if (rest.find_first_not_of(" \t\r") != std::string_view::npos) {
      throw ParseError("trailing tokens after edge", line_no);
    }
    edges.emplace_back(u, v);
  }
  if (edges.empty()) throw ParseError("no edges", 0);
  return Graph::from_edges(edges);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  // Block v lists edges (u, v) with u < v. A vertex with no smaller
  // neighbour is introduced by a self-loop line so that first-appearance
  // order, and therefore the dense numbering, survives a re-parse.
  const auto& ids = g.original_ids();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    auto nbrs = g.neighbors_unchecked(v);
    if (nbrs.empty() || nbrs.front() > v) {
      out << ids[v] << ' ' << ids[v] << '\n';
    }
    for (VertexId u : nbrs) {
      if (u >= v) break;
      out << ids[u] << ' ' << ids[v] << '\n';
    }
  }
}

Components connected_components(const Graph& g) {
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = g.num_vertices();
  Components c;
  c.component_of.assign(n, kUnset);
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < n; ++root) {
    if (c.component_of[root] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(c.sizes.size());
    std::size_t size = 0;
    c.component_of[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      ++size;
      for (VertexId w : g.neighbors_unchecked(u)) {
        if (c.component_of[w] == kUnset) {
          c.component_of[w] = id;
          stack.push_back(w);
        }
      }
    }
    c.sizes.push_back(size);
  }
  return c;
}

Graph largest_component(const Graph& g) {
  Components c = connected_components(g);
  if (c.sizes.size() <= 1) return g;
  auto best = static_cast<std::uint32_t>(
      std::max_element(c.sizes.begin(), c.sizes.end()) - c.sizes.begin());
  std::vector<bool> keep(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    keep[v] = c.component_of[v] == best;
  }
  return g.induced_subgraph(keep);
}

}  // namespace hwcl
