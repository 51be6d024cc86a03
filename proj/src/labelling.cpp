#include "hwcl/labelling.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <string>
#include <thread>

namespace hwcl {

Highway::Highway(std::vector<VertexId> landmarks, std::vector<Hops> dist)
    : landmarks_(std::move(landmarks)), dist_(std::move(dist)) {
  if (dist_.size() != landmarks_.size() * landmarks_.size()) {
    throw DomainError("highway matrix must be k*k");
  }
}

HighwayCoverLabelling::HighwayCoverLabelling(
    const std::vector<std::vector<LabelEntry>>& per_vertex) {
  offsets_.reserve(per_vertex.size() + 1);
  for (const auto& list : per_vertex) {
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i - 1].landmark_rank >= list[i].landmark_rank) {
        throw DomainError("label entries must be strictly ascending by rank");
      }
    }
    entries_.insert(entries_.end(), list.begin(), list.end());
    offsets_.push_back(entries_.size());
  }
}

HighwayCoverLabelling::HighwayCoverLabelling(std::vector<std::uint64_t> offsets,
                                             std::vector<LabelEntry> entries)
    : offsets_(std::move(offsets)), entries_(std::move(entries)) {
  if (offsets_.empty() || offsets_.front() != 0 ||
      offsets_.back() != entries_.size()) {
    throw DomainError("inconsistent label offsets");
  }
}

std::span<const LabelEntry> HighwayCoverLabelling::label(VertexId v) const {
  if (v >= num_vertices()) {
    throw DomainError("vertex " + std::to_string(v) + " out of range");
  }
  return label_unchecked(v);
}

std::vector<std::vector<LabelEntry>> HighwayCoverLabelling::to_lists() const {
  std::vector<std::vector<LabelEntry>> out(num_vertices());
  for (VertexId v = 0; v < num_vertices(); ++v) {
    auto l = label_unchecked(v);
    out[v].assign(l.begin(), l.end());
  }
  return out;
}

std::vector<VertexId> select_landmarks(const Graph& g, std::size_t k) {
  const std::size_t n = g.num_vertices();
  if (k == 0 || k >= n) {
    throw DomainError("landmark count must satisfy 1 <= k < n (k=" +
                      std::to_string(k) + ", n=" + std::to_string(n) + ")");
  }
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  auto by_degree = [&](VertexId a, VertexId b) {
    std::size_t da = g.degree(a), db = g.degree(b);
    return da != db ? da > db : a < b;
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), by_degree);
  order.resize(k);
  return order;
}

namespace {

constexpr std::uint32_t kNotLandmark = std::numeric_limits<std::uint32_t>::max();

struct LandmarkRun {
  std::vector<std::pair<VertexId, std::uint8_t>> labelled;
  std::vector<Hops> highway_row;
};

/// Reusable state for the two-queue pruned BFS. Visited marks are
/// epoch-tagged so successive runs need no O(n) clear.
class PrunedBfs {
 public:
  PrunedBfs(const Graph& g, const std::vector<std::uint32_t>& rank_of,
            std::size_t k)
      : g_(g), rank_of_(rank_of), k_(k), visited_(g.num_vertices(), 0) {}

  LandmarkRun run(VertexId root) {
    if (++epoch_ == 0) {
      std::fill(visited_.begin(), visited_.end(), 0);
      epoch_ = 1;
    }
    LandmarkRun out;
    out.highway_row.assign(k_, kInfinity);
    out.highway_row[rank_of_[root]] = 0;
    std::size_t landmarks_found = 1;

    label_q_.assign(1, root);
    prune_q_.clear();
    visited_[root] = epoch_;
    Hops depth = 0;

    // Landmarks are only reached through the prune frontier once the label
    // frontier dies out, so keep going until all reachable ones are seen.
    while (!label_q_.empty() || (!prune_q_.empty() && landmarks_found < k_)) {
      next_label_.clear();
      next_prune_.clear();
      const Hops child_depth = depth + 1;
      for (VertexId u : label_q_) {
        for (VertexId v : g_.neighbors_unchecked(u)) {
          if (visited_[v] == epoch_) continue;
          visited_[v] = epoch_;
          if (rank_of_[v] != kNotLandmark) {
            out.highway_row[rank_of_[v]] = child_depth;
            ++landmarks_found;
            next_prune_.push_back(v);
          } else {
            if (child_depth > kMaxLabelDistance) {
              throw FormatError("label distance " + std::to_string(child_depth) +
                                " exceeds the 8-bit limit of " +
                                std::to_string(kMaxLabelDistance));
            }
            out.labelled.emplace_back(v, static_cast<std::uint8_t>(child_depth));
            next_label_.push_back(v);
          }
        }
      }
      for (VertexId u : prune_q_) {
        for (VertexId v : g_.neighbors_unchecked(u)) {
          if (visited_[v] == epoch_) continue;
          visited_[v] = epoch_;
          if (rank_of_[v] != kNotLandmark) {
            out.highway_row[rank_of_[v]] = child_depth;
            ++landmarks_found;
          }
          next_prune_.push_back(v);
        }
      }
      label_q_.swap(next_label_);
      prune_q_.swap(next_prune_);
      depth = child_depth;
    }
    return out;
  }

 private:
  const Graph& g_;
  const std::vector<std::uint32_t>& rank_of_;
  std::size_t k_;
  std::vector<std::uint32_t> visited_;
  std::uint32_t epoch_ = 0;
  std::vector<VertexId> label_q_, prune_q_, next_label_, next_prune_;
};

std::vector<std::uint32_t> rank_table(const Graph& g,
                                      std::span<const VertexId> landmarks) {
  if (landmarks.empty()) throw DomainError("landmark list is empty");
  if (landmarks.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw DomainError("too many landmarks (max 65535)");
  }
  std::vector<std::uint32_t> rank_of(g.num_vertices(), kNotLandmark);
  for (std::size_t i = 0; i < landmarks.size(); ++i) {
    VertexId r = landmarks[i];
    if (r >= g.num_vertices()) {
      throw DomainError("landmark " + std::to_string(r) + " out of range");
    }
    if (rank_of[r] != kNotLandmark) {
      throw DomainError("duplicate landmark " + std::to_string(r));
    }
    rank_of[r] = static_cast<std::uint32_t>(i);
  }
  return rank_of;
}

BuildResult merge(const Graph& g, std::span<const VertexId> landmarks,
                  std::vector<LandmarkRun>& runs) {
  const std::size_t n = g.num_vertices();
  const std::size_t k = landmarks.size();
  std::vector<std::uint64_t> offsets(n + 1, 0);
  for (const auto& run : runs) {
    for (const auto& [v, d] : run.labelled) ++offsets[v + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<LabelEntry> entries(offsets.back());
  std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
  // Visiting runs in rank order leaves every list sorted by rank.
  for (std::size_t rank = 0; rank < k; ++rank) {
    for (const auto& [v, d] : runs[rank].labelled) {
      entries[cursor[v]++] = {static_cast<std::uint16_t>(rank), d};
    }
    runs[rank].labelled = {};
  }
  std::vector<Hops> matrix(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    std::copy(runs[i].highway_row.begin(), runs[i].highway_row.end(),
              matrix.begin() + static_cast<std::ptrdiff_t>(i * k));
  }
  return {HighwayCoverLabelling(std::move(offsets), std::move(entries)),
          Highway(std::vector<VertexId>(landmarks.begin(), landmarks.end()),
                  std::move(matrix))};
}

}  // namespace

BuildResult build(const Graph& g, std::span<const VertexId> landmarks) {
  auto rank_of = rank_table(g, landmarks);
  PrunedBfs bfs(g, rank_of, landmarks.size());
  std::vector<LandmarkRun> runs;
  runs.reserve(landmarks.size());
  for (VertexId r : landmarks) runs.push_back(bfs.run(r));
  return merge(g, landmarks, runs);
}

BuildResult build_parallel(const Graph& g, std::span<const VertexId> landmarks,
                           std::size_t workers) {
  if (workers == 0) throw DomainError("worker count must be at least 1");
  auto rank_of = rank_table(g, landmarks);
  const std::size_t k = landmarks.size();
  std::vector<LandmarkRun> runs(k);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(std::min(workers, k));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < errors.size(); ++w) {
      pool.emplace_back([&, w] {
        try {
          PrunedBfs bfs(g, rank_of, k);
          for (std::size_t i = next++; i < k; i = next++) {
            runs[i] = bfs.run(landmarks[i]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
          next = k;
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return merge(g, landmarks, runs);
}

std::span<const LabelEntry> label_of(const HighwayCoverLabelling& labelling,
                                     VertexId v) {
  return labelling.label(v);
}

LabellingStats labelling_stats(const HighwayCoverLabelling& labelling,
                               const Highway& highway) {
  LabellingStats s;
  s.size_total = labelling.size();
  s.k = highway.size();
  for (VertexId v = 0; v < labelling.num_vertices(); ++v) {
    s.max_label_size = std::max(s.max_label_size, labelling.label_unchecked(v).size());
  }
  const std::size_t unlabelled = labelling.num_vertices() - std::min(
      labelling.num_vertices(), s.k);
  s.avg_label_size =
      unlabelled ? static_cast<double>(s.size_total) / static_cast<double>(unlabelled)
                 : 0.0;
  return s;
}

}  // namespace hwcl
