#include "hwcl/query.hpp"

#include <algorithm>
#include <string>

#include "hwcl/random.hpp"

namespace hwcl {

namespace {

Hops add_hops(Hops a, Hops b) noexcept {
  return (a == kInfinity || b == kInfinity) ? kInfinity : a + b;
}

}  // namespace

std::uint32_t SearchScratch::next_epoch() {
  if (++epoch_ == 0) {
    std::fill(forward_mark_.begin(), forward_mark_.end(), 0);
    std::fill(reverse_mark_.begin(), reverse_mark_.end(), 0);
    epoch_ = 1;
  }
  return epoch_;
}

QueryEngine::QueryEngine(Graph graph, HighwayCoverLabelling labelling,
                         Highway highway)
    : graph_(std::move(graph)),
      labelling_(std::move(labelling)),
      highway_(std::move(highway)),
      rank_of_(graph_.num_vertices(), kNoRank) {
  if (labelling_.num_vertices() != graph_.num_vertices()) {
    throw DomainError("labelling and graph disagree on vertex count");
  }
  for (std::size_t i = 0; i < highway_.size(); ++i) {
    VertexId r = highway_.landmark(i);
    if (r >= graph_.num_vertices() || rank_of_[r] != kNoRank) {
      throw DomainError("invalid landmark list");
    }
    rank_of_[r] = static_cast<std::uint32_t>(i);
  }
  for (VertexId v = 0; v < graph_.num_vertices(); ++v) {
    for (const LabelEntry& e : labelling_.label_unchecked(v)) {
      if (e.landmark_rank >= highway_.size()) {
        throw DomainError("label entry refers to unknown landmark rank");
      }
    }
  }
}

void QueryEngine::check_vertex(VertexId v) const {
  if (v >= graph_.num_vertices()) {
    throw DomainError("vertex " + std::to_string(v) + " out of range");
  }
}

Hops QueryEngine::upper_bound(VertexId s, VertexId t,
                              bool common_landmark_shortcut) const {
  check_vertex(s);
  check_vertex(t);
  if (s == t) throw DomainError("upper_bound requires s != t");

  const bool s_landmark = is_landmark(s);
  const bool t_landmark = is_landmark(t);
  if (s_landmark && t_landmark) return highway_.distance(rank_of_[s], rank_of_[t]);
  if (s_landmark || t_landmark) {
    const std::uint32_t rank = s_landmark ? rank_of_[s] : rank_of_[t];
    Hops best = kInfinity;
    for (const LabelEntry& e : labelling_.label_unchecked(s_landmark ? t : s)) {
      best = std::min(best, add_hops(highway_.distance(rank, e.landmark_rank),
                                     e.distance));
    }
    return best;
  }

  auto ls = labelling_.label_unchecked(s);
  auto lt = labelling_.label_unchecked(t);
  Hops best = kInfinity;

  if (!common_landmark_shortcut) {
    for (const LabelEntry& a : ls) {
      for (const LabelEntry& b : lt) {
        Hops via = add_hops(highway_.distance(a.landmark_rank, b.landmark_rank),
                            Hops{a.distance} + b.distance);
        best = std::min(best, via);
      }
    }
    return best;
  }

  // Merge-join on shared landmarks; whatever is left unshared is paired
  // through the highway.
  thread_local std::vector<LabelEntry> only_s, only_t;
  only_s.clear();
  only_t.clear();
  std::size_t i = 0, j = 0;
  while (i < ls.size() && j < lt.size()) {
    if (ls[i].landmark_rank == lt[j].landmark_rank) {
      best = std::min(best, Hops{ls[i].distance} + lt[j].distance);
      ++i;
      ++j;
    } else if (ls[i].landmark_rank < lt[j].landmark_rank) {
      only_s.push_back(ls[i++]);
    } else {
      only_t.push_back(lt[j++]);
    }
  }
  only_s.insert(only_s.end(), ls.begin() + static_cast<std::ptrdiff_t>(i), ls.end());
  only_t.insert(only_t.end(), lt.begin() + static_cast<std::ptrdiff_t>(j), lt.end());
  for (const LabelEntry& a : only_s) {
    for (const LabelEntry& b : only_t) {
      Hops via = add_hops(highway_.distance(a.landmark_rank, b.landmark_rank),
                          Hops{a.distance} + b.distance);
      best = std::min(best, via);
    }
  }
  return best;
}

Hops QueryEngine::bounded_search(VertexId s, VertexId t, Hops bound,
                                 SearchScratch& scratch) const {
  check_vertex(s);
  check_vertex(t);
  if (s == t) throw DomainError("bounded_search requires s != t");
  if (is_landmark(s) || is_landmark(t)) {
    throw DomainError("bounded_search endpoints must not be landmarks");
  }
  scratch.resize(graph_.num_vertices());
  const std::uint32_t epoch = scratch.next_epoch();
  auto& fmark = scratch.forward_mark_;
  auto& rmark = scratch.reverse_mark_;
  auto& fq = scratch.forward_q_;
  auto& rq = scratch.reverse_q_;
  auto& next = scratch.next_q_;

  fmark[s] = epoch;
  rmark[t] = epoch;
  fq.assign(1, s);
  rq.assign(1, t);
  std::size_t visited_s = 1, visited_t = 1;
  Hops ds = 0, dt = 0;

  // Expands one whole level of `queue`; true if it touched the other side.
  auto expand = [&](std::vector<VertexId>& queue, std::vector<std::uint32_t>& own,
                    const std::vector<std::uint32_t>& other,
                    std::size_t& visited) {
    next.clear();
    for (VertexId v : queue) {
      for (VertexId w : graph_.neighbors_unchecked(v)) {
        if (rank_of_[w] != kNoRank) continue;
        if (other[w] == epoch) return true;
        if (own[w] == epoch) continue;
        own[w] = epoch;
        ++visited;
        next.push_back(w);
      }
    }
    queue.swap(next);
    return false;
  };

  while (!fq.empty() && !rq.empty()) {
    if (visited_s <= visited_t) {
      if (expand(fq, fmark, rmark, visited_s)) return ds + 1 + dt;
      ++ds;
    } else {
      if (expand(rq, rmark, fmark, visited_t)) return ds + 1 + dt;
      ++dt;
    }
    if (ds + dt == bound) return bound;
  }
  return kInfinity;
}

DistanceResult QueryEngine::distance(VertexId s, VertexId t,
                                     SearchScratch& scratch) const {
  check_vertex(s);
  check_vertex(t);
  if (s == t) return {0, Via::kIdentity};
  const Hops bound = upper_bound(s, t);
  if (is_landmark(s) || is_landmark(t)) {
    return {bound, bound == kInfinity ? Via::kUnreachable : Via::kLandmarkBound};
  }
  const Hops searched = bounded_search(s, t, bound, scratch);
  if (searched < bound) return {searched, Via::kSearchMet};
  if (bound == kInfinity) return {kInfinity, Via::kUnreachable};
  return {bound, Via::kLandmarkBound};
}

DistanceResult QueryEngine::distance(VertexId s, VertexId t) const {
  SearchScratch scratch(graph_.num_vertices());
  return distance(s, t, scratch);
}

double estimate_pair_coverage(const QueryEngine& engine, std::size_t samples,
                              std::uint64_t seed) {
  if (samples == 0) throw DomainError("sample count must be at least 1");
  const std::uint64_t n = engine.graph().num_vertices();
  if (n < 2) return 0.0;
  SplitMix64 rng(seed);
  SearchScratch scratch = engine.make_scratch();
  std::size_t connected = 0, covered = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    auto s = static_cast<VertexId>(rng.below(n));
    auto t = static_cast<VertexId>(rng.below(n - 1));
    if (t >= s) ++t;
    const Hops exact = engine.distance(s, t, scratch).distance;
    if (exact == kInfinity) continue;
    ++connected;
    if (engine.upper_bound(s, t) == exact) ++covered;
  }
  return connected ? static_cast<double>(covered) / static_cast<double>(connected)
                   : 0.0;
}

double exact_pair_coverage(const QueryEngine& engine) {
  const std::size_t n = engine.graph().num_vertices();
  SearchScratch scratch = engine.make_scratch();
  std::size_t connected = 0, covered = 0;
  for (VertexId s = 0; s < n; ++s) {
    for (VertexId t = s + 1; t < n; ++t) {
      const Hops exact = engine.distance(s, t, scratch).distance;
      if (exact == kInfinity) continue;
      ++connected;
      if (engine.upper_bound(s, t) == exact) ++covered;
    }
  }
  return connected ? static_cast<double>(covered) / static_cast<double>(connected)
                   : 0.0;
}

}  // namespace hwcl
