// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Pass criterion numbers as arguments to
// run a subset.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "hwcl/cli.hpp"
#include "hwcl/index_io.hpp"
#include "hwcl/oracle.hpp"
#include "hwcl/query.hpp"
#include "support/graphs.hpp"

namespace {

using namespace hwcl;
using Clock = std::chrono::steady_clock;

// Tolerances and sizes. Every threshold used below lives here.
constexpr std::size_t kSuiteGraphs = 200;
constexpr std::size_t kSuiteMaxN = 60;
constexpr std::size_t kSuiteMaxK = 5;
constexpr double kSuiteSeconds = 60.0;
constexpr std::size_t kPermutations = 20;
constexpr std::size_t kParallelGraphs = 20;
constexpr std::size_t kParallelN = 10000;
constexpr std::size_t kParallelK = 20;
constexpr std::size_t kRoundTrips = 100;
constexpr std::size_t kPerfN = 1000000;
constexpr std::size_t kPerfPerVertex = 10;  // m ~ 10^7
constexpr std::size_t kPerfK = 20;
constexpr std::size_t kPerfWorkers = 4;
constexpr double kPerfBuildSeconds = 600.0;
constexpr std::size_t kPerfQueries = 100000;
constexpr std::uint64_t kPerfSeed = 1;
constexpr double kPerfMeanQueryUs = 5000.0;
constexpr double kPerfMaxAls = 20.0;
constexpr std::size_t kCoverageSamples = 20000;
constexpr std::uint64_t kCoverageSeed = 7;
constexpr double kCoverageSlack = 0.01;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Case {
  Graph graph;
  std::vector<VertexId> landmarks;
  BuildResult built;
};

// The property-based suite shared by criteria 1-4 and 6.
std::vector<Case> make_suite() {
  std::mt19937_64 rng(20240601);
  std::vector<Case> suite;
  for (std::size_t i = 0; i < kSuiteGraphs; ++i) {
    const std::size_t n = 10 + rng() % (kSuiteMaxN - 9);
    testing::EdgeList edges =
        i % 2 == 0
            ? testing::uniform_connected_edges(n, 0.03 + 0.12 * (rng() % 100) / 100.0, rng)
            : testing::preferential_attachment_edges(n, 1 + rng() % 3, rng);
    Graph g = Graph::from_edges(edges);
    const std::size_t k = 1 + i % kSuiteMaxK;
    auto R = select_landmarks(g, k);
    suite.push_back({g, R, {}});
  }
  return suite;
}

struct Outcome {
  bool ok;
  std::string detail;
};

Outcome exactness(std::vector<Case>& suite) {
  const auto start = Clock::now();
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    Case& c = suite[i];
    c.built = build(c.graph, c.landmarks);
    QueryEngine engine(c.graph, c.built.labelling, c.built.highway);
    SearchScratch scratch = engine.make_scratch();
    const std::size_t n = c.graph.num_vertices();
    for (VertexId s = 0; s < n; ++s) {
      const auto truth = oracle::bfs_distance(c.graph, s).dist;
      for (VertexId t = 0; t < n; ++t) {
        ++pairs;
        const Hops got = engine.distance(s, t, scratch).distance;
        if (got != truth[t]) {
          return {false, "graph " + std::to_string(i) + " pair (" + std::to_string(s) + "," +
                             std::to_string(t) + "): got " + std::to_string(got) +
                             ", expected " + std::to_string(truth[t])};
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  std::ostringstream d;
  d << suite.size() << " graphs, " << pairs << " pairs exact in " << elapsed << " s (limit "
    << kSuiteSeconds << " s)";
  return {elapsed < kSuiteSeconds, d.str()};
}

Outcome ground_truth(const std::vector<Case>& suite) {
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Case& c = suite[i];
    if (c.built.labelling != oracle::reference_labelling(c.graph, c.landmarks)) {
      return {false, "graph " + std::to_string(i) + " differs from the reference labelling"};
    }
    if (c.built.highway != oracle::reference_highway(c.graph, c.landmarks)) {
      return {false, "graph " + std::to_string(i) + " highway differs from BFS"};
    }
  }
  return {true, std::to_string(suite.size()) + " labellings equal entry-for-entry"};
}

// On failure, removes each entry in turn to find the redundant ones and
// checks that every one is a tie: another entry (r', d') of the same label
// with d_H(r, r') + d' = d, reachable only because some shortest r-v path
// avoids all other landmarks while a second one runs through r'.
Outcome minimality(const std::vector<Case>& suite) {
  std::size_t entries = 0, failing = 0, redundant = 0, ties = 0;
  std::string first;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Case& c = suite[i];
    entries += c.built.labelling.size();
    if (oracle::check_minimality(c.graph, c.built.labelling, c.built.highway)) continue;
    if (failing++ == 0) first = std::to_string(i);
    auto lists = c.built.labelling.to_lists();
    for (VertexId v = 0; v < lists.size(); ++v) {
      for (std::size_t j = 0; j < lists[v].size(); ++j) {
        auto trimmed = lists;
        trimmed[v].erase(trimmed[v].begin() + static_cast<std::ptrdiff_t>(j));
        if (!oracle::check_highway_cover(c.graph, HighwayCoverLabelling(trimmed), c.built.highway)
                 .ok) {
          continue;
        }
        ++redundant;
        const LabelEntry e = lists[v][j];
        for (const LabelEntry& f : lists[v]) {
          const Hops h = c.built.highway.distance(e.landmark_rank, f.landmark_rank);
          if (f.landmark_rank != e.landmark_rank && h != kInfinity &&
              h + f.distance == e.distance) {
            ++ties;
            break;
          }
        }
      }
    }
  }
  if (failing == 0) return {true, std::to_string(entries) + " entries, each one necessary"};
  std::ostringstream d;
  d << failing << "/" << suite.size() << " labellings (first: graph " << first << ") hold "
    << redundant << " redundant of " << entries << " entries; " << ties << "/" << redundant
    << " are tied shortest paths through a second landmark, kept by the existential rule of "
       "criterion 2";
  return {false, d.str()};
}

Outcome order_independence(const std::vector<Case>& suite) {
  std::mt19937_64 rng(4);
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Case& c = suite[i];
    const auto expected = testing::entry_sets(c.built.labelling, c.built.highway);
    auto order = c.landmarks;
    for (std::size_t round = 0; round < kPermutations; ++round) {
      std::shuffle(order.begin(), order.end(), rng);
      const BuildResult permuted = build(c.graph, order);
      if (testing::entry_sets(permuted.labelling, permuted.highway) != expected) {
        return {false, "graph " + std::to_string(i) + " permutation " + std::to_string(round)};
      }
    }
  }
  return {true, std::to_string(kPermutations) + " permutations x " +
                    std::to_string(suite.size()) + " graphs"};
}

std::string serialize(const Graph& g, const BuildResult& b) {
  std::ostringstream out(std::ios::binary);
  save_index(b.labelling, b.highway, metadata_for(g, b.highway), IndexFormat::kCompressed, out);
  return out.str();
}

Outcome parallel_determinism() {
  std::mt19937_64 rng(10);
  for (std::size_t i = 0; i < kParallelGraphs; ++i) {
    testing::EdgeList edges =
        i % 2 == 0 ? testing::preferential_attachment_edges(kParallelN, 1 + i % 4, rng)
                   : testing::random_edges(kParallelN, 2 * kParallelN, rng);
    Graph g = Graph::from_edges(edges);
    const auto R = select_landmarks(g, kParallelK);
    const std::string sequential = serialize(g, build(g, R));
    for (std::size_t workers : {1, 2, 4, 8}) {
      if (serialize(g, build_parallel(g, R, workers)) != sequential) {
        return {false, "graph " + std::to_string(i) + " differs with " +
                           std::to_string(workers) + " workers"};
      }
    }
  }
  return {true, std::to_string(kParallelGraphs) + " graphs, workers {1,2,4,8} byte-identical"};
}

Outcome bound_soundness(const std::vector<Case>& suite) {
  std::size_t pairs = 0, through_landmark = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const Case& c = suite[i];
    QueryEngine engine(c.graph, c.built.labelling, c.built.highway);
    const std::size_t n = c.graph.num_vertices();
    std::vector<std::vector<Hops>> from_landmark;
    for (VertexId r : c.landmarks) from_landmark.push_back(oracle::bfs_distance(c.graph, r).dist);
    for (VertexId s = 0; s < n; ++s) {
      const auto truth = oracle::bfs_distance(c.graph, s).dist;
      for (VertexId t = 0; t < n; ++t) {
        if (s == t) continue;
        ++pairs;
        const Hops ub = engine.upper_bound(s, t);
        bool on_path = false;
        for (const auto& d : from_landmark) {
          if (d[s] != kInfinity && d[t] != kInfinity && d[s] + d[t] == truth[t]) on_path = true;
        }
        const std::string where = "graph " + std::to_string(i) + " pair (" +
                                  std::to_string(s) + "," + std::to_string(t) + ")";
        if (ub < truth[t]) return {false, where + ": bound below distance"};
        if (on_path) {
          ++through_landmark;
          if (ub != truth[t]) return {false, where + ": bound not tight"};
        }
      }
    }
  }
  return {true, std::to_string(pairs) + " pairs sound, " + std::to_string(through_landmark) +
                    " landmark pairs tight"};
}

Outcome worked_example() {
  Graph g = testing::example_graph();
  const auto R = testing::dense_all(g, {1, 5, 9});
  BuildResult b = build(g, R);
  std::set<Graph::OriginalId> seven;
  for (const LabelEntry& e : b.labelling.label(testing::dense(g, 7))) {
    seven.insert(g.original_id(b.highway.landmark(e.landmark_rank)));
  }
  QueryEngine engine(g, b.labelling, b.highway);
  const VertexId s = testing::dense(g, 2), t = testing::dense(g, 11);
  const Hops ub = engine.upper_bound(s, t);
  const Hops d = engine.distance(s, t).distance;
  std::ostringstream detail;
  detail << "size=" << b.labelling.size() << " L(7) covers {";
  for (auto id : seven) detail << (id == *seven.begin() ? "" : ",") << id;
  detail << "} ub(2,11)=" << ub << " d(2,11)=" << d;
  const bool ok = b.labelling.size() == 13 && seven == std::set<Graph::OriginalId>{5, 9} &&
                  ub == 3 && d == 3;
  return {ok, detail.str()};
}

Outcome serialization() {
  std::mt19937_64 rng(88);
  for (std::size_t i = 0; i < kRoundTrips; ++i) {
    Graph g = Graph::from_edges(
        i % 2 == 0 ? testing::preferential_attachment_edges(30 + rng() % 300, 1 + rng() % 3, rng)
                   : testing::random_edges(30 + rng() % 300, 200 + rng() % 400, rng));
    const BuildResult b = build(g, select_landmarks(g, 1 + rng() % 16));
    const IndexMetadata meta = metadata_for(g, b.highway);
    for (auto format : {IndexFormat::kCompressed, IndexFormat::kWide}) {
      std::ostringstream out(std::ios::binary);
      save_index(b.labelling, b.highway, meta, format, out);
      const std::string bytes = out.str();
      std::istringstream in(bytes, std::ios::binary);
      LoadedIndex loaded = load_index(in);
      std::ostringstream again(std::ios::binary);
      const Highway rebound = loaded.bind(g);
      save_index(loaded.labelling, rebound, loaded.metadata, format, again);
      const std::string where = "index " + std::to_string(i);
      if (loaded.labelling != b.labelling || rebound != b.highway || loaded.metadata != meta) {
        return {false, where + ": loaded contents differ"};
      }
      if (again.str() != bytes) return {false, where + ": re-save is not bit-exact"};
      if (format == IndexFormat::kCompressed) {
        const std::uint64_t k = b.highway.size();
        const std::uint64_t expected =
            16 + 4 * k + k * k + g.num_vertices() + 2 * b.labelling.size();
        if (bytes.size() != expected) {
          return {false, where + ": " + std::to_string(bytes.size()) + " bytes, formula gives " +
                             std::to_string(expected)};
        }
      }
    }
  }
  return {true, std::to_string(kRoundTrips) + " indexes round-trip in both formats"};
}

// Large graph shared by criteria 9 and 10.
const Graph& perf_graph() {
  static const Graph g = [] {
    std::mt19937_64 rng(2025);
    return Graph::from_edges(testing::preferential_attachment_edges(kPerfN, kPerfPerVertex, rng));
  }();
  return g;
}

Outcome performance() {
  const Graph& g = perf_graph();
  const auto start = Clock::now();
  BuildResult b = build_parallel(g, select_landmarks(g, kPerfK), kPerfWorkers);
  const double build_s = seconds_since(start);
  const double als = labelling_stats(b.labelling, b.highway).avg_label_size;
  QueryEngine engine(g, std::move(b.labelling), std::move(b.highway));
  const auto pairs = cli::sample_pairs(g.num_vertices(), kPerfQueries, kPerfSeed);
  const cli::BenchReport report = cli::run_bench(engine, pairs, 1);
  std::ostringstream d;
  d << "n=" << g.num_vertices() << " m=" << g.num_edges() << " build " << build_s << " s (limit "
    << kPerfBuildSeconds << "), mean query " << report.mean_us << " us (limit "
    << kPerfMeanQueryUs << "), ALS " << als << " (limit " << kPerfMaxAls << "), "
    << std::thread::hardware_concurrency() << " hardware threads";
  return {build_s < kPerfBuildSeconds && report.mean_us < kPerfMeanQueryUs && als <= kPerfMaxAls,
          d.str()};
}

Outcome coverage_monotonicity() {
  const Graph& g = perf_graph();
  std::ostringstream d;
  bool ok = true;
  double previous = -1.0;
  for (std::size_t k : {10, 20, 30, 40, 50}) {
    BuildResult b = build_parallel(g, select_landmarks(g, k), kPerfWorkers);
    QueryEngine engine(g, std::move(b.labelling), std::move(b.highway));
    const double coverage = estimate_pair_coverage(engine, kCoverageSamples, kCoverageSeed);
    if (previous >= 0 && coverage < previous - kCoverageSlack) ok = false;
    d << "k=" << k << ":" << coverage << ' ';
    previous = coverage;
  }
  d << "(slack " << kCoverageSlack << ")";
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  auto wanted = [&](int id) { return selected.empty() || selected.count(id) > 0; };

  std::vector<Case> suite;
  bool suite_built = false;
  auto with_suite = [&](auto fn) {
    return [&, fn]() {
      if (!suite_built) {
        suite = make_suite();
        exactness(suite);  // fills in the built labellings
        suite_built = true;
      }
      return fn(suite);
    };
  };

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exactness", [&] {
         suite = make_suite();
         suite_built = true;
         return exactness(suite);
       }},
      {"labelling ground truth", with_suite(ground_truth)},
      {"minimality", with_suite(minimality)},
      {"order independence", with_suite(order_independence)},
      {"parallel determinism", parallel_determinism},
      {"bound soundness", with_suite(bound_soundness)},
      {"worked example", worked_example},
      {"serialization", serialization},
      {"performance smoke", performance},
      {"pair-coverage monotonicity", coverage_monotonicity},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!wanted(id)) continue;
    const auto start = Clock::now();
    Outcome result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    if (!result.ok) ++failures;
    std::printf("%s  %2d  %-27s %s [%.1f s]\n", result.ok ? "PASS" : "FAIL", id,
                criteria[i].first.c_str(), result.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
