#include "hwcl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "hwcl/graph.hpp"
#include "hwcl/index_io.hpp"
#include "hwcl/labelling.hpp"
#include "hwcl/random.hpp"

namespace hwcl::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_hops(Hops d) { return d == kInfinity ? "inf" : std::to_string(d); }

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

/// Key/value report that renders either aligned or as key=value lines.
class Report {
 public:
  explicit Report(bool porcelain) : porcelain_(porcelain) {}
  void add(std::string key, std::string value) {
    rows_.emplace_back(std::move(key), std::move(value));
  }
  void print(std::ostream& out) const {
    std::size_t width = 0;
    for (const auto& [k, v] : rows_) width = std::max(width, k.size());
    for (const auto& [k, v] : rows_) {
      if (porcelain_) {
        out << k << '=' << v << '\n';
      } else {
        out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
      }
    }
  }

 private:
  bool porcelain_;
  std::vector<std::pair<std::string, std::string>> rows_;
};

Graph load_graph(const std::string& path, bool lcc) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  Graph g = parse_edge_list(in);
  return lcc ? largest_component(g) : g;
}

LoadedIndex read_index(const std::string& path, std::uint64_t* bytes = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open index file '" + path + "'");
  LoadedIndex index = load_index(in);
  if (bytes) {
    in.clear();
    in.seekg(0, std::ios::end);
    *bytes = static_cast<std::uint64_t>(in.tellg());
  }
  return index;
}

QueryEngine engine_from_files(const std::string& index_path, const std::string& graph_path,
                              bool lcc, double* load_seconds = nullptr) {
  Graph g = load_graph(graph_path, lcc);
  const auto start = Clock::now();
  LoadedIndex index = read_index(index_path);
  if (g.num_vertices() != index.metadata.num_vertices) {
    throw DomainError("graph has " + std::to_string(g.num_vertices()) +
                      " vertices but the index was built on " +
                      std::to_string(index.metadata.num_vertices) +
                      (lcc ? "" : " (was it built with --lcc?)"));
  }
  Highway highway = index.bind(g);
  if (load_seconds) *load_seconds = seconds_since(start);
  return QueryEngine(std::move(g), std::move(index.labelling), std::move(highway));
}

// Explicit landmark ids (original) win over degree selection.
BuildResult build_index(const Graph& g, std::size_t k,
                        const std::vector<Graph::OriginalId>& explicit_ids,
                        std::size_t threads) {
  std::vector<VertexId> landmarks;
  if (explicit_ids.empty()) {
    landmarks = select_landmarks(g, k);
  } else {
    std::unordered_map<Graph::OriginalId, VertexId> dense;
    for (VertexId v = 0; v < g.num_vertices(); ++v) dense.emplace(g.original_id(v), v);
    for (auto id : explicit_ids) {
      auto it = dense.find(id);
      if (it == dense.end()) {
        throw DomainError("landmark id " + std::to_string(id) + " is not in the graph");
      }
      landmarks.push_back(it->second);
    }
  }
  return threads > 1 ? build_parallel(g, landmarks, threads) : build(g, landmarks);
}

struct BuildOptions {
  std::string input, output;
  std::size_t landmarks = 20;
  std::vector<Graph::OriginalId> landmark_ids;
  std::size_t threads = 1;
  std::string format = "compressed";
  bool lcc = false;
};

struct QueryOptions {
  std::string index, graph, pairs;
  std::size_t threads = 1;
  bool lcc = false;
};

struct BenchOptions {
  std::string index, graph;
  std::size_t landmarks = 20;
  std::vector<Graph::OriginalId> landmark_ids;
  std::size_t threads = 1;
  std::size_t random = 100000;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  bool lcc = false;
};

struct StatsOptions {
  std::string index, graph;
  bool lcc = false;
};

int cmd_build(const BuildOptions& o, bool porcelain, std::ostream& out) {
  const auto start = Clock::now();
  Graph g = load_graph(o.input, o.lcc);
  BuildResult built = build_index(g, o.landmarks, o.landmark_ids, o.threads);
  const double build_seconds = seconds_since(start);

  const IndexFormat format =
      o.format == "wide" ? IndexFormat::kWide : IndexFormat::kCompressed;
  std::ostringstream buffer(std::ios::binary);
  const std::uint64_t bytes = save_index(built.labelling, built.highway,
                                         metadata_for(g, built.highway), format, buffer);
  std::ofstream file(o.output, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + o.output + "'");
  const std::string data = buffer.str();
  file.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!file) throw std::runtime_error("failed writing '" + o.output + "'");

  const LabellingStats stats = labelling_stats(built.labelling, built.highway);
  Report r(porcelain);
  r.add("n", std::to_string(g.num_vertices()));
  r.add("m", std::to_string(g.num_edges()));
  r.add("k", std::to_string(stats.k));
  r.add("build_seconds", fixed(build_seconds, 3));
  r.add("size", std::to_string(stats.size_total));
  r.add("als", fixed(stats.avg_label_size, 2));
  r.add("format", o.format);
  r.add("bytes", std::to_string(bytes));
  r.print(out);
  return 0;
}

int cmd_query(const QueryOptions& o, std::istream& in, std::ostream& out,
              std::ostream& err) {
  QueryEngine engine = engine_from_files(o.index, o.graph, o.lcc);
  std::unordered_map<Graph::OriginalId, VertexId> dense;
  const auto& ids = engine.graph().original_ids();
  for (VertexId v = 0; v < ids.size(); ++v) dense.emplace(ids[v], v);

  std::ifstream pair_file;
  std::istream* source = &in;
  if (!o.pairs.empty()) {
    pair_file.open(o.pairs);
    if (!pair_file) throw std::runtime_error("cannot open pairs file '" + o.pairs + "'");
    source = &pair_file;
  }

  // Lines that fail to resolve keep their slot so output stays aligned.
  PairList pairs;
  std::vector<std::optional<std::size_t>> slot;
  std::string line;
  std::size_t line_no = 0;
  bool any_error = false;
  while (std::getline(*source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long a = -1, b = -1;
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      err << "line " << line_no << ": expected \"u v\"\n";
      slot.emplace_back();
      any_error = true;
      continue;
    }
    auto ia = a < 0 ? dense.end() : dense.find(static_cast<Graph::OriginalId>(a));
    auto ib = b < 0 ? dense.end() : dense.find(static_cast<Graph::OriginalId>(b));
    if (ia == dense.end() || ib == dense.end() ||
        a > std::numeric_limits<Graph::OriginalId>::max() ||
        b > std::numeric_limits<Graph::OriginalId>::max()) {
      err << "line " << line_no << ": unknown vertex id "
          << (ia == dense.end() ? a : b) << '\n';
      slot.emplace_back();
      any_error = true;
      continue;
    }
    slot.emplace_back(pairs.size());
    pairs.emplace_back(ia->second, ib->second);
  }

  const auto results = answer_all(engine, pairs, o.threads);
  for (const auto& s : slot) {
    out << (s ? format_hops(results[*s].distance) : std::string("error")) << '\n';
  }
  return any_error ? 1 : 0;
}

int cmd_bench(const BenchOptions& o, bool porcelain, std::ostream& out) {
  double index_seconds = 0;
  std::optional<QueryEngine> engine;
  if (!o.index.empty()) {
    engine.emplace(engine_from_files(o.index, o.graph, o.lcc, &index_seconds));
  } else {
    Graph g = load_graph(o.graph, o.lcc);
    const auto start = Clock::now();
    BuildResult built = build_index(g, o.landmarks, o.landmark_ids, o.threads);
    index_seconds = seconds_since(start);
    engine.emplace(std::move(g), std::move(built.labelling), std::move(built.highway));
  }
  const std::size_t n = engine->graph().num_vertices();
  const PairList pairs = o.exhaustive ? all_pairs(n) : sample_pairs(n, o.random, o.seed);
  BenchReport report = run_bench(*engine, pairs, o.threads);
  report.index_seconds = index_seconds;

  Report r(porcelain);
  r.add("pairs", std::to_string(report.pair_count));
  r.add(o.index.empty() ? "build_seconds" : "load_seconds", fixed(report.index_seconds, 3));
  r.add("mean_us", fixed(report.mean_us, 3));
  r.add("median_us", fixed(report.median_us, 3));
  r.add("p99_us", fixed(report.p99_us, 3));
  r.add("coverage", fixed(report.coverage, 4));
  r.add("unreachable", std::to_string(report.unreachable));
  r.print(out);

  if (porcelain) {
    for (const auto& [d, c] : report.histogram) {
      out << "hist." << d << '=' << c << '\n';
    }
  } else {
    out << "\ndistance  count\n";
    for (const auto& [d, c] : report.histogram) {
      out << std::right << std::setw(8) << d << "  " << c << '\n';
    }
    if (report.unreachable) {
      out << std::setw(8) << "inf" << "  " << report.unreachable << '\n';
    }
  }
  return 0;
}

int cmd_stats(const StatsOptions& o, bool porcelain, std::ostream& out) {
  std::uint64_t bytes = 0;
  LoadedIndex index = read_index(o.index, &bytes);
  const std::size_t k = index.metadata.landmark_original_ids.size();
  Highway highway(std::vector<VertexId>(k), index.highway_matrix);
  std::optional<Graph> g;
  if (!o.graph.empty()) {
    g = load_graph(o.graph, o.lcc);
    highway = index.bind(*g);
  }
  const LabellingStats stats = labelling_stats(index.labelling, highway);

  Report r(porcelain);
  r.add("n", std::to_string(index.metadata.num_vertices));
  if (g) r.add("m", std::to_string(g->num_edges()));
  r.add("k", std::to_string(k));
  r.add("format", index.format == IndexFormat::kWide ? "wide" : "compressed");
  r.add("size", std::to_string(stats.size_total));
  r.add("als", fixed(stats.avg_label_size, 2));
  r.add("max_label", std::to_string(stats.max_label_size));
  r.add("bytes", std::to_string(bytes));

  Hops min_d = kInfinity, max_d = 0;
  std::size_t finite = 0, unreachable = 0;
  double sum = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      Hops d = highway.distance(i, j);
      if (d == kInfinity) {
        ++unreachable;
        continue;
      }
      ++finite;
      sum += d;
      min_d = std::min(min_d, d);
      max_d = std::max(max_d, d);
    }
  }
  r.add("highway_min", finite ? std::to_string(min_d) : "-");
  r.add("highway_max", finite ? std::to_string(max_d) : "-");
  r.add("highway_mean", finite ? fixed(sum / static_cast<double>(finite), 2) : "-");
  r.add("highway_unreachable", std::to_string(unreachable));
  for (std::size_t i = 0; i < k; ++i) {
    std::string value = std::to_string(index.metadata.landmark_original_ids[i]);
    if (g) value += porcelain ? "," + std::to_string(g->degree(highway.landmark(i)))
                              : " (degree " + std::to_string(g->degree(highway.landmark(i))) + ")";
    r.add("landmark." + std::to_string(i), value);
  }
  r.print(out);
  return 0;
}

}  // namespace

PairList sample_pairs(std::size_t n, std::size_t count, std::uint64_t seed) {
  if (n < 2) throw DomainError("need at least two vertices to sample pairs");
  SplitMix64 rng(seed);
  PairList pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto s = static_cast<VertexId>(rng.below(n));
    auto t = static_cast<VertexId>(rng.below(n - 1));
    if (t >= s) ++t;
    pairs.emplace_back(s, t);
  }
  return pairs;
}

PairList all_pairs(std::size_t n) {
  PairList pairs;
  for (VertexId s = 0; s < n; ++s) {
    for (VertexId t = s + 1; t < n; ++t) pairs.emplace_back(s, t);
  }
  return pairs;
}

std::vector<DistanceResult> answer_all(const QueryEngine& engine, const PairList& pairs,
                                       std::size_t threads,
                                       std::vector<double>* latencies_us) {
  std::vector<DistanceResult> results(pairs.size());
  if (latencies_us) latencies_us->assign(pairs.size(), 0.0);
  threads = std::max<std::size_t>(1, std::min(threads, pairs.size()));
  auto work = [&](std::size_t begin, std::size_t end) {
    SearchScratch scratch = engine.make_scratch();
    for (std::size_t i = begin; i < end; ++i) {
      const auto start = Clock::now();
      results[i] = engine.distance(pairs[i].first, pairs[i].second, scratch);
      if (latencies_us) {
        (*latencies_us)[i] =
            std::chrono::duration<double, std::micro>(Clock::now() - start).count();
      }
    }
  };
  if (threads == 1) {
    work(0, pairs.size());
    return results;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (pairs.size() + threads - 1) / threads;
  for (std::size_t begin = 0; begin < pairs.size(); begin += chunk) {
    pool.emplace_back(work, begin, std::min(pairs.size(), begin + chunk));
  }
  return results;
}

BenchReport run_bench(const QueryEngine& engine, const PairList& pairs,
                      std::size_t threads) {
  BenchReport report;
  report.pair_count = pairs.size();
  std::vector<double> latencies;
  const auto results = answer_all(engine, pairs, threads, &latencies);

  std::size_t connected = 0, covered = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Hops d = results[i].distance;
    if (d == kInfinity) {
      ++report.unreachable;
      continue;
    }
    ++report.histogram[d];
    if (d == 0) continue;
    ++connected;
    if (engine.upper_bound(pairs[i].first, pairs[i].second) == d) ++covered;
  }
  report.coverage =
      connected ? static_cast<double>(covered) / static_cast<double>(connected) : 0.0;

  if (!latencies.empty()) {
    report.mean_us = std::accumulate(latencies.begin(), latencies.end(), 0.0) /
                     static_cast<double>(latencies.size());
    std::sort(latencies.begin(), latencies.end());
    auto quantile = [&](double q) {
      const auto idx = static_cast<std::size_t>(
          std::ceil(q * static_cast<double>(latencies.size()))) - 1;
      return latencies[std::min(idx, latencies.size() - 1)];
    };
    report.median_us = quantile(0.5);
    report.p99_us = quantile(0.99);
  }
  return report;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Highway cover labelling: exact shortest-path distance index"};
  app.require_subcommand(1);
  bool porcelain = false;
  app.add_flag("--porcelain", porcelain, "Print key=value lines");

  BuildOptions build_opts;
  auto* build_cmd = app.add_subcommand("build", "Build an index from an edge list");
  build_cmd->add_option("--input", build_opts.input, "Edge list file")->required();
  build_cmd->add_option("--output", build_opts.output, "Index file to write")->required();
  build_cmd->add_option("--landmarks", build_opts.landmarks, "Number of landmarks")
      ->check(CLI::PositiveNumber);
  build_cmd->add_option("--landmark-ids", build_opts.landmark_ids,
                        "Comma-separated landmark ids (overrides --landmarks)")
      ->delimiter(',');
  build_cmd->add_option("--threads", build_opts.threads, "Parallel BFS workers")
      ->check(CLI::PositiveNumber);
  build_cmd->add_option("--format", build_opts.format, "compressed or wide")
      ->check(CLI::IsMember({"compressed", "wide"}));
  build_cmd->add_flag("--lcc", build_opts.lcc, "Keep only the largest component");
  build_cmd->add_flag("--porcelain", porcelain, "Print key=value lines");

  QueryOptions query_opts;
  auto* query_cmd = app.add_subcommand("query", "Answer distance queries");
  query_cmd->add_option("--index", query_opts.index, "Index file")->required();
  query_cmd->add_option("--graph", query_opts.graph, "Edge list the index was built on")
      ->required();
  query_cmd->add_option("--pairs", query_opts.pairs, "Pair file (default: stdin)");
  query_cmd->add_option("--threads", query_opts.threads, "Query workers")
      ->check(CLI::PositiveNumber);
  query_cmd->add_flag("--lcc", query_opts.lcc, "Graph was restricted to its largest component");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark random or exhaustive queries");
  bench_cmd->add_option("--index", bench_opts.index, "Index file (omit to build in memory)");
  bench_cmd->add_option("--graph", bench_opts.graph, "Edge list")->required();
  bench_cmd->add_option("--landmarks", bench_opts.landmarks, "Landmarks when building")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--landmark-ids", bench_opts.landmark_ids,
                        "Comma-separated landmark ids when building")
      ->delimiter(',');
  bench_cmd->add_option("--threads", bench_opts.threads, "Workers")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--random", bench_opts.random, "Number of sampled pairs")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_opts.seed, "Sampling seed");
  bench_cmd->add_flag("--exhaustive", bench_opts.exhaustive, "Query every vertex pair");
  bench_cmd->add_flag("--lcc", bench_opts.lcc, "Keep only the largest component");
  bench_cmd->add_flag("--porcelain", porcelain, "Print key=value lines");

  StatsOptions stats_opts;
  auto* stats_cmd = app.add_subcommand("stats", "Summarize an index");
  stats_cmd->add_option("--index", stats_opts.index, "Index file")->required();
  stats_cmd->add_option("--graph", stats_opts.graph, "Edge list (adds m and degrees)");
  stats_cmd->add_flag("--lcc", stats_opts.lcc, "Keep only the largest component");
  stats_cmd->add_flag("--porcelain", porcelain, "Print key=value lines");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*build_cmd) return cmd_build(build_opts, porcelain, out);
    if (*query_cmd) return cmd_query(query_opts, in, out, err);
    if (*bench_cmd) return cmd_bench(bench_opts, porcelain, out);
    if (*stats_cmd) return cmd_stats(stats_opts, porcelain, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace hwcl::cli
