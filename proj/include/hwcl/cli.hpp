#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hwcl/query.hpp"

namespace hwcl::cli {

struct BenchReport {
  std::size_t pair_count = 0;
  double mean_us = 0, median_us = 0, p99_us = 0;
  std::map<Hops, std::size_t> histogram;  // finite distances only
  std::size_t unreachable = 0;
  double coverage = 0;  // over connected pairs
  double index_seconds = 0;
};

using PairList = std::vector<std::pair<VertexId, VertexId>>;

/// `count` pairs with s != t, drawn by SplitMix64(seed).
PairList sample_pairs(std::size_t n, std::size_t count, std::uint64_t seed);

/// Every unordered pair s < t.
PairList all_pairs(std::size_t n);

/// Answers `pairs` on `threads` workers, each with its own scratch.
/// Results come back in input order.
std::vector<DistanceResult> answer_all(const QueryEngine& engine, const PairList& pairs,
                                       std::size_t threads,
                                       std::vector<double>* latencies_us = nullptr);

BenchReport run_bench(const QueryEngine& engine, const PairList& pairs,
                      std::size_t threads);

/// Entry point behind the `hwcl` executable. Returns the process exit code;
/// 2 means a usage error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace hwcl::cli
