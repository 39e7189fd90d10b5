#pragma once

// Throughput accounting for system grouping: per-user top-N generation
// versus one generation per disjoint simulcast group plus per-member rerank.

#include <cstddef>
#include <cstdint>

#include <json.hpp>

#include "affect_rec/dataset.hpp"
#include "affect_rec/recommend.hpp"

namespace affect {

struct BenchReport {
  std::size_t n_users = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t n_candidates = 0;
  std::size_t groups_formed = 0;
  std::uint64_t topn_generations_personalized = 0;
  std::uint64_t topn_generations_grouped = 0;
  std::uint64_t member_reranks = 0;
  double reduction_factor = 0.0;
  std::uint64_t aii_evaluations_personalized = 0;
  std::uint64_t aii_evaluations_formation = 0;
  std::uint64_t aii_evaluations_grouped = 0;
  double wall_ms_personalized = 0.0;
  double wall_ms_formation = 0.0;
  double wall_ms_grouped = 0.0;
};

/// Counters come from the instrumented kernels and rerank calls, measured
/// per phase. Groups come from partition_ssg(dataset, m).
BenchReport run_bench(const Dataset& dataset, const CandidatePool& candidates, std::size_t m, std::size_t n);

/// Counters only unless `with_timings`; the counters are deterministic.
nlohmann::ordered_json to_json(const BenchReport& report, bool with_timings = false);

}  // namespace affect
