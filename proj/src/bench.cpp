#include "affect_rec/bench.hpp"

#include <chrono>

#include "affect_rec/error.hpp"
#include "affect_rec/grouping.hpp"

namespace affect {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

CandidatePool sublist(const CandidatePool& pool, const RankedList& list) {
  std::vector<Candidate> out;
  out.reserve(list.entries.size());
  for (const auto& e : list.entries) {
    for (const auto& c : pool.candidates()) {
      if (c.item_id == e.item_id) {
        out.push_back(c);
        break;
      }
    }
  }
  return CandidatePool(std::move(out));
}

}  // namespace

BenchReport run_bench(const Dataset& dataset, const CandidatePool& candidates, std::size_t m, std::size_t n) {
  if (n == 0 || n > candidates.size()) throw Error(Errc::InvalidArgument, "n must be in 1..candidate count");
  BenchReport r;
  r.n_users = dataset.users().size();
  r.m = m;
  r.n = n;
  r.n_candidates = candidates.size();

  // Personalized: one top-N generation per user over the full pool.
  auto aii0 = kernels::aii_evaluations();
  auto rr0 = rerank_invocations();
  auto t0 = Clock::now();
  for (const auto& u : dataset.users()) rerank(u.uvec, candidates, n);
  r.wall_ms_personalized = ms_since(t0);
  r.topn_generations_personalized = rerank_invocations() - rr0;
  r.aii_evaluations_personalized = kernels::aii_evaluations() - aii0;

  aii0 = kernels::aii_evaluations();
  t0 = Clock::now();
  const auto groups = partition_ssg(dataset, m);
  r.wall_ms_formation = ms_since(t0);
  r.aii_evaluations_formation = kernels::aii_evaluations() - aii0;
  r.groups_formed = groups.size();

  // Grouped: one generation per group with the anchor's profile, then every
  // member reranks only the group's top-N.
  aii0 = kernels::aii_evaluations();
  t0 = Clock::now();
  for (const auto& g : groups) {
    rr0 = rerank_invocations();
    const auto shared = rerank(dataset.user(g.anchor).uvec, candidates, n);
    r.topn_generations_grouped += rerank_invocations() - rr0;

    const auto top = sublist(candidates, shared);
    rr0 = rerank_invocations();
    for (const auto& member : g.members) rerank(dataset.user(member.user_id).uvec, top, n);
    r.member_reranks += rerank_invocations() - rr0;
  }
  r.wall_ms_grouped = ms_since(t0);
  r.aii_evaluations_grouped = kernels::aii_evaluations() - aii0;

  r.reduction_factor = r.topn_generations_grouped == 0
                           ? 0.0
                           : static_cast<double>(r.topn_generations_personalized) /
                                 static_cast<double>(r.topn_generations_grouped);
  return r;
}

nlohmann::ordered_json to_json(const BenchReport& r, bool with_timings) {
  nlohmann::ordered_json j;
  j["n_users"] = r.n_users;
  j["m"] = r.m;
  j["n"] = r.n;
  j["n_candidates"] = r.n_candidates;
  j["groups_formed"] = r.groups_formed;
  j["topn_generations_personalized"] = r.topn_generations_personalized;
  j["topn_generations_grouped"] = r.topn_generations_grouped;
  j["member_reranks"] = r.member_reranks;
  j["reduction_factor"] = r.reduction_factor;
  j["aii_evaluations_personalized"] = r.aii_evaluations_personalized;
  j["aii_evaluations_formation"] = r.aii_evaluations_formation;
  j["aii_evaluations_grouped"] = r.aii_evaluations_grouped;
  if (with_timings) {
    j["wall_ms_personalized"] = r.wall_ms_personalized;
    j["wall_ms_formation"] = r.wall_ms_formation;
    j["wall_ms_grouped"] = r.wall_ms_grouped;
  }
  return j;
}

}  // namespace affect
