#pragma once

// Top-N production and distribution: AII reranking of a candidate list,
// group decision strategies, rating aggregation, and simulcast / broadcast
// delivery to system groups.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "affect_rec/dataset.hpp"
#include "affect_rec/grouping.hpp"

namespace affect {

struct Candidate {
  ItemId item_id = 0;
  EmotionVector mvec;
  std::size_t display_rank = 0;  // position in the incoming list, 1-based
  std::string title;
};

/// A candidate list with its MVECs laid out for the batch kernels.
class CandidatePool {
 public:
  /// Throws EmptyCandidates.
  explicit CandidatePool(std::vector<Candidate> candidates);

  std::span<const Candidate> candidates() const noexcept { return candidates_; }
  std::size_t size() const noexcept { return candidates_.size(); }
  const kernels::ProfileMatrix& matrix() const noexcept { return matrix_; }

 private:
  std::vector<Candidate> candidates_;
  kernels::ProfileMatrix matrix_;
};

/// CSV `rank,item_id,title`, joined against the dataset's item MVECs.
/// Items missing from the dataset raise UnknownItem naming the id.
CandidatePool load_candidates(const std::string& path, const Dataset& dataset);

struct RankedEntry {
  ItemId item_id = 0;
  double score = 0.0;
  std::size_t display_rank = 0;
  std::string title;

  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

enum class Strategy { dominant, least_misery, average_profile };

std::string_view strategy_name(Strategy s) noexcept;
std::optional<Strategy> parse_strategy(std::string_view text) noexcept;

struct RankedList {
  std::string owner;                    // "user:<id>" or "group:<id>"
  std::optional<Strategy> strategy;     // set for group recommendations
  std::optional<UserId> effective_profile;  // whose UVEC drove the ranking; empty for the group average
  std::vector<RankedEntry> entries;

  friend bool operator==(const RankedList&, const RankedList&) = default;
};

/// Top n candidates by AII to `uvec`, descending; ties by display rank, then
/// item id. Throws EmptyCandidates, InvalidArgument (n = 0 or n > pool size).
RankedList rerank(const EmotionVector& uvec, const CandidatePool& candidates, std::size_t n);

/// Dominant and least-misery rerank with that member's UVEC; average-profile
/// uses the mean member UVEC.
RankedList recommend_for_group(std::span<const GroupMember> group, const CandidatePool& candidates,
                               Strategy strategy, std::size_t n, std::string group_label = "mg");

// ---------------------------------------------------------------------------
// Rating aggregation

/// Member x item ratings; missing entries are unrated.
struct GroupRatingsSlice {
  std::vector<UserId> members;
  std::vector<ItemId> items;
  std::vector<std::optional<double>> ratings;  // row-major, members.size() x items.size()

  std::optional<double> at(std::size_t member, std::size_t item) const { return ratings.at(member * items.size() + item); }
};

/// Slice of the dataset's ratings for the given members and items.
GroupRatingsSlice ratings_slice(const Dataset& dataset, std::span<const UserId> members, std::span<const ItemId> items);

enum class AggregationKind { least_misery, average, average_without_misery };

struct Aggregation {
  AggregationKind kind = AggregationKind::average;
  double tau = 3.0;  // misery threshold for average_without_misery
};

struct ScoredItem {
  ItemId item_id = 0;
  double score = 0.0;

  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

struct AggregateResult {
  std::vector<ScoredItem> scores;  // score descending, ties by item id
  std::vector<ItemId> ineligible;  // items some member has not rated
};

/// Throws EmptySlice when there are no members or no items.
AggregateResult aggregate_ratings(const GroupRatingsSlice& slice, Aggregation fn);

/// Mean of the member ratings present for `item`. Throws InsufficientRaters
/// when fewer than `min_raters` members rated it.
double predict_group_item_rating(std::span<const UserId> group, ItemId item, const Dataset& dataset,
                                 std::size_t min_raters = 1);

// ---------------------------------------------------------------------------
// Distribution

using Simulcast = std::map<UserId, RankedList>;

/// One rerank per group member with the member's own UVEC.
Simulcast simulcast(const SimulcastGroup& group, const Dataset& dataset, const CandidatePool& candidates,
                    std::size_t n);

/// simulcast() over every group with the same candidate list, keyed by group index.
std::map<std::size_t, Simulcast> broadcast(std::span<const SimulcastGroup> groups, const Dataset& dataset,
                                           const CandidatePool& candidates, std::size_t n);

/// Number of rerank() calls made by this process.
std::uint64_t rerank_invocations() noexcept;

void write_ranked_csv(std::ostream& out, const RankedList& list);
nlohmann::ordered_json to_json(const RankedList& list);
RankedList ranked_list_from_json(const nlohmann::json& doc);
nlohmann::ordered_json to_json(const Simulcast& lists);

}  // namespace affect
