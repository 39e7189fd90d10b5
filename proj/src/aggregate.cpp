#include <algorithm>

#include "affect_rec/error.hpp"
#include "affect_rec/recommend.hpp"

namespace affect {

GroupRatingsSlice ratings_slice(const Dataset& dataset, std::span<const UserId> members, std::span<const ItemId> items) {
  GroupRatingsSlice slice{{members.begin(), members.end()}, {items.begin(), items.end()}, {}};
  slice.ratings.reserve(members.size() * items.size());
  for (UserId u : members) {
    for (ItemId i : items) slice.ratings.push_back(dataset.rating(u, i));
  }
  return slice;
}

AggregateResult aggregate_ratings(const GroupRatingsSlice& slice, Aggregation fn) {
  if (slice.members.empty() || slice.items.empty()) throw Error(Errc::EmptySlice, "no members or no items");
  if (slice.ratings.size() != slice.members.size() * slice.items.size()) {
    throw Error(Errc::InvalidArgument, "rating matrix does not match member and item lists");
  }
  AggregateResult out;
  for (std::size_t i = 0; i < slice.items.size(); ++i) {
    double lowest = 0.0;
    double total = 0.0;
    bool complete = true;
    for (std::size_t m = 0; m < slice.members.size(); ++m) {
      const auto r = slice.at(m, i);
      if (!r) {
        complete = false;
        break;
      }
      lowest = m == 0 ? *r : std::min(lowest, *r);
      total += *r;
    }
    if (!complete) {
      out.ineligible.push_back(slice.items[i]);
      continue;
    }
    const double mean = total / static_cast<double>(slice.members.size());
    switch (fn.kind) {
      case AggregationKind::least_misery:
        out.scores.push_back({slice.items[i], lowest});
        break;
      case AggregationKind::average:
        out.scores.push_back({slice.items[i], mean});
        break;
      case AggregationKind::average_without_misery:
        if (lowest >= fn.tau) out.scores.push_back({slice.items[i], mean});
        break;
    }
  }
  std::sort(out.scores.begin(), out.scores.end(), [](const ScoredItem& a, const ScoredItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.item_id < b.item_id;
  });
  return out;
}

double predict_group_item_rating(std::span<const UserId> group, ItemId item, const Dataset& dataset,
                                 std::size_t min_raters) {
  double total = 0.0;
  std::size_t raters = 0;
  for (UserId u : group) {
    if (auto r = dataset.rating(u, item)) {
      total += *r;
      ++raters;
    }
  }
  if (raters == 0 || raters < min_raters) {
    throw Error(Errc::InsufficientRaters, std::to_string(raters) + " of " + std::to_string(group.size()) +
                                              " members rated item " + std::to_string(item));
  }
  return total / static_cast<double>(raters);
}

}  // namespace affect
