#pragma once

// Pseudo Association Connection (PAC): best AII matches for a user or item of
// one dataset among the disjoint users or items of another.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "affect_rec/dataset.hpp"

namespace affect {

enum class EntityKind { user, item };

std::string_view kind_name(EntityKind kind) noexcept;

struct EntityRef {
  std::string dataset;
  std::int64_t id = 0;
  EntityKind kind = EntityKind::user;

  friend bool operator==(const EntityRef&, const EntityRef&) = default;
};

struct PacMatch {
  EntityRef source;
  EntityRef target;
  double aii = 0.0;

  friend bool operator==(const PacMatch&, const PacMatch&) = default;
};

/// The k target users with the highest AII to the source user's UVEC, by AII
/// descending then target id ascending. k = 1 is the classic PAC link.
/// Throws UnknownUser, EmptyTarget, InvalidArgument (k = 0).
std::vector<PacMatch> pac_user_to_user(const Dataset& source, UserId user, const Dataset& target, std::size_t k);

/// Item-to-item variant over MVECs.
std::vector<PacMatch> pac_item_to_item(const Dataset& source, ItemId item, const Dataset& target, std::size_t k);

/// One-to-many link: a user against the rater group an item stands for
/// (its vote-count-normalized MVEC). Throws MissingVoteCount, UnknownUser.
PacMatch pac_user_to_item_group(const Dataset& source, UserId user, const ItemProfile& target_item,
                                std::string_view target_dataset);

nlohmann::ordered_json to_json(const PacMatch& match);
nlohmann::ordered_json to_json(const std::vector<PacMatch>& matches);
PacMatch pac_match_from_json(const nlohmann::json& doc);

}  // namespace affect
