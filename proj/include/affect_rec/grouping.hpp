#pragma once

// Group formation and membership analytics.
//
// System simulcast groups (SSG) are anchored by the most active users and
// filled with the users whose UVEC is closest to the anchor's. Multi-groups
// (MG) are user-managed and carry an owner and a visibility flag.

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "affect_rec/dataset.hpp"

namespace affect {

struct GroupMember {
  UserId user_id = 0;
  std::size_t watch_count = 0;
  EmotionVector uvec;
};

/// Resolves ids against a dataset, in the order given. Throws UnknownUser.
std::vector<GroupMember> group_members(const Dataset& dataset, std::span<const UserId> ids);

struct RankedMember {
  UserId user_id = 0;
  double aii = 0.0;

  friend bool operator==(const RankedMember&, const RankedMember&) = default;
};

struct SimulcastGroup {
  std::size_t group_index = 0;  // 1-based, in anchor rank order
  UserId anchor = 0;
  /// Anchor first (aii 1), then members by AII to the anchor descending,
  /// ties by ascending user id.
  std::vector<RankedMember> members;

  std::size_t size() const noexcept { return members.size(); }
  friend bool operator==(const SimulcastGroup&, const SimulcastGroup&) = default;
};

/// Users by watch count descending, ties by ascending id.
std::vector<UserId> interaction_rank(const Dataset& dataset);

/// g groups of m+1 users. Anchors are the top-g users of interaction_rank();
/// every anchor draws its m closest non-anchor users from a shared pool, so
/// members may appear in several groups. Throws InsufficientUsers.
std::vector<SimulcastGroup> form_ssg(const Dataset& dataset, std::size_t g, std::size_t m);

/// Disjoint variant: ceil(n / (m+1)) anchors, each drawing up to m members
/// that no earlier group took, so every user lands in exactly one group.
std::vector<SimulcastGroup> partition_ssg(const Dataset& dataset, std::size_t m);

/// `reference` first with aii 1, then the rest by AII descending, ties by id.
/// Throws NotAMember.
std::vector<RankedMember> rank_members_by_aii(std::span<const GroupMember> group, UserId reference);

/// Largest watch count; ties by ascending id. Throws EmptyGroup.
UserId dominant_member(std::span<const GroupMember> group);

/// Lowest AII to the dominant member, dominant excluded; ties by ascending id.
/// Throws GroupTooSmall for fewer than two members.
UserId least_misery_member(std::span<const GroupMember> group);

/// Member at 1-based position ceil(size/2) of the AII ranking to the dominant member.
UserId median_member(std::span<const GroupMember> group);

EmotionVector group_uvec(std::span<const GroupMember> group);

/// `group_index,rank,user_id,aii_to_anchor,watch_count`, one row per membership.
void write_ssg_csv(std::ostream& out, std::span<const SimulcastGroup> groups, const Dataset& dataset);
std::vector<SimulcastGroup> read_ssg_csv(const std::string& path);

// ---------------------------------------------------------------------------
// Multi-groups

enum class Visibility { pmg, omg };

std::string_view visibility_name(Visibility v) noexcept;
std::optional<Visibility> parse_visibility(std::string_view text) noexcept;

struct MultiGroup {
  std::string group_id;
  std::string name;
  UserId owner = 0;
  Visibility visibility = Visibility::pmg;
  std::vector<UserId> members;  // sorted, always contains the owner

  friend bool operator==(const MultiGroup&, const MultiGroup&) = default;
};

nlohmann::ordered_json to_json(const MultiGroup& group);
MultiGroup multigroup_from_json(const nlohmann::json& doc);

/// Single-writer / multi-reader store of multi-groups. Every call is atomic
/// with respect to the others. Mutations require actor == owner.
class MultiGroupRegistry {
 public:
  /// Ids are assigned as mg-0001, mg-0002, ...
  MultiGroup create(std::string name, UserId owner, Visibility visibility);
  void erase(const std::string& group_id, UserId actor);
  void add_member(const std::string& group_id, UserId actor, UserId user);
  /// Removing the owner deletes the group.
  void remove_member(const std::string& group_id, UserId actor, UserId user);

  std::vector<UserId> list(const std::string& group_id) const;
  MultiGroup get(const std::string& group_id) const;
  bool contains(const std::string& group_id) const;
  std::vector<MultiGroup> snapshot() const;

  /// Re-inserts a persisted group verbatim; later ids continue after it.
  void restore(MultiGroup group);

 private:
  MultiGroup& mutable_group(const std::string& group_id, UserId actor);

  mutable std::shared_mutex mutex_;
  std::map<std::string, MultiGroup> groups_;
  std::size_t next_id_ = 1;
};

}  // namespace affect
