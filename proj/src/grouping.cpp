#include "affect_rec/grouping.hpp"

#include <algorithm>
#include <iomanip>

#include "affect_rec/csv.hpp"
#include "affect_rec/error.hpp"
#include "affect_rec/ranking.hpp"

namespace affect {

namespace {

const GroupMember& find_member(std::span<const GroupMember> group, UserId id) {
  for (const auto& m : group) {
    if (m.user_id == id) return m;
  }
  throw Error(Errc::NotAMember, "user " + std::to_string(id) + " is not in the group");
}

/// Fills each anchor's group from `pool` (indices into dataset.users()).
/// With `exclusive`, members taken by one group leave the pool and a group
/// may come up short when the pool runs dry.
std::vector<SimulcastGroup> fill_groups(const Dataset& dataset, std::span<const UserId> anchors, std::size_t m,
                                        std::vector<std::size_t> pool, bool exclusive) {
  const auto users = dataset.users();
  std::vector<SimulcastGroup> groups;
  groups.reserve(anchors.size());
  std::vector<double> scores(users.size());
  for (std::size_t g = 0; g < anchors.size(); ++g) {
    const auto& anchor = dataset.user(anchors[g]);
    kernels::aii_batch(anchor.uvec, dataset.user_matrix(), scores);

    const auto top = ranking::top_k(pool.size(), m, [&](std::size_t a, std::size_t b) {
      const double sa = scores[pool[a]];
      const double sb = scores[pool[b]];
      if (sa != sb) return sa > sb;
      return users[pool[a]].user_id < users[pool[b]].user_id;
    });

    SimulcastGroup group{g + 1, anchor.user_id, {}};
    group.members.reserve(top.size() + 1);
    group.members.push_back({anchor.user_id, 1.0});
    for (std::size_t t : top) group.members.push_back({users[pool[t]].user_id, scores[pool[t]]});
    groups.push_back(std::move(group));

    if (exclusive) {
      std::vector<bool> taken(pool.size(), false);
      for (std::size_t t : top) taken[t] = true;
      std::vector<std::size_t> rest;
      rest.reserve(pool.size() - top.size());
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!taken[i]) rest.push_back(pool[i]);
      }
      pool = std::move(rest);
    }
  }
  return groups;
}

std::vector<std::size_t> non_anchor_pool(const Dataset& dataset, std::span<const UserId> anchors) {
  std::vector<UserId> sorted(anchors.begin(), anchors.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> pool;
  const auto users = dataset.users();
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (!std::binary_search(sorted.begin(), sorted.end(), users[i].user_id)) pool.push_back(i);
  }
  return pool;
}

}  // namespace

std::vector<GroupMember> group_members(const Dataset& dataset, std::span<const UserId> ids) {
  std::vector<GroupMember> out;
  out.reserve(ids.size());
  for (UserId id : ids) {
    const auto& u = dataset.user(id);
    out.push_back({u.user_id, u.watch_count, u.uvec});
  }
  return out;
}

std::vector<UserId> interaction_rank(const Dataset& dataset) {
  const auto users = dataset.users();
  auto order = ranking::top_k(users.size(), users.size(), [&](std::size_t a, std::size_t b) {
    if (users[a].watch_count != users[b].watch_count) return users[a].watch_count > users[b].watch_count;
    return users[a].user_id < users[b].user_id;
  });
  std::vector<UserId> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(users[i].user_id);
  return out;
}

std::vector<SimulcastGroup> form_ssg(const Dataset& dataset, std::size_t g, std::size_t m) {
  if (g == 0 || m == 0) throw Error(Errc::InvalidArgument, "g and m must be positive");
  const std::size_t n = dataset.users().size();
  if (n < g || n - g < m) {
    throw Error(Errc::InsufficientUsers, "need " + std::to_string(g) + " anchors plus " + std::to_string(m) +
                                             " members, dataset has " + std::to_string(n) + " users");
  }
  auto rank = interaction_rank(dataset);
  rank.resize(g);
  return fill_groups(dataset, rank, m, non_anchor_pool(dataset, rank), false);
}

std::vector<SimulcastGroup> partition_ssg(const Dataset& dataset, std::size_t m) {
  const std::size_t n = dataset.users().size();
  if (n == 0) throw Error(Errc::InsufficientUsers, "dataset has no users");
  const std::size_t g = (n + m) / (m + 1);
  auto rank = interaction_rank(dataset);
  rank.resize(g);
  return fill_groups(dataset, rank, m, non_anchor_pool(dataset, rank), true);
}

std::vector<RankedMember> rank_members_by_aii(std::span<const GroupMember> group, UserId reference) {
  const auto& ref = find_member(group, reference);
  std::vector<std::size_t> others;
  std::vector<double> scores(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (group[i].user_id == reference) continue;
    others.push_back(i);
    scores[i] = aii(ref.uvec, group[i].uvec);
  }
  const auto order = ranking::top_k(others.size(), others.size(), [&](std::size_t a, std::size_t b) {
    const double sa = scores[others[a]];
    const double sb = scores[others[b]];
    if (sa != sb) return sa > sb;
    return group[others[a]].user_id < group[others[b]].user_id;
  });
  std::vector<RankedMember> out;
  out.reserve(group.size());
  out.push_back({reference, 1.0});
  for (std::size_t o : order) out.push_back({group[others[o]].user_id, scores[others[o]]});
  return out;
}

UserId dominant_member(std::span<const GroupMember> group) {
  if (group.empty()) throw Error(Errc::EmptyGroup, "group has no members");
  const GroupMember* best = &group[0];
  for (const auto& m : group.subspan(1)) {
    if (m.watch_count > best->watch_count || (m.watch_count == best->watch_count && m.user_id < best->user_id)) {
      best = &m;
    }
  }
  return best->user_id;
}

UserId least_misery_member(std::span<const GroupMember> group) {
  if (group.size() < 2) throw Error(Errc::GroupTooSmall, "least-misery needs at least two members");
  return rank_members_by_aii(group, dominant_member(group)).back().user_id;
}

UserId median_member(std::span<const GroupMember> group) {
  const auto ranked = rank_members_by_aii(group, dominant_member(group));
  return ranked[(ranked.size() + 1) / 2 - 1].user_id;
}

EmotionVector group_uvec(std::span<const GroupMember> group) {
  if (group.empty()) throw Error(Errc::EmptyGroup, "group has no members");
  std::vector<EmotionVector> vecs;
  vecs.reserve(group.size());
  for (const auto& m : group) vecs.push_back(m.uvec);
  return mean_profile(vecs);
}

void write_ssg_csv(std::ostream& out, std::span<const SimulcastGroup> groups, const Dataset& dataset) {
  out << "group_index,rank,user_id,aii_to_anchor,watch_count\n";
  for (const auto& g : groups) {
    for (std::size_t r = 0; r < g.members.size(); ++r) {
      const auto& m = g.members[r];
      out << g.group_index << ',' << (r + 1) << ',' << m.user_id << ',' << csv::format_double(m.aii) << ','
          << dataset.user(m.user_id).watch_count << '\n';
    }
  }
}

std::vector<SimulcastGroup> read_ssg_csv(const std::string& path) {
  csv::Reader reader(path);
  std::vector<std::string> f;
  std::vector<SimulcastGroup> groups;
  if (!reader.next(f)) return groups;
  while (reader.next(f)) {
    const auto line = reader.line();
    if (f.size() != 5) throw Error::parse(line, "expected 5 fields");
    const auto index = static_cast<std::size_t>(csv::require_int(f[0], line, "group_index"));
    const auto rank = csv::require_int(f[1], line, "rank");
    RankedMember m{csv::require_int(f[2], line, "user_id"), csv::require_double(f[3], line, "aii_to_anchor")};
    if (rank == 1) {
      groups.push_back({index, m.user_id, {}});
    } else if (groups.empty() || groups.back().group_index != index) {
      throw Error::parse(line, "membership row before its anchor row");
    }
    groups.back().members.push_back(m);
  }
  return groups;
}

}  // namespace affect
