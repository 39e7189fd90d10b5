#include <algorithm>
#include <cstdio>
#include <mutex>

#include "affect_rec/error.hpp"
#include "affect_rec/grouping.hpp"

namespace affect {

namespace {

std::string format_id(std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "mg-%04zu", n);
  return buf;
}

std::optional<std::size_t> parse_id(const std::string& id) {
  if (!id.starts_with("mg-")) return std::nullopt;
  std::size_t n = 0;
  for (char c : id.substr(3)) {
    if (c < '0' || c > '9') return std::nullopt;
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  return n;
}

}  // namespace

std::string_view visibility_name(Visibility v) noexcept { return v == Visibility::pmg ? "PMG" : "OMG"; }

std::optional<Visibility> parse_visibility(std::string_view text) noexcept {
  if (text == "PMG" || text == "pmg" || text == "private") return Visibility::pmg;
  if (text == "OMG" || text == "omg" || text == "open") return Visibility::omg;
  return std::nullopt;
}

nlohmann::ordered_json to_json(const MultiGroup& g) {
  nlohmann::ordered_json j;
  j["group_id"] = g.group_id;
  j["name"] = g.name;
  j["owner"] = g.owner;
  j["visibility"] = visibility_name(g.visibility);
  j["members"] = g.members;
  return j;
}

MultiGroup multigroup_from_json(const nlohmann::json& doc) {
  try {
    MultiGroup g;
    g.group_id = doc.at("group_id").get<std::string>();
    g.name = doc.at("name").get<std::string>();
    g.owner = doc.at("owner").get<UserId>();
    const auto vis = parse_visibility(doc.at("visibility").get<std::string>());
    if (!vis) throw Error(Errc::ParseError, "unknown visibility");
    g.visibility = *vis;
    g.members = doc.at("members").get<std::vector<UserId>>();
    std::sort(g.members.begin(), g.members.end());
    g.members.erase(std::unique(g.members.begin(), g.members.end()), g.members.end());
    if (!std::binary_search(g.members.begin(), g.members.end(), g.owner)) {
      throw Error(Errc::ParseError, "group " + g.group_id + " does not contain its owner");
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("multi-group JSON: ") + e.what());
  }
}

MultiGroup MultiGroupRegistry::create(std::string name, UserId owner, Visibility visibility) {
  std::unique_lock lock(mutex_);
  MultiGroup g{format_id(next_id_++), std::move(name), owner, visibility, {owner}};
  groups_.emplace(g.group_id, g);
  return g;
}

MultiGroup& MultiGroupRegistry::mutable_group(const std::string& group_id, UserId actor) {
  auto it = groups_.find(group_id);
  if (it == groups_.end()) throw Error(Errc::UnknownGroup, group_id);
  if (it->second.owner != actor) {
    throw Error(Errc::NotOwner, "user " + std::to_string(actor) + " does not own " + group_id);
  }
  return it->second;
}

void MultiGroupRegistry::erase(const std::string& group_id, UserId actor) {
  std::unique_lock lock(mutex_);
  mutable_group(group_id, actor);
  groups_.erase(group_id);
}

void MultiGroupRegistry::add_member(const std::string& group_id, UserId actor, UserId user) {
  std::unique_lock lock(mutex_);
  auto& g = mutable_group(group_id, actor);
  auto pos = std::lower_bound(g.members.begin(), g.members.end(), user);
  if (pos != g.members.end() && *pos == user) {
    throw Error(Errc::AlreadyMember, "user " + std::to_string(user) + " already in " + group_id);
  }
  g.members.insert(pos, user);
}

void MultiGroupRegistry::remove_member(const std::string& group_id, UserId actor, UserId user) {
  std::unique_lock lock(mutex_);
  auto& g = mutable_group(group_id, actor);
  auto pos = std::lower_bound(g.members.begin(), g.members.end(), user);
  if (pos == g.members.end() || *pos != user) {
    throw Error(Errc::NotAMember, "user " + std::to_string(user) + " not in " + group_id);
  }
  if (user == g.owner) {
    groups_.erase(group_id);
    return;
  }
  g.members.erase(pos);
}

std::vector<UserId> MultiGroupRegistry::list(const std::string& group_id) const { return get(group_id).members; }

MultiGroup MultiGroupRegistry::get(const std::string& group_id) const {
  std::shared_lock lock(mutex_);
  auto it = groups_.find(group_id);
  if (it == groups_.end()) throw Error(Errc::UnknownGroup, group_id);
  return it->second;
}

bool MultiGroupRegistry::contains(const std::string& group_id) const {
  std::shared_lock lock(mutex_);
  return groups_.count(group_id) != 0;
}

std::vector<MultiGroup> MultiGroupRegistry::snapshot() const {
  std::shared_lock lock(mutex_);
  std::vector<MultiGroup> out;
  out.reserve(groups_.size());
  for (const auto& [id, g] : groups_) out.push_back(g);
  return out;
}

void MultiGroupRegistry::restore(MultiGroup group) {
  std::unique_lock lock(mutex_);
  if (auto n = parse_id(group.group_id)) next_id_ = std::max(next_id_, *n + 1);
  groups_[group.group_id] = std::move(group);
}

}  // namespace affect
