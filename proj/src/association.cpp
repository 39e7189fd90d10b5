#include "affect_rec/association.hpp"

#include "affect_rec/error.hpp"
#include "affect_rec/ranking.hpp"

namespace affect {

namespace {

std::vector<PacMatch> best_matches(const EntityRef& source, const EmotionVector& query, const Dataset& target,
                                   const kernels::ProfileMatrix& matrix, EntityKind kind,
                                   const std::vector<std::int64_t>& ids, std::size_t k) {
  if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
  if (matrix.empty()) throw Error(Errc::EmptyTarget, "dataset " + target.id() + " has no candidates");
  const auto scores = kernels::aii_batch(query, matrix);
  const auto top = ranking::top_k(scores.size(), k, [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return ids[a] < ids[b];
  });
  std::vector<PacMatch> out;
  out.reserve(top.size());
  for (std::size_t i : top) out.push_back({source, {target.id(), ids[i], kind}, scores[i]});
  return out;
}

EntityKind parse_kind(const std::string& s) {
  if (s == "user") return EntityKind::user;
  if (s == "item") return EntityKind::item;
  throw Error(Errc::ParseError, "unknown entity kind '" + s + "'");
}

nlohmann::ordered_json ref_json(const EntityRef& r) {
  nlohmann::ordered_json j;
  j["dataset"] = r.dataset;
  j["id"] = r.id;
  j["kind"] = kind_name(r.kind);
  return j;
}

EntityRef ref_from_json(const nlohmann::json& j) {
  return {j.at("dataset").get<std::string>(), j.at("id").get<std::int64_t>(),
          parse_kind(j.at("kind").get<std::string>())};
}

}  // namespace

std::string_view kind_name(EntityKind kind) noexcept { return kind == EntityKind::user ? "user" : "item"; }

std::vector<PacMatch> pac_user_to_user(const Dataset& source, UserId user, const Dataset& target, std::size_t k) {
  const auto& profile = source.user(user);
  std::vector<std::int64_t> ids;
  ids.reserve(target.users().size());
  for (const auto& u : target.users()) ids.push_back(u.user_id);
  return best_matches({source.id(), user, EntityKind::user}, profile.uvec, target, target.user_matrix(),
                      EntityKind::user, ids, k);
}

std::vector<PacMatch> pac_item_to_item(const Dataset& source, ItemId item, const Dataset& target, std::size_t k) {
  const auto& profile = source.item(item);
  std::vector<std::int64_t> ids;
  ids.reserve(target.items().size());
  for (const auto& it : target.items()) ids.push_back(it.item_id());
  return best_matches({source.id(), item, EntityKind::item}, profile.mvec(), target, target.item_matrix(),
                      EntityKind::item, ids, k);
}

PacMatch pac_user_to_item_group(const Dataset& source, UserId user, const ItemProfile& target_item,
                                std::string_view target_dataset) {
  const auto& profile = source.user(user);
  const auto group_vec = normalize_group_mvec(target_item);
  kernels::add_aii_evaluations(1);
  return {{source.id(), user, EntityKind::user},
          {std::string(target_dataset), target_item.item_id(), EntityKind::item},
          aii(profile.uvec, group_vec)};
}

nlohmann::ordered_json to_json(const PacMatch& m) {
  nlohmann::ordered_json j;
  j["source"] = ref_json(m.source);
  j["target"] = ref_json(m.target);
  j["aii"] = m.aii;
  return j;
}

nlohmann::ordered_json to_json(const std::vector<PacMatch>& matches) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& m : matches) arr.push_back(to_json(m));
  return arr;
}

PacMatch pac_match_from_json(const nlohmann::json& doc) {
  try {
    return {ref_from_json(doc.at("source")), ref_from_json(doc.at("target")), doc.at("aii").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("PAC JSON: ") + e.what());
  }
}

}  // namespace affect
