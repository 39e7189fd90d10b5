#include "affect_rec/recommend.hpp"

#include <atomic>
#include <set>

#include "affect_rec/csv.hpp"
#include "affect_rec/error.hpp"
#include "affect_rec/ranking.hpp"

namespace affect {

namespace {

std::atomic<std::uint64_t> g_reranks{0};

std::vector<EmotionVector> mvecs_of(std::span<const Candidate> candidates) {
  std::vector<EmotionVector> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(c.mvec);
  return out;
}

std::vector<Candidate> checked(std::vector<Candidate> candidates) {
  if (candidates.empty()) throw Error(Errc::EmptyCandidates, "candidate list is empty");
  std::set<ItemId> seen;
  for (const auto& c : candidates) {
    if (!seen.insert(c.item_id).second) {
      throw Error(Errc::InvalidArgument, "candidate item " + std::to_string(c.item_id) + " listed twice");
    }
  }
  return candidates;
}

}  // namespace

CandidatePool::CandidatePool(std::vector<Candidate> candidates)
    : candidates_(checked(std::move(candidates))), matrix_(mvecs_of(candidates_)) {}

CandidatePool load_candidates(const std::string& path, const Dataset& dataset) {
  csv::Reader reader(path);
  std::vector<std::string> f;
  std::vector<Candidate> out;
  if (!reader.next(f)) return CandidatePool(std::move(out));
  if (f.size() < 2 || f[0] != "rank" || f[1] != "item_id") {
    throw Error::parse(reader.line(), "expected header rank,item_id,title");
  }
  while (reader.next(f)) {
    const auto line = reader.line();
    if (f.size() < 2) throw Error::parse(line, "expected rank,item_id[,title]");
    const auto rank = csv::require_int(f[0], line, "rank");
    if (rank < 1) throw Error::parse(line, "rank must be positive");
    const ItemId id = csv::require_int(f[1], line, "item_id");
    const auto* item = dataset.find_item(id);
    if (item == nullptr) {
      throw Error(Errc::UnknownItem, "candidate item " + std::to_string(id) + " (line " + std::to_string(line) +
                                         ") has no emotion profile in dataset " + dataset.id());
    }
    out.push_back({id, item->mvec(), static_cast<std::size_t>(rank), f.size() > 2 ? f[2] : std::string()});
  }
  return CandidatePool(std::move(out));
}

std::string_view strategy_name(Strategy s) noexcept {
  switch (s) {
    case Strategy::dominant: return "dominant";
    case Strategy::least_misery: return "least-misery";
    case Strategy::average_profile: return "average";
  }
  return "dominant";
}

std::optional<Strategy> parse_strategy(std::string_view text) noexcept {
  if (text == "dominant") return Strategy::dominant;
  if (text == "least-misery" || text == "least_misery") return Strategy::least_misery;
  if (text == "average" || text == "average-profile" || text == "average_profile") return Strategy::average_profile;
  return std::nullopt;
}

RankedList rerank(const EmotionVector& uvec, const CandidatePool& pool, std::size_t n) {
  if (pool.size() == 0) throw Error(Errc::EmptyCandidates, "candidate list is empty");
  if (n == 0 || n > pool.size()) {
    throw Error(Errc::InvalidArgument, "n must be in 1.." + std::to_string(pool.size()));
  }
  g_reranks.fetch_add(1, std::memory_order_relaxed);
  const auto scores = kernels::aii_batch(uvec, pool.matrix());
  const auto cands = pool.candidates();
  const auto top = ranking::top_k(cands.size(), n, [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (cands[a].display_rank != cands[b].display_rank) return cands[a].display_rank < cands[b].display_rank;
    return cands[a].item_id < cands[b].item_id;
  });
  RankedList out;
  out.entries.reserve(top.size());
  for (std::size_t i : top) out.entries.push_back({cands[i].item_id, scores[i], cands[i].display_rank, cands[i].title});
  return out;
}

RankedList recommend_for_group(std::span<const GroupMember> group, const CandidatePool& candidates,
                               Strategy strategy, std::size_t n, std::string group_label) {
  if (group.empty()) throw Error(Errc::EmptyGroup, "group has no members");
  RankedList out;
  switch (strategy) {
    case Strategy::dominant: {
      const UserId who = dominant_member(group);
      for (const auto& m : group) {
        if (m.user_id == who) out = rerank(m.uvec, candidates, n);
      }
      out.effective_profile = who;
      break;
    }
    case Strategy::least_misery: {
      const UserId who = least_misery_member(group);
      for (const auto& m : group) {
        if (m.user_id == who) out = rerank(m.uvec, candidates, n);
      }
      out.effective_profile = who;
      break;
    }
    case Strategy::average_profile:
      out = rerank(group_uvec(group), candidates, n);
      break;
  }
  out.owner = "group:" + group_label;
  out.strategy = strategy;
  return out;
}

Simulcast simulcast(const SimulcastGroup& group, const Dataset& dataset, const CandidatePool& candidates,
                    std::size_t n) {
  if (candidates.size() == 0) throw Error(Errc::EmptyCandidates, "candidate list is empty");
  Simulcast out;
  for (const auto& m : group.members) {
    auto list = rerank(dataset.user(m.user_id).uvec, candidates, n);
    list.owner = "user:" + std::to_string(m.user_id);
    list.effective_profile = m.user_id;
    out.emplace(m.user_id, std::move(list));
  }
  return out;
}

std::map<std::size_t, Simulcast> broadcast(std::span<const SimulcastGroup> groups, const Dataset& dataset,
                                           const CandidatePool& candidates, std::size_t n) {
  std::map<std::size_t, Simulcast> out;
  for (const auto& g : groups) out.emplace(g.group_index, simulcast(g, dataset, candidates, n));
  return out;
}

std::uint64_t rerank_invocations() noexcept { return g_reranks.load(std::memory_order_relaxed); }

void write_ranked_csv(std::ostream& out, const RankedList& list) {
  out << "rank,item_id,score,title\n";
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    const auto& e = list.entries[i];
    out << (i + 1) << ',' << e.item_id << ',' << csv::format_double(e.score) << ',' << csv::quote(e.title) << '\n';
  }
}

nlohmann::ordered_json to_json(const RankedList& list) {
  nlohmann::ordered_json j;
  j["owner"] = list.owner;
  if (list.strategy) j["strategy"] = strategy_name(*list.strategy);
  if (list.effective_profile) j["effective_profile"] = *list.effective_profile;
  auto entries = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    const auto& e = list.entries[i];
    nlohmann::ordered_json je;
    je["rank"] = i + 1;
    je["item_id"] = e.item_id;
    je["score"] = e.score;
    je["display_rank"] = e.display_rank;
    je["title"] = e.title;
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  return j;
}

RankedList ranked_list_from_json(const nlohmann::json& doc) {
  try {
    RankedList out;
    out.owner = doc.at("owner").get<std::string>();
    if (doc.contains("strategy")) {
      out.strategy = parse_strategy(doc["strategy"].get<std::string>());
      if (!out.strategy) throw Error(Errc::ParseError, "unknown strategy");
    }
    if (doc.contains("effective_profile")) out.effective_profile = doc["effective_profile"].get<UserId>();
    for (const auto& je : doc.at("entries")) {
      out.entries.push_back({je.at("item_id").get<ItemId>(), je.at("score").get<double>(),
                             je.at("display_rank").get<std::size_t>(), je.at("title").get<std::string>()});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("ranked list JSON: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const Simulcast& lists) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [user, list] : lists) arr.push_back(to_json(list));
  return arr;
}

}  // namespace affect
