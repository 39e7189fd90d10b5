// Acceptance suite. Prints one PASS / FAIL / SKIP line per criterion and
// exits nonzero when any criterion fails.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "affect_rec/association.hpp"
#include "affect_rec/csv.hpp"
#include "affect_rec/dataset.hpp"
#include "affect_rec/error.hpp"
#include "affect_rec/grouping.hpp"
#include "affect_rec/recommend.hpp"
#include "cli.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace affect;
namespace fs = std::filesystem;

namespace {

enum class Status { pass, fail, skip };

struct Outcome {
  Status status = Status::pass;
  std::string detail;
};

/// Collects failed checks; the first few are reported.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++failed_;
  }
  Outcome outcome(std::string summary) const {
    if (failed_ == 0) return {Status::pass, summary + ", " + std::to_string(total_) + " checks"};
    std::string d = std::to_string(failed_) + " of " + std::to_string(total_) + " checks failed";
    for (const auto& f : failures_) d += "; " + f;
    return {Status::fail, d};
  }

 private:
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

std::string fmt(double v, int precision = 8) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------

Outcome published_pac() {
  Checks c;
  const auto mlsm = fixtures::single_user_dataset("mlsm", 400, 43, fixtures::kMlsm400);
  const auto ml20m = fixtures::single_user_dataset("ml20m", 66274, 43, fixtures::kMl20m66274);
  const auto ml25m = fixtures::single_user_dataset("ml25m", 95459, 43, fixtures::kMl25m95459);
  const auto ml27m = fixtures::single_user_dataset("ml27m", 89195, 43, fixtures::kMl27m89195);
  const auto a = pac_user_to_user(mlsm, 400, ml20m, 1).at(0);
  const auto b = pac_user_to_user(mlsm, 400, ml25m, 1).at(0);
  const auto d = pac_user_to_user(mlsm, 400, ml27m, 1).at(0);
  c.expect(a.target.id == 66274, "ml20m match id " + std::to_string(a.target.id));
  c.expect(std::abs(a.aii - fixtures::kAii400To66274) <= 1e-4, "aii(400, 66274) = " + fmt(a.aii));
  c.expect(b.aii >= 0.99999, "aii(400, ml25m 95459) = " + fmt(b.aii));
  c.expect(d.aii >= 0.99999, "aii(400, ml27m 89195) = " + fmt(d.aii));
  return c.outcome("aii(400, 66274) = " + fmt(a.aii) + ", ml25m " + fmt(b.aii) + ", ml27m " + fmt(d.aii));
}

Outcome published_group() {
  Checks c;
  const auto g = fixtures::five_member_group();
  const auto dom = dominant_member(g);
  const auto lm = least_misery_member(g);
  const auto avg = group_uvec(g);
  double worst = 0.0;
  for (std::size_t i = 0; i < kEmotionCount; ++i) worst = std::max(worst, std::abs(avg[i] - fixtures::kGroupAverage[i]));
  c.expect(dom == fixtures::kPublishedDominant, "dominant_member = " + std::to_string(dom));
  c.expect(lm == fixtures::kPublishedLeastMisery,
           "least_misery_member = " + std::to_string(lm) + ", expected " + std::to_string(fixtures::kPublishedLeastMisery) +
               " (aii to dominant: 521 " + fmt(aii(g[0].uvec, g[3].uvec), 6) + ", 463 " + fmt(aii(g[0].uvec, g[4].uvec), 6) +
               ")");
  c.expect(worst <= 5e-7, "group_uvec max deviation " + fmt(worst, 3));
  return c.outcome("dominant " + std::to_string(dom) + ", least-misery " + std::to_string(lm) +
                   ", group_uvec max deviation " + fmt(worst, 3));
}

Outcome published_moods() {
  Checks c;
  fixtures::TempDir dir;
  std::string full = "tid,mid,iid,mood,neutral,happy,sad,hate,anger,disgust,surprise\n", rounded = full;
  for (std::size_t k = 0; k < fixtures::kPublishedItems.size(); ++k) {
    const auto& p = fixtures::kPublishedItems[k];
    const auto printed = parse_label(p.mood);
    const auto got = dominant_mood(l1_normalize(p.emotions));
    c.expect(printed == got, "movie " + std::to_string(p.movie_id) + " prints " + std::string(p.mood) + ", argmax " +
                                 std::string(label_name(got)));
    std::string row = std::to_string(p.tmdb_id) + "," + std::to_string(p.movie_id) + ",," + std::string(p.mood);
    for (double v : p.emotions) row += "," + csv::format_double(v);
    (k < 2 ? full : rounded) += row + "\n";
  }
  std::size_t mismatches = 0;
  for (const auto& text : {full, rounded}) mismatches += load_emotion_labels(dir.file("labels.csv", text)).mood_mismatches;
  c.expect(mismatches == 0, "loader counted " + std::to_string(mismatches) + " mismatches");
  return c.outcome(std::to_string(fixtures::kPublishedItems.size()) + " rows, " + std::to_string(mismatches) +
                   " mismatches");
}

// ---------------------------------------------------------------------------
// Oracle suite

std::vector<oracle::Profile> oracle_users(const Dataset& d) {
  std::vector<oracle::Profile> out;
  for (const auto& u : d.users()) out.push_back({u.user_id, u.watch_count, u.uvec.components()});
  return out;
}

std::vector<oracle::Scored> scored(const std::vector<PacMatch>& ms) {
  std::vector<oracle::Scored> out;
  for (const auto& m : ms) out.push_back({m.target.id, m.aii});
  return out;
}

std::vector<oracle::Scored> scored(const RankedList& l) {
  std::vector<oracle::Scored> out;
  for (const auto& e : l.entries) out.push_back({e.item_id, e.score});
  return out;
}

std::vector<oracle::Scored> scored(const AggregateResult& r) {
  std::vector<oracle::Scored> out;
  for (const auto& s : r.scores) out.push_back({s.item_id, s.score});
  return out;
}

/// Copies of a few users under new ids (same UVEC and watch count) so ties in
/// both AII and interaction rank occur.
Dataset with_twins(const Dataset& d, std::mt19937_64& rng, std::size_t twins) {
  std::vector<UserProfile> users(d.users().begin(), d.users().end());
  for (std::size_t i = 0; i < twins; ++i) {
    auto u = d.users()[rng() % d.users().size()];
    u.user_id = 10000000 + static_cast<UserId>(i);
    users.push_back(u);
  }
  return Dataset::from_profiles(d.id() + "-twins", std::move(users), {});
}

void oracle_seed(std::uint64_t seed, Checks& c) {
  std::mt19937_64 rng(seed);
  const std::size_t n_users = 60 + rng() % 441;  // 60..500
  const std::size_t n_items = 200 + rng() % 801;  // 200..1000
  const auto base = synth_dataset_power_law(seed, n_users, n_items, 5, 150);
  const auto d = with_twins(base, rng, 8);
  const auto users = oracle_users(d);
  const std::string tag = "seed " + std::to_string(seed) + ": ";

  // PAC, user to user: every source in a small sample against the tie-laden target.
  const auto source = synth_dataset(seed + 7919, 5, n_items, 3);
  for (const auto& u : source.users()) {
    const std::size_t k = 1 + rng() % 20;
    c.expect(scored(pac_user_to_user(source, u.user_id, d, k)) == oracle::best_k(u.uvec.components(), users, k),
             tag + "pac_user_to_user");
  }
  // A source identical to a twinned target user: ties must resolve by id.
  {
    const auto& t = d.users().back();
    const auto src = Dataset::from_profiles("src", {{1, t.uvec, 1}}, {});
    c.expect(scored(pac_user_to_user(src, 1, d, 3)) == oracle::best_k(t.uvec.components(), users, 3),
             tag + "pac_user_to_user tie");
  }
  // PAC, item to item and user to item group.
  {
    std::vector<oracle::Profile> items;
    for (const auto& it : base.items()) items.push_back({it.item_id(), 0, it.mvec().components()});
    const auto other = synth_dataset(seed + 104729, 3, 50, 2);
    for (const auto& it : other.items()) {
      if (it.item_id() > 10) break;
      c.expect(scored(pac_item_to_item(other, it.item_id(), base, 5)) == oracle::best_k(it.mvec().components(), items, 5),
               tag + "pac_item_to_item");
    }
    const auto& voted = base.items()[rng() % base.items().size()];
    const auto m = pac_user_to_item_group(source, source.users()[0].user_id, voted, base.id());
    c.expect(m.aii == oracle::cosine(source.users()[0].uvec.components(),
                                     oracle::group_vector(voted.mvec().components(), *voted.vote_count())),
             tag + "pac_user_to_item_group");
  }

  // Simulcast group formation.
  {
    const std::size_t g = 1 + rng() % 10;
    const std::size_t m = 1 + rng() % std::min<std::size_t>(60, d.users().size() - g);
    const auto groups = form_ssg(d, g, m);
    const auto want = oracle::simulcast_groups(users, g, m, false);
    bool same = groups.size() == want.size();
    for (std::size_t i = 0; same && i < groups.size(); ++i) {
      std::vector<oracle::Scored> got;
      for (const auto& mem : groups[i].members) got.push_back({mem.user_id, mem.aii});
      same = got == want[i];
    }
    c.expect(same, tag + "form_ssg g=" + std::to_string(g) + " m=" + std::to_string(m));
  }

  // Candidates: dataset items plus exact MVEC duplicates at later display ranks.
  std::vector<Candidate> cands;
  std::vector<oracle::Item> oracle_items;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& it = base.items()[i];
    cands.push_back({it.item_id(), it.mvec(), i + 1, ""});
  }
  for (std::size_t i = 0; i < 5; ++i) {
    cands.push_back({static_cast<ItemId>(900000 + i), cands[rng() % 100].mvec, 101 + i, ""});
  }
  std::shuffle(cands.begin(), cands.end(), rng);
  for (const auto& cd : cands) oracle_items.push_back({cd.item_id, cd.display_rank, cd.mvec.components()});
  const CandidatePool pool(cands);

  for (int t = 0; t < 5; ++t) {
    const auto& u = d.users()[rng() % d.users().size()];
    const std::size_t n = 1 + rng() % pool.size();
    c.expect(scored(rerank(u.uvec, pool, n)) == oracle::rerank(u.uvec.components(), oracle_items, n), tag + "rerank");
  }

  // Group strategies on a random member sample.
  {
    const std::size_t size = 2 + rng() % 9;
    std::vector<UserId> ids;
    std::vector<oracle::Profile> og;
    while (ids.size() < size) {
      const auto& u = d.users()[rng() % d.users().size()];
      if (std::find(ids.begin(), ids.end(), u.user_id) != ids.end()) continue;
      ids.push_back(u.user_id);
      og.push_back({u.user_id, u.watch_count, u.uvec.components()});
    }
    const auto members = group_members(d, ids);
    const auto profile_of = [&](UserId id) { return d.user(id).uvec.components(); };
    const auto dom = recommend_for_group(members, pool, Strategy::dominant, 10);
    const auto lm = recommend_for_group(members, pool, Strategy::least_misery, 10);
    const auto av = recommend_for_group(members, pool, Strategy::average_profile, 10);
    std::vector<oracle::Vec> vs;
    for (const auto& p : og) vs.push_back(p.v);
    const auto dom_id = oracle::dominant(og);
    const auto lm_id = oracle::misery_order(og).front().id;
    c.expect(dom.effective_profile == dom_id && scored(dom) == oracle::rerank(profile_of(dom_id), oracle_items, 10),
             tag + "dominant strategy");
    c.expect(lm.effective_profile == lm_id && scored(lm) == oracle::rerank(profile_of(lm_id), oracle_items, 10),
             tag + "least-misery strategy");
    c.expect(scored(av) == oracle::rerank(oracle::mean(vs), oracle_items, 10), tag + "average strategy");

    // Aggregation over the members' real ratings.
    std::vector<UserId> real_ids;
    for (UserId id : ids) {
      if (base.find_user(id)) real_ids.push_back(id);
    }
    if (real_ids.empty()) real_ids.push_back(base.users()[0].user_id);
    std::vector<ItemId> rated;
    for (const auto& w : base.watched(real_ids[0])) rated.push_back(w.movie_id);
    for (ItemId extra = 1; extra <= 30; ++extra) rated.push_back(extra);
    std::sort(rated.begin(), rated.end());
    rated.erase(std::unique(rated.begin(), rated.end()), rated.end());
    const auto slice = ratings_slice(base, real_ids, rated);
    std::vector<std::vector<std::optional<double>>> rows;
    for (UserId id : real_ids) {
      rows.emplace_back();
      for (ItemId it : rated) rows.back().push_back(base.rating(id, it));
    }
    const double tau = 0.5 * static_cast<double>(1 + rng() % 10);
    c.expect(scored(aggregate_ratings(slice, {AggregationKind::least_misery})) ==
                 oracle::aggregate(rated, rows, oracle::Agg::least_misery, tau),
             tag + "least-misery aggregation");
    c.expect(scored(aggregate_ratings(slice, {AggregationKind::average})) ==
                 oracle::aggregate(rated, rows, oracle::Agg::average, tau),
             tag + "average aggregation");
    c.expect(scored(aggregate_ratings(slice, {AggregationKind::average_without_misery, tau})) ==
                 oracle::aggregate(rated, rows, oracle::Agg::average_without_misery, tau),
             tag + "average-without-misery aggregation");
  }

  // Aggregation over a dense random slice with many score ties.
  {
    GroupRatingsSlice s;
    std::vector<std::vector<std::optional<double>>> rows(1 + rng() % 8);
    for (std::size_t i = 0; i < 40; ++i) s.items.push_back(static_cast<ItemId>(i + 1));
    for (std::size_t m = 0; m < rows.size(); ++m) {
      s.members.push_back(static_cast<UserId>(m + 1));
      for (std::size_t i = 0; i < 40; ++i) {
        std::optional<double> r;
        if (rng() % 20 != 0) r = 0.5 * static_cast<double>(1 + rng() % 10);
        rows[m].push_back(r);
        s.ratings.push_back(r);
      }
    }
    const double tau = 0.5 * static_cast<double>(1 + rng() % 10);
    for (auto [kind, agg] : {std::pair{AggregationKind::least_misery, oracle::Agg::least_misery},
                             std::pair{AggregationKind::average, oracle::Agg::average},
                             std::pair{AggregationKind::average_without_misery, oracle::Agg::average_without_misery}}) {
      c.expect(scored(aggregate_ratings(s, {kind, tau})) == oracle::aggregate(s.items, rows, agg, tau),
               tag + "dense aggregation");
    }
  }
}

Outcome oracle_suites() {
  Checks c;
  constexpr std::uint64_t kSeeds = 120;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) oracle_seed(seed, c);
  return c.outcome(std::to_string(kSeeds) + " seeds");
}

// ---------------------------------------------------------------------------

Outcome numerical_invariants() {
  Checks c;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);

  std::size_t self = 0, sym = 0, range = 0;
  for (int i = 0; i < 100000; ++i) {
    const EmotionVector x(oracle::random_distribution(rng));
    const EmotionVector y(oracle::random_distribution(rng));
    const double xy = aii(x, y);
    if (std::abs(aii(x, x) - 1.0) > 1e-12) ++self;
    if (xy != aii(y, x)) ++sym;
    if (!(xy >= 0.0 && xy <= 1.0 + 1e-12)) ++range;
  }
  c.expect(self == 0, std::to_string(self) + " self-AII violations");
  c.expect(sym == 0, std::to_string(sym) + " symmetry violations");
  c.expect(range == 0, std::to_string(range) + " range violations");

  double worst = 0.0;
  for (std::size_t len : {1u, 2u, 10u, 100u, 1000u, 5000u, 10000u}) {
    UserProfile p{1, {}, 0};
    std::vector<EmotionVector> history;
    for (std::size_t i = 0; i < len; ++i) {
      const ItemProfile item(static_cast<ItemId>(i), EmotionVector(oracle::random_distribution(rng)));
      history.push_back(item.mvec());
      p = update_uvec(p, item);
    }
    const auto batch = mean_profile(history);
    for (std::size_t k = 0; k < kEmotionCount; ++k) worst = std::max(worst, std::abs(p.uvec[k] - batch[k]));
  }
  c.expect(worst <= 1e-12, "incremental vs batch deviation " + fmt(worst, 3));

  std::size_t order_changes = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < 100; ++i) {
      cands.push_back({static_cast<ItemId>(i + 1), EmotionVector(oracle::random_distribution(rng)), i + 1, ""});
    }
    const CandidatePool pool(cands);
    const EmotionVector u(oracle::random_distribution(rng));
    const auto a = rerank(u, pool, 10);
    const auto b = rerank(u.scaled(scale(rng)), pool, 10);
    for (std::size_t i = 0; i < 10; ++i) {
      if (a.entries[i].item_id != b.entries[i].item_id) {
        ++order_changes;
        break;
      }
    }
  }
  c.expect(order_changes == 0, std::to_string(order_changes) + " rerank orders changed under scaling");
  return c.outcome("1e5 pairs, sequences to 1e4 (max deviation " + fmt(worst, 3) + "), 1e3 scaling cases");
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Wall-clock lines are the only stdout content allowed to vary between runs.
std::string without_timings(const std::string& text) {
  std::istringstream in(text);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.rfind("wall ms", 0) != 0) kept += line + "\n";
  }
  return kept;
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

Outcome throughput() {
  Checks c;
  fixtures::TempDir dir;
  std::string out;
  const int code = run_cli({"bench", "--synth-users", "610", "--synth-items", "9742", "--synth-min-ratings", "20",
                            "--synth-max-ratings", "2698", "--seed", "42", "--m", "60", "--out", dir.path().string()},
                           &out);
  c.expect(code == 0, "bench exit code " + std::to_string(code));
  if (code != 0) return c.outcome("");
  const auto doc = nlohmann::json::parse(slurp(dir.path() / "bench.json"));
  const auto personalized = doc.at("topn_generations_personalized").get<std::uint64_t>();
  const auto grouped = doc.at("topn_generations_grouped").get<std::uint64_t>();
  const auto factor = doc.at("reduction_factor").get<double>();
  c.expect(doc.at("topn_generations_personalized").is_number_unsigned(), "personalized counter is not an integer");
  c.expect(doc.at("topn_generations_grouped").is_number_unsigned(), "grouped counter is not an integer");
  c.expect(personalized == 610, "personalized " + std::to_string(personalized));
  c.expect(grouped == 10, "grouped " + std::to_string(grouped));
  c.expect(factor == 61.0, "reduction factor " + fmt(factor));
  c.expect(doc.at("groups_formed").get<std::size_t>() == 10, "groups formed");
  return c.outcome(std::to_string(personalized) + " personalized vs " + std::to_string(grouped) +
                   " grouped top-N generations, factor " + fmt(factor));
}

Outcome real_ingestion() {
  const char* env = std::getenv("AFFECT_REC_MLSM_DIR");
  const fs::path dir = env && *env ? fs::path(env) : fs::path("data/ml-latest-small");
  const auto ratings = dir / "ratings.csv";
  fs::path labels;
  for (const char* name : {"emotions.csv", "emotion_labels.csv", "movie_emotions.csv"}) {
    if (fs::exists(dir / name)) labels = dir / name;
  }
  if (!fs::exists(ratings) || labels.empty()) {
    return {Status::skip, "ml-latest-small ratings.csv and emotion label file not found under " + dir.string() +
                              " (set AFFECT_REC_MLSM_DIR)"};
  }
  Checks c;
  fixtures::TempDir out;
  std::string text;
  const int code = run_cli({"ingest", "--ratings", ratings.string(), "--emotions", labels.string(), "--dataset-id",
                            "mlsm", "--out", out.path().string()},
                           &text);
  c.expect(code == 0, "ingest exit code " + std::to_string(code));
  if (code != 0) return c.outcome("");
  const auto d = load_dataset_json((out.path() / "mlsm.json").string());
  c.expect(d.stats().n_users == 610, "users " + std::to_string(d.stats().n_users));
  c.expect(d.stats().n_movies == 9742, "movies " + std::to_string(d.stats().n_movies));
  c.expect(d.stats().n_ratings == 100836, "ratings " + std::to_string(d.stats().n_ratings));
  c.expect(text.find("610") != std::string::npos && text.find("100836") != std::string::npos, "printed stats row");
  return c.outcome(std::to_string(d.stats().n_users) + " users, " + std::to_string(d.stats().n_movies) + " movies, " +
                   std::to_string(d.stats().n_ratings) + " ratings");
}

/// Writes a synthetic dataset back out as ratings and label CSV files.
std::pair<std::string, std::string> write_inputs(const fixtures::TempDir& dir, const Dataset& d) {
  std::string ratings = "userId,movieId,rating,timestamp\n";
  for (const auto& r : d.ratings()) {
    ratings += std::to_string(r.user_id) + "," + std::to_string(r.movie_id) + "," + csv::format_double(r.rating) + "," +
               std::to_string(r.timestamp) + "\n";
  }
  std::string labels = "tid,mid,iid,mood,neutral,happy,sad,hate,anger,disgust,surprise,vote_count\n";
  for (const auto& it : d.items()) {
    labels += std::to_string(it.tmdb_id().value_or(0)) + "," + std::to_string(it.item_id()) + ",," +
              std::string(label_name(it.mood()));
    for (double v : it.mvec().components()) labels += "," + csv::format_double(v);
    labels += "," + std::to_string(it.vote_count().value_or(1)) + "\n";
  }
  return {dir.file("ratings.csv", ratings), dir.file("labels.csv", labels)};
}

Outcome determinism() {
  Checks c;
  fixtures::TempDir inputs;
  const auto d = synth_dataset_power_law(42, 120, 400, 5, 150);
  const auto [ratings, labels] = write_inputs(inputs, d);
  const auto target = inputs.file("target.json", to_json(synth_dataset(43, 80, 400, 10)).dump());
  const auto group = inputs.file("group.json", R"({"name":"g","members":[1,2,3,4,5]})");
  const auto cands = inputs.file("cands.csv", "rank,item_id,title\n1,10,Ten\n2,20,\"Twenty, again\"\n3,30,Thirty\n"
                                              "4,40,Forty\n5,50,Fifty\n6,60,Sixty\n7,70,Seventy\n8,80,Eighty\n"
                                              "9,90,Ninety\n10,100,Hundred\n11,110,More\n12,120,Most\n");
  const std::vector<std::string> src = {"--ratings", ratings, "--emotions", labels, "--dataset-id", "mlsm", "--seed", "42"};

  const std::vector<std::vector<std::string>> commands = {
      {"ingest"},
      {"stats"},
      {"pac", "--target", target, "--user", "3", "--k", "5"},
      {"pac", "--target", target, "--user", "3", "--k", "5", "--format", "json"},
      {"pac", "--target", target, "--item", "7", "--k", "3"},
      {"pac", "--target", target, "--user", "3", "--item-group", "7"},
      {"form-ssg", "--g", "10", "--m", "8"},
      {"group", "create", "--name", "friends", "--owner", "1"},
      {"group", "add", "--group", "mg-0001", "--actor", "1", "--user", "2"},
      {"group", "add", "--group", "mg-0001", "--actor", "1", "--user", "3"},
      {"group", "remove", "--group", "mg-0001", "--actor", "1", "--user", "2"},
      {"group", "list", "--group", "mg-0001"},
      {"rerank", "--user", "4", "--candidates", cands, "--n", "5"},
      {"rerank", "--user", "4", "--format", "json"},
      {"group-recommend", "--group-file", group, "--strategy", "dominant"},
      {"group-recommend", "--group-file", group, "--strategy", "least-misery", "--format", "json"},
      {"group-recommend", "--group-file", group, "--strategy", "average"},
      {"group-recommend", "--group-file", group, "--aggregate", "average-without-misery", "--tau", "3.5",
       "--top-items", "400"},
      {"simulcast", "--g", "3", "--m", "6"},
      {"bench", "--m", "11"},
  };

  std::vector<std::string> stdout_a, stdout_b;
  fixtures::TempDir a, b;
  for (const auto& cmd : commands) {
    std::vector<std::string> args = cmd;
    if (cmd[0] != "group") args.insert(args.end(), src.begin(), src.end());
    for (auto [dir, log] : {std::pair{&a, &stdout_a}, std::pair{&b, &stdout_b}}) {
      auto full = args;
      full.insert(full.end(), {"--out", dir->path().string()});
      std::string text;
      const int code = run_cli(full, &text);
      c.expect(code == 0, cmd[0] + " exit code " + std::to_string(code));
      log->push_back(text);
    }
  }
  for (std::size_t i = 0; i < commands.size(); ++i) {
    c.expect(without_timings(stdout_a[i]) == without_timings(stdout_b[i]), commands[i][0] + " stdout differs");
  }
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a.path())) {
    if (!e.is_regular_file()) continue;
    const auto other = b.path() / fs::relative(e.path(), a.path());
    c.expect(fs::exists(other) && slurp(e.path()) == slurp(other), fs::relative(e.path(), a.path()).string() + " differs");
    ++files;
  }
  std::size_t files_b = 0;
  for (const auto& e : fs::recursive_directory_iterator(b.path())) files_b += e.is_regular_file();
  c.expect(files == files_b, "file sets differ");
  return c.outcome(std::to_string(commands.size()) + " command lines, " + std::to_string(files) + " output files");
}

struct Criterion {
  int number;
  std::string name;
  std::function<Outcome()> run;
  double limit_ms;  // 0: no runtime bound
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "published PAC values", published_pac, 1000},
      {2, "published five-member group", published_group, 1000},
      {3, "published item moods", published_moods, 0},
      {4, "oracle suites on seeded synthetic data", oracle_suites, 60000},
      {5, "numerical invariants", numerical_invariants, 0},
      {6, "simulcast throughput counters", throughput, 10000},
      {7, "ml-latest-small ingestion", real_ingestion, 0},
      {8, "byte-identical reruns of every subcommand", determinism, 0},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Status::fail, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.status != Status::skip && c.limit_ms > 0 && ms > c.limit_ms) {
      o.status = Status::fail;
      o.detail += "; took " + fmt(ms, 6) + " ms, limit " + fmt(c.limit_ms, 6) + " ms";
    }
    const char* label = o.status == Status::pass ? "PASS" : o.status == Status::fail ? "FAIL" : "SKIP";
    std::cout << label << " [" << c.number << "] " << c.name << ": " << o.detail << " (" << static_cast<long>(ms)
              << " ms)" << std::endl;
    failed += o.status == Status::fail;
  }
  std::cout << (failed == 0 ? "all criteria met" : std::to_string(failed) + (failed == 1 ? " criterion failed" : " criteria failed")) << std::endl;
  return failed == 0 ? 0 : 1;
}
