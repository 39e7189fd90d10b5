#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "affect_rec/association.hpp"
#include "affect_rec/bench.hpp"
#include "affect_rec/csv.hpp"
#include "affect_rec/dataset.hpp"
#include "affect_rec/error.hpp"
#include "affect_rec/grouping.hpp"
#include "affect_rec/kernels.hpp"
#include "affect_rec/recommend.hpp"

namespace affect::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct RunConfig {
  // dataset source
  std::string ratings;
  std::string emotions;
  std::string dataset_json;
  std::string dataset_id = "dataset";
  std::size_t synth_users = 0;
  std::size_t synth_items = 0;
  std::size_t synth_min = 20;
  std::size_t synth_max = 0;

  std::string candidates;
  std::size_t top_items = 100;
  std::string out_dir;
  std::string format = "csv";
  std::uint64_t seed = 42;

  std::size_t g = 10;
  std::size_t m = 60;
  std::size_t n = 10;
  double tau = 3.0;
  std::size_t min_raters = 1;
  bool disjoint = false;
  bool timings = false;

  // pac
  std::string target;
  std::int64_t user = 0;
  std::int64_t item = 0;
  std::int64_t item_group = 0;
  std::size_t k = 1;

  // group administration / recommendation
  std::string name;
  std::string group_id;
  std::string group_file;
  std::string visibility = "PMG";
  std::string strategy = "dominant";
  std::string aggregate;
  std::int64_t owner = 0;
  std::int64_t actor = 0;
};

fs::path output_dir(const RunConfig& cfg) {
  fs::path dir;
  if (!cfg.out_dir.empty()) {
    dir = cfg.out_dir;
  } else if (const char* home = std::getenv("AFFECT_REC_HOME"); home != nullptr && *home != '\0') {
    dir = home;
  } else {
    dir = "affect_rec_out";
  }
  fs::create_directories(dir);
  return dir;
}

Format format_of(const RunConfig& cfg) { return cfg.format == "json" ? Format::json : Format::csv; }

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::FileNotFound, "cannot write " + path.string());
  f << text;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Dataset sources

void add_dataset_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--ratings", cfg.ratings, "MovieLens ratings.csv");
  cmd->add_option("--emotions", cfg.emotions, "Emotion label CSV (tid,mid,iid,mood,...)");
  cmd->add_option("--dataset", cfg.dataset_json, "Dataset JSON written by `ingest`");
  cmd->add_option("--dataset-id", cfg.dataset_id, "Dataset name");
  cmd->add_option("--synth-users", cfg.synth_users, "Generate a synthetic dataset with this many users");
  cmd->add_option("--synth-items", cfg.synth_items, "Synthetic item count (default: max(1000, synth max ratings))");
  cmd->add_option("--synth-min-ratings", cfg.synth_min, "Synthetic minimum ratings per user");
  cmd->add_option("--synth-max-ratings", cfg.synth_max, "Synthetic maximum ratings per user (default: min ratings)");
  cmd->add_option("--seed", cfg.seed, "Seed for every random draw");
}

Dataset load_dataset(const RunConfig& cfg, std::ostream& err) {
  if (!cfg.dataset_json.empty()) return load_dataset_json(cfg.dataset_json);
  if (cfg.synth_users > 0) {
    const std::size_t max_r = std::max(cfg.synth_max, cfg.synth_min);
    const std::size_t items = cfg.synth_items > 0 ? cfg.synth_items : std::max<std::size_t>(1000, max_r);
    return synth_dataset_power_law(cfg.seed, cfg.synth_users, items, cfg.synth_min, max_r);
  }
  if (cfg.ratings.empty() || cfg.emotions.empty()) {
    throw UsageError("need --ratings and --emotions, --dataset, or --synth-users");
  }
  auto ratings = load_ratings(cfg.ratings);
  auto labels = load_emotion_labels(cfg.emotions);
  if (labels.mood_mismatches > 0) {
    err << "warning: " << labels.mood_mismatches << " emotion rows print a mood that is not their largest component\n";
  }
  return merge(std::move(ratings), labels.records, cfg.dataset_id);
}

CandidatePool candidate_pool(const RunConfig& cfg, const Dataset& dataset) {
  if (!cfg.candidates.empty()) return load_candidates(cfg.candidates, dataset);
  // Without a list, the first items in id order stand in, ranked in that order.
  std::vector<Candidate> out;
  const auto items = dataset.items();
  const std::size_t count = std::min(cfg.top_items, items.size());
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({items[i].item_id(), items[i].mvec(), i + 1, "item " + std::to_string(items[i].item_id())});
  }
  return CandidatePool(std::move(out));
}

void print_stats(std::ostream& out, const Dataset& d) {
  const auto& s = d.stats();
  out << std::left << std::setw(12) << "dataset" << std::setw(10) << "users" << std::setw(10) << "movies"
      << std::setw(12) << "ratings" << std::setw(10) << "labeled" << "dropped\n";
  out << std::setw(12) << d.id() << std::setw(10) << s.n_users << std::setw(10) << s.n_movies << std::setw(12)
      << s.n_ratings << std::setw(10) << s.n_emotion_labeled << s.n_ratings_dropped << "\n";
}

std::string render(const RankedList& list, Format fmt) {
  if (fmt == Format::json) return dump(to_json(list));
  std::ostringstream os;
  os << "# owner=" << list.owner;
  if (list.strategy) os << " strategy=" << strategy_name(*list.strategy);
  if (list.effective_profile) os << " effective_profile=" << *list.effective_profile;
  os << "\n";
  write_ranked_csv(os, list);
  return os.str();
}

// ---------------------------------------------------------------------------
// Group files

fs::path groups_dir(const RunConfig& cfg) {
  auto dir = output_dir(cfg) / "groups";
  fs::create_directories(dir);
  return dir;
}

void load_registry(MultiGroupRegistry& reg, const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    std::ifstream in(p);
    try {
      reg.restore(multigroup_from_json(nlohmann::json::parse(in)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::ParseError, p.string() + ": " + e.what());
    }
  }
}

void save_registry(const MultiGroupRegistry& reg, const fs::path& dir) {
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json" && !reg.contains(e.path().stem().string())) fs::remove(e.path());
  }
  for (const auto& g : reg.snapshot()) write_file(dir / (g.group_id + ".json"), dump(to_json(g)));
}

/// Members given inline as {user_id, watch_count, uvec} or as ids resolved
/// against the dataset.
std::pair<std::string, std::vector<GroupMember>> read_group_file(const std::string& path, const Dataset& dataset) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::FileNotFound, path);
  nlohmann::json doc;
  try {
    in >> doc;
    std::string label = doc.value("group_id", doc.value("name", std::string("group")));
    std::vector<GroupMember> members;
    for (const auto& jm : doc.at("members")) {
      if (jm.is_number_integer()) {
        const UserId id = jm.get<UserId>();
        const auto& u = dataset.user(id);
        members.push_back({id, u.watch_count, u.uvec});
        continue;
      }
      const UserId id = jm.at("user_id").get<UserId>();
      if (!jm.contains("uvec")) {
        const auto& u = dataset.user(id);
        members.push_back({id, u.watch_count, u.uvec});
        continue;
      }
      const auto& arr = jm.at("uvec");
      if (arr.size() != kEmotionCount) throw Error(Errc::ParseError, "uvec must have 7 components");
      EmotionVector::Components c;
      for (std::size_t i = 0; i < kEmotionCount; ++i) c[i] = arr.at(i).get<double>();
      members.push_back({id, jm.at("watch_count").get<std::size_t>(), EmotionVector(c)});
    }
    return {label, members};
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_ingest(const RunConfig& cfg, bool write, std::ostream& out, std::ostream& err) {
  const auto d = load_dataset(cfg, err);
  if (write) {
    const auto path = output_dir(cfg) / (d.id() + ".json");
    write_file(path, dump(to_json(d)));
  }
  print_stats(out, d);
  return kExitOk;
}

int cmd_pac(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.target.empty()) throw UsageError("pac needs --target <dataset.json>");
  const auto source = load_dataset(cfg, err);
  const auto target = load_dataset_json(cfg.target);
  std::vector<PacMatch> matches;
  if (cfg.item_group != 0) {
    matches.push_back(pac_user_to_item_group(source, cfg.user, target.item(cfg.item_group), target.id()));
  } else if (cfg.item != 0) {
    matches = pac_item_to_item(source, cfg.item, target, cfg.k);
  } else {
    matches = pac_user_to_user(source, cfg.user, target, cfg.k);
  }

  std::string text;
  if (format_of(cfg) == Format::json) {
    text = dump(to_json(matches));
  } else {
    std::ostringstream os;
    os << "rank,source_dataset,source_id,source_kind,target_dataset,target_id,target_kind,aii\n";
    for (std::size_t i = 0; i < matches.size(); ++i) {
      const auto& m = matches[i];
      os << (i + 1) << ',' << m.source.dataset << ',' << m.source.id << ',' << kind_name(m.source.kind) << ','
         << m.target.dataset << ',' << m.target.id << ',' << kind_name(m.target.kind) << ','
         << csv::format_double(m.aii) << '\n';
    }
    text = os.str();
  }
  write_file(output_dir(cfg) / (format_of(cfg) == Format::json ? "pac.json" : "pac.csv"), text);
  for (std::size_t i = 0; i < matches.size(); ++i) {
    const auto& m = matches[i];
    out << (i + 1) << ' ' << m.target.dataset << ' ' << kind_name(m.target.kind) << ' ' << m.target.id << " aii "
        << std::fixed << std::setprecision(5) << m.aii << std::defaultfloat << '\n';
  }
  return kExitOk;
}

int cmd_form_ssg(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto d = load_dataset(cfg, err);
  const auto groups = cfg.disjoint ? partition_ssg(d, cfg.m) : form_ssg(d, cfg.g, cfg.m);
  std::ostringstream os;
  write_ssg_csv(os, groups, d);
  write_file(output_dir(cfg) / "ssg.csv", os.str());
  std::size_t rows = 0;
  for (const auto& g : groups) {
    rows += g.size();
    out << "group " << g.group_index << " anchor " << g.anchor << " watch_count " << d.user(g.anchor).watch_count
        << " size " << g.size() << '\n';
  }
  out << groups.size() << " groups, " << rows << " membership rows\n";
  return kExitOk;
}

int cmd_rerank(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto d = load_dataset(cfg, err);
  const auto pool = candidate_pool(cfg, d);
  auto list = rerank(d.user(cfg.user).uvec, pool, cfg.n);
  list.owner = "user:" + std::to_string(cfg.user);
  list.effective_profile = cfg.user;
  const auto fmt = format_of(cfg);
  const auto name = "rerank_user_" + std::to_string(cfg.user) + (fmt == Format::json ? ".json" : ".csv");
  const auto text = render(list, fmt);
  write_file(output_dir(cfg) / name, text);
  out << text;
  return kExitOk;
}

/// Rating aggregation over the candidate items, with the mean-based group
/// rating prediction alongside.
int cmd_aggregate(const RunConfig& cfg, const Dataset& d, const CandidatePool& pool,
                  std::span<const GroupMember> members, std::ostream& out) {
  Aggregation fn;
  fn.tau = cfg.tau;
  if (cfg.aggregate == "least-misery") fn.kind = AggregationKind::least_misery;
  if (cfg.aggregate == "average-without-misery") fn.kind = AggregationKind::average_without_misery;
  std::vector<UserId> ids;
  for (const auto& m : members) ids.push_back(m.user_id);
  std::vector<ItemId> items;
  for (const auto& c : pool.candidates()) items.push_back(c.item_id);
  const auto result = aggregate_ratings(ratings_slice(d, ids, items), fn);

  std::ostringstream os;
  os << "rank,item_id,score,predicted_rating\n";
  for (std::size_t i = 0; i < result.scores.size() && i < cfg.n; ++i) {
    const auto& s = result.scores[i];
    os << (i + 1) << ',' << s.item_id << ',' << csv::format_double(s.score) << ','
       << csv::format_double(predict_group_item_rating(ids, s.item_id, d, cfg.min_raters)) << '\n';
  }
  std::size_t unpredictable = 0;
  for (ItemId item : result.ineligible) {
    try {
      predict_group_item_rating(ids, item, d, cfg.min_raters);
    } catch (const Error&) {
      ++unpredictable;
    }
  }
  write_file(output_dir(cfg) / ("aggregate_" + cfg.aggregate + ".csv"), os.str());
  out << os.str() << "# " << result.ineligible.size() << " candidates not rated by every member, " << unpredictable
      << " below --min-raters\n";
  return kExitOk;
}

int cmd_group_recommend(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.group_file.empty()) throw UsageError("group-recommend needs --group-file");
  const auto strategy = parse_strategy(cfg.strategy);
  if (!strategy) throw UsageError("unknown strategy '" + cfg.strategy + "'");
  const auto d = load_dataset(cfg, err);
  const auto pool = candidate_pool(cfg, d);
  const auto [label, members] = read_group_file(cfg.group_file, d);
  if (!cfg.aggregate.empty()) return cmd_aggregate(cfg, d, pool, members, out);
  const auto list = recommend_for_group(members, pool, *strategy, cfg.n, label);
  const auto fmt = format_of(cfg);
  const auto name = "group_" + std::string(strategy_name(*strategy)) + (fmt == Format::json ? ".json" : ".csv");
  const auto text = render(list, fmt);
  write_file(output_dir(cfg) / name, text);
  out << text;
  return kExitOk;
}

int cmd_simulcast(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto d = load_dataset(cfg, err);
  const auto pool = candidate_pool(cfg, d);
  const auto groups = cfg.disjoint ? partition_ssg(d, cfg.m) : form_ssg(d, cfg.g, cfg.m);
  const auto results = broadcast(groups, d, pool, cfg.n);
  const auto dir = output_dir(cfg) / "broadcast";
  fs::create_directories(dir);
  for (const auto& g : groups) {
    nlohmann::ordered_json j;
    j["group_index"] = g.group_index;
    j["anchor"] = g.anchor;
    j["lists"] = to_json(results.at(g.group_index));
    write_file(dir / ("ssg_" + std::to_string(g.group_index) + ".json"), dump(j));
    out << "ssg_" << g.group_index << ".json: " << g.size() << " lists\n";
  }
  return kExitOk;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto d = load_dataset(cfg, err);
  const auto pool = candidate_pool(cfg, d);
  const auto report = run_bench(d, pool, cfg.m, std::min(cfg.n, pool.size()));
  write_file(output_dir(cfg) / "bench.json", dump(to_json(report, cfg.timings)));
  out << "kernel " << kernels::isa_name(kernels::active_isa()) << '\n'
      << "users " << report.n_users << ", groups " << report.groups_formed << " (m = " << report.m << ")\n"
      << "top-N generations: personalized " << report.topn_generations_personalized << ", grouped "
      << report.topn_generations_grouped << ", reduction factor " << report.reduction_factor << '\n'
      << "member reranks " << report.member_reranks << '\n'
      << "AII evaluations: personalized " << report.aii_evaluations_personalized << ", formation "
      << report.aii_evaluations_formation << ", grouped " << report.aii_evaluations_grouped << '\n'
      << std::fixed << std::setprecision(3) << "wall ms: personalized " << report.wall_ms_personalized
      << ", formation " << report.wall_ms_formation << ", grouped " << report.wall_ms_grouped << '\n'
      << std::defaultfloat;
  return kExitOk;
}

int cmd_group_admin(const std::string& action, const RunConfig& cfg, std::ostream& out) {
  const auto dir = groups_dir(cfg);
  MultiGroupRegistry reg;
  load_registry(reg, dir);
  if (action == "create") {
    const auto vis = parse_visibility(cfg.visibility);
    if (!vis) throw UsageError("visibility must be PMG or OMG");
    const auto g = reg.create(cfg.name, cfg.owner, *vis);
    out << g.group_id << '\n';
  } else if (action == "delete") {
    reg.erase(cfg.group_id, cfg.actor);
  } else if (action == "add") {
    reg.add_member(cfg.group_id, cfg.actor, cfg.user);
  } else if (action == "remove") {
    reg.remove_member(cfg.group_id, cfg.actor, cfg.user);
  } else if (action == "list") {
    for (UserId u : reg.list(cfg.group_id)) out << u << '\n';
    return kExitOk;
  }
  save_registry(reg, dir);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Affect-aware group recommendation toolkit"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--out", cfg.out_dir, "Output directory (default $AFFECT_REC_HOME or ./affect_rec_out)");
    cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto with_candidates = [&](CLI::App* cmd) {
    cmd->add_option("--candidates", cfg.candidates, "Candidate list CSV (rank,item_id,title)");
    cmd->add_option("--top-items", cfg.top_items, "Without --candidates, use this many items in id order")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--n", cfg.n, "List length")->check(CLI::PositiveNumber);
  };

  auto* ingest = app.add_subcommand("ingest", "Load ratings and emotion labels, write the dataset JSON");
  add_dataset_options(ingest, cfg);
  common(ingest);

  auto* stats = app.add_subcommand("stats", "Print dataset statistics");
  add_dataset_options(stats, cfg);
  common(stats);

  auto* pac = app.add_subcommand("pac", "Pseudo association connection against another dataset");
  add_dataset_options(pac, cfg);
  common(pac);
  pac->add_option("--target", cfg.target, "Target dataset JSON")->required();
  pac->add_option("--user", cfg.user, "Source user id");
  pac->add_option("--item", cfg.item, "Source item id (item-to-item PAC)");
  pac->add_option("--item-group", cfg.item_group, "Target item id (user-to-item-group PAC)");
  pac->add_option("--k", cfg.k, "Number of matches")->check(CLI::PositiveNumber);

  auto* ssg = app.add_subcommand("form-ssg", "Form system simulcast groups");
  add_dataset_options(ssg, cfg);
  common(ssg);
  ssg->add_option("--g", cfg.g, "Number of groups")->check(CLI::PositiveNumber);
  ssg->add_option("--m", cfg.m, "Members per group besides the anchor")->check(CLI::PositiveNumber);
  ssg->add_flag("--disjoint", cfg.disjoint, "Partition users so each joins exactly one group");

  auto* group = app.add_subcommand("group", "Administer user multi-groups");
  group->require_subcommand(1);
  std::string group_action;
  for (const char* action : {"create", "delete", "add", "remove", "list"}) {
    auto* sub = group->add_subcommand(action);
    common(sub);
    sub->callback([&group_action, action] { group_action = action; });
    if (std::string(action) == "create") {
      sub->add_option("--name", cfg.name, "Group name")->required();
      sub->add_option("--owner", cfg.owner, "Owner user id")->required();
      sub->add_option("--visibility", cfg.visibility, "PMG or OMG");
    } else {
      sub->add_option("--group", cfg.group_id, "Group id")->required();
      if (std::string(action) != "list") sub->add_option("--actor", cfg.actor, "Acting user id")->required();
      if (std::string(action) == "add" || std::string(action) == "remove") {
        sub->add_option("--user", cfg.user, "Member user id")->required();
      }
    }
  }

  auto* rr = app.add_subcommand("rerank", "Rerank candidates for one user");
  add_dataset_options(rr, cfg);
  common(rr);
  with_candidates(rr);
  rr->add_option("--user", cfg.user, "User id")->required();

  auto* grec = app.add_subcommand("group-recommend", "Top-N for a multi-group under a decision strategy");
  add_dataset_options(grec, cfg);
  common(grec);
  with_candidates(grec);
  grec->add_option("--group-file", cfg.group_file, "Group JSON")->required();
  grec->add_option("--strategy", cfg.strategy, "dominant | least-misery | average")
      ->check(CLI::IsMember({"dominant", "least-misery", "average"}));

  auto* sim = app.add_subcommand("simulcast", "Broadcast one candidate list to every simulcast group");
  add_dataset_options(sim, cfg);
  common(sim);
  with_candidates(sim);
  sim->add_option("--g", cfg.g, "Number of groups")->check(CLI::PositiveNumber);
  sim->add_option("--m", cfg.m, "Members per group besides the anchor")->check(CLI::PositiveNumber);
  sim->add_flag("--disjoint", cfg.disjoint, "Partition users so each joins exactly one group");

  auto* bench = app.add_subcommand("bench", "Count personalized versus grouped top-N work");
  add_dataset_options(bench, cfg);
  common(bench);
  with_candidates(bench);
  bench->add_option("--m", cfg.m, "Members per group besides the anchor")->check(CLI::PositiveNumber);
  bench->add_flag("--timings", cfg.timings, "Include wall-clock times in bench.json");

  grec->add_option("--aggregate", cfg.aggregate, "Score candidates by member ratings instead of AII")
      ->check(CLI::IsMember({"least-misery", "average", "average-without-misery"}));
  grec->add_option("--tau", cfg.tau, "Misery threshold for average-without-misery");
  grec->add_option("--min-raters", cfg.min_raters, "Minimum raters for the predicted group rating")
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(cfg, true, out, err);
    if (*stats) return cmd_ingest(cfg, false, out, err);
    if (*pac) return cmd_pac(cfg, out, err);
    if (*ssg) return cmd_form_ssg(cfg, out, err);
    if (*group) return cmd_group_admin(group_action, cfg, out);
    if (*rr) return cmd_rerank(cfg, out, err);
    if (*grec) return cmd_group_recommend(cfg, out, err);
    if (*sim) return cmd_simulcast(cfg, out, err);
    if (*bench) return cmd_bench(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.name() << '\n' << "  " << e.what() << '\n';
    return kExitDomain;
  } catch (const fs::filesystem_error& e) {
    err << "error: FileNotFound\n  " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace affect::cli
