#include "affect_rec/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string_view>
#include <utility>

#include "affect_rec/csv.hpp"
#include "affect_rec/error.hpp"

namespace affect {

namespace {

std::vector<EmotionVector> mvecs_of(std::span<const ItemProfile> items) {
  std::vector<EmotionVector> out;
  out.reserve(items.size());
  for (const auto& it : items) out.push_back(it.mvec());
  return out;
}

std::vector<EmotionVector> uvecs_of(std::span<const UserProfile> users) {
  std::vector<EmotionVector> out;
  out.reserve(users.size());
  for (const auto& u : users) out.push_back(u.uvec);
  return out;
}

template <class T, class Key>
auto find_sorted(const std::vector<T>& v, std::int64_t id, Key key) -> const T* {
  auto it = std::lower_bound(v.begin(), v.end(), id, [&](const T& x, std::int64_t want) { return key(x) < want; });
  if (it == v.end() || key(*it) != id) return nullptr;
  return &*it;
}

bool valid_rating(double r) noexcept {
  return r >= 0.5 && r <= 5.0 && std::floor(r * 2.0) == r * 2.0;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

nlohmann::ordered_json vec_json(const EmotionVector& v) {
  auto arr = nlohmann::ordered_json::array();
  for (double x : v.components()) arr.push_back(x);
  return arr;
}

EmotionVector vec_from_json(const nlohmann::json& arr) {
  if (!arr.is_array() || arr.size() != kEmotionCount) {
    throw Error(Errc::InvalidArgument, "emotion vector must have 7 components");
  }
  EmotionVector::Components c;
  for (std::size_t i = 0; i < kEmotionCount; ++i) c[i] = arr.at(i).get<double>();
  return EmotionVector(c);
}

}  // namespace

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(std::string dataset_id, DatasetStats stats, std::vector<RatingRecord> ratings,
                 std::vector<ItemProfile> items, std::vector<UserProfile> users,
                 std::vector<std::vector<WatchEntry>> watched)
    : id_(std::move(dataset_id)), stats_(stats), ratings_(std::move(ratings)), items_(std::move(items)) {
  if (watched.empty()) watched.resize(users.size());
  if (watched.size() != users.size()) throw Error(Errc::InvalidArgument, "watch lists do not match users");

  std::sort(items_.begin(), items_.end(),
            [](const ItemProfile& a, const ItemProfile& b) { return a.item_id() < b.item_id(); });
  for (std::size_t i = 1; i < items_.size(); ++i) {
    if (items_[i].item_id() == items_[i - 1].item_id()) {
      throw Error(Errc::InvalidArgument, "duplicate item id " + std::to_string(items_[i].item_id()));
    }
  }

  std::vector<std::size_t> order(users.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return users[a].user_id < users[b].user_id; });
  users_.reserve(users.size());
  watched_.reserve(users.size());
  for (std::size_t i : order) {
    if (!users_.empty() && users_.back().user_id == users[i].user_id) {
      throw Error(Errc::InvalidArgument, "duplicate user id " + std::to_string(users[i].user_id));
    }
    users_.push_back(users[i]);
    auto w = std::move(watched[i]);
    std::sort(w.begin(), w.end(), [](const WatchEntry& a, const WatchEntry& b) { return a.movie_id < b.movie_id; });
    watched_.push_back(std::move(w));
  }

  user_matrix_ = kernels::ProfileMatrix(uvecs_of(users_));
  item_matrix_ = kernels::ProfileMatrix(mvecs_of(items_));
}

Dataset Dataset::from_profiles(std::string dataset_id, std::vector<UserProfile> users, std::vector<ItemProfile> items) {
  DatasetStats stats;
  stats.n_users = users.size();
  stats.n_movies = items.size();
  stats.n_emotion_labeled = items.size();
  return Dataset(std::move(dataset_id), stats, {}, std::move(items), std::move(users), {});
}

const ItemProfile* Dataset::find_item(ItemId id) const noexcept {
  return find_sorted(items_, id, [](const ItemProfile& x) { return x.item_id(); });
}

const ItemProfile& Dataset::item(ItemId id) const {
  if (const auto* p = find_item(id)) return *p;
  throw Error(Errc::UnknownItem, "item " + std::to_string(id) + " not in dataset " + id_);
}

const UserProfile* Dataset::find_user(UserId id) const noexcept {
  return find_sorted(users_, id, [](const UserProfile& x) { return x.user_id; });
}

const UserProfile& Dataset::user(UserId id) const {
  if (const auto* p = find_user(id)) return *p;
  throw Error(Errc::UnknownUser, "user " + std::to_string(id) + " not in dataset " + id_);
}

std::size_t Dataset::user_index(UserId id) const { return static_cast<std::size_t>(&user(id) - users_.data()); }

std::span<const WatchEntry> Dataset::watched(UserId id) const { return watched_[user_index(id)]; }

std::optional<double> Dataset::rating(UserId user, ItemId item) const {
  const auto* p = find_user(user);
  if (p == nullptr) return std::nullopt;
  const auto& w = watched_[static_cast<std::size_t>(p - users_.data())];
  auto it = std::lower_bound(w.begin(), w.end(), item,
                             [](const WatchEntry& e, ItemId want) { return e.movie_id < want; });
  if (it == w.end() || it->movie_id != item) return std::nullopt;
  return it->rating;
}

// ---------------------------------------------------------------------------
// Loaders

std::vector<RatingRecord> load_ratings(const std::string& path) {
  csv::Reader reader(path);
  std::vector<std::string> f;
  std::vector<RatingRecord> out;
  if (!reader.next(f)) return out;
  if (f.size() < 4 || f[0] != "userId" || f[1] != "movieId" || f[2] != "rating" || f[3] != "timestamp") {
    throw Error::parse(reader.line(), "expected header userId,movieId,rating,timestamp");
  }
  std::set<std::pair<UserId, ItemId>> seen;
  while (reader.next(f)) {
    const auto line = reader.line();
    if (f.size() != 4) throw Error::parse(line, "expected 4 fields, got " + std::to_string(f.size()));
    RatingRecord r;
    r.user_id = csv::require_int(f[0], line, "userId");
    r.movie_id = csv::require_int(f[1], line, "movieId");
    r.rating = csv::require_double(f[2], line, "rating");
    r.timestamp = csv::require_int(f[3], line, "timestamp");
    if (!valid_rating(r.rating)) throw Error::parse(line, "rating " + f[2] + " outside 0.5..5 in half steps");
    if (!seen.emplace(r.user_id, r.movie_id).second) {
      throw Error(Errc::DuplicateRating, "line " + std::to_string(line) + ": user " + std::to_string(r.user_id) +
                                             " rated movie " + std::to_string(r.movie_id) + " twice");
    }
    out.push_back(r);
  }
  return out;
}

EmotionTable load_emotion_labels(const std::string& path) {
  static constexpr std::array<std::string_view, 11> kColumns = {
      "tid", "mid", "iid", "mood", "neutral", "happy", "sad", "hate", "anger", "disgust", "surprise"};

  csv::Reader reader(path);
  std::vector<std::string> f;
  EmotionTable table;
  if (!reader.next(f)) return table;

  // An unnamed (or "index") leading column is tolerated and skipped.
  std::size_t offset = 0;
  if (!f.empty() && (f[0].empty() || lower(f[0]) == "index")) offset = 1;
  if (f.size() < offset + kColumns.size()) throw Error::parse(reader.line(), "emotion header is missing columns");
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (lower(f[offset + i]) != kColumns[i]) {
      throw Error::parse(reader.line(), "expected column '" + std::string(kColumns[i]) + "', got '" +
                                            f[offset + i] + "'");
    }
  }
  std::optional<std::size_t> vote_col;
  if (f.size() > offset + kColumns.size() && lower(f[offset + kColumns.size()]) == "vote_count") {
    vote_col = offset + kColumns.size();
  }
  const std::size_t width = f.size();

  std::set<ItemId> seen;
  while (reader.next(f)) {
    const auto line = reader.line();
    if (f.size() != width) throw Error::parse(line, "expected " + std::to_string(width) + " fields");
    EmotionRecord rec;
    rec.tmdb_id = csv::require_int(f[offset + 0], line, "tid");
    rec.movie_id = csv::require_int(f[offset + 1], line, "mid");
    if (!f[offset + 2].empty()) rec.imdb_id = csv::require_int(f[offset + 2], line, "iid");
    const auto mood = parse_label(f[offset + 3]);
    if (!mood) throw Error::parse(line, "unknown mood '" + f[offset + 3] + "'");
    rec.mood = *mood;
    EmotionVector::Components raw;
    for (std::size_t c = 0; c < kEmotionCount; ++c) {
      raw[c] = csv::require_double(f[offset + 4 + c], line, kColumns[4 + c]);
      if (raw[c] < 0.0) {
        throw Error(Errc::NegativeEmotion, "line " + std::to_string(line) + ": negative " +
                                               std::string(kColumns[4 + c]) + " value");
      }
    }
    try {
      rec.mvec = l1_normalize(raw);
    } catch (const Error& e) {
      throw Error::parse(line, e.what());
    }
    if (vote_col && !f[*vote_col].empty()) {
      const auto votes = csv::require_int(f[*vote_col], line, "vote_count");
      if (votes < 0) throw Error::parse(line, "negative vote_count");
      rec.vote_count = static_cast<std::uint64_t>(votes);
    }
    if (!seen.insert(rec.movie_id).second) {
      throw Error::parse(line, "duplicate movie id " + std::to_string(rec.movie_id));
    }
    if (dominant_mood(rec.mvec) != rec.mood) ++table.mood_mismatches;
    table.records.push_back(rec);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Join and profile construction

BuiltProfiles build_profiles(std::span<const RatingRecord> ratings, std::span<const ItemProfile> items) {
  std::map<UserId, std::vector<WatchEntry>> by_user;
  for (const auto& r : ratings) by_user[r.user_id].push_back({r.movie_id, r.rating});

  auto lookup = [&](ItemId id) -> const ItemProfile& {
    auto it = std::lower_bound(items.begin(), items.end(), id,
                               [](const ItemProfile& x, ItemId want) { return x.item_id() < want; });
    if (it == items.end() || it->item_id() != id) {
      throw Error(Errc::UnknownItem, "rating references unlabeled movie " + std::to_string(id));
    }
    return *it;
  };

  BuiltProfiles out;
  out.profiles.reserve(by_user.size());
  out.watched.reserve(by_user.size());
  std::vector<EmotionVector> mvecs;
  for (auto& [user, watch] : by_user) {
    std::sort(watch.begin(), watch.end(), [](const WatchEntry& a, const WatchEntry& b) { return a.movie_id < b.movie_id; });
    mvecs.clear();
    for (const auto& w : watch) mvecs.push_back(lookup(w.movie_id).mvec());
    out.profiles.push_back(UserProfile{user, mean_profile(mvecs), watch.size()});
    out.watched.push_back(std::move(watch));
  }
  return out;
}

Dataset merge(std::vector<RatingRecord> ratings, std::span<const EmotionRecord> labels, std::string dataset_id) {
  std::vector<ItemProfile> items;
  items.reserve(labels.size());
  for (const auto& rec : labels) {
    items.emplace_back(rec.movie_id, rec.mvec, rec.tmdb_id, rec.imdb_id, rec.vote_count);
  }
  std::sort(items.begin(), items.end(),
            [](const ItemProfile& a, const ItemProfile& b) { return a.item_id() < b.item_id(); });

  std::set<ItemId> labeled;
  for (const auto& it : items) labeled.insert(it.item_id());

  DatasetStats stats;
  stats.n_ratings = ratings.size();
  stats.n_emotion_labeled = labeled.size();
  std::set<UserId> all_users;
  std::set<ItemId> all_movies = labeled;
  std::vector<RatingRecord> kept;
  kept.reserve(ratings.size());
  for (const auto& r : ratings) {
    all_users.insert(r.user_id);
    all_movies.insert(r.movie_id);
    if (labeled.count(r.movie_id)) {
      kept.push_back(r);
    } else {
      ++stats.n_ratings_dropped;
    }
  }
  stats.n_users = all_users.size();
  stats.n_movies = all_movies.size();
  if (kept.empty()) throw Error(Errc::EmptyJoin, "no rating references an emotion-labeled movie");

  auto built = build_profiles(kept, items);
  stats.n_users_dropped = stats.n_users - built.profiles.size();
  return Dataset(std::move(dataset_id), stats, std::move(kept), std::move(items), std::move(built.profiles),
                 std::move(built.watched));
}

EmotionVector normalize_group_mvec(const ItemProfile& item) {
  const auto votes = item.vote_count();
  if (!votes || *votes == 0) {
    throw Error(Errc::MissingVoteCount, "item " + std::to_string(item.item_id()) + " has no vote count");
  }
  EmotionVector::Components per_rater;
  for (std::size_t i = 0; i < kEmotionCount; ++i) per_rater[i] = item.mvec()[i] / static_cast<double>(*votes);
  return l1_normalize(per_rater);
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::ordered_json to_json(const DatasetStats& s) {
  nlohmann::ordered_json j;
  j["n_users"] = s.n_users;
  j["n_movies"] = s.n_movies;
  j["n_ratings"] = s.n_ratings;
  j["n_emotion_labeled"] = s.n_emotion_labeled;
  j["n_ratings_dropped"] = s.n_ratings_dropped;
  j["n_users_dropped"] = s.n_users_dropped;
  return j;
}

nlohmann::ordered_json to_json(const Dataset& d) {
  nlohmann::ordered_json j;
  j["dataset_id"] = d.id();
  j["stats"] = to_json(d.stats());
  auto users = nlohmann::ordered_json::array();
  for (const auto& u : d.users()) {
    nlohmann::ordered_json ju;
    ju["user_id"] = u.user_id;
    ju["watch_count"] = u.watch_count;
    ju["uvec"] = vec_json(u.uvec);
    users.push_back(std::move(ju));
  }
  j["users"] = std::move(users);
  auto items = nlohmann::ordered_json::array();
  for (const auto& it : d.items()) {
    nlohmann::ordered_json ji;
    ji["movie_id"] = it.item_id();
    ji["tmdb_id"] = it.tmdb_id() ? nlohmann::ordered_json(*it.tmdb_id()) : nlohmann::ordered_json(nullptr);
    ji["mood"] = label_name(it.mood());
    ji["mvec"] = vec_json(it.mvec());
    if (it.vote_count()) ji["vote_count"] = *it.vote_count();
    items.push_back(std::move(ji));
  }
  j["items"] = std::move(items);
  return j;
}

Dataset dataset_from_json(const nlohmann::json& doc) {
  try {
    std::vector<UserProfile> users;
    for (const auto& ju : doc.at("users")) {
      users.push_back(UserProfile{ju.at("user_id").get<UserId>(), vec_from_json(ju.at("uvec")),
                                  ju.at("watch_count").get<std::size_t>()});
    }
    std::vector<ItemProfile> items;
    for (const auto& ji : doc.at("items")) {
      std::optional<std::int64_t> tmdb;
      if (ji.contains("tmdb_id") && !ji["tmdb_id"].is_null()) tmdb = ji["tmdb_id"].get<std::int64_t>();
      std::optional<std::uint64_t> votes;
      if (ji.contains("vote_count") && !ji["vote_count"].is_null()) votes = ji["vote_count"].get<std::uint64_t>();
      items.emplace_back(ji.at("movie_id").get<ItemId>(), vec_from_json(ji.at("mvec")), tmdb, std::nullopt, votes);
    }
    DatasetStats stats;
    if (doc.contains("stats")) {
      const auto& js = doc["stats"];
      stats.n_users = js.value("n_users", users.size());
      stats.n_movies = js.value("n_movies", items.size());
      stats.n_ratings = js.value("n_ratings", std::size_t{0});
      stats.n_emotion_labeled = js.value("n_emotion_labeled", items.size());
      stats.n_ratings_dropped = js.value("n_ratings_dropped", std::size_t{0});
      stats.n_users_dropped = js.value("n_users_dropped", std::size_t{0});
    } else {
      stats.n_users = users.size();
      stats.n_movies = items.size();
      stats.n_emotion_labeled = items.size();
    }
    return Dataset(doc.at("dataset_id").get<std::string>(), stats, {}, std::move(items), std::move(users), {});
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("dataset JSON: ") + e.what());
  }
}

Dataset load_dataset_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::FileNotFound, path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
  return dataset_from_json(doc);
}

}  // namespace affect
