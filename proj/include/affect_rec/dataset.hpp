#pragma once

// Ratings and emotion-label ingestion, the inner join between them, and the
// immutable per-dataset store of item and user emotion profiles.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "affect_rec/emotion.hpp"
#include "affect_rec/kernels.hpp"

namespace affect {

struct RatingRecord {
  UserId user_id = 0;
  ItemId movie_id = 0;
  double rating = 0.0;
  std::int64_t timestamp = 0;

  friend bool operator==(const RatingRecord&, const RatingRecord&) = default;
};

struct EmotionRecord {
  std::int64_t tmdb_id = 0;
  ItemId movie_id = 0;
  std::optional<std::int64_t> imdb_id;
  EmotionLabel mood = EmotionLabel::neutral;  // as printed in the file
  EmotionVector mvec;                         // l1-normalized emotion columns
  std::optional<std::uint64_t> vote_count;
};

struct EmotionTable {
  std::vector<EmotionRecord> records;
  /// Rows whose printed mood differs from the argmax of their emotion columns.
  std::size_t mood_mismatches = 0;
};

struct DatasetStats {
  std::size_t n_users = 0;            // distinct users in the ratings input
  std::size_t n_movies = 0;           // distinct movies across ratings and labels
  std::size_t n_ratings = 0;          // ratings input rows
  std::size_t n_emotion_labeled = 0;  // movies with an emotion label
  std::size_t n_ratings_dropped = 0;  // ratings whose movie has no label
  std::size_t n_users_dropped = 0;    // users left with no labeled rating

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

struct WatchEntry {
  ItemId movie_id = 0;
  double rating = 0.0;

  friend bool operator==(const WatchEntry&, const WatchEntry&) = default;
};

/// Output of build_profiles: user profiles and watch lists, both ordered by user id.
struct BuiltProfiles {
  std::vector<UserProfile> profiles;
  std::vector<std::vector<WatchEntry>> watched;
};

/// Immutable after construction; safe to share across threads.
class Dataset {
 public:
  /// Items and users may arrive in any order; they are stored sorted by id.
  /// `watched[i]` belongs to `users[i]` and may be empty for profile-only data.
  Dataset(std::string dataset_id, DatasetStats stats, std::vector<RatingRecord> ratings,
          std::vector<ItemProfile> items, std::vector<UserProfile> users,
          std::vector<std::vector<WatchEntry>> watched);

  /// Profile-only dataset (no ratings), as used by PAC fixtures and JSON exports.
  static Dataset from_profiles(std::string dataset_id, std::vector<UserProfile> users,
                               std::vector<ItemProfile> items);

  const std::string& id() const noexcept { return id_; }
  const DatasetStats& stats() const noexcept { return stats_; }
  std::span<const RatingRecord> ratings() const noexcept { return ratings_; }

  std::span<const ItemProfile> items() const noexcept { return items_; }
  std::span<const UserProfile> users() const noexcept { return users_; }

  const ItemProfile* find_item(ItemId id) const noexcept;
  const ItemProfile& item(ItemId id) const;  // throws UnknownItem
  const UserProfile* find_user(UserId id) const noexcept;
  const UserProfile& user(UserId id) const;  // throws UnknownUser
  std::size_t user_index(UserId id) const;   // throws UnknownUser
  std::span<const WatchEntry> watched(UserId id) const;
  std::optional<double> rating(UserId user, ItemId item) const;

  /// UVECs / MVECs in id order, laid out for the batch kernels.
  const kernels::ProfileMatrix& user_matrix() const noexcept { return user_matrix_; }
  const kernels::ProfileMatrix& item_matrix() const noexcept { return item_matrix_; }

 private:
  std::string id_;
  DatasetStats stats_;
  std::vector<RatingRecord> ratings_;
  std::vector<ItemProfile> items_;
  std::vector<UserProfile> users_;
  std::vector<std::vector<WatchEntry>> watched_;
  kernels::ProfileMatrix user_matrix_;
  kernels::ProfileMatrix item_matrix_;
};

/// `userId,movieId,rating,timestamp`. Row order is preserved.
std::vector<RatingRecord> load_ratings(const std::string& path);

/// `tid,mid,iid,mood,neutral,happy,sad,hate,anger,disgust,surprise` with an
/// optional leading index column and an optional trailing `vote_count` column.
EmotionTable load_emotion_labels(const std::string& path);

/// Groups kept ratings by user and averages the MVECs of each user's items.
/// Every rating must reference a movie in `items` (sorted by id).
BuiltProfiles build_profiles(std::span<const RatingRecord> ratings, std::span<const ItemProfile> items);

/// Inner join on movie id. Throws EmptyJoin when no rating survives.
Dataset merge(std::vector<RatingRecord> ratings, std::span<const EmotionRecord> labels, std::string dataset_id);

/// Mean UVEC of the rater group an item stands for: raw mass over vote count,
/// l1-normalized. Throws MissingVoteCount.
EmotionVector normalize_group_mvec(const ItemProfile& item);

/// Fixed number of ratings per user.
Dataset synth_dataset(std::uint64_t seed, std::size_t n_users, std::size_t n_items, std::size_t ratings_per_user);

/// Heavy-tailed watch counts between `min_ratings` and `max_ratings`: the user
/// at popularity rank r (1-based, seeded shuffle) rates max(min, max / r) items.
Dataset synth_dataset_power_law(std::uint64_t seed, std::size_t n_users, std::size_t n_items,
                                std::size_t min_ratings, std::size_t max_ratings);

nlohmann::ordered_json to_json(const DatasetStats& stats);
/// `{dataset_id, stats, users, items}` with vectors in canonical label order.
nlohmann::ordered_json to_json(const Dataset& dataset);
/// Inverse of to_json(); the result carries profiles and stats but no ratings.
Dataset dataset_from_json(const nlohmann::json& doc);
Dataset load_dataset_json(const std::string& path);

}  // namespace affect
