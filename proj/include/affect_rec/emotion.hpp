#pragma once

// Affect-vector mathematics: the seven-label emotion space, item and user
// emotion profiles, and the cosine-based Affective Index Indicator (AII).

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace affect {

using UserId = std::int64_t;
using ItemId = std::int64_t;

inline constexpr std::size_t kEmotionCount = 7;

/// Canonical label order. The numeric value is the component index.
enum class EmotionLabel : std::uint8_t {
  neutral = 0,
  happiness = 1,
  sadness = 2,
  hate = 3,
  anger = 4,
  disgust = 5,
  surprise = 6,
};

std::string_view label_name(EmotionLabel label) noexcept;
EmotionLabel label_at(std::size_t index);
/// Case-insensitive; also accepts the column spellings "happy", "joy" and "sad".
std::optional<EmotionLabel> parse_label(std::string_view text) noexcept;

class EmotionVector {
 public:
  using Components = std::array<double, kEmotionCount>;

  EmotionVector() = default;
  /// Rejects negative or non-finite components. No normalization is applied;
  /// use l1_normalize() for ingested rows.
  explicit EmotionVector(const Components& components);

  double operator[](std::size_t i) const noexcept { return c_[i]; }
  double operator[](EmotionLabel label) const noexcept { return c_[static_cast<std::size_t>(label)]; }
  const Components& components() const noexcept { return c_; }

  double sum() const noexcept;
  /// Euclidean norm, accumulated in canonical component order.
  double norm() const noexcept;
  EmotionVector scaled(double factor) const;

  friend bool operator==(const EmotionVector&, const EmotionVector&) = default;

 private:
  Components c_{};
};

/// Static item emotion profile (MVEC). Immutable after construction; the mood
/// is always the dominant label of the stored vector.
class ItemProfile {
 public:
  ItemProfile(ItemId item_id, EmotionVector mvec,
              std::optional<std::int64_t> tmdb_id = std::nullopt,
              std::optional<std::int64_t> imdb_id = std::nullopt,
              std::optional<std::uint64_t> vote_count = std::nullopt);

  ItemId item_id() const noexcept { return item_id_; }
  const EmotionVector& mvec() const noexcept { return mvec_; }
  EmotionLabel mood() const noexcept { return mood_; }
  std::optional<std::int64_t> tmdb_id() const noexcept { return tmdb_id_; }
  std::optional<std::int64_t> imdb_id() const noexcept { return imdb_id_; }
  std::optional<std::uint64_t> vote_count() const noexcept { return vote_count_; }

 private:
  ItemId item_id_;
  EmotionVector mvec_;
  EmotionLabel mood_;
  std::optional<std::int64_t> tmdb_id_;
  std::optional<std::int64_t> imdb_id_;
  std::optional<std::uint64_t> vote_count_;
};

/// User emotion profile (UVEC): running mean of the MVECs of watched items.
struct UserProfile {
  UserId user_id = 0;
  EmotionVector uvec;
  std::size_t watch_count = 0;

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

double inner(const EmotionVector& x, const EmotionVector& y) noexcept;

/// Cosine similarity of two emotion profiles. Throws ZeroVector if either
/// norm is zero. Exactly symmetric in its arguments.
double aii(const EmotionVector& x, const EmotionVector& y);

EmotionVector l1_normalize(const EmotionVector::Components& raw);

EmotionVector mean_profile(std::span<const EmotionVector> vectors);

UserProfile update_uvec(const UserProfile& profile, const ItemProfile& item);

/// Label of the largest component; ties go to the lowest canonical index.
EmotionLabel dominant_mood(const EmotionVector& v) noexcept;

}  // namespace affect
