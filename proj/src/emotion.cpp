#include "affect_rec/emotion.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "affect_rec/error.hpp"

namespace affect {

namespace {

constexpr std::array<std::string_view, kEmotionCount> kLabelNames = {
    "neutral", "happiness", "sadness", "hate", "anger", "disgust", "surprise"};

bool iequals(std::string_view a, std::string_view b) noexcept {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char l, char r) {
           return std::tolower(static_cast<unsigned char>(l)) == std::tolower(static_cast<unsigned char>(r));
         });
}

}  // namespace

std::string_view label_name(EmotionLabel label) noexcept {
  return kLabelNames[static_cast<std::size_t>(label)];
}

EmotionLabel label_at(std::size_t index) {
  if (index >= kEmotionCount) {
    throw Error(Errc::InvalidArgument, "emotion index " + std::to_string(index) + " out of range");
  }
  return static_cast<EmotionLabel>(index);
}

std::optional<EmotionLabel> parse_label(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kEmotionCount; ++i) {
    if (iequals(text, kLabelNames[i])) return static_cast<EmotionLabel>(i);
  }
  if (iequals(text, "happy") || iequals(text, "joy")) return EmotionLabel::happiness;
  if (iequals(text, "sad")) return EmotionLabel::sadness;
  return std::nullopt;
}

EmotionVector::EmotionVector(const Components& components) : c_(components) {
  for (double v : c_) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "non-finite emotion component");
    if (v < 0.0) throw Error(Errc::NegativeEmotion, "negative emotion component");
  }
}

double EmotionVector::sum() const noexcept {
  double s = 0.0;
  for (double v : c_) s += v;
  return s;
}

double EmotionVector::norm() const noexcept { return std::sqrt(inner(*this, *this)); }

EmotionVector EmotionVector::scaled(double factor) const {
  Components out;
  for (std::size_t i = 0; i < kEmotionCount; ++i) out[i] = c_[i] * factor;
  return EmotionVector(out);
}

ItemProfile::ItemProfile(ItemId item_id, EmotionVector mvec, std::optional<std::int64_t> tmdb_id,
                         std::optional<std::int64_t> imdb_id, std::optional<std::uint64_t> vote_count)
    : item_id_(item_id),
      mvec_(mvec),
      mood_(dominant_mood(mvec)),
      tmdb_id_(tmdb_id),
      imdb_id_(imdb_id),
      vote_count_(vote_count) {}

double inner(const EmotionVector& x, const EmotionVector& y) noexcept {
  // Left-to-right accumulation; the batch kernels reproduce this order.
  double acc = x[0] * y[0];
  for (std::size_t i = 1; i < kEmotionCount; ++i) acc += x[i] * y[i];
  return acc;
}

double aii(const EmotionVector& x, const EmotionVector& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) throw Error(Errc::ZeroVector, "AII of a zero emotion vector");
  return inner(x, y) / (nx * ny);
}

EmotionVector l1_normalize(const EmotionVector::Components& raw) {
  double total = 0.0;
  for (double v : raw) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "non-finite emotion component");
    if (v < 0.0) throw Error(Errc::NegativeEmotion, "negative emotion component");
    total += v;
  }
  if (total == 0.0) throw Error(Errc::ZeroVector, "cannot normalize an all-zero emotion row");
  EmotionVector::Components out;
  for (std::size_t i = 0; i < kEmotionCount; ++i) out[i] = raw[i] / total;
  return EmotionVector(out);
}

EmotionVector mean_profile(std::span<const EmotionVector> vectors) {
  if (vectors.empty()) throw Error(Errc::EmptyList, "mean of an empty profile list");
  EmotionVector::Components acc{};
  for (const auto& v : vectors) {
    for (std::size_t i = 0; i < kEmotionCount; ++i) acc[i] += v[i];
  }
  const auto n = static_cast<double>(vectors.size());
  for (double& a : acc) a /= n;
  return EmotionVector(acc);
}

UserProfile update_uvec(const UserProfile& profile, const ItemProfile& item) {
  const auto n = static_cast<double>(profile.watch_count);
  EmotionVector::Components next;
  for (std::size_t i = 0; i < kEmotionCount; ++i) {
    next[i] = (n * profile.uvec[i] + item.mvec()[i]) / (n + 1.0);
  }
  return UserProfile{profile.user_id, EmotionVector(next), profile.watch_count + 1};
}

EmotionLabel dominant_mood(const EmotionVector& v) noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kEmotionCount; ++i) {
    if (v[i] > v[best]) best = i;
  }
  return static_cast<EmotionLabel>(best);
}

}  // namespace affect
