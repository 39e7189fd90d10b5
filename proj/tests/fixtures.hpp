#pragma once

// Published emotion profiles used as fixtures, plus temp-file helpers.

#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <unistd.h>

#include "affect_rec/dataset.hpp"
#include "affect_rec/grouping.hpp"

namespace fixtures {

using Components = affect::EmotionVector::Components;

// PAC demonstration: user 400 of ml-latest-small and its best matches.
inline constexpr Components kMlsm400 = {0.16353, 0.08874, 0.12709, 0.20332, 0.11934, 0.15881, 0.13918};
inline constexpr Components kMl20m66274 = {0.16250, 0.08609, 0.12654, 0.20701, 0.11776, 0.16005, 0.14005};
inline constexpr Components kMl25m95459 = {0.16353, 0.08874, 0.12709, 0.20332, 0.11934, 0.15881, 0.13918};
inline constexpr Components kMl27m89195 = {0.16353, 0.08874, 0.12709, 0.20332, 0.11934, 0.15881, 0.13918};
inline constexpr double kAii400To66274 = 0.99992;
// Exact decimal sum of the elementwise products of kMlsm400 and kMl20m66274:
// 1513476713 / 10^10, computed with rational arithmetic.
inline constexpr double kInner400And66274 = 0.1513476713;

// Stored UVEC of mlsm user 400 (seven significant digits).
inline constexpr Components kStoredUvec400 = {0.163529, 0.088735, 0.1270899, 0.203318, 0.119338, 0.158812, 0.1391753};

struct PublishedItem {
  std::int64_t tmdb_id;
  std::int64_t movie_id;
  std::string_view mood;
  Components emotions;
};

// Item emotion profiles: two full-precision rows and five rounded file rows.
inline const std::vector<PublishedItem> kPublishedItems = {
    {2, 4470, "disgust", {0.15705037, 0.08608995, 0.15583897, 0.07506061, 0.08469571, 0.26612538, 0.17513901}},
    {525662, 189111, "hate", {0.11876434, 0.05086204, 0.12669845, 0.3391073, 0.13069303, 0.13746719, 0.096407644}},
    {2, 4470, "disgust", {0.157, 0.086, 0.156, 0.075, 0.085, 0.266, 0.175}},
    {5, 18, "disgust", {0.121, 0.060, 0.098, 0.128, 0.133, 0.244, 0.216}},
    {6, 479, "hate", {0.075, 0.114, 0.054, 0.433, 0.095, 0.128, 0.100}},
    {11, 260, "neutral", {0.299, 0.262, 0.079, 0.030, 0.017, 0.083, 0.230}},
    {12, 6377, "surprise", {0.150, 0.080, 0.055, 0.083, 0.103, 0.153, 0.376}},
};

// Five-member multi-user group: (user id, watched, UVEC).
inline std::vector<affect::GroupMember> five_member_group() {
  using affect::EmotionVector;
  return {
      {195, 187, EmotionVector({0.1639455, 0.0902557, 0.1176815, 0.1726736, 0.1185870, 0.1777129, 0.1591437})},
      {602, 135, EmotionVector({0.1639545, 0.0869860, 0.1168919, 0.16947266, 0.1156349, 0.1817310, 0.1653290})},
      {190, 66, EmotionVector({0.1603803, 0.0849701, 0.1254172, 0.17182250, 0.1135154, 0.1797844, 0.1641099})},
      {521, 40, EmotionVector({0.1574143, 0.0944750, 0.1240710, 0.14589457, 0.1083259, 0.1795868, 0.1902323})},
      {463, 33, EmotionVector({0.1558253, 0.0968441, 0.1140474, 0.19975860, 0.1226243, 0.1571110, 0.1537890})},
  };
}
inline constexpr Components kGroupAverage = {0.1603040, 0.0907061, 0.1196220, 0.17192440,
                                             0.1157376, 0.1751852, 0.1665208};
inline constexpr affect::UserId kPublishedDominant = 195;
inline constexpr affect::UserId kPublishedLeastMisery = 463;

inline affect::Dataset single_user_dataset(std::string id, affect::UserId user, std::size_t watched,
                                           const Components& uvec) {
  return affect::Dataset::from_profiles(std::move(id), {{user, affect::EmotionVector(uvec), watched}}, {});
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("affect_rec_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::string file(std::string_view name, std::string_view contents) const {
    const auto p = path_ / std::string(name);
    std::ofstream(p, std::ios::binary) << contents;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures
