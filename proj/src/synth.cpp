#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "affect_rec/dataset.hpp"
#include "affect_rec/error.hpp"

namespace affect {

namespace {

// std::mt19937_64's output sequence is fixed by the standard; the std::
// distributions are not, so sampling is done by hand on top of it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in (0, 1].
  double unit() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

Dataset build(std::uint64_t seed, std::size_t n_users, std::size_t n_items, const std::vector<std::size_t>& counts) {
  Rng rng(seed);

  // Dirichlet(1,...,1) draws: normalized unit exponentials.
  std::vector<EmotionRecord> labels;
  labels.reserve(n_items);
  for (std::size_t i = 0; i < n_items; ++i) {
    EmotionVector::Components raw;
    for (double& c : raw) c = -std::log(rng.unit()) + 1e-9;
    EmotionRecord rec;
    rec.movie_id = static_cast<ItemId>(i + 1);
    rec.tmdb_id = static_cast<std::int64_t>(100000 + i + 1);
    rec.mvec = l1_normalize(raw);
    rec.mood = dominant_mood(rec.mvec);
    rec.vote_count = 1 + rng.below(1000);
    labels.push_back(rec);
  }

  std::vector<ItemId> pool(n_items);
  std::iota(pool.begin(), pool.end(), ItemId{1});
  std::vector<RatingRecord> ratings;
  for (std::size_t u = 0; u < n_users; ++u) {
    const std::size_t k = counts[u];
    // Partial Fisher-Yates: the first k slots become a sample without replacement.
    for (std::size_t j = 0; j < k; ++j) std::swap(pool[j], pool[j + rng.below(n_items - j)]);
    std::vector<ItemId> picked(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(picked.begin(), picked.end());
    for (ItemId item : picked) {
      RatingRecord r;
      r.user_id = static_cast<UserId>(u + 1);
      r.movie_id = item;
      r.rating = 0.5 * static_cast<double>(1 + rng.below(10));
      r.timestamp = 1'500'000'000 + static_cast<std::int64_t>(rng.below(100'000'000));
      ratings.push_back(r);
    }
  }
  return merge(std::move(ratings), labels, "synth-" + std::to_string(seed));
}

void check_counts(std::size_t n_users, std::size_t n_items) {
  if (n_users == 0 || n_items == 0) throw Error(Errc::InvalidArgument, "synthetic dataset needs users and items");
}

}  // namespace

Dataset synth_dataset(std::uint64_t seed, std::size_t n_users, std::size_t n_items, std::size_t ratings_per_user) {
  check_counts(n_users, n_items);
  if (ratings_per_user == 0 || ratings_per_user > n_items) {
    throw Error(Errc::InvalidArgument, "ratings_per_user must be in 1..n_items");
  }
  return build(seed, n_users, n_items, std::vector<std::size_t>(n_users, ratings_per_user));
}

Dataset synth_dataset_power_law(std::uint64_t seed, std::size_t n_users, std::size_t n_items,
                                std::size_t min_ratings, std::size_t max_ratings) {
  check_counts(n_users, n_items);
  if (min_ratings == 0 || min_ratings > max_ratings || max_ratings > n_items) {
    throw Error(Errc::InvalidArgument, "need 1 <= min_ratings <= max_ratings <= n_items");
  }
  std::vector<std::size_t> rank(n_users);
  std::iota(rank.begin(), rank.end(), std::size_t{1});
  Rng order_rng(seed ^ 0x9E3779B97F4A7C15ull);
  shuffle(rank, order_rng);
  std::vector<std::size_t> counts(n_users);
  for (std::size_t u = 0; u < n_users; ++u) counts[u] = std::max(min_ratings, max_ratings / rank[u]);
  return build(seed, n_users, n_items, counts);
}

}  // namespace affect
