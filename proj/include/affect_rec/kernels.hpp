#pragma once

// Batch AII kernels. One query profile is scored against many stored profiles
// laid out component-major (structure of arrays). Every variant performs the
// same IEEE operations in the same order as affect::aii(), so results are
// bit-identical across variants and to the single-pair function.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "affect_rec/emotion.hpp"

namespace affect::kernels {

class ProfileMatrix {
 public:
  ProfileMatrix() = default;
  /// Throws ZeroVector if any profile has zero norm.
  explicit ProfileMatrix(std::span<const EmotionVector> profiles);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// Component `c` of every stored profile, contiguous.
  std::span<const double> component(std::size_t c) const noexcept {
    return {data_.data() + c * size_, size_};
  }
  std::span<const double> norms() const noexcept { return norms_; }

 private:
  std::size_t size_ = 0;
  std::vector<double> data_;
  std::vector<double> norms_;
};

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;
bool isa_supported(Isa isa) noexcept;
/// Best variant the running CPU supports. AFFECT_REC_KERNEL=scalar|avx2|neon
/// overrides the choice when that variant is supported.
Isa detect_isa() noexcept;
Isa active_isa() noexcept;
/// Pins the dispatched variant. Throws InvalidArgument if unsupported here.
void force_isa(Isa isa);

/// out[i] = aii(query, profile i). `out` must hold matrix.size() values.
/// Throws ZeroVector for a zero query.
void aii_batch(const EmotionVector& query, const ProfileMatrix& matrix, std::span<double> out);
std::vector<double> aii_batch(const EmotionVector& query, const ProfileMatrix& matrix);

/// Explicit variants, for equivalence testing. `query_norm` must be query.norm().
namespace detail {
void aii_batch_scalar(const EmotionVector& query, double query_norm, const ProfileMatrix& matrix,
                      std::span<double> out) noexcept;
void aii_batch_avx2(const EmotionVector& query, double query_norm, const ProfileMatrix& matrix,
                    std::span<double> out) noexcept;
void aii_batch_neon(const EmotionVector& query, double query_norm, const ProfileMatrix& matrix,
                    std::span<double> out) noexcept;

/// Scalar score of profile `i`; shared by the SIMD tails.
inline double aii_at(const EmotionVector& q, double query_norm, const ProfileMatrix& m, std::size_t i) noexcept {
  double dot = q[0] * m.component(0)[i];
  for (std::size_t c = 1; c < kEmotionCount; ++c) dot += q[c] * m.component(c)[i];
  return dot / (query_norm * m.norms()[i]);
}
}  // namespace detail

/// Process-wide instrumentation. Every AII computed by aii_batch() is counted.
std::uint64_t aii_evaluations() noexcept;
void add_aii_evaluations(std::uint64_t n) noexcept;

}  // namespace affect::kernels
