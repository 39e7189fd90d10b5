#include "affect_rec/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace affect::kernels::detail {

#if defined(__aarch64__)

void aii_batch_neon(const EmotionVector& query, double query_norm, const ProfileMatrix& matrix,
                    std::span<double> out) noexcept {
  const std::size_t n = matrix.size();
  const double* col[kEmotionCount];
  float64x2_t q[kEmotionCount];
  for (std::size_t c = 0; c < kEmotionCount; ++c) {
    col[c] = matrix.component(c).data();
    q[c] = vdupq_n_f64(query[c]);
  }
  const double* norms = matrix.norms().data();
  const float64x2_t qn = vdupq_n_f64(query_norm);

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t dot = vmulq_f64(q[0], vld1q_f64(col[0] + i));
    for (std::size_t c = 1; c < kEmotionCount; ++c) {
      dot = vaddq_f64(dot, vmulq_f64(q[c], vld1q_f64(col[c] + i)));
    }
    const float64x2_t den = vmulq_f64(qn, vld1q_f64(norms + i));
    vst1q_f64(out.data() + i, vdivq_f64(dot, den));
  }
  for (; i < n; ++i) out[i] = aii_at(query, query_norm, matrix, i);
}

#else

void aii_batch_neon(const EmotionVector& query, double query_norm, const ProfileMatrix& matrix,
                    std::span<double> out) noexcept {
  aii_batch_scalar(query, query_norm, matrix, out);
}

#endif

}  // namespace affect::kernels::detail
