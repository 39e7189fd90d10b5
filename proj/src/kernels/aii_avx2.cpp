#include "affect_rec/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace affect::kernels::detail {

#if defined(__AVX2__)

// Four profiles per iteration. Multiplies and adds are issued separately
// (no FMA) so each lane rounds exactly like the scalar path.
void aii_batch_avx2(const EmotionVector& query, double query_norm, const ProfileMatrix& matrix,
                    std::span<double> out) noexcept {
  const std::size_t n = matrix.size();
  const double* col[kEmotionCount];
  __m256d q[kEmotionCount];
  for (std::size_t c = 0; c < kEmotionCount; ++c) {
    col[c] = matrix.component(c).data();
    q[c] = _mm256_set1_pd(query[c]);
  }
  const double* norms = matrix.norms().data();
  const __m256d qn = _mm256_set1_pd(query_norm);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dot = _mm256_mul_pd(q[0], _mm256_loadu_pd(col[0] + i));
    for (std::size_t c = 1; c < kEmotionCount; ++c) {
      dot = _mm256_add_pd(dot, _mm256_mul_pd(q[c], _mm256_loadu_pd(col[c] + i)));
    }
    const __m256d den = _mm256_mul_pd(qn, _mm256_loadu_pd(norms + i));
    _mm256_storeu_pd(out.data() + i, _mm256_div_pd(dot, den));
  }
  for (; i < n; ++i) out[i] = aii_at(query, query_norm, matrix, i);
}

#else

void aii_batch_avx2(const EmotionVector& query, double query_norm, const ProfileMatrix& matrix,
                    std::span<double> out) noexcept {
  aii_batch_scalar(query, query_norm, matrix, out);
}

#endif

}  // namespace affect::kernels::detail
