#include "affect_rec/kernels.hpp"

namespace affect::kernels::detail {

void aii_batch_scalar(const EmotionVector& query, double query_norm, const ProfileMatrix& matrix,
                      std::span<double> out) noexcept {
  for (std::size_t i = 0; i < matrix.size(); ++i) out[i] = aii_at(query, query_norm, matrix, i);
}

}  // namespace affect::kernels::detail
