#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "affect_rec/error.hpp"
#include "affect_rec/kernels.hpp"

namespace affect::kernels {

namespace {

std::atomic<std::uint64_t> g_evaluations{0};

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect_isa()};
  return isa;
}

}  // namespace

ProfileMatrix::ProfileMatrix(std::span<const EmotionVector> profiles)
    : size_(profiles.size()), data_(profiles.size() * kEmotionCount), norms_(profiles.size()) {
  for (std::size_t i = 0; i < size_; ++i) {
    const auto& v = profiles[i];
    for (std::size_t c = 0; c < kEmotionCount; ++c) data_[c * size_ + i] = v[c];
    norms_[i] = v.norm();
    if (norms_[i] == 0.0) throw Error(Errc::ZeroVector, "profile " + std::to_string(i) + " has zero norm");
  }
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "scalar";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() noexcept {
  if (const char* env = std::getenv("AFFECT_REC_KERNEL")) {
    const std::string_view want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == isa_name(isa) && isa_supported(isa)) return isa;
    }
  }
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw Error(Errc::InvalidArgument, std::string("kernel variant not supported: ") + std::string(isa_name(isa)));
  }
  active().store(isa, std::memory_order_relaxed);
}

void aii_batch(const EmotionVector& query, const ProfileMatrix& matrix, std::span<double> out) {
  if (out.size() < matrix.size()) throw Error(Errc::InvalidArgument, "output span too small");
  const double qn = query.norm();
  if (qn == 0.0) throw Error(Errc::ZeroVector, "zero query profile");
  switch (active_isa()) {
    case Isa::avx2: detail::aii_batch_avx2(query, qn, matrix, out); break;
    case Isa::neon: detail::aii_batch_neon(query, qn, matrix, out); break;
    case Isa::scalar: detail::aii_batch_scalar(query, qn, matrix, out); break;
  }
  add_aii_evaluations(matrix.size());
}

std::vector<double> aii_batch(const EmotionVector& query, const ProfileMatrix& matrix) {
  std::vector<double> out(matrix.size());
  aii_batch(query, matrix, out);
  return out;
}

std::uint64_t aii_evaluations() noexcept { return g_evaluations.load(std::memory_order_relaxed); }

void add_aii_evaluations(std::uint64_t n) noexcept { g_evaluations.fetch_add(n, std::memory_order_relaxed); }

}  // namespace affect::kernels
