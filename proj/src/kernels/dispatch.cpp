#include <atomic>
#include <stdexcept>

#include "caa/kernels.hpp"

namespace caa::kernels {

#if defined(CAA_HAVE_AVX2)
const KernelTable& avx2_table_unchecked();
#endif

namespace {

#if defined(CAA_HAVE_AVX2)
bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* detect() {
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{detect()};
  return ptr;
}

}  // namespace

const KernelTable* avx2_table() {
#if defined(CAA_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

bool available(Backend backend) {
  return backend == Backend::Scalar || avx2_table() != nullptr;
}

const KernelTable& table(Backend backend) {
  if (backend == Backend::Scalar) return scalar_table();
  if (const KernelTable* t = avx2_table()) return *t;
  throw std::invalid_argument("AVX2 kernels are not available on this build/CPU");
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

Backend active_backend() {
  return &active() == &scalar_table() ? Backend::Scalar : Backend::Avx2;
}

void select(Backend backend) { current().store(&table(backend), std::memory_order_release); }

}  // namespace caa::kernels
