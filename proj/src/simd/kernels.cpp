#include "monogamy/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace monogamy::simd {

#ifndef MONOGAMY_HAVE_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

std::string_view to_string(Level level) {
  switch (level) {
    case Level::scalar: return "scalar";
    case Level::avx2: return "avx2";
  }
  return "unknown";
}

bool cpu_supports(Level level) {
  switch (level) {
    case Level::scalar: return true;
    case Level::avx2:
#if defined(MONOGAMY_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return avx2_kernels() != nullptr && __builtin_cpu_supports("avx2") &&
             __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Level detect_level() {
  if (const char* env = std::getenv("MONOGAMY_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return Level::scalar;
  }
  return cpu_supports(Level::avx2) ? Level::avx2 : Level::scalar;
}

namespace {

const KernelTable* table_for(Level level) {
  return level == Level::avx2 ? avx2_kernels() : &scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{table_for(detect_level())};
  return slot;
}

}  // namespace

const KernelTable& active() { return *active_slot().load(std::memory_order_relaxed); }

void force_level(Level level) {
  if (!cpu_supports(level)) {
    throw std::runtime_error("SIMD level not available: " + std::string(to_string(level)));
  }
  active_slot().store(table_for(level), std::memory_order_relaxed);
}

}  // namespace monogamy::simd
