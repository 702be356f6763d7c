#include <cstdlib>
#include <cstring>

#include "wpb/kernels.hpp"

namespace wpb::kernels {

namespace {

bool cpu_has_avx2_fma() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Selection {
  const Ops* table;
  const char* name;
};

Selection select() {
  const char* env = std::getenv("WPB_KERNELS");
  const bool force_scalar = env != nullptr && std::strcmp(env, "scalar") == 0;
  const Ops* simd = avx2_ops();
  if (!force_scalar && simd != nullptr && cpu_has_avx2_fma()) {
    return {simd, "avx2"};
  }
  return {&scalar_ops(), "scalar"};
}

const Selection& selection() {
  static const Selection s = select();
  return s;
}

}  // namespace

const Ops& ops() { return *selection().table; }

const char* active_backend() { return selection().name; }

}  // namespace wpb::kernels
