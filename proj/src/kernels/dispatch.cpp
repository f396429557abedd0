#include "znd/kernels.hpp"

#include <string>

namespace znd::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Kernels& select_kernels(std::string_view pref) {
    if (pref == "scalar")
        return scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
    if (pref == "avx2") {
        if (!cpu_has_avx2())
            throw ConfigError("kernel 'avx2' requested but this CPU lacks AVX2/FMA");
        return avx2_kernels();
    }
    if (pref == "auto")
        return cpu_has_avx2() ? avx2_kernels() : scalar_kernels();
#elif defined(__aarch64__)
    if (pref == "neon")
        return neon_kernels();
    if (pref == "auto")
        return neon_kernels();
#else
    if (pref == "auto")
        return scalar_kernels();
#endif
    throw ConfigError("unknown or unavailable kernel variant '" + std::string(pref)
                      + "' (choose auto, scalar, avx2 or neon)");
}

} // namespace znd::kernels
