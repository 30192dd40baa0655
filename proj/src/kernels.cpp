#include "sumcover/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace sumcover::kernels {

#ifdef SUMCOVER_BUILD_AVX2
const Ops& avx2_ops();  // kernels_avx2.cpp
static bool avx2_usable() { return __builtin_cpu_supports("avx2"); }
#endif
#ifdef SUMCOVER_BUILD_NEON
const Ops& neon_ops();  // kernels_neon.cpp; NEON is baseline on aarch64
#endif

std::vector<const Ops*> available() {
    std::vector<const Ops*> v{&scalar_ops()};
#ifdef SUMCOVER_BUILD_AVX2
    if (avx2_usable()) v.push_back(&avx2_ops());
#endif
#ifdef SUMCOVER_BUILD_NEON
    v.push_back(&neon_ops());
#endif
    return v;
}

static const Ops* select() {
    const char* env = std::getenv("SUMCOVER_KERNELS");
    if (env) {
        for (const Ops* ops : available())
            if (std::strcmp(ops->name, env) == 0) return ops;
        return &scalar_ops();  // unknown or unsupported lane requested
    }
#ifdef SUMCOVER_BUILD_AVX2
    if (avx2_usable()) return &avx2_ops();
#endif
#ifdef SUMCOVER_BUILD_NEON
    return &neon_ops();
#endif
    return &scalar_ops();
}

const Ops& active() {
    static const Ops* ops = select();
    return *ops;
}

}  // namespace sumcover::kernels
