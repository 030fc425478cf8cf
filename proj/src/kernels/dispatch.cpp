#include "cgo/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace cgo::kernels {

#if defined(CGO_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

const KernelTable* avx2_table() {
#if defined(CGO_HAVE_AVX2)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &avx2_kernels();
#endif
    return nullptr;
}

namespace {

const KernelTable& select() {
    const char* env = std::getenv("CGO_SIMD");
    const std::string_view wanted = env ? env : "";
    if (wanted == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace cgo::kernels
