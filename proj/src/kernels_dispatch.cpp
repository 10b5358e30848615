#include "scriptnet/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace scriptnet::kernels {

namespace {

Backend select_backend() {
    const char* forced = std::getenv("SCRIPTNET_KERNELS");
#if defined(SCRIPTNET_BUILD_AVX2)
    if (forced != nullptr) {
        if (std::strcmp(forced, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(forced, "avx2") == 0) return Backend::avx2;
    }
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Backend::avx2;
#else
    (void)forced;
#endif
    return Backend::scalar;
}

const Backend g_backend = select_backend();

}  // namespace

Backend active_backend() { return g_backend; }

const char* backend_name() { return g_backend == Backend::avx2 ? "avx2" : "scalar"; }

#if defined(SCRIPTNET_BUILD_AVX2)
#define SCRIPTNET_DISPATCH(fn, ...) \
    return g_backend == Backend::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__)
#else
#define SCRIPTNET_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

float dot(const float* a, const float* b, std::size_t n) { SCRIPTNET_DISPATCH(dot, a, b, n); }

void matvec_acc(const float* w, const float* x, float* y, std::size_t rows, std::size_t cols) {
    SCRIPTNET_DISPATCH(matvec_acc, w, x, y, rows, cols);
}

void matvec_t_acc(const float* w, const float* g, float* y, std::size_t rows, std::size_t cols) {
    SCRIPTNET_DISPATCH(matvec_t_acc, w, g, y, rows, cols);
}

void ger_acc(float* w, const float* u, const float* v, std::size_t rows, std::size_t cols) {
    SCRIPTNET_DISPATCH(ger_acc, w, u, v, rows, cols);
}

void axpy(float a, const float* x, float* y, std::size_t n) { SCRIPTNET_DISPATCH(axpy, a, x, y, n); }

}  // namespace scriptnet::kernels
