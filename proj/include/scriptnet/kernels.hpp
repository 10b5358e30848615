#pragma once

#include <cstddef>

// Dense inner loops used by the layer library. Float entry points dispatch
// at load time to the best available backend (AVX2+FMA when the CPU supports
// it, scalar otherwise); set SCRIPTNET_KERNELS=scalar|avx2 to force one.
// Double entry points always run the scalar reference path; they exist for
// the 64-bit gradient-check mode.
//
// All matrices are row-major.

namespace scriptnet::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name();

float dot(const float* a, const float* b, std::size_t n);
// y += W x, W is [rows x cols], x has cols elements, y has rows.
void matvec_acc(const float* w, const float* x, float* y, std::size_t rows, std::size_t cols);
// y += W^T g, g has rows elements, y has cols.
void matvec_t_acc(const float* w, const float* g, float* y, std::size_t rows, std::size_t cols);
// W += u v^T, u has rows elements, v has cols.
void ger_acc(float* w, const float* u, const float* v, std::size_t rows, std::size_t cols);
void axpy(float a, const float* x, float* y, std::size_t n);

double dot(const double* a, const double* b, std::size_t n);
void matvec_acc(const double* w, const double* x, double* y, std::size_t rows, std::size_t cols);
void matvec_t_acc(const double* w, const double* g, double* y, std::size_t rows, std::size_t cols);
void ger_acc(double* w, const double* u, const double* v, std::size_t rows, std::size_t cols);
void axpy(double a, const double* x, double* y, std::size_t n);

// Both variants are exposed so the equivalence suite can compare them
// directly regardless of which backend dispatch selected.
namespace scalar {
float dot(const float* a, const float* b, std::size_t n);
void matvec_acc(const float* w, const float* x, float* y, std::size_t rows, std::size_t cols);
void matvec_t_acc(const float* w, const float* g, float* y, std::size_t rows, std::size_t cols);
void ger_acc(float* w, const float* u, const float* v, std::size_t rows, std::size_t cols);
void axpy(float a, const float* x, float* y, std::size_t n);
}  // namespace scalar

#if defined(SCRIPTNET_BUILD_AVX2)
namespace avx2 {
float dot(const float* a, const float* b, std::size_t n);
void matvec_acc(const float* w, const float* x, float* y, std::size_t rows, std::size_t cols);
void matvec_t_acc(const float* w, const float* g, float* y, std::size_t rows, std::size_t cols);
void ger_acc(float* w, const float* u, const float* v, std::size_t rows, std::size_t cols);
void axpy(float a, const float* x, float* y, std::size_t n);
}  // namespace avx2
#endif

}  // namespace scriptnet::kernels
