#include "scriptnet/kernels.hpp"

namespace scriptnet::kernels {

namespace {

template <class Real>
Real dot_impl(const Real* a, const Real* b, std::size_t n) {
    Real acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

template <class Real>
void matvec_acc_impl(const Real* w, const Real* x, Real* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) y[r] += dot_impl(w + r * cols, x, cols);
}

template <class Real>
void matvec_t_acc_impl(const Real* w, const Real* g, Real* y, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) {
        const Real gr = g[r];
        const Real* row = w + r * cols;
        for (std::size_t c = 0; c < cols; ++c) y[c] += gr * row[c];
    }
}

template <class Real>
void ger_acc_impl(Real* w, const Real* u, const Real* v, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) {
        const Real ur = u[r];
        Real* row = w + r * cols;
        for (std::size_t c = 0; c < cols; ++c) row[c] += ur * v[c];
    }
}

template <class Real>
void axpy_impl(Real a, const Real* x, Real* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

namespace scalar {

float dot(const float* a, const float* b, std::size_t n) { return dot_impl(a, b, n); }
void matvec_acc(const float* w, const float* x, float* y, std::size_t rows, std::size_t cols) {
    matvec_acc_impl(w, x, y, rows, cols);
}
void matvec_t_acc(const float* w, const float* g, float* y, std::size_t rows, std::size_t cols) {
    matvec_t_acc_impl(w, g, y, rows, cols);
}
void ger_acc(float* w, const float* u, const float* v, std::size_t rows, std::size_t cols) {
    ger_acc_impl(w, u, v, rows, cols);
}
void axpy(float a, const float* x, float* y, std::size_t n) { axpy_impl(a, x, y, n); }

}  // namespace scalar

// 64-bit reference path, used by gradient checks.
double dot(const double* a, const double* b, std::size_t n) { return dot_impl(a, b, n); }
void matvec_acc(const double* w, const double* x, double* y, std::size_t rows, std::size_t cols) {
    matvec_acc_impl(w, x, y, rows, cols);
}
void matvec_t_acc(const double* w, const double* g, double* y, std::size_t rows, std::size_t cols) {
    matvec_t_acc_impl(w, g, y, rows, cols);
}
void ger_acc(double* w, const double* u, const double* v, std::size_t rows, std::size_t cols) {
    ger_acc_impl(w, u, v, rows, cols);
}
void axpy(double a, const double* x, double* y, std::size_t n) { axpy_impl(a, x, y, n); }

}  // namespace scriptnet::kernels
