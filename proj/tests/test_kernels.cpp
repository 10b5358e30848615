#include <doctest.h>

#include <vector>

#include "scriptnet/kernels.hpp"
#include "scriptnet/rng.hpp"

using namespace scriptnet;

namespace {

std::vector<float> random_vec(Rng& rng, std::size_t n) {
    std::vector<float> v(n);
    for (auto& x : v) x = static_cast<float>(rng.uniform(-2.0, 2.0));
    return v;
}

void check_close(const std::vector<float>& a, const std::vector<float>& b, float tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(tol));
    }
}

}  // namespace

TEST_CASE("scalar double kernels match hand arithmetic") {
    const double a[] = {1.0, 2.0, 3.0};
    const double b[] = {4.0, -5.0, 6.0};
    CHECK(kernels::dot(a, b, 3) == doctest::Approx(12.0));

    const double w[] = {1.0, 0.0, 0.0, 1.0, 2.0, 3.0};  // 3x2
    double y[] = {0.0, 0.0, 1.0};
    const double x[] = {10.0, 20.0};
    kernels::matvec_acc(w, x, y, 3, 2);
    CHECK(y[0] == doctest::Approx(10.0));
    CHECK(y[1] == doctest::Approx(20.0));
    CHECK(y[2] == doctest::Approx(81.0));
}

#if defined(SCRIPTNET_BUILD_AVX2)
TEST_CASE("avx2 kernels are equivalent to the scalar reference") {
    if (kernels::active_backend() != kernels::Backend::avx2) {
        return;  // host cannot run the avx2 variants
    }
    Rng rng(1234);
    // sizes straddling the vector width, including remainders
    for (std::size_t n : {1u, 2u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 67u, 250u}) {
        auto a = random_vec(rng, n);
        auto b = random_vec(rng, n);
        const float tol = 1e-4f;
        CHECK(kernels::avx2::dot(a.data(), b.data(), n) ==
              doctest::Approx(kernels::scalar::dot(a.data(), b.data(), n)).epsilon(tol));

        auto y1 = random_vec(rng, n);
        auto y2 = y1;
        kernels::scalar::axpy(0.37f, a.data(), y1.data(), n);
        kernels::avx2::axpy(0.37f, a.data(), y2.data(), n);
        check_close(y1, y2, tol);
    }

    for (auto [rows, cols] : std::vector<std::pair<std::size_t, std::size_t>>{
             {1, 1}, {3, 5}, {8, 8}, {7, 19}, {33, 17}, {64, 64}}) {
        auto w = random_vec(rng, rows * cols);
        auto x = random_vec(rng, cols);
        auto g = random_vec(rng, rows);
        const float tol = 1e-4f;

        auto y1 = random_vec(rng, rows);
        auto y2 = y1;
        kernels::scalar::matvec_acc(w.data(), x.data(), y1.data(), rows, cols);
        kernels::avx2::matvec_acc(w.data(), x.data(), y2.data(), rows, cols);
        check_close(y1, y2, tol);

        auto t1 = random_vec(rng, cols);
        auto t2 = t1;
        kernels::scalar::matvec_t_acc(w.data(), g.data(), t1.data(), rows, cols);
        kernels::avx2::matvec_t_acc(w.data(), g.data(), t2.data(), rows, cols);
        check_close(t1, t2, tol);

        auto w1 = w;
        auto w2 = w;
        kernels::scalar::ger_acc(w1.data(), g.data(), x.data(), rows, cols);
        kernels::avx2::ger_acc(w2.data(), g.data(), x.data(), rows, cols);
        check_close(w1, w2, tol);
    }
}
#endif

TEST_CASE("dispatched float kernels agree with the scalar reference") {
    Rng rng(99);
    auto a = random_vec(rng, 123);
    auto b = random_vec(rng, 123);
    CHECK(kernels::dot(a.data(), b.data(), 123) ==
          doctest::Approx(kernels::scalar::dot(a.data(), b.data(), 123)).epsilon(1e-4));
}
