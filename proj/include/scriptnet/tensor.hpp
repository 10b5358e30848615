#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "scriptnet/errors.hpp"

namespace scriptnet {

/// Dense n-dimensional array with a same-shape gradient accumulator.
template <class Real>
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<Real> values;
    std::vector<Real> grad;

    Tensor() = default;

    explicit Tensor(std::vector<std::size_t> s) : shape(std::move(s)) {
        values.assign(element_count(shape), Real{0});
        grad.assign(values.size(), Real{0});
    }

    static std::size_t element_count(const std::vector<std::size_t>& s) {
        return std::accumulate(s.begin(), s.end(), std::size_t{1}, std::multiplies<>());
    }

    std::size_t size() const { return values.size(); }

    std::size_t extent(std::size_t dim) const { return shape.at(dim); }

    Real& at(std::size_t i) { return values[i]; }
    const Real& at(std::size_t i) const { return values[i]; }

    // Row pointer for 2-d tensors [rows x cols].
    Real* row(std::size_t r) { return values.data() + r * shape[1]; }
    const Real* row(std::size_t r) const { return values.data() + r * shape[1]; }
    Real* grad_row(std::size_t r) { return grad.data() + r * shape[1]; }

    void zero_grad() { std::fill(grad.begin(), grad.end(), Real{0}); }

    void require_shape(const std::vector<std::size_t>& expected, const std::string& what) const {
        if (shape != expected) {
            std::string got = "[", want = "[";
            for (auto e : shape) got += std::to_string(e) + " ";
            for (auto e : expected) want += std::to_string(e) + " ";
            throw ShapeError(what + ": shape " + got + "] does not match " + want + "]");
        }
    }
};

template <class Real>
using NodePtr = std::shared_ptr<Tensor<Real>>;

template <class Real>
NodePtr<Real> make_node(std::vector<std::size_t> shape) {
    return std::make_shared<Tensor<Real>>(std::move(shape));
}

}  // namespace scriptnet
