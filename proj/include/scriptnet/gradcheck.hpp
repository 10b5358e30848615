#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "scriptnet/nn.hpp"

namespace scriptnet {

struct GradCheckReport {
    double max_rel_error = 0.0;
    std::size_t n_checked = 0;
    std::string worst_param;
};

// Compares analytic gradients against central differences
// (loss(t+h) - loss(t-h)) / 2h in 64-bit precision. Relative error is
// |analytic - numeric| / max(1, |analytic|, |numeric|). A deterministic,
// evenly spaced subset of entries is sampled per tensor.
inline GradCheckReport finite_difference_check(
    const std::vector<std::pair<std::string, NodePtr<double>>>& params,
    const std::function<NodePtr<double>(nn::Tape<double>*)>& loss_fn,
    double h = 1e-5, std::size_t max_per_tensor = 64) {
    for (auto& [name, p] : params) p->zero_grad();
    nn::Tape<double> tape;
    auto loss = loss_fn(&tape);
    nn::backward(loss, tape);

    GradCheckReport report;
    for (auto& [name, p] : params) {
        const std::size_t n = p->size();
        const std::size_t count = std::min(n, max_per_tensor);
        for (std::size_t s = 0; s < count; ++s) {
            const std::size_t j = count == 1 ? 0 : s * (n - 1) / (count - 1);
            const double saved = p->values[j];
            p->values[j] = saved + h;
            const double lp = loss_fn(nullptr)->values[0];
            p->values[j] = saved - h;
            const double lm = loss_fn(nullptr)->values[0];
            p->values[j] = saved;
            const double numeric = (lp - lm) / (2.0 * h);
            const double analytic = p->grad[j];
            const double denom = std::max({1.0, std::abs(analytic), std::abs(numeric)});
            const double rel = std::abs(analytic - numeric) / denom;
            ++report.n_checked;
            if (rel > report.max_rel_error) {
                report.max_rel_error = rel;
                report.worst_param = name + "[" + std::to_string(j) + "]";
            }
        }
    }
    return report;
}

}  // namespace scriptnet
