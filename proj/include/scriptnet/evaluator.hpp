#pragma once

#include <map>
#include <string>
#include <vector>

#include "scriptnet/corpus.hpp"

namespace scriptnet {

struct ScoredExample {
    std::string id;
    int label = 0;
    double score = 0.5;  // in (0,1)
};

struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

// Ordered by decreasing threshold; FPR and TPR are non-decreasing along the
// curve, with endpoints (0,0) and (1,1).
struct RocCurve {
    std::vector<RocPoint> points;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
};

// Exact counting at every distinct score; equal scores move atomically at one
// threshold. Requires at least one positive and one negative example.
RocCurve roc_curve(const std::vector<ScoredExample>& scored);

// TPR at the largest achievable FPR <= target (step-function convention).
double tpr_at_fpr(const RocCurve& curve, double target_fpr);

// Trapezoidal area; equals the Mann-Whitney pairwise statistic.
double auc(const RocCurve& curve);

struct MetricsReport {
    double error_rate = 0.0;
    double auc = 0.0;
    std::map<double, double> tpr_at_fpr;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
};

MetricsReport compute_metrics(const std::vector<ScoredExample>& scored,
                              const std::vector<double>& target_fprs);

// Deterministic JSON rendering of a report (stable key order and number
// formatting, so identical inputs produce byte-identical output).
std::string report_to_json(const MetricsReport& report);

template <class Model>
std::vector<ScoredExample> score_examples(const Model& model,
                                          const std::vector<LabeledExample>& examples) {
    std::vector<ScoredExample> out;
    out.reserve(examples.size());
    for (const LabeledExample& ex : examples) {
        out.push_back({ex.id, ex.label, static_cast<double>(model.predict_prob(ex.sequence))});
    }
    return out;
}

template <class Model>
MetricsReport report(const Model& model, const std::vector<LabeledExample>& examples,
                     const std::vector<double>& target_fprs) {
    return compute_metrics(score_examples(model, examples), target_fprs);
}

}  // namespace scriptnet
