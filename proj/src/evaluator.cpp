#include "scriptnet/evaluator.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "scriptnet/errors.hpp"

namespace scriptnet {

RocCurve roc_curve(const std::vector<ScoredExample>& scored) {
    RocCurve curve;
    for (const ScoredExample& ex : scored) {
        if (ex.label == 1) {
            ++curve.n_pos;
        } else {
            ++curve.n_neg;
        }
    }
    if (curve.n_pos == 0 || curve.n_neg == 0) {
        throw DataError("roc_curve: need at least one positive and one negative example");
    }

    std::vector<ScoredExample> sorted = scored;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ScoredExample& a, const ScoredExample& b) {
                         return a.score > b.score;
                     });

    curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double s = sorted[i].score;
        // equal scores cross the threshold atomically
        while (i < sorted.size() && sorted[i].score == s) {
            if (sorted[i].label == 1) {
                ++tp;
            } else {
                ++fp;
            }
            ++i;
        }
        curve.points.push_back({s,
                                static_cast<double>(fp) / static_cast<double>(curve.n_neg),
                                static_cast<double>(tp) / static_cast<double>(curve.n_pos)});
    }
    return curve;
}

double tpr_at_fpr(const RocCurve& curve, double target_fpr) {
    double best = 0.0;
    for (const RocPoint& p : curve.points) {
        if (p.fpr <= target_fpr) best = std::max(best, p.tpr);
    }
    return best;
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const RocPoint& a = curve.points[i - 1];
        const RocPoint& b = curve.points[i];
        area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
    }
    return area;
}

MetricsReport compute_metrics(const std::vector<ScoredExample>& scored,
                              const std::vector<double>& target_fprs) {
    if (scored.empty()) throw DataError("compute_metrics: empty score list");
    const RocCurve curve = roc_curve(scored);
    MetricsReport r;
    r.n_pos = curve.n_pos;
    r.n_neg = curve.n_neg;
    std::size_t wrong = 0;
    for (const ScoredExample& ex : scored) {
        if ((ex.score >= 0.5 ? 1 : 0) != ex.label) ++wrong;
    }
    r.error_rate = static_cast<double>(wrong) / static_cast<double>(scored.size());
    r.auc = auc(curve);
    for (double fpr : target_fprs) r.tpr_at_fpr[fpr] = tpr_at_fpr(curve, fpr);
    return r;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_fpr_key(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

std::string report_to_json(const MetricsReport& report) {
    std::string out = "{";
    out += "\"error_rate\":" + fmt_double(report.error_rate);
    out += ",\"auc\":" + fmt_double(report.auc);
    out += ",\"tpr_at_fpr\":{";
    bool first = true;
    for (const auto& [fpr, tpr] : report.tpr_at_fpr) {
        if (!first) out += ",";
        first = false;
        out += "\"" + fmt_fpr_key(fpr) + "\":" + fmt_double(tpr);
    }
    out += "}";
    out += ",\"n_pos\":" + std::to_string(report.n_pos);
    out += ",\"n_neg\":" + std::to_string(report.n_neg);
    out += "}\n";
    return out;
}

}  // namespace scriptnet
