#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <type_traits>
#include <vector>

#include "scriptnet/kernels.hpp"
#include "scriptnet/rng.hpp"
#include "scriptnet/tensor.hpp"

// Reverse-mode differentiable layer library. Forward functions compute values
// and, when given a tape, record a closure that accumulates gradients on
// backward. One forward pass per tape; parameter grads accumulate across
// passes until explicitly zeroed.

namespace scriptnet::nn {

template <class Real>
class Tape {
public:
    void record(std::function<void()> op) { ops_.push_back(std::move(op)); }

    bool empty() const { return ops_.empty(); }

    void backward() {
        if (ops_.empty()) {
            throw NumericError("backward called without a recorded forward pass");
        }
        for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) (*it)();
        ops_.clear();
    }

    void clear() { ops_.clear(); }

private:
    std::vector<std::function<void()>> ops_;
};

// Seeds d(loss)/d(loss) = 1 and propagates through the tape.
template <class Real>
void backward(const NodePtr<Real>& loss, Tape<Real>& tape) {
    if (loss->size() != 1) throw ShapeError("backward: loss must be a scalar");
    loss->grad[0] += Real{1};
    tape.backward();
}

template <class Real>
Real sigmoid(Real z) {
    if (z >= Real{0}) {
        const Real e = std::exp(-z);
        return Real{1} / (Real{1} + e);
    }
    const Real e = std::exp(z);
    return e / (Real{1} + e);
}

// ---------------------------------------------------------------------------
// Parameters

template <class Real>
struct EmbeddingParams {
    NodePtr<Real> table;  // [256 x embed_dim]
};

template <class Real>
struct LstmParams {
    std::size_t input_dim = 0;
    std::size_t hidden = 0;
    NodePtr<Real> w_xi, w_xf, w_xo, w_xc;  // [hidden x input_dim]
    NodePtr<Real> w_hi, w_hf, w_ho, w_hc;  // [hidden x hidden]
    NodePtr<Real> b_i, b_f, b_o, b_c;      // [hidden]
};

template <class Real>
struct LstmState {
    NodePtr<Real> h;  // [hidden]
    NodePtr<Real> c;  // [hidden]
};

template <class Real>
struct ConvParams {
    std::size_t n_filters = 0;
    std::size_t window = 0;
    std::size_t input_dim = 0;
    std::size_t stride = 1;
    NodePtr<Real> filters;  // [n_filters x window x input_dim]
    NodePtr<Real> bias;     // [n_filters]
};

// ---------------------------------------------------------------------------
// Initialization

template <class Real>
void init_uniform(Tensor<Real>& t, double lo, double hi, Rng& rng) {
    for (auto& v : t.values) v = static_cast<Real>(rng.uniform(lo, hi));
}

template <class Real>
void init_glorot(Tensor<Real>& t, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    init_uniform(t, -limit, limit, rng);
}

inline constexpr std::size_t kVocabSizeRows = 256;

template <class Real>
EmbeddingParams<Real> make_embedding(std::size_t embed_dim, Rng& rng) {
    EmbeddingParams<Real> p;
    p.table = make_node<Real>({kVocabSizeRows, embed_dim});
    init_uniform(*p.table, -0.05, 0.05, rng);
    return p;
}

// Forget-gate bias starts at 1, the rest at 0.
template <class Real>
LstmParams<Real> make_lstm(std::size_t input_dim, std::size_t hidden, Rng& rng) {
    LstmParams<Real> p;
    p.input_dim = input_dim;
    p.hidden = hidden;
    for (NodePtr<Real>* w : {&p.w_xi, &p.w_xf, &p.w_xo, &p.w_xc}) {
        *w = make_node<Real>({hidden, input_dim});
        init_glorot(**w, input_dim, hidden, rng);
    }
    for (NodePtr<Real>* w : {&p.w_hi, &p.w_hf, &p.w_ho, &p.w_hc}) {
        *w = make_node<Real>({hidden, hidden});
        init_glorot(**w, hidden, hidden, rng);
    }
    for (NodePtr<Real>* b : {&p.b_i, &p.b_f, &p.b_o, &p.b_c}) {
        *b = make_node<Real>({hidden});
    }
    std::fill(p.b_f->values.begin(), p.b_f->values.end(), Real{1});
    return p;
}

template <class Real>
ConvParams<Real> make_conv(std::size_t n_filters, std::size_t window, std::size_t input_dim,
                           std::size_t stride, Rng& rng) {
    if (window < 1 || stride < 1) throw ShapeError("make_conv: window and stride must be >= 1");
    ConvParams<Real> p;
    p.n_filters = n_filters;
    p.window = window;
    p.input_dim = input_dim;
    p.stride = stride;
    p.filters = make_node<Real>({n_filters, window, input_dim});
    init_glorot(*p.filters, window * input_dim, n_filters, rng);
    p.bias = make_node<Real>({n_filters});
    return p;
}

template <class Real>
NodePtr<Real> make_dense(std::size_t out_dim, std::size_t in_dim, Rng& rng) {
    auto w = make_node<Real>({out_dim, in_dim});
    init_glorot(*w, in_dim, out_dim, rng);
    return w;
}

// ---------------------------------------------------------------------------
// Layers

template <class Real>
NodePtr<Real> embedding_forward(const EmbeddingParams<Real>& params,
                                const std::uint16_t* codes, std::size_t len,
                                std::type_identity_t<Tape<Real>>* tape) {
    const std::size_t dim = params.table->extent(1);
    auto out = make_node<Real>({len, dim});
    for (std::size_t t = 0; t < len; ++t) {
        const Real* src = params.table->row(codes[t]);
        std::copy(src, src + dim, out->row(t));
    }
    if (tape != nullptr) {
        std::vector<std::uint16_t> codes_copy(codes, codes + len);
        NodePtr<Real> table = params.table;
        tape->record([table, out, codes_copy = std::move(codes_copy), dim]() {
            for (std::size_t t = 0; t < codes_copy.size(); ++t) {
                kernels::axpy(Real{1}, out->grad.data() + t * dim,
                              table->grad.data() + codes_copy[t] * dim, dim);
            }
        });
    }
    return out;
}

namespace detail {

template <class Real>
struct LstmStepCache {
    std::vector<Real> i, f, o, g, tc;  // each [hidden]
};

// One cell update: gate preactivations, nonlinearities, state update.
template <class Real>
void lstm_step_forward(const LstmParams<Real>& p, const Real* x, const Real* hprev,
                       const Real* cprev, Real* h_out, Real* c_out,
                       LstmStepCache<Real>& cache) {
    const std::size_t h = p.hidden;
    const std::size_t d = p.input_dim;
    cache.i.assign(p.b_i->values.begin(), p.b_i->values.end());
    cache.f.assign(p.b_f->values.begin(), p.b_f->values.end());
    cache.o.assign(p.b_o->values.begin(), p.b_o->values.end());
    cache.g.assign(p.b_c->values.begin(), p.b_c->values.end());
    kernels::matvec_acc(p.w_xi->values.data(), x, cache.i.data(), h, d);
    kernels::matvec_acc(p.w_xf->values.data(), x, cache.f.data(), h, d);
    kernels::matvec_acc(p.w_xo->values.data(), x, cache.o.data(), h, d);
    kernels::matvec_acc(p.w_xc->values.data(), x, cache.g.data(), h, d);
    kernels::matvec_acc(p.w_hi->values.data(), hprev, cache.i.data(), h, h);
    kernels::matvec_acc(p.w_hf->values.data(), hprev, cache.f.data(), h, h);
    kernels::matvec_acc(p.w_ho->values.data(), hprev, cache.o.data(), h, h);
    kernels::matvec_acc(p.w_hc->values.data(), hprev, cache.g.data(), h, h);
    cache.tc.resize(h);
    for (std::size_t j = 0; j < h; ++j) {
        cache.i[j] = sigmoid(cache.i[j]);
        cache.f[j] = sigmoid(cache.f[j]);
        cache.o[j] = sigmoid(cache.o[j]);
        cache.g[j] = std::tanh(cache.g[j]);
        c_out[j] = cache.f[j] * cprev[j] + cache.i[j] * cache.g[j];
        cache.tc[j] = std::tanh(c_out[j]);
        h_out[j] = cache.o[j] * cache.tc[j];
    }
}

// Accumulates parameter grads plus dx and dh_prev; rewrites dc in place from
// d(c_t) to d(c_{t-1}).
template <class Real>
void lstm_step_backward(const LstmParams<Real>& p, const Real* x, const Real* hprev,
                        const Real* cprev, const LstmStepCache<Real>& cache,
                        const Real* dh, std::vector<Real>& dc,
                        Real* dx_acc, Real* dhprev_acc) {
    const std::size_t h = p.hidden;
    const std::size_t d = p.input_dim;
    std::vector<Real> dpi(h), dpf(h), dpo(h), dpg(h);
    for (std::size_t j = 0; j < h; ++j) {
        const Real i = cache.i[j], f = cache.f[j], o = cache.o[j], g = cache.g[j],
                   tc = cache.tc[j];
        const Real do_ = dh[j] * tc;
        const Real dct = dc[j] + dh[j] * o * (Real{1} - tc * tc);
        dpi[j] = dct * g * i * (Real{1} - i);
        dpf[j] = dct * cprev[j] * f * (Real{1} - f);
        dpo[j] = do_ * o * (Real{1} - o);
        dpg[j] = dct * i * (Real{1} - g * g);
        dc[j] = dct * f;
    }
    kernels::axpy(Real{1}, dpi.data(), p.b_i->grad.data(), h);
    kernels::axpy(Real{1}, dpf.data(), p.b_f->grad.data(), h);
    kernels::axpy(Real{1}, dpo.data(), p.b_o->grad.data(), h);
    kernels::axpy(Real{1}, dpg.data(), p.b_c->grad.data(), h);
    kernels::ger_acc(p.w_xi->grad.data(), dpi.data(), x, h, d);
    kernels::ger_acc(p.w_xf->grad.data(), dpf.data(), x, h, d);
    kernels::ger_acc(p.w_xo->grad.data(), dpo.data(), x, h, d);
    kernels::ger_acc(p.w_xc->grad.data(), dpg.data(), x, h, d);
    kernels::ger_acc(p.w_hi->grad.data(), dpi.data(), hprev, h, h);
    kernels::ger_acc(p.w_hf->grad.data(), dpf.data(), hprev, h, h);
    kernels::ger_acc(p.w_ho->grad.data(), dpo.data(), hprev, h, h);
    kernels::ger_acc(p.w_hc->grad.data(), dpg.data(), hprev, h, h);
    if (dx_acc != nullptr) {
        kernels::matvec_t_acc(p.w_xi->values.data(), dpi.data(), dx_acc, h, d);
        kernels::matvec_t_acc(p.w_xf->values.data(), dpf.data(), dx_acc, h, d);
        kernels::matvec_t_acc(p.w_xo->values.data(), dpo.data(), dx_acc, h, d);
        kernels::matvec_t_acc(p.w_xc->values.data(), dpg.data(), dx_acc, h, d);
    }
    if (dhprev_acc != nullptr) {
        kernels::matvec_t_acc(p.w_hi->values.data(), dpi.data(), dhprev_acc, h, h);
        kernels::matvec_t_acc(p.w_hf->values.data(), dpf.data(), dhprev_acc, h, h);
        kernels::matvec_t_acc(p.w_ho->values.data(), dpo.data(), dhprev_acc, h, h);
        kernels::matvec_t_acc(p.w_hc->values.data(), dpg.data(), dhprev_acc, h, h);
    }
}

}  // namespace detail

template <class Real>
LstmState<Real> lstm_zero_state(std::size_t hidden) {
    return {make_node<Real>({hidden}), make_node<Real>({hidden})};
}

template <class Real>
LstmState<Real> lstm_step(const LstmParams<Real>& params, const NodePtr<Real>& x,
                          const LstmState<Real>& prev, std::type_identity_t<Tape<Real>>* tape) {
    x->require_shape({params.input_dim}, "lstm_step input");
    prev.h->require_shape({params.hidden}, "lstm_step prev.h");
    prev.c->require_shape({params.hidden}, "lstm_step prev.c");
    LstmState<Real> next{make_node<Real>({params.hidden}), make_node<Real>({params.hidden})};
    auto cache = std::make_shared<detail::LstmStepCache<Real>>();
    detail::lstm_step_forward(params, x->values.data(), prev.h->values.data(),
                              prev.c->values.data(), next.h->values.data(),
                              next.c->values.data(), *cache);
    if (tape != nullptr) {
        LstmParams<Real> p = params;
        tape->record([p, x, prev, next, cache]() {
            std::vector<Real> dc(next.c->grad.begin(), next.c->grad.end());
            detail::lstm_step_backward(p, x->values.data(), prev.h->values.data(),
                                       prev.c->values.data(), *cache,
                                       next.h->grad.data(), dc,
                                       x->grad.data(), prev.h->grad.data());
            kernels::axpy(Real{1}, dc.data(), prev.c->grad.data(), p.hidden);
        });
    }
    return next;
}

// Stacked LSTM over a [T x d] input; returns the top layer's h_t for every t.
// Initial states are zero. Backward runs full BPTT per layer.
template <class Real>
NodePtr<Real> lstm_sequence(const std::vector<LstmParams<Real>>& layers,
                            const NodePtr<Real>& inputs, std::type_identity_t<Tape<Real>>* tape) {
    if (layers.empty()) throw ShapeError("lstm_sequence: no layers");
    if (inputs->shape.size() != 2) throw ShapeError("lstm_sequence: input must be [T x d]");
    NodePtr<Real> cur = inputs;
    for (const LstmParams<Real>& layer : layers) {
        if (cur->extent(1) != layer.input_dim) {
            throw ShapeError("lstm_sequence: layer input dim mismatch");
        }
        const std::size_t steps = cur->extent(0);
        const std::size_t h = layer.hidden;
        auto out = make_node<Real>({steps, h});
        auto caches = std::make_shared<std::vector<detail::LstmStepCache<Real>>>(steps);
        auto cells = std::make_shared<std::vector<Real>>((steps + 1) * h, Real{0});
        std::vector<Real> h0(h, Real{0});
        for (std::size_t t = 0; t < steps; ++t) {
            const Real* hprev = t == 0 ? h0.data() : out->row(t - 1);
            detail::lstm_step_forward(layer, cur->row(t), hprev,
                                      cells->data() + t * h,
                                      out->row(t), cells->data() + (t + 1) * h,
                                      (*caches)[t]);
        }
        if (tape != nullptr) {
            LstmParams<Real> p = layer;
            NodePtr<Real> in = cur;
            tape->record([p, in, out, caches, cells, steps, h]() {
                std::vector<Real> dc(h, Real{0});
                std::vector<Real> dh(h), dhprev(h);
                std::vector<Real> h0(h, Real{0});
                for (std::size_t tt = steps; tt-- > 0;) {
                    std::copy(out->grad_row(tt), out->grad_row(tt) + h, dh.begin());
                    if (tt + 1 < steps) {
                        kernels::axpy(Real{1}, dhprev.data(), dh.data(), h);
                    }
                    std::fill(dhprev.begin(), dhprev.end(), Real{0});
                    const Real* hprev = tt == 0 ? h0.data() : out->row(tt - 1);
                    detail::lstm_step_backward(p, in->row(tt), hprev,
                                               cells->data() + tt * h, (*caches)[tt],
                                               dh.data(), dc, in->grad_row(tt),
                                               dhprev.data());
                }
            });
        }
        cur = out;
    }
    return cur;
}

// Per-dimension max over the first `valid` rows. Ties route the gradient to
// the first occurrence.
template <class Real>
NodePtr<Real> temporal_max_pool(const NodePtr<Real>& seq, std::size_t valid, std::type_identity_t<Tape<Real>>* tape) {
    if (seq->shape.size() != 2) throw ShapeError("temporal_max_pool: input must be [M x k]");
    if (valid == 0) throw DataError("temporal_max_pool: zero valid positions");
    if (valid > seq->extent(0)) throw ShapeError("temporal_max_pool: valid exceeds rows");
    const std::size_t k = seq->extent(1);
    auto out = make_node<Real>({k});
    auto argmax = std::make_shared<std::vector<std::size_t>>(k, 0);
    std::copy(seq->row(0), seq->row(0) + k, out->values.begin());
    for (std::size_t i = 1; i < valid; ++i) {
        const Real* r = seq->row(i);
        for (std::size_t j = 0; j < k; ++j) {
            if (r[j] > out->values[j]) {
                out->values[j] = r[j];
                (*argmax)[j] = i;
            }
        }
    }
    if (tape != nullptr) {
        tape->record([seq, out, argmax, k]() {
            for (std::size_t j = 0; j < k; ++j) {
                seq->grad[(*argmax)[j] * k + j] += out->grad[j];
            }
        });
    }
    return out;
}

// out[j][f] = bias[f] + <filters[f], seq[j*stride .. j*stride+window)>
template <class Real>
NodePtr<Real> conv1d_forward(const ConvParams<Real>& params, const NodePtr<Real>& seq,
                             std::type_identity_t<Tape<Real>>* tape) {
    if (seq->shape.size() != 2 || seq->extent(1) != params.input_dim) {
        throw ShapeError("conv1d_forward: input must be [L x input_dim]");
    }
    const std::size_t len = seq->extent(0);
    if (len < params.window) {
        throw DataError("conv1d_forward: input shorter than window");
    }
    const std::size_t d = params.input_dim;
    const std::size_t span = params.window * d;
    const std::size_t out_len = (len - params.window) / params.stride + 1;
    auto out = make_node<Real>({out_len, params.n_filters});
    for (std::size_t j = 0; j < out_len; ++j) {
        const Real* win = seq->row(j * params.stride);
        Real* orow = out->row(j);
        for (std::size_t f = 0; f < params.n_filters; ++f) {
            orow[f] = params.bias->values[f] +
                      kernels::dot(params.filters->values.data() + f * span, win, span);
        }
    }
    if (tape != nullptr) {
        ConvParams<Real> p = params;
        tape->record([p, seq, out, out_len, span, d]() {
            for (std::size_t j = 0; j < out_len; ++j) {
                const std::size_t base = j * p.stride;
                const Real* win = seq->row(base);
                Real* dwin = seq->grad.data() + base * d;
                const Real* dout = out->grad_row(j);
                for (std::size_t f = 0; f < p.n_filters; ++f) {
                    const Real g = dout[f];
                    if (g == Real{0}) continue;
                    p.bias->grad[f] += g;
                    kernels::axpy(g, win, p.filters->grad.data() + f * span, span);
                    kernels::axpy(g, p.filters->values.data() + f * span, dwin, span);
                }
            }
        });
    }
    return out;
}

// max(0, W x), no bias.
template <class Real>
NodePtr<Real> dense_relu(const NodePtr<Real>& w, const NodePtr<Real>& x, std::type_identity_t<Tape<Real>>* tape) {
    if (w->shape.size() != 2 || x->shape.size() != 1 || w->extent(1) != x->extent(0)) {
        throw ShapeError("dense_relu: W [out x in] and x [in] required");
    }
    const std::size_t out_dim = w->extent(0);
    const std::size_t in_dim = w->extent(1);
    auto out = make_node<Real>({out_dim});
    auto pre = std::make_shared<std::vector<Real>>(out_dim, Real{0});
    kernels::matvec_acc(w->values.data(), x->values.data(), pre->data(), out_dim, in_dim);
    for (std::size_t j = 0; j < out_dim; ++j) {
        out->values[j] = (*pre)[j] > Real{0} ? (*pre)[j] : Real{0};
    }
    if (tape != nullptr) {
        tape->record([w, x, out, pre, out_dim, in_dim]() {
            std::vector<Real> dpre(out_dim);
            for (std::size_t j = 0; j < out_dim; ++j) {
                dpre[j] = (*pre)[j] > Real{0} ? out->grad[j] : Real{0};
            }
            kernels::ger_acc(w->grad.data(), dpre.data(), x->values.data(), out_dim, in_dim);
            kernels::matvec_t_acc(w->values.data(), dpre.data(), x->grad.data(), out_dim, in_dim);
        });
    }
    return out;
}

// p = sigma(W_D x), numerically stable at large |z|.
template <class Real>
NodePtr<Real> sigmoid_output(const NodePtr<Real>& w, const NodePtr<Real>& x, std::type_identity_t<Tape<Real>>* tape) {
    if (w->shape.size() != 2 || w->extent(0) != 1 || x->shape.size() != 1 ||
        w->extent(1) != x->extent(0)) {
        throw ShapeError("sigmoid_output: W [1 x in] and x [in] required");
    }
    const std::size_t in_dim = w->extent(1);
    auto out = make_node<Real>({std::size_t{1}});
    const Real z = kernels::dot(w->values.data(), x->values.data(), in_dim);
    out->values[0] = sigmoid(z);
    if (tape != nullptr) {
        tape->record([w, x, out, in_dim]() {
            const Real p = out->values[0];
            const Real dz = out->grad[0] * p * (Real{1} - p);
            kernels::axpy(dz, x->values.data(), w->grad.data(), in_dim);
            kernels::axpy(dz, w->values.data(), x->grad.data(), in_dim);
        });
    }
    return out;
}

inline constexpr double kProbClamp = 1e-7;

// -[L ln p + (1-L) ln(1-p)] with p clamped to [1e-7, 1 - 1e-7].
template <class Real>
NodePtr<Real> cross_entropy(const NodePtr<Real>& p, int label, std::type_identity_t<Tape<Real>>* tape) {
    if (p->size() != 1) throw ShapeError("cross_entropy: p must be a scalar");
    if (label != 0 && label != 1) throw DataError("cross_entropy: label must be 0 or 1");
    const Real eps = static_cast<Real>(kProbClamp);
    const Real pc = std::min(std::max(p->values[0], eps), Real{1} - eps);
    auto out = make_node<Real>({std::size_t{1}});
    out->values[0] = label == 1 ? -std::log(pc) : -std::log(Real{1} - pc);
    if (tape != nullptr) {
        tape->record([p, out, label, eps]() {
            const Real raw = p->values[0];
            if (raw <= eps || raw >= Real{1} - eps) return;  // clamped: flat
            p->grad[0] += out->grad[0] * (raw - static_cast<Real>(label)) /
                          (raw * (Real{1} - raw));
        });
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parameter-set helpers and optimizer

template <class Real>
void zero_grads(const std::vector<NodePtr<Real>>& params) {
    for (const auto& p : params) p->zero_grad();
}

template <class Real>
void scale_grads(const std::vector<NodePtr<Real>>& params, Real s) {
    for (const auto& p : params) {
        for (auto& g : p->grad) g *= s;
    }
}

template <class Real>
Real global_grad_norm(const std::vector<NodePtr<Real>>& params) {
    double acc = 0.0;
    for (const auto& p : params) {
        for (Real g : p->grad) acc += static_cast<double>(g) * static_cast<double>(g);
    }
    return static_cast<Real>(std::sqrt(acc));
}

template <class Real>
void clip_grad_norm(const std::vector<NodePtr<Real>>& params, Real max_norm) {
    const Real norm = global_grad_norm(params);
    if (norm > max_norm && norm > Real{0}) {
        scale_grads(params, max_norm / norm);
    }
}

struct AdamConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

template <class Real>
class AdamOptimizer {
public:
    AdamOptimizer(std::vector<NodePtr<Real>> params, AdamConfig cfg = {})
        : params_(std::move(params)), cfg_(cfg) {
        m_.resize(params_.size());
        v_.resize(params_.size());
        for (std::size_t i = 0; i < params_.size(); ++i) {
            m_[i].assign(params_[i]->size(), Real{0});
            v_[i].assign(params_[i]->size(), Real{0});
        }
    }

    void step() {
        ++t_;
        const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
        const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
        for (std::size_t i = 0; i < params_.size(); ++i) {
            Tensor<Real>& p = *params_[i];
            for (std::size_t j = 0; j < p.size(); ++j) {
                const double g = static_cast<double>(p.grad[j]);
                const double m = cfg_.beta1 * static_cast<double>(m_[i][j]) +
                                 (1.0 - cfg_.beta1) * g;
                const double v = cfg_.beta2 * static_cast<double>(v_[i][j]) +
                                 (1.0 - cfg_.beta2) * g * g;
                m_[i][j] = static_cast<Real>(m);
                v_[i][j] = static_cast<Real>(v);
                p.values[j] -= static_cast<Real>(cfg_.learning_rate * (m / bc1) /
                                                 (std::sqrt(v / bc2) + cfg_.eps));
            }
        }
    }

private:
    std::vector<NodePtr<Real>> params_;
    AdamConfig cfg_;
    std::vector<std::vector<Real>> m_, v_;
    long t_ = 0;
};

}  // namespace scriptnet::nn
