#include "hdad/net.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace hdad {

namespace {

constexpr double kProbClamp = 1e-12;

void relu_inplace(Tensor& t) {
    for (double& v : t.data)
        if (v < 0.0) v = 0.0;
}

// out_h = (in + 2*pad - k)/stride + 1, pad = k/2
Tensor conv_forward(const Tensor& in, const LayerSpec& spec,
                    const std::vector<double>& weights, const std::vector<double>& bias) {
    const int k = spec.kernel, stride = spec.stride, pad = k / 2;
    const int ci = spec.in_channels, co = spec.out_channels;
    const int oh = (in.h + 2 * pad - k) / stride + 1;
    const int ow = (in.w + 2 * pad - k) / stride + 1;
    Tensor out(oh, ow, co);

    std::vector<double> acc(co);
    for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
            for (int c = 0; c < co; ++c) acc[c] = bias[c];
            for (int ky = 0; ky < k; ++ky) {
                const int iy = oy * stride - pad + ky;
                if (iy < 0 || iy >= in.h) continue;
                for (int kx = 0; kx < k; ++kx) {
                    const int ix = ox * stride - pad + kx;
                    if (ix < 0 || ix >= in.w) continue;
                    const double* src = in.row(iy, ix);
                    const double* kw = weights.data() +
                        (static_cast<std::size_t>(ky) * k + kx) * ci * co;
                    for (int c_in = 0; c_in < ci; ++c_in) {
                        const double v = src[c_in];
                        const double* krow = kw + static_cast<std::size_t>(c_in) * co;
                        for (int c = 0; c < co; ++c) acc[c] += v * krow[c];
                    }
                }
            }
            double* dst = out.row(oy, ox);
            for (int c = 0; c < co; ++c) dst[c] = acc[c];
        }
    }
    return out;
}

// gout is the gradient at the (pre-activation) conv output.
void conv_backward(const Tensor& in, const LayerSpec& spec,
                   const std::vector<double>& weights, const Tensor& gout,
                   std::vector<double>& gweights, std::vector<double>& gbias,
                   Tensor* gin) {
    const int k = spec.kernel, stride = spec.stride, pad = k / 2;
    const int ci = spec.in_channels, co = spec.out_channels;
    for (int oy = 0; oy < gout.h; ++oy) {
        for (int ox = 0; ox < gout.w; ++ox) {
            const double* g = gout.row(oy, ox);
            for (int c = 0; c < co; ++c) gbias[c] += g[c];
            for (int ky = 0; ky < k; ++ky) {
                const int iy = oy * stride - pad + ky;
                if (iy < 0 || iy >= in.h) continue;
                for (int kx = 0; kx < k; ++kx) {
                    const int ix = ox * stride - pad + kx;
                    if (ix < 0 || ix >= in.w) continue;
                    const double* src = in.row(iy, ix);
                    const std::size_t base = (static_cast<std::size_t>(ky) * k + kx) * ci * co;
                    double* gi = gin ? gin->row(iy, ix) : nullptr;
                    for (int c_in = 0; c_in < ci; ++c_in) {
                        const double v = src[c_in];
                        const double* krow = weights.data() + base + static_cast<std::size_t>(c_in) * co;
                        double* gkrow = gweights.data() + base + static_cast<std::size_t>(c_in) * co;
                        double accum = 0.0;
                        for (int c = 0; c < co; ++c) {
                            gkrow[c] += v * g[c];
                            accum += krow[c] * g[c];
                        }
                        if (gi) gi[c_in] += accum;
                    }
                }
            }
        }
    }
}

// Stride-2 transposed conv, pad 1, output exactly doubles each side.
Tensor deconv_forward(const Tensor& in, const LayerSpec& spec,
                      const std::vector<double>& weights, const std::vector<double>& bias) {
    const int k = spec.kernel, stride = spec.stride, pad = k / 2;
    const int ci = spec.in_channels, co = spec.out_channels;
    const int oh = in.h * stride, ow = in.w * stride;
    Tensor out(oh, ow, co);
    for (int oy = 0; oy < oh; ++oy)
        for (int ox = 0; ox < ow; ++ox) {
            double* dst = out.row(oy, ox);
            for (int c = 0; c < co; ++c) dst[c] = bias[c];
        }

    for (int iy = 0; iy < in.h; ++iy) {
        for (int ix = 0; ix < in.w; ++ix) {
            const double* src = in.row(iy, ix);
            for (int ky = 0; ky < k; ++ky) {
                const int oy = iy * stride - pad + ky;
                if (oy < 0 || oy >= oh) continue;
                for (int kx = 0; kx < k; ++kx) {
                    const int ox = ix * stride - pad + kx;
                    if (ox < 0 || ox >= ow) continue;
                    // bank selected by the parity of the output position
                    const std::size_t bank =
                        static_cast<std::size_t>((oy + ox) & 1) * k * k * ci * co;
                    const double* kw = weights.data() + bank +
                        (static_cast<std::size_t>(ky) * k + kx) * ci * co;
                    double* dst = out.row(oy, ox);
                    for (int c_in = 0; c_in < ci; ++c_in) {
                        const double v = src[c_in];
                        const double* krow = kw + static_cast<std::size_t>(c_in) * co;
                        for (int c = 0; c < co; ++c) dst[c] += v * krow[c];
                    }
                }
            }
        }
    }
    return out;
}

void deconv_backward(const Tensor& in, const LayerSpec& spec,
                     const std::vector<double>& weights, const Tensor& gout,
                     std::vector<double>& gweights, std::vector<double>& gbias,
                     Tensor* gin) {
    const int k = spec.kernel, stride = spec.stride, pad = k / 2;
    const int ci = spec.in_channels, co = spec.out_channels;
    for (int oy = 0; oy < gout.h; ++oy)
        for (int ox = 0; ox < gout.w; ++ox) {
            const double* g = gout.row(oy, ox);
            for (int c = 0; c < co; ++c) gbias[c] += g[c];
        }

    for (int iy = 0; iy < in.h; ++iy) {
        for (int ix = 0; ix < in.w; ++ix) {
            const double* src = in.row(iy, ix);
            double* gi = gin ? gin->row(iy, ix) : nullptr;
            for (int ky = 0; ky < k; ++ky) {
                const int oy = iy * stride - pad + ky;
                if (oy < 0 || oy >= gout.h) continue;
                for (int kx = 0; kx < k; ++kx) {
                    const int ox = ix * stride - pad + kx;
                    if (ox < 0 || ox >= gout.w) continue;
                    const std::size_t bank =
                        static_cast<std::size_t>((oy + ox) & 1) * k * k * ci * co;
                    const std::size_t base =
                        bank + (static_cast<std::size_t>(ky) * k + kx) * ci * co;
                    const double* g = gout.row(oy, ox);
                    for (int c_in = 0; c_in < ci; ++c_in) {
                        const double v = src[c_in];
                        const double* krow = weights.data() + base + static_cast<std::size_t>(c_in) * co;
                        double* gkrow = gweights.data() + base + static_cast<std::size_t>(c_in) * co;
                        double accum = 0.0;
                        for (int c = 0; c < co; ++c) {
                            gkrow[c] += v * g[c];
                            accum += krow[c] * g[c];
                        }
                        if (gi) gi[c_in] += accum;
                    }
                }
            }
        }
    }
}

Tensor concat_channels(const Tensor& a, const Tensor& b) {
    if (a.h != b.h || a.w != b.w)
        throw std::invalid_argument("concat: spatial mismatch");
    Tensor out(a.h, a.w, a.c + b.c);
    for (int y = 0; y < a.h; ++y)
        for (int x = 0; x < a.w; ++x) {
            double* dst = out.row(y, x);
            const double* pa = a.row(y, x);
            const double* pb = b.row(y, x);
            for (int c = 0; c < a.c; ++c) dst[c] = pa[c];
            for (int c = 0; c < b.c; ++c) dst[a.c + c] = pb[c];
        }
    return out;
}

Tensor softmax2(const Tensor& logits) {
    Tensor prob(logits.h, logits.w, 2);
    for (int y = 0; y < logits.h; ++y) {
        for (int x = 0; x < logits.w; ++x) {
            const double* z = logits.row(y, x);
            const double m = z[0] > z[1] ? z[0] : z[1];
            const double e0 = std::exp(z[0] - m), e1 = std::exp(z[1] - m);
            double* p = prob.row(y, x);
            p[0] = e0 / (e0 + e1);
            p[1] = e1 / (e0 + e1);
        }
    }
    return prob;
}

// ReLU gradient mask from the stored post-activation values.
void relu_backward_inplace(Tensor& grad, const Tensor& post) {
    for (std::size_t i = 0; i < grad.data.size(); ++i)
        if (post.data[i] <= 0.0) grad.data[i] = 0.0;
}

} // namespace

std::vector<LayerSpec> make_layer_specs(const ArchConfig& arch) {
    std::vector<LayerSpec> specs;
    const int levels = arch.levels, ch = arch.channels;
    for (int l = 1; l <= levels; ++l) {
        specs.push_back({LayerKind::conv, 3, l == 1 ? arch.in_channels : ch, ch, 1,
                         Activation::relu, "conv" + std::to_string(l) + "_1"});
        specs.push_back({LayerKind::conv, 3, ch, ch, 2, Activation::relu,
                         "conv" + std::to_string(l) + "_2"});
    }
    for (int l = 1; l <= levels; ++l)
        specs.push_back({LayerKind::reduce, 1, ch, 2, 1, Activation::none,
                         "reduce" + std::to_string(l)});
    for (int i = 1; i <= levels; ++i)
        specs.push_back({LayerKind::deconv, 3, i == 1 ? 2 : 4, 2, 2,
                         i == levels ? Activation::none : Activation::relu,
                         "deconv" + std::to_string(i)});
    return specs;
}

std::size_t ModelParams::param_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.weight_count() + l.out_channels;
    return n;
}

std::uint64_t ModelParams::fingerprint() const {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(arch.input_side));
    mix(static_cast<std::uint64_t>(arch.levels));
    mix(static_cast<std::uint64_t>(arch.channels));
    mix(static_cast<std::uint64_t>(arch.in_channels));
    for (const auto& l : layers) {
        mix(static_cast<std::uint64_t>(l.kind));
        mix(static_cast<std::uint64_t>(l.kernel));
        mix(static_cast<std::uint64_t>(l.in_channels));
        mix(static_cast<std::uint64_t>(l.out_channels));
        mix(static_cast<std::uint64_t>(l.stride));
        mix(static_cast<std::uint64_t>(l.activation));
    }
    return h;
}

ModelParams build_model(const ArchConfig& arch, std::uint64_t seed) {
    if (arch.input_side % (1 << arch.levels) != 0)
        throw std::invalid_argument("build_model: input side must be divisible by 2^levels");
    ModelParams m;
    m.arch = arch;
    m.layers = make_layer_specs(arch);

    std::mt19937_64 rng(seed);
    for (const auto& spec : m.layers) {
        const double fan_in = static_cast<double>(spec.kernel) * spec.kernel * spec.in_channels;
        std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / fan_in));
        std::vector<double> w(spec.weight_count());
        for (double& v : w) v = dist(rng);
        m.weights.push_back(std::move(w));
        m.biases.emplace_back(spec.out_channels, 0.0);
    }
    return m;
}

ForwardCache forward(const ModelParams& m, const Tensor& input) {
    const int L = m.arch.levels;
    if (input.h != m.arch.input_side || input.w != m.arch.input_side ||
        input.c != m.arch.in_channels)
        throw std::invalid_argument("forward: input shape mismatch");

    ForwardCache cache;
    cache.input = input;
    cache.encoder.reserve(2 * L);
    const Tensor* cur = &cache.input;
    for (int j = 0; j < 2 * L; ++j) {
        Tensor t = conv_forward(*cur, m.layers[j], m.weights[j], m.biases[j]);
        relu_inplace(t);
        cache.encoder.push_back(std::move(t));
        cur = &cache.encoder.back();
    }
    cache.reduced.reserve(L);
    for (int l = 0; l < L; ++l) {
        const int idx = 2 * L + l;
        cache.reduced.push_back(
            conv_forward(cache.encoder[2 * l + 1], m.layers[idx], m.weights[idx], m.biases[idx]));
    }
    cache.deconv.reserve(L);
    for (int i = 0; i < L; ++i) {
        const int idx = 3 * L + i;
        Tensor in = i == 0 ? cache.reduced[L - 1]
                           : concat_channels(cache.deconv.back(), cache.reduced[L - 1 - i]);
        Tensor t = deconv_forward(in, m.layers[idx], m.weights[idx], m.biases[idx]);
        if (m.layers[idx].activation == Activation::relu) relu_inplace(t);
        cache.deconv.push_back(std::move(t));
    }
    cache.prob = softmax2(cache.deconv.back());
    return cache;
}

double loss(const Tensor& prob, const BinaryMap& target) {
    if (prob.h != target.height() || prob.w != target.width() || prob.c != 2)
        throw std::invalid_argument("loss: shape mismatch");
    double total = 0.0;
    for (int y = 0; y < prob.h; ++y) {
        for (int x = 0; x < prob.w; ++x) {
            const int true_ch = target.is_foreground(x, y) ? 0 : 1;
            double p = prob.at(y, x, true_ch);
            if (p < kProbClamp) p = kProbClamp;
            if (p > 1.0 - kProbClamp) p = 1.0 - kProbClamp;
            total -= std::log(p);
        }
    }
    return total / (static_cast<double>(prob.h) * prob.w);
}

Gradients Gradients::zeros_like(const ModelParams& m) {
    Gradients g;
    g.weights.reserve(m.weights.size());
    g.biases.reserve(m.biases.size());
    for (const auto& w : m.weights) g.weights.emplace_back(w.size(), 0.0);
    for (const auto& b : m.biases) g.biases.emplace_back(b.size(), 0.0);
    return g;
}

void Gradients::accumulate(const Gradients& other) {
    for (std::size_t l = 0; l < weights.size(); ++l) {
        for (std::size_t i = 0; i < weights[l].size(); ++i)
            weights[l][i] += other.weights[l][i];
        for (std::size_t i = 0; i < biases[l].size(); ++i)
            biases[l][i] += other.biases[l][i];
    }
}

void Gradients::scale(double s) {
    for (auto& w : weights)
        for (double& v : w) v *= s;
    for (auto& b : biases)
        for (double& v : b) v *= s;
}

double backward(const ModelParams& m, const Tensor& input, const BinaryMap& target,
                Gradients& grads) {
    const int L = m.arch.levels;
    ForwardCache cache = forward(m, input);
    const double loss_value = loss(cache.prob, target);

    // softmax + cross-entropy: dL/dz = (p - y) / Npixels
    const double inv_n = 1.0 / (static_cast<double>(cache.prob.h) * cache.prob.w);
    Tensor g_dec(cache.prob.h, cache.prob.w, 2);
    for (int y = 0; y < cache.prob.h; ++y) {
        for (int x = 0; x < cache.prob.w; ++x) {
            const int true_ch = target.is_foreground(x, y) ? 0 : 1;
            double* g = g_dec.row(y, x);
            const double* p = cache.prob.row(y, x);
            g[0] = (p[0] - (true_ch == 0 ? 1.0 : 0.0)) * inv_n;
            g[1] = (p[1] - (true_ch == 1 ? 1.0 : 0.0)) * inv_n;
        }
    }

    std::vector<Tensor> g_reduced(L);
    for (int i = L - 1; i >= 0; --i) {
        const int idx = 3 * L + i;
        if (m.layers[idx].activation == Activation::relu)
            relu_backward_inplace(g_dec, cache.deconv[i]);
        if (i == 0) {
            const Tensor& in = cache.reduced[L - 1];
            Tensor gin(in.h, in.w, in.c);
            deconv_backward(in, m.layers[idx], m.weights[idx], g_dec,
                            grads.weights[idx], grads.biases[idx], &gin);
            if (g_reduced[L - 1].data.empty())
                g_reduced[L - 1] = std::move(gin);
            else
                for (std::size_t k = 0; k < gin.data.size(); ++k)
                    g_reduced[L - 1].data[k] += gin.data[k];
        } else {
            Tensor in = concat_channels(cache.deconv[i - 1], cache.reduced[L - 1 - i]);
            Tensor gin(in.h, in.w, in.c);
            deconv_backward(in, m.layers[idx], m.weights[idx], g_dec,
                            grads.weights[idx], grads.biases[idx], &gin);
            Tensor g_prev(in.h, in.w, 2), g_skip(in.h, in.w, 2);
            for (int y = 0; y < in.h; ++y)
                for (int x = 0; x < in.w; ++x) {
                    const double* g = gin.row(y, x);
                    double* gp = g_prev.row(y, x);
                    double* gs = g_skip.row(y, x);
                    gp[0] = g[0];
                    gp[1] = g[1];
                    gs[0] = g[2];
                    gs[1] = g[3];
                }
            g_reduced[L - 1 - i] = std::move(g_skip);
            g_dec = std::move(g_prev);
        }
    }

    // reductions feed gradients into the strided encoder outputs
    std::vector<Tensor> g_enc(2 * L);
    for (int l = L - 1; l >= 0; --l) {
        const int idx = 2 * L + l;
        const Tensor& in = cache.encoder[2 * l + 1];
        Tensor gin(in.h, in.w, in.c);
        conv_backward(in, m.layers[idx], m.weights[idx], g_reduced[l],
                      grads.weights[idx], grads.biases[idx], &gin);
        g_enc[2 * l + 1] = std::move(gin);
    }

    for (int j = 2 * L - 1; j >= 0; --j) {
        Tensor& g = g_enc[j];
        if (g.data.empty()) {
            const Tensor& out = cache.encoder[j];
            g = Tensor(out.h, out.w, out.c);
        }
        relu_backward_inplace(g, cache.encoder[j]);
        const Tensor& in = j == 0 ? cache.input : cache.encoder[j - 1];
        if (j == 0) {
            conv_backward(in, m.layers[j], m.weights[j], g,
                          grads.weights[j], grads.biases[j], nullptr);
        } else {
            if (g_enc[j - 1].data.empty())
                g_enc[j - 1] = Tensor(in.h, in.w, in.c);
            conv_backward(in, m.layers[j], m.weights[j], g,
                          grads.weights[j], grads.biases[j], &g_enc[j - 1]);
        }
    }
    return loss_value;
}

Tensor block_to_tensor(const GrayImage& block) {
    Tensor t(block.height(), block.width(), 1);
    for (std::size_t i = 0; i < block.data().size(); ++i)
        t.data[i] = block.data()[i] / 255.0;
    return t;
}

BinaryMap prob_to_map(const Tensor& prob) {
    BinaryMap out(prob.w, prob.h);
    for (int y = 0; y < prob.h; ++y)
        for (int x = 0; x < prob.w; ++x)
            out.at(x, y) = prob.at(y, x, 0) >= 0.5 ? Label::foreground : Label::background;
    return out;
}

} // namespace hdad
