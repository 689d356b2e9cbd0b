#include "hdad/adam.hpp"

#include <cmath>

namespace hdad {

AdamState AdamState::init(const ModelParams& params, const AdamHyper& hyper) {
    AdamState s;
    s.hyper = hyper;
    for (const auto& w : params.weights) {
        s.m_weights.emplace_back(w.size(), 0.0);
        s.v_weights.emplace_back(w.size(), 0.0);
    }
    for (const auto& b : params.biases) {
        s.m_biases.emplace_back(b.size(), 0.0);
        s.v_biases.emplace_back(b.size(), 0.0);
    }
    return s;
}

namespace {

void update(std::vector<double>& p, const std::vector<double>& g,
            std::vector<double>& m, std::vector<double>& v,
            const AdamHyper& h, double bc1, double bc2) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        m[i] = h.beta1 * m[i] + (1.0 - h.beta1) * g[i];
        v[i] = h.beta2 * v[i] + (1.0 - h.beta2) * g[i] * g[i];
        const double m_hat = m[i] / bc1;
        const double v_hat = v[i] / bc2;
        p[i] -= h.learning_rate * m_hat / (std::sqrt(v_hat) + h.epsilon);
    }
}

} // namespace

void adam_step(ModelParams& params, const Gradients& grads, AdamState& state) {
    ++state.step;
    const double bc1 = 1.0 - std::pow(state.hyper.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(state.hyper.beta2, static_cast<double>(state.step));
    for (std::size_t l = 0; l < params.weights.size(); ++l) {
        update(params.weights[l], grads.weights[l], state.m_weights[l], state.v_weights[l],
               state.hyper, bc1, bc2);
        update(params.biases[l], grads.biases[l], state.m_biases[l], state.v_biases[l],
               state.hyper, bc1, bc2);
    }
}

} // namespace hdad
