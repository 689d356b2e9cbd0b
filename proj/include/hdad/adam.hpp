#ifndef HDAD_ADAM_HPP
#define HDAD_ADAM_HPP

#include <cstdint>

#include "hdad/net.hpp"

namespace hdad {

struct AdamHyper {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct AdamState {
    AdamHyper hyper;
    std::uint64_t step = 0;
    std::vector<std::vector<double>> m_weights, v_weights;
    std::vector<std::vector<double>> m_biases, v_biases;

    static AdamState init(const ModelParams& params, const AdamHyper& hyper = {});
};

// Standard bias-corrected Adam update; increments the step count.
void adam_step(ModelParams& params, const Gradients& grads, AdamState& state);

} // namespace hdad

#endif
