#ifndef HDAD_NET_HPP
#define HDAD_NET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hdad/image.hpp"
#include "hdad/tensor.hpp"

namespace hdad {

enum class LayerKind { conv, reduce, deconv };
enum class Activation { relu, none };

struct LayerSpec {
    LayerKind kind = LayerKind::conv;
    int kernel = 3; // 3 for conv/deconv, 1 for reduce
    int in_channels = 1;
    int out_channels = 1;
    int stride = 1; // 1 or 2
    Activation activation = Activation::none;
    std::string name;

    // Deconvs carry two kernel banks, one per output-pixel parity, with a
    // single shared bias; conv/reduce layers carry one bank.
    std::size_t weight_count() const {
        const std::size_t banks = kind == LayerKind::deconv ? 2 : 1;
        return banks * kernel * kernel * in_channels * out_channels;
    }
};

// Architecture knobs. The full-size configuration is the default; the
// downscaled variant used for gradient checking shrinks input, depth
// and width but keeps every layer kind.
struct ArchConfig {
    int input_side = 224;
    int levels = 5;      // encoder stages (two convs each)
    int channels = 32;   // encoder feature width
    int in_channels = 1; // grayscale; 3 for color sources

    bool operator==(const ArchConfig&) const = default;
};

// Encoder convs (2 per level, second strided), per-level 1x1 two-channel
// reductions, and stride-2 deconvs. Each deconv past the first consumes
// the previous deconv output concatenated with the matching reduced
// encoder map (4 input channels).
std::vector<LayerSpec> make_layer_specs(const ArchConfig& arch);

struct ModelParams {
    ArchConfig arch;
    std::vector<LayerSpec> layers;
    std::vector<std::vector<double>> weights; // K[ky][kx][ci][co] per layer
    std::vector<std::vector<double>> biases;  // [co] per layer

    std::size_t param_count() const;
    std::uint64_t fingerprint() const; // architecture hash, not weights
};

// Deterministic He-normal initialization from the seed.
ModelParams build_model(const ArchConfig& arch, std::uint64_t seed);
inline ModelParams build_model(std::uint64_t seed) { return build_model(ArchConfig{}, seed); }

// Post-activation outputs kept for the backward pass.
struct ForwardCache {
    Tensor input;
    std::vector<Tensor> encoder;  // 2*levels conv outputs
    std::vector<Tensor> reduced;  // levels reduction outputs
    std::vector<Tensor> deconv;   // levels deconv outputs (last pre-softmax)
    Tensor prob;                  // per-pixel two-class softmax
};

// Input must be input_side x input_side x in_channels with values in [0,1].
ForwardCache forward(const ModelParams& m, const Tensor& input);

// Mean two-class cross-entropy; channel 0 is the foreground probability.
// Probabilities are clamped to [1e-12, 1-1e-12].
double loss(const Tensor& prob, const BinaryMap& target);

struct Gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    static Gradients zeros_like(const ModelParams& m);
    void accumulate(const Gradients& other);
    void scale(double s);
};

// Reverse-mode gradients of loss(forward(m, input), target) for every
// parameter. Returns the loss value alongside.
double backward(const ModelParams& m, const Tensor& input, const BinaryMap& target,
                Gradients& grads);

// Grayscale block scaled to [0,1] as a 1-channel tensor.
Tensor block_to_tensor(const GrayImage& block);

// Per-pixel foreground iff P(foreground) >= 0.5 (ties go foreground).
BinaryMap prob_to_map(const Tensor& prob);

} // namespace hdad

#endif
