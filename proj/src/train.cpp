#include "hdad/train.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hdad/blocks.hpp"
#include "hdad/parallel.hpp"

namespace hdad {

namespace {

GrayImage extract_channel(const ColorImage& img, int c) {
    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            out.at(x, y) = img.at(x, y, c);
    return out;
}

std::vector<BlockPair> make_block_pairs(const std::vector<HdadPair>& dataset, int in_channels) {
    if (in_channels != 1 && in_channels != 3)
        throw std::invalid_argument("train: in_channels must be 1 or 3");
    std::vector<BlockPair> samples;
    for (const auto& pair : dataset) {
        if (pair.source.width() != pair.truth.width() ||
            pair.source.height() != pair.truth.height())
            throw std::invalid_argument("train: pair " + pair.id + " dimension mismatch");
        TilingDesc tdesc;
        std::vector<BinaryMap> truth_blocks = partition_blocks(pair.truth, tdesc);
        if (in_channels == 1) {
            GrayImage gray = to_grayscale(pair.source);
            TilingDesc desc;
            std::vector<GrayImage> src_blocks = partition_blocks(gray, desc);
            for (std::size_t i = 0; i < src_blocks.size(); ++i)
                samples.push_back({block_to_tensor(src_blocks[i]), std::move(truth_blocks[i])});
        } else {
            TilingDesc desc;
            std::vector<std::vector<GrayImage>> chans;
            for (int c = 0; c < 3; ++c)
                chans.push_back(partition_blocks(extract_channel(pair.source, c), desc));
            for (std::size_t i = 0; i < truth_blocks.size(); ++i) {
                Tensor t(desc.side, desc.side, 3);
                for (int y = 0; y < desc.side; ++y)
                    for (int x = 0; x < desc.side; ++x)
                        for (int c = 0; c < 3; ++c)
                            t.at(y, x, c) = chans[c][i].at(x, y) / 255.0;
                samples.push_back({std::move(t), std::move(truth_blocks[i])});
            }
        }
    }
    return samples;
}

} // namespace

TrainResult train_blocks(std::vector<BlockPair> samples, ModelParams model,
                         const TrainConfig& cfg) {
    if (samples.empty()) throw std::invalid_argument("train: empty dataset");
    if (cfg.batch_size < 1) throw std::invalid_argument("train: batch size must be >= 1");

    AdamState state = AdamState::init(model, cfg.adam);
    std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);

    TrainResult result;
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const std::size_t count = std::min<std::size_t>(cfg.batch_size, order.size() - start);
            std::vector<Gradients> grads(count);
            std::vector<double> losses(count);
            parallel_for(count, cfg.threads, [&](std::size_t i) {
                const BlockPair& s = samples[order[start + i]];
                grads[i] = Gradients::zeros_like(model);
                losses[i] = backward(model, s.input, s.target, grads[i]);
            });
            // deterministic reduction in block order
            Gradients batch = std::move(grads[0]);
            for (std::size_t i = 1; i < count; ++i) batch.accumulate(grads[i]);
            batch.scale(1.0 / static_cast<double>(count));
            adam_step(model, batch, state);
            for (std::size_t i = 0; i < count; ++i) epoch_loss += losses[i];
        }
        result.epoch_loss.push_back(epoch_loss / static_cast<double>(order.size()));
        if (cfg.target_loss > 0.0 && result.epoch_loss.back() < cfg.target_loss) break;
    }
    result.model = std::move(model);
    return result;
}

TrainResult train(const std::vector<HdadPair>& dataset, const TrainConfig& cfg) {
    if (dataset.empty()) throw std::invalid_argument("train: empty dataset");
    ArchConfig arch;
    arch.in_channels = cfg.in_channels;
    ModelParams model = build_model(arch, cfg.seed);
    if (cfg.epochs == 0) {
        TrainResult r;
        r.model = std::move(model);
        return r;
    }
    return train_blocks(make_block_pairs(dataset, cfg.in_channels), std::move(model), cfg);
}

BinaryMap infer(const ModelParams& m, const GrayImage& img, int threads) {
    TilingDesc desc;
    std::vector<GrayImage> blocks = partition_blocks(img, desc, m.arch.input_side);
    std::vector<BinaryMap> out(blocks.size());
    parallel_for(blocks.size(), threads, [&](std::size_t i) {
        ForwardCache cache = forward(m, block_to_tensor(blocks[i]));
        out[i] = prob_to_map(cache.prob);
    });
    return stitch_blocks(out, desc);
}

} // namespace hdad
