// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Each criterion is checked against independent
// brute-force oracles or constructed fixtures with the stated tolerance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hdad/blocks.hpp"
#include "hdad/eval.hpp"
#include "hdad/gradient.hpp"
#include "hdad/ihegt.hpp"
#include "hdad/integral.hpp"
#include "hdad/labeling.hpp"
#include "hdad/net.hpp"
#include "hdad/synth.hpp"
#include "hdad/threshold.hpp"
#include "hdad/train.hpp"

using namespace hdad;

namespace {

int g_failures = 0;

struct Criterion {
    std::string name;
    bool ok = true;
    std::string detail;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit Criterion(std::string n) : name(std::move(n)) {}

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    void finish() {
        std::printf("%s  %-70s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), seconds(),
                    ok ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++g_failures;
    }
};

GrayImage random_image(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GrayImage img(w, h);
    for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng() % 256);
    return img;
}

BinaryMap random_map(int w, int h, std::uint64_t seed, double fg_prob) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    BinaryMap m(w, h);
    for (auto& l : m.labels())
        l = dist(rng) < fg_prob ? Label::foreground : Label::background;
    return m;
}

// ---- independent brute-force oracles ----

struct WindowStats {
    double mean, std;
};

WindowStats naive_stats(const GrayImage& img, int cx, int cy, int w) {
    auto [x0, x1] = window_range(cx, w, img.width());
    auto [y0, y1] = window_range(cy, w, img.height());
    double sum = 0, sum_sq = 0;
    int n = 0;
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) {
            const double v = img.at(x, y);
            sum += v;
            sum_sq += v * v;
            ++n;
        }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    return {mean, std::sqrt(var > 0 ? var : 0)};
}

BinaryMap naive_niblack(const GrayImage& img, const ThresholdParams& p) {
    BinaryMap out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            auto s = naive_stats(img, x, y, p.w);
            out.at(x, y) = img.at(x, y) < s.mean + p.k * s.std ? Label::foreground
                                                               : Label::background;
        }
    return out;
}

BinaryMap naive_sauvola(const GrayImage& img, const ThresholdParams& p) {
    BinaryMap out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            auto s = naive_stats(img, x, y, p.w);
            const double t = s.mean * (1.0 + p.k * (s.std / p.r - 1.0));
            out.at(x, y) = img.at(x, y) < t ? Label::foreground : Label::background;
        }
    return out;
}

BinaryMap naive_mlt(const GrayImage& img, const ThresholdParams& p) {
    GradientField g = gradient_magnitude(img);
    BinaryMap out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            auto [x0, x1] = window_range(x, p.w, img.width());
            auto [y0, y1] = window_range(y, p.w, img.height());
            double mu = 0, mu_grad = 0, max_grad = 0;
            int n = 0;
            for (int yy = y0; yy < y1; ++yy)
                for (int xx = x0; xx < x1; ++xx) {
                    mu += img.at(xx, yy);
                    mu_grad += g.at(xx, yy);
                    max_grad = std::max(max_grad, g.at(xx, yy));
                    ++n;
                }
            mu /= n;
            mu_grad /= n;
            const double e = max_grad > 0 ? std::exp(-mu_grad / max_grad) : 1.0;
            const double t = mu * (1.0 - p.k * e);
            out.at(x, y) = img.at(x, y) < t ? Label::foreground : Label::background;
        }
    return out;
}

BinaryMap naive_cwmf(const BinaryMap& m, const CwmfParams& p) {
    BinaryMap out(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) {
            auto [x0, x1] = window_range(x, p.window, m.width());
            auto [y0, y1] = window_range(y, p.window, m.height());
            std::size_t fg = 0, size = 0;
            for (int yy = y0; yy < y1; ++yy)
                for (int xx = x0; xx < x1; ++xx) {
                    const std::size_t mult =
                        (xx == x && yy == y) ? static_cast<std::size_t>(p.center_weight) : 1;
                    size += mult;
                    if (m.is_foreground(xx, yy)) fg += mult;
                }
            out.at(x, y) = fg >= (size + 2) / 2 ? Label::foreground : Label::background;
        }
    return out;
}

int brute_otsu(const std::vector<std::size_t>& hist) {
    std::size_t total = 0;
    int distinct = 0;
    for (int v = 0; v < 256; ++v) {
        total += hist[v];
        if (hist[v]) ++distinct;
    }
    if (distinct < 2) return -1;
    double best = 0;
    int best_t = -1;
    for (int t = 0; t < 256; ++t) {
        double n0 = 0, n1 = 0, m0 = 0, m1 = 0;
        for (int v = 0; v < 256; ++v)
            (v <= t ? n0 : n1) += static_cast<double>(hist[v]);
        if (n0 > 0)
            for (int v = 0; v <= t; ++v) m0 += v * static_cast<double>(hist[v]) / n0;
        if (n1 > 0)
            for (int v = t + 1; v < 256; ++v) m1 += v * static_cast<double>(hist[v]) / n1;
        double within = 0;
        for (int v = 0; v < 256; ++v) {
            const double m = v <= t ? m0 : m1;
            within += static_cast<double>(hist[v]) * (v - m) * (v - m);
        }
        within /= static_cast<double>(total);
        if (best_t < 0 || within < best - 1e-12) {
            best = within;
            best_t = t;
        }
    }
    return best_t;
}

bool models_equal(const ModelParams& a, const ModelParams& b) {
    return a.weights == b.weights && a.biases == b.biases;
}

std::vector<HdadPair> synth_set(std::uint64_t first_seed, int count) {
    std::vector<HdadPair> pairs;
    for (int i = 0; i < count; ++i)
        pairs.push_back(synth_pair(first_seed + static_cast<std::uint64_t>(i)));
    return pairs;
}

// ---- criteria ----

void criterion_oracles() {
    Criterion c("1. local binarizers and CWMF equal brute-force oracles (50x each)");
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 50 && c.ok; ++trial) {
        GrayImage img = random_image(64, 64, rng());
        c.require(niblack(img) == naive_niblack(img, niblack_defaults()), "niblack mismatch");
        c.require(sauvola(img) == naive_sauvola(img, sauvola_defaults()), "sauvola mismatch");
        c.require(mlt(img) == naive_mlt(img, mlt_defaults()), "mlt mismatch");
        BinaryMap m = random_map(64, 64, rng(), 0.3);
        c.require(cwmf_denoise(m) == naive_cwmf(m, CwmfParams{}), "cwmf mismatch");
    }
    c.require(c.seconds() < 10.0, "runtime budget of 10 s exceeded");
    c.finish();
}

void criterion_otsu() {
    Criterion c("2. Otsu equals exhaustive within-class-variance scan (100 histograms)");
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        std::vector<std::size_t> hist(256, 0);
        const int bins = 2 + static_cast<int>(rng() % 40);
        for (int b = 0; b < bins; ++b)
            hist[rng() % 256] += 1 + rng() % 500;
        c.require(otsu_threshold(hist) == brute_otsu(hist), "threshold mismatch");
    }
    c.require(c.seconds() < 1.0, "runtime budget of 1 s exceeded");
    c.finish();
}

void criterion_ihegt() {
    Criterion c("3. IHEGT terminates on 100 random images; 10x10 fixture exact");
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        const int w = 1 + static_cast<int>(rng() % 40);
        const int h = 1 + static_cast<int>(rng() % 40);
        BinaryMap m = ihegt_binarize(random_image(w, h, rng()), {100, false});
        c.require(m.width() == w && m.height() == h, "bad output dimensions");
    }
    GrayImage fixture(10, 10, 255);
    fixture.at(3, 4) = 0;
    BinaryMap m = ihegt_binarize(fixture);
    c.require(m.count_foreground() == 1 && m.at(3, 4) == Label::foreground,
              "hand-traced fixture mismatch");
    c.finish();
}

void criterion_fusion() {
    Criterion c("4. fusion algebra on 100 random map pairs");
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 100 && c.ok; ++trial) {
        BinaryMap a = random_map(32, 32, rng(), 0.5);
        BinaryMap b = random_map(32, 32, rng(), 0.5);
        BinaryMap d = random_map(32, 32, rng(), 0.5);
        BinaryMap empty(32, 32);
        c.require(fuse(a, b) == fuse(b, a), "not commutative");
        c.require(fuse(fuse(a, b), d) == fuse(a, fuse(b, d)), "not associative");
        c.require(fuse(a, a) == a, "not idempotent");
        c.require(fuse(a, empty) == a, "empty map is not the identity");
    }
    c.finish();
}

void criterion_cwmf_fixtures() {
    Criterion c("5. CWMF removes speckles (37 < 43) and keeps 1-px lines (43 >= 43)");
    BinaryMap speck(30, 30);
    speck.at(15, 15) = Label::foreground;
    c.require(cwmf_denoise(speck).count_foreground() == 0, "isolated pixel survived");

    BinaryMap line(30, 30);
    for (int x = 0; x < 30; ++x) line.at(x, 15) = Label::foreground;
    BinaryMap kept = cwmf_denoise(line);
    for (int x = 3; x < 27; ++x)
        c.require(kept.at(x, 15) == Label::foreground, "1-px line eroded");
    c.finish();
}

void criterion_shapes() {
    Criterion c("6. CNN shape chain matches the reference layout; 84,540 parameters");
    ModelParams m = build_model(ArchConfig{}, 1);
    c.require(m.param_count() == 84540, "parameter count != 84540");
    c.require(std::abs(84540.0 - 84654.0) / 84654.0 < 0.02, "outside 2% of 84,654");

    Tensor input(224, 224, 1);
    ForwardCache f = forward(m, input);
    const int enc[10] = {224, 112, 112, 56, 56, 28, 28, 14, 14, 7};
    const int red[5] = {112, 56, 28, 14, 7};
    const int dec[5] = {14, 28, 56, 112, 224};
    c.require(f.encoder.size() == 10 && f.reduced.size() == 5 && f.deconv.size() == 5,
              "wrong layer counts");
    for (int i = 0; i < 10; ++i)
        c.require(f.encoder[i].h == enc[i] && f.encoder[i].w == enc[i] && f.encoder[i].c == 32,
                  "encoder shape mismatch at layer " + std::to_string(i + 1));
    for (int i = 0; i < 5; ++i) {
        c.require(f.reduced[i].h == red[i] && f.reduced[i].c == 2,
                  "reduction shape mismatch at level " + std::to_string(i + 1));
        c.require(f.deconv[i].h == dec[i] && f.deconv[i].c == 2,
                  "deconv shape mismatch at stage " + std::to_string(i + 1));
    }
    c.require(f.prob.h == 224 && f.prob.w == 224 && f.prob.c == 2, "softmax shape mismatch");
    c.finish();
}

void criterion_gradients() {
    Criterion c("7. finite-difference gradient check, every downscaled parameter");
    const ArchConfig tiny{16, 2, 4, 1};
    ModelParams m = build_model(tiny, 123);

    std::mt19937_64 rng(7);
    Tensor input(16, 16, 1);
    for (auto& v : input.data) v = (rng() % 256) / 255.0;
    BinaryMap target = random_map(16, 16, 9, 0.4);

    Gradients g = Gradients::zeros_like(m);
    backward(m, input, target, g);

    const double h = 1e-5;
    auto probe = [&](std::vector<double>& slot, std::size_t i, double analytic) {
        const double keep = slot[i];
        slot[i] = keep + h;
        const double up = loss(forward(m, input).prob, target);
        slot[i] = keep - h;
        const double dn = loss(forward(m, input).prob, target);
        slot[i] = keep;
        const double fd = (up - dn) / (2 * h);
        const double scale = std::max({std::abs(fd), std::abs(analytic), 1e-6});
        c.require(std::abs(fd - analytic) / scale < 1e-4, "gradient relative error >= 1e-4");
    };
    for (std::size_t l = 0; l < m.layers.size() && c.ok; ++l) {
        for (std::size_t i = 0; i < m.weights[l].size() && c.ok; ++i)
            probe(m.weights[l], i, g.weights[l][i]);
        for (std::size_t i = 0; i < m.biases[l].size() && c.ok; ++i)
            probe(m.biases[l], i, g.biases[l][i]);
    }
    c.require(c.seconds() < 60.0, "runtime budget of 60 s exceeded");
    c.finish();
}

void criterion_overfit() {
    Criterion c("8. 4-block overfit reaches mean loss < 0.03 within 50 epochs");
    TrainConfig cfg;
    cfg.epochs = 50;
    cfg.batch_size = 1;
    cfg.seed = 5;
    cfg.adam.learning_rate = 5e-3;
    cfg.target_loss = 0.03;
    TrainResult r = train(synth_set(100, 4), cfg);
    double best = 1e30;
    for (double l : r.epoch_loss) best = std::min(best, l);
    std::ostringstream oss;
    oss << "best epoch loss " << best << " after " << r.epoch_loss.size() << " epochs";
    c.require(best < 0.03, oss.str());
    c.require(c.seconds() < 600.0, "runtime budget of 10 min exceeded");
    c.finish();
}

void criterion_end_to_end() {
    Criterion c("9. synthetic benchmark: CNN beats Niblack/Sauvola; labeling F >= 0.9");
    std::vector<HdadPair> train_pairs = synth_set(1, 20);
    std::vector<HdadPair> test_pairs = synth_set(1001, 12);

    TrainConfig cfg;
    cfg.epochs = 40;
    cfg.batch_size = 2;
    cfg.seed = 7;
    cfg.adam.learning_rate = 2e-3;
    cfg.target_loss = 0.02;
    TrainResult r = train(train_pairs, cfg);

    const ModelParams& model = r.model;
    EvalReport cnn = evaluate_dataset(
        [&](const GrayImage& g) { return infer(model, g); }, test_pairs);
    EvalReport nib = evaluate_dataset([](const GrayImage& g) { return niblack(g); }, test_pairs);
    EvalReport sau = evaluate_dataset([](const GrayImage& g) { return sauvola(g); }, test_pairs);

    std::ostringstream oss;
    oss << "macro F-m: cnn " << cnn.aggregate.f_measure << ", niblack "
        << nib.aggregate.f_measure << ", sauvola " << sau.aggregate.f_measure;
    c.require(cnn.aggregate.f_measure > nib.aggregate.f_measure, "cnn <= niblack; " + oss.str());
    c.require(cnn.aggregate.f_measure > sau.aggregate.f_measure, "cnn <= sauvola; " + oss.str());

    double label_f = 0.0;
    for (const auto& pair : test_pairs) {
        HdadPair labeled = label_pair(pair.source, pair.id);
        label_f += metrics(confusion(labeled.truth, pair.truth)).f_measure;
    }
    label_f /= static_cast<double>(test_pairs.size());
    c.require(label_f >= 0.9,
              "labeling macro F-m " + std::to_string(label_f) + " below 0.9");
    c.require(c.seconds() < 1800.0, "runtime budget of 30 min exceeded");
    c.finish();
}

void criterion_metrics() {
    Criterion c("10. metric fixtures and report columns");
    Metrics m = metrics(Confusion{9, 52, 2, 1});
    c.require(std::abs(m.recall - 0.9) < 1e-4, "recall fixture");
    c.require(std::abs(m.precision - 0.8182) < 1e-4, "precision fixture");
    c.require(std::abs(m.f_measure - 0.8571) < 1e-4, "F-measure fixture");

    BinaryMap t(224, 224), p(224, 224);
    p.at(5, 5) = Label::foreground;
    c.require(std::abs(psnr(p, t) - 47.0055) < 1e-3, "one-pixel PSNR fixture");

    EvalReport rep;
    EvalRow row;
    row.id = "map01";
    row.m = m;
    row.psnr_db = 24.5737;
    row.seconds = 4.19;
    rep.rows.push_back(row);
    rep.aggregate = m;
    rep.aggregate_psnr = row.psnr_db;
    rep.mean_seconds = row.seconds;
    rep.parameter_count = 84540;
    std::string table = render_report(rep, "cnn");
    for (const char* needle : {"Re", "Sp", "Pr", "F-m", "PSNR", "time (s)", "#(parameters)"})
        c.require(table.find(needle) != std::string::npos,
                  std::string("missing column ") + needle);
    std::string cmp = render_comparison({{"cnn", rep}});
    for (const char* needle : {"Method", "F-m", "#(parameters)", "time (s)"})
        c.require(cmp.find(needle) != std::string::npos,
                  std::string("missing comparison column ") + needle);
    c.finish();
}

void criterion_determinism() {
    Criterion c("11. fixed-seed training and binarizers are bit-reproducible");
    GrayImage img = random_image(120, 90, 555);
    c.require(otsu(img) == otsu(img), "otsu not reproducible");
    c.require(niblack(img) == niblack(img), "niblack not reproducible");
    c.require(sauvola(img) == sauvola(img), "sauvola not reproducible");
    c.require(mlt(img) == mlt(img), "mlt not reproducible");
    c.require(ihegt_binarize(img) == ihegt_binarize(img), "ihegt not reproducible");

    const ArchConfig tiny{16, 2, 4, 1};
    std::vector<BlockPair> samples;
    std::mt19937_64 rng(77);
    for (int i = 0; i < 8; ++i) {
        GrayImage block = random_image(16, 16, rng());
        samples.push_back({block_to_tensor(block), random_map(16, 16, rng(), 0.3)});
    }
    TrainConfig cfg;
    cfg.epochs = 3;
    cfg.batch_size = 4;
    cfg.seed = 11;

    TrainResult a = train_blocks(samples, build_model(tiny, 11), cfg);
    TrainResult b = train_blocks(samples, build_model(tiny, 11), cfg);
    c.require(models_equal(a.model, b.model), "same-seed training runs differ");
    c.require(a.epoch_loss == b.epoch_loss, "same-seed loss curves differ");

    cfg.threads = 4;
    TrainResult d = train_blocks(samples, build_model(tiny, 11), cfg);
    c.require(models_equal(a.model, d.model), "training differs across thread counts");

    GrayImage wide = random_image(40, 20, 888);
    c.require(infer(a.model, wide, 1) == infer(a.model, wide, 4),
              "inference differs across thread counts");
    c.finish();
}

} // namespace

int main() {
    criterion_oracles();
    criterion_otsu();
    criterion_ihegt();
    criterion_fusion();
    criterion_cwmf_fixtures();
    criterion_shapes();
    criterion_gradients();
    criterion_overfit();
    criterion_end_to_end();
    criterion_metrics();
    criterion_determinism();

    if (g_failures == 0) {
        std::printf("all 11 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
