#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "hdad/dataset.hpp"
#include "hdad/eval.hpp"
#include "hdad/ihegt.hpp"
#include "hdad/image_io.hpp"
#include "hdad/labeling.hpp"
#include "hdad/model_io.hpp"
#include "hdad/parallel.hpp"
#include "hdad/synth.hpp"
#include "hdad/threshold.hpp"
#include "hdad/train.hpp"

namespace fs = std::filesystem;
using namespace hdad;

namespace {

// exit codes: 0 ok, CLI11 codes for flag errors, 2 io/runtime, 3 bad input data
constexpr int kExitRuntime = 2;
constexpr int kExitBadInput = 3;

struct MethodOptions {
    double k = 0.0;
    bool k_set = false;
    int w = 17;
    double r = 128.0;
    int stats_window = 0;
    int max_iters = 100;
    std::string model_path;
    int threads = default_threads();
};

BinarizerFn make_binarizer(const std::string& method, const MethodOptions& opt,
                           std::optional<ModelParams>& model_slot) {
    if (method == "otsu") return [](const GrayImage& g) { return otsu(g); };
    if (method == "niblack") {
        ThresholdParams p = niblack_defaults();
        if (opt.k_set) p.k = opt.k;
        p.w = opt.w;
        return [p](const GrayImage& g) { return niblack(g, p); };
    }
    if (method == "sauvola") {
        ThresholdParams p = sauvola_defaults();
        if (opt.k_set) p.k = opt.k;
        p.w = opt.w;
        p.r = opt.r;
        return [p](const GrayImage& g) { return sauvola(g, p); };
    }
    if (method == "mlt") {
        ThresholdParams p = mlt_defaults();
        if (opt.k_set) p.k = opt.k;
        p.w = opt.w;
        const int sw = opt.stats_window;
        return [p, sw](const GrayImage& g) { return mlt(g, p, sw); };
    }
    if (method == "ihegt") {
        IhegtOptions io{opt.max_iters, false};
        return [io](const GrayImage& g) { return ihegt_binarize(g, io); };
    }
    if (method == "cnn") {
        if (opt.model_path.empty())
            throw std::runtime_error("method cnn requires --model");
        model_slot = load_model(opt.model_path);
        const ModelParams* m = &*model_slot;
        const int threads = opt.threads;
        return [m, threads](const GrayImage& g) { return infer(*m, g, threads); };
    }
    throw std::runtime_error("unknown method '" + method + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Expands `--config FILE` (flat key=value lines) into regular flags appended
// after the command-line ones; keys already given on the command line win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key=value, got '" + line + "'");
        const std::string flag = "--" + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        bool given = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
        if (!given) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

std::vector<std::string> list_images(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const std::string ext = e.path().extension().string();
        if (ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pnm")
            files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
    return files;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binarization toolkit for degraded scanned drawings"};
    app.require_subcommand(1);

    // ---- binarize ----
    auto* cmd_bin = app.add_subcommand("binarize", "binarize one image");
    std::string method = "otsu", in_path, out_path;
    MethodOptions mopt;
    cmd_bin->add_option("--method", method, "otsu|niblack|sauvola|mlt|ihegt|cnn");
    cmd_bin->add_option("--in", in_path, "input image")->required();
    cmd_bin->add_option("--out", out_path, "output binary map")->required();
    auto* kopt = cmd_bin->add_option("--k", mopt.k, "method coefficient");
    cmd_bin->add_option("--w", mopt.w, "window side (odd)");
    cmd_bin->add_option("--r", mopt.r, "Sauvola dynamic-range normalizer");
    cmd_bin->add_option("--stats-window", mopt.stats_window,
                        "MLT statistics window (0 = use --w, 256 = block mode)");
    cmd_bin->add_option("--max-iters", mopt.max_iters, "IHEGT iteration cap");
    cmd_bin->add_option("--model", mopt.model_path, "CNN model file");
    cmd_bin->add_option("--threads", mopt.threads, "worker threads");

    // ---- label ----
    auto* cmd_label = app.add_subcommand("label", "build ground-truth pairs from scans");
    std::string label_in, label_out, corrections_dir;
    cmd_label->add_option("--in", label_in, "directory of source images")->required();
    cmd_label->add_option("--out", label_out, "dataset root to create")->required();
    cmd_label->add_option("--corrections", corrections_dir,
                          "directory of per-id correction layers");

    // ---- synth ----
    auto* cmd_synth = app.add_subcommand("synth", "generate synthetic degraded drawings");
    std::string synth_out;
    int synth_count = 32, synth_train = 20, synth_w = 224, synth_h = 224;
    std::uint64_t synth_seed = 1;
    cmd_synth->add_option("--out", synth_out, "dataset root to create")->required();
    cmd_synth->add_option("--count", synth_count, "total pairs");
    cmd_synth->add_option("--train", synth_train, "pairs assigned to the train split");
    cmd_synth->add_option("--seed", synth_seed, "generator seed");
    cmd_synth->add_option("--width", synth_w, "image width");
    cmd_synth->add_option("--height", synth_h, "image height");

    // ---- train ----
    auto* cmd_train = app.add_subcommand("train", "train the CNN binarizer");
    std::string train_root, train_split = "train", model_out;
    TrainConfig tcfg;
    tcfg.threads = default_threads();
    cmd_train->add_option("--pairs", train_root, "dataset root")->required();
    cmd_train->add_option("--split", train_split, "manifest split to train on");
    cmd_train->add_option("--epochs", tcfg.epochs, "training epochs");
    cmd_train->add_option("--batch", tcfg.batch_size, "mini-batch size");
    cmd_train->add_option("--lr", tcfg.adam.learning_rate, "Adam learning rate");
    cmd_train->add_option("--target-loss", tcfg.target_loss,
                          "stop early once the epoch mean loss drops below (0 = off)");
    cmd_train->add_option("--seed", tcfg.seed, "initialization/shuffle seed");
    cmd_train->add_option("--channels", tcfg.in_channels, "input channels (1 or 3)");
    cmd_train->add_option("--threads", tcfg.threads, "worker threads");
    cmd_train->add_option("--out", model_out, "model file to write")->required();

    // ---- infer ----
    auto* cmd_infer = app.add_subcommand("infer", "binarize with a trained model");
    std::string infer_model, infer_in, infer_out;
    int infer_threads = default_threads();
    cmd_infer->add_option("--model", infer_model, "model file")->required();
    cmd_infer->add_option("--in", infer_in, "input image")->required();
    cmd_infer->add_option("--out", infer_out, "output binary map")->required();
    cmd_infer->add_option("--threads", infer_threads, "worker threads");

    // ---- eval ----
    auto* cmd_eval = app.add_subcommand("eval", "score predictions against truth maps");
    std::string eval_pred, eval_truth, eval_json;
    bool eval_micro = false;
    cmd_eval->add_option("--pred", eval_pred, "directory of predicted maps")->required();
    cmd_eval->add_option("--truth", eval_truth, "directory of ground-truth maps")->required();
    cmd_eval->add_option("--json", eval_json, "also write a JSON report here");
    cmd_eval->add_flag("--micro", eval_micro, "pool confusion counts instead of macro mean");

    // ---- compare ----
    auto* cmd_cmp = app.add_subcommand("compare", "run several methods over a dataset");
    std::string cmp_methods = "otsu,niblack,sauvola,mlt,ihegt", cmp_root, cmp_split = "test";
    MethodOptions cmp_opt;
    bool cmp_micro = false;
    cmd_cmp->add_option("--methods", cmp_methods, "comma-separated method list");
    cmd_cmp->add_option("--pairs", cmp_root, "dataset root")->required();
    cmd_cmp->add_option("--split", cmp_split, "manifest split to evaluate");
    cmd_cmp->add_option("--model", cmp_opt.model_path, "CNN model file (for cnn)");
    cmd_cmp->add_option("--threads", cmp_opt.threads, "worker threads");
    cmd_cmp->add_flag("--micro", cmp_micro, "pool confusion counts");

    app.footer("Every subcommand also accepts --config FILE with flat key=value lines\n"
               "matching its long flags; command-line flags take precedence.");

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }

    try {
        if (*cmd_bin) {
            mopt.k_set = kopt->count() > 0;
            std::optional<ModelParams> model;
            BinarizerFn fn = make_binarizer(method, mopt, model);
            GrayImage img = read_gray(in_path);
            write_binary_map(fn(img), out_path);
        } else if (*cmd_label) {
            Manifest manifest;
            for (const auto& file : list_images(label_in)) {
                const std::string id = fs::path(file).stem().string();
                HdadPair pair = label_pair(read_color(file), id);
                if (!corrections_dir.empty()) {
                    const fs::path layer = fs::path(corrections_dir) / (id + ".png");
                    if (fs::exists(layer)) {
                        pair.truth = apply_corrections(pair.truth, read_gray(layer.string()));
                        pair.provenance = Provenance::corrected;
                    }
                }
                save_pair(pair, label_out);
                manifest.entries.push_back({id, "train"});
                std::cout << "labeled " << id << "\n";
            }
            if (manifest.entries.empty())
                throw std::runtime_error("no images found in " + label_in);
            write_manifest(manifest, label_out);
        } else if (*cmd_synth) {
            SynthOptions sopt;
            sopt.width = synth_w;
            sopt.height = synth_h;
            Manifest manifest;
            for (int i = 0; i < synth_count; ++i) {
                HdadPair pair = synth_pair(synth_seed + static_cast<std::uint64_t>(i), sopt);
                save_pair(pair, synth_out);
                manifest.entries.push_back({pair.id, i < synth_train ? "train" : "test"});
            }
            write_manifest(manifest, synth_out);
            std::cout << "wrote " << synth_count << " pairs to " << synth_out << "\n";
        } else if (*cmd_train) {
            std::vector<HdadPair> pairs = load_pairs(train_root, train_split);
            TrainResult result = train(pairs, tcfg);
            save_model(result.model, model_out);
            for (std::size_t e = 0; e < result.epoch_loss.size(); ++e)
                std::cout << "epoch " << (e + 1) << " loss " << result.epoch_loss[e] << "\n";
        } else if (*cmd_infer) {
            ModelParams m = load_model(infer_model);
            write_binary_map(infer(m, read_gray(infer_in), infer_threads), infer_out);
        } else if (*cmd_eval) {
            std::vector<HdadPair> pairs;
            std::vector<BinaryMap> preds;
            for (const auto& file : list_images(eval_pred)) {
                const std::string name = fs::path(file).filename().string();
                const fs::path truth_file = fs::path(eval_truth) / name;
                if (!fs::exists(truth_file))
                    throw std::runtime_error("no truth map for " + name);
                HdadPair pair;
                pair.id = fs::path(file).stem().string();
                pair.truth = read_binary_map(truth_file.string());
                pair.source = ColorImage(pair.truth.width(), pair.truth.height());
                pairs.push_back(std::move(pair));
                preds.push_back(read_binary_map(file));
            }
            if (pairs.empty()) throw std::runtime_error("no predictions in " + eval_pred);
            std::size_t next = 0;
            BinarizerFn replay = [&](const GrayImage&) { return preds[next++]; };
            EvalReport report = evaluate_dataset(replay, pairs, eval_micro);
            std::cout << render_report(report, "predictions");
            if (!eval_json.empty()) {
                std::ofstream out(eval_json);
                out << report_to_json(report, "predictions") << "\n";
            }
        } else if (*cmd_cmp) {
            std::vector<HdadPair> pairs = load_pairs(cmp_root, cmp_split);
            std::vector<std::pair<std::string, EvalReport>> reports;
            std::stringstream names(cmp_methods);
            std::string name;
            while (std::getline(names, name, ',')) {
                std::optional<ModelParams> model;
                BinarizerFn fn = make_binarizer(name, cmp_opt, model);
                EvalReport report = evaluate_dataset(fn, pairs, cmp_micro);
                if (model) report.parameter_count = model->param_count();
                reports.emplace_back(name, std::move(report));
            }
            std::cout << render_comparison(reports);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
