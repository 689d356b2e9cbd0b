#ifndef HDAD_EVAL_HPP
#define HDAD_EVAL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hdad/image.hpp"
#include "hdad/labeling.hpp"

namespace hdad {

struct Confusion {
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;

    std::size_t total() const { return tp + tn + fp + fn; }
    Confusion& operator+=(const Confusion& o) {
        tp += o.tp; tn += o.tn; fp += o.fp; fn += o.fn;
        return *this;
    }
};

struct Metrics {
    double recall = 0.0;
    double specificity = 0.0;
    double precision = 0.0;
    double f_measure = 0.0;
};

// Foreground is the positive class. Throws on dimension mismatch.
Confusion confusion(const BinaryMap& pred, const BinaryMap& truth);

// Re, Sp, Pr, F-m; zero-denominator cases return 0.
Metrics metrics(const Confusion& c);

// PSNR over 0/255 encodings; identical maps yield +infinity.
double psnr(const BinaryMap& pred, const BinaryMap& truth);

struct EvalRow {
    std::string id;
    Metrics m;
    double psnr_db = 0.0; // +inf when maps identical
    double seconds = 0.0;
    Confusion c;
};

struct EvalReport {
    std::vector<EvalRow> rows;
    Metrics aggregate;            // macro mean by default
    double aggregate_psnr = 0.0;  // mean over finite PSNR rows
    std::size_t infinite_psnr_count = 0;
    double mean_seconds = 0.0;
    bool micro = false;
    std::optional<std::size_t> parameter_count; // set when a model is involved
};

using BinarizerFn = std::function<BinaryMap(const GrayImage&)>;

EvalReport evaluate_dataset(const BinarizerFn& method, const std::vector<HdadPair>& pairs,
                            bool micro = false);

// Aligned plain-text table (Re/Sp/Pr/F-m/PSNR plus time and parameters).
std::string render_report(const EvalReport& report, const std::string& method_name);
// One-row-per-method comparison table.
std::string render_comparison(const std::vector<std::pair<std::string, EvalReport>>& reports);
// Machine-readable JSON: one record per image plus the aggregate.
std::string report_to_json(const EvalReport& report, const std::string& method_name);

} // namespace hdad

#endif
