#include "hdad/eval.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hdad {

Confusion confusion(const BinaryMap& pred, const BinaryMap& truth) {
    if (pred.width() != truth.width() || pred.height() != truth.height())
        throw std::invalid_argument("confusion: dimension mismatch");
    Confusion c;
    for (std::size_t i = 0; i < pred.labels().size(); ++i) {
        const bool p = pred.labels()[i] == Label::foreground;
        const bool t = truth.labels()[i] == Label::foreground;
        if (p && t) ++c.tp;
        else if (!p && !t) ++c.tn;
        else if (p && !t) ++c.fp;
        else ++c.fn;
    }
    return c;
}

namespace {
double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
} // namespace

Metrics metrics(const Confusion& c) {
    Metrics m;
    m.recall = ratio(c.tp, c.tp + c.fn);
    m.specificity = ratio(c.tn, c.tn + c.fp);
    m.precision = ratio(c.tp, c.tp + c.fp);
    m.f_measure = (m.recall + m.precision) > 0.0
                      ? 2.0 * m.recall * m.precision / (m.recall + m.precision)
                      : 0.0;
    return m;
}

double psnr(const BinaryMap& pred, const BinaryMap& truth) {
    if (pred.width() != truth.width() || pred.height() != truth.height())
        throw std::invalid_argument("psnr: dimension mismatch");
    std::size_t diff = 0;
    for (std::size_t i = 0; i < pred.labels().size(); ++i)
        if (pred.labels()[i] != truth.labels()[i]) ++diff;
    if (diff == 0) return std::numeric_limits<double>::infinity();
    // differing pixels contribute 255^2 each under the 0/255 encoding
    const double mse = 255.0 * 255.0 * static_cast<double>(diff) /
                       static_cast<double>(pred.labels().size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

EvalReport evaluate_dataset(const BinarizerFn& method, const std::vector<HdadPair>& pairs,
                            bool micro) {
    if (pairs.empty()) throw std::invalid_argument("evaluate_dataset: no pairs");

    EvalReport report;
    report.micro = micro;
    Confusion total;
    double sum_re = 0, sum_sp = 0, sum_pr = 0, sum_fm = 0, sum_psnr = 0, sum_sec = 0;
    std::size_t finite_psnr = 0;

    for (const auto& pair : pairs) {
        GrayImage gray = to_grayscale(pair.source);
        const auto t0 = std::chrono::steady_clock::now();
        BinaryMap pred = method(gray);
        const auto t1 = std::chrono::steady_clock::now();

        EvalRow row;
        row.id = pair.id;
        row.c = confusion(pred, pair.truth);
        row.m = metrics(row.c);
        row.psnr_db = psnr(pred, pair.truth);
        row.seconds = std::chrono::duration<double>(t1 - t0).count();
        total += row.c;
        sum_re += row.m.recall;
        sum_sp += row.m.specificity;
        sum_pr += row.m.precision;
        sum_fm += row.m.f_measure;
        sum_sec += row.seconds;
        if (std::isfinite(row.psnr_db)) {
            sum_psnr += row.psnr_db;
            ++finite_psnr;
        }
        report.rows.push_back(std::move(row));
    }

    const double n = static_cast<double>(pairs.size());
    if (micro) {
        report.aggregate = metrics(total);
    } else {
        report.aggregate = {sum_re / n, sum_sp / n, sum_pr / n, sum_fm / n};
    }
    report.infinite_psnr_count = pairs.size() - finite_psnr;
    report.aggregate_psnr = finite_psnr > 0
                                ? sum_psnr / static_cast<double>(finite_psnr)
                                : std::numeric_limits<double>::infinity();
    report.mean_seconds = sum_sec / n;
    return report;
}

namespace {

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    if (std::isinf(v)) {
        os << "inf";
    } else {
        os.setf(std::ios::fixed);
        os.precision(prec);
        os << v;
    }
    return os.str();
}

void pad(std::ostringstream& os, const std::string& s, std::size_t width) {
    os << s;
    for (std::size_t i = s.size(); i < width; ++i) os << ' ';
}

} // namespace

std::string render_report(const EvalReport& report, const std::string& method_name) {
    std::ostringstream os;
    os << "Method: " << method_name << "\n";
    std::ostringstream header;
    pad(header, "Image", 20);
    for (const char* col : {"Re", "Sp", "Pr", "F-m", "PSNR", "time (s)"})
        pad(header, col, 10);
    os << header.str() << "\n";
    for (const auto& row : report.rows) {
        std::ostringstream line;
        pad(line, row.id, 20);
        pad(line, fmt(row.m.recall), 10);
        pad(line, fmt(row.m.specificity), 10);
        pad(line, fmt(row.m.precision), 10);
        pad(line, fmt(row.m.f_measure), 10);
        pad(line, fmt(row.psnr_db), 10);
        pad(line, fmt(row.seconds, 2), 10);
        os << line.str() << "\n";
    }
    std::ostringstream agg;
    pad(agg, report.micro ? "micro avg" : "macro avg", 20);
    pad(agg, fmt(report.aggregate.recall), 10);
    pad(agg, fmt(report.aggregate.specificity), 10);
    pad(agg, fmt(report.aggregate.precision), 10);
    pad(agg, fmt(report.aggregate.f_measure), 10);
    pad(agg, fmt(report.aggregate_psnr), 10);
    pad(agg, fmt(report.mean_seconds, 2), 10);
    os << agg.str() << "\n";
    if (report.parameter_count)
        os << "#(parameters): " << *report.parameter_count << "\n";
    if (report.infinite_psnr_count > 0)
        os << "note: " << report.infinite_psnr_count
           << " image(s) with infinite PSNR excluded from the PSNR mean\n";
    bool zero_denominator = false;
    for (const auto& row : report.rows)
        if (row.c.tp + row.c.fn == 0 || row.c.tp + row.c.fp == 0 || row.c.tn + row.c.fp == 0)
            zero_denominator = true;
    if (zero_denominator)
        os << "note: zero-denominator metrics reported as 0\n";
    return os.str();
}

std::string render_comparison(const std::vector<std::pair<std::string, EvalReport>>& reports) {
    std::ostringstream os;
    std::ostringstream header;
    pad(header, "Method", 16);
    for (const char* col : {"Re", "Sp", "Pr", "F-m", "PSNR", "#(parameters)", "time (s)"})
        pad(header, col, 14);
    os << header.str() << "\n";
    for (const auto& [name, report] : reports) {
        std::ostringstream line;
        pad(line, name, 16);
        pad(line, fmt(report.aggregate.recall), 14);
        pad(line, fmt(report.aggregate.specificity), 14);
        pad(line, fmt(report.aggregate.precision), 14);
        pad(line, fmt(report.aggregate.f_measure), 14);
        pad(line, fmt(report.aggregate_psnr), 14);
        pad(line, report.parameter_count ? std::to_string(*report.parameter_count) : "-", 14);
        pad(line, fmt(report.mean_seconds, 2), 14);
        os << line.str() << "\n";
    }
    return os.str();
}

std::string report_to_json(const EvalReport& report, const std::string& method_name) {
    nlohmann::json j;
    j["method"] = method_name;
    j["aggregation"] = report.micro ? "micro" : "macro";
    auto metrics_json = [](const Metrics& m) {
        return nlohmann::json{{"recall", m.recall},
                              {"specificity", m.specificity},
                              {"precision", m.precision},
                              {"f_measure", m.f_measure}};
    };
    auto psnr_json = [](double v) -> nlohmann::json {
        if (std::isinf(v)) return "inf";
        return v;
    };
    j["images"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r = metrics_json(row.m);
        r["id"] = row.id;
        r["psnr"] = psnr_json(row.psnr_db);
        r["seconds"] = row.seconds;
        r["confusion"] = {{"tp", row.c.tp}, {"tn", row.c.tn}, {"fp", row.c.fp}, {"fn", row.c.fn}};
        j["images"].push_back(std::move(r));
    }
    j["aggregate"] = metrics_json(report.aggregate);
    j["aggregate"]["psnr"] = psnr_json(report.aggregate_psnr);
    j["aggregate"]["seconds"] = report.mean_seconds;
    j["aggregate"]["infinite_psnr_excluded"] = report.infinite_psnr_count;
    if (report.parameter_count) j["parameters"] = *report.parameter_count;
    return j.dump(2);
}

} // namespace hdad
