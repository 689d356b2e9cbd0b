#include "hdad/dataset.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hdad/image_io.hpp"

namespace fs = std::filesystem;

namespace hdad {

std::vector<std::string> Manifest::ids(const std::string& split) const {
    std::vector<std::string> out;
    for (const auto& e : entries)
        if (split.empty() || e.split == split) out.push_back(e.id);
    return out;
}

Manifest read_manifest(const std::string& root) {
    const fs::path path = fs::path(root) / "manifest.json";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    Manifest m;
    for (const auto& e : j.at("pairs"))
        m.entries.push_back({e.at("id").get<std::string>(), e.at("split").get<std::string>()});
    return m;
}

void write_manifest(const Manifest& m, const std::string& root) {
    nlohmann::json j;
    j["pairs"] = nlohmann::json::array();
    for (const auto& e : m.entries)
        j["pairs"].push_back({{"id", e.id}, {"split", e.split}});
    fs::create_directories(root);
    const fs::path path = fs::path(root) / "manifest.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

HdadPair load_pair(const std::string& root, const std::string& id) {
    const fs::path dir = fs::path(root) / "pairs" / id;
    HdadPair pair;
    pair.id = id;
    pair.source = read_color((dir / "source.png").string());
    pair.truth = read_binary_map((dir / "truth.png").string());
    pair.provenance = Provenance::refined;
    const fs::path corrections = dir / "corrections.png";
    if (fs::exists(corrections)) {
        GrayImage layer = to_grayscale(read_color(corrections.string()));
        pair.truth = apply_corrections(pair.truth, layer);
        pair.provenance = Provenance::corrected;
    }
    if (pair.source.width() != pair.truth.width() ||
        pair.source.height() != pair.truth.height())
        throw std::runtime_error("pair " + id + ": source/truth dimension mismatch");
    return pair;
}

std::vector<HdadPair> load_pairs(const std::string& root, const std::string& split) {
    Manifest m = read_manifest(root);
    std::vector<HdadPair> pairs;
    for (const auto& id : m.ids(split)) pairs.push_back(load_pair(root, id));
    return pairs;
}

void save_pair(const HdadPair& pair, const std::string& root) {
    const fs::path dir = fs::path(root) / "pairs" / pair.id;
    fs::create_directories(dir);
    write_color(pair.source, (dir / "source.png").string());
    write_binary_map(pair.truth, (dir / "truth.png").string());
}

} // namespace hdad
