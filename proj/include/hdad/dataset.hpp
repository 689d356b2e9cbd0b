#ifndef HDAD_DATASET_HPP
#define HDAD_DATASET_HPP

#include <string>
#include <vector>

#include "hdad/labeling.hpp"

namespace hdad {

// Directory layout: <root>/pairs/<id>/source.png, truth.png and an
// optional corrections.png, with <root>/manifest.json listing ids and
// their train/test split.
struct ManifestEntry {
    std::string id;
    std::string split; // "train" or "test"
};

struct Manifest {
    std::vector<ManifestEntry> entries;

    std::vector<std::string> ids(const std::string& split = "") const;
};

Manifest read_manifest(const std::string& root);
void write_manifest(const Manifest& m, const std::string& root);

// Loads source + truth (applying corrections.png when present).
HdadPair load_pair(const std::string& root, const std::string& id);
std::vector<HdadPair> load_pairs(const std::string& root, const std::string& split = "");

void save_pair(const HdadPair& pair, const std::string& root);

} // namespace hdad

#endif
