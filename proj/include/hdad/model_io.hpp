#ifndef HDAD_MODEL_IO_HPP
#define HDAD_MODEL_IO_HPP

#include <string>

#include "hdad/net.hpp"

namespace hdad {

// Binary model file: magic, format version, architecture config and
// fingerprint, then little-endian float32 weights in layer order
// (weights then bias per layer). Loading validates magic, version and
// fingerprint and rejects truncated files.
void save_model(const ModelParams& m, const std::string& path);
ModelParams load_model(const std::string& path);

} // namespace hdad

#endif
