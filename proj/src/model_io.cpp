#include "hdad/model_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace hdad {

namespace {

constexpr char kMagic[8] = {'H', 'D', 'A', 'D', 'C', 'N', 'N', '\0'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (!in) throw std::runtime_error("model file truncated");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get_u64(std::istream& in) {
    std::uint64_t v = get_u32(in);
    v |= static_cast<std::uint64_t>(get_u32(in)) << 32;
    return v;
}

void put_f32(std::ostream& out, float f) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put_u32(out, bits);
}

float get_f32(std::istream& in) {
    std::uint32_t bits = get_u32(in);
    float f;
    std::memcpy(&f, &bits, 4);
    return f;
}

} // namespace

void save_model(const ModelParams& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(kMagic, 8);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(m.arch.input_side));
    put_u32(out, static_cast<std::uint32_t>(m.arch.levels));
    put_u32(out, static_cast<std::uint32_t>(m.arch.channels));
    put_u32(out, static_cast<std::uint32_t>(m.arch.in_channels));
    put_u64(out, m.fingerprint());
    put_u64(out, m.param_count());
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        for (double v : m.weights[l]) put_f32(out, static_cast<float>(v));
        for (double v : m.biases[l]) put_f32(out, static_cast<float>(v));
    }
    if (!out) throw std::runtime_error("failed writing " + path);
}

ModelParams load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error(path + ": not a model file (bad magic)");
    const std::uint32_t version = get_u32(in);
    if (version != kVersion)
        throw std::runtime_error(path + ": unsupported model format version");

    ArchConfig arch;
    arch.input_side = static_cast<int>(get_u32(in));
    arch.levels = static_cast<int>(get_u32(in));
    arch.channels = static_cast<int>(get_u32(in));
    arch.in_channels = static_cast<int>(get_u32(in));
    const std::uint64_t fingerprint = get_u64(in);
    const std::uint64_t count = get_u64(in);

    ModelParams m;
    m.arch = arch;
    m.layers = make_layer_specs(arch);
    for (const auto& spec : m.layers) {
        m.weights.emplace_back(spec.weight_count(), 0.0);
        m.biases.emplace_back(spec.out_channels, 0.0);
    }
    if (m.fingerprint() != fingerprint)
        throw std::runtime_error(path + ": architecture fingerprint mismatch");
    if (m.param_count() != count)
        throw std::runtime_error(path + ": parameter count mismatch");

    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        for (double& v : m.weights[l]) v = get_f32(in);
        for (double& v : m.biases[l]) v = get_f32(in);
    }
    return m;
}

} // namespace hdad
