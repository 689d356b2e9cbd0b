#ifndef HDAD_LABELING_HPP
#define HDAD_LABELING_HPP

#include <string>

#include "hdad/image.hpp"

namespace hdad {

enum class Provenance { rough, refined, corrected };

// A source image with its ground-truth binary map.
struct HdadPair {
    std::string id;
    ColorImage source;
    BinaryMap truth;
    Provenance provenance = Provenance::rough;
};

struct CwmfParams {
    int window = 7;         // odd, >= 3
    int center_weight = 37; // odd, >= 1
};

// Union of the two foreground sets. Throws on dimension mismatch.
BinaryMap fuse(const BinaryMap& a, const BinaryMap& b);

// Center-weighted median: each window's label multiset counts the center
// center_weight times; output label is the multiset median. Windows are
// truncated at borders and the median rank recomputed accordingly.
BinaryMap cwmf_denoise(const BinaryMap& m, const CwmfParams& p = {});

// Full automatic labeling: cwmf(fuse(mlt(gray), ihegt(gray))).
HdadPair label_pair(const ColorImage& src, const std::string& id);

// Correction layer pixel values (stored as an 8-bit image).
inline constexpr std::uint8_t kCorrectionForceForeground = 0;
inline constexpr std::uint8_t kCorrectionKeep = 128;
inline constexpr std::uint8_t kCorrectionForceBackground = 255;

// Applies a correction layer: 0 forces foreground, 255 forces background,
// anything else keeps the pixel. Throws on dimension mismatch.
BinaryMap apply_corrections(const BinaryMap& truth, const GrayImage& corrections);

} // namespace hdad

#endif
