#ifndef HDAD_THRESHOLD_HPP
#define HDAD_THRESHOLD_HPP

#include <vector>

#include "hdad/image.hpp"

namespace hdad {

struct ThresholdParams {
    double k = 0.0;  // method coefficient
    int w = 17;      // window side in pixels
    double r = 128.0; // dynamic-range normalizer (Sauvola)
};

inline ThresholdParams niblack_defaults() { return {0.1, 17, 128.0}; }
inline ThresholdParams sauvola_defaults() { return {0.5, 17, 128.0}; }
inline ThresholdParams mlt_defaults() { return {0.02, 17, 128.0}; }

// Global threshold minimizing within-class variance over the 256-bin
// histogram; ties resolved toward the smaller threshold. A single-valued
// histogram has no two classes and yields an all-background map.
int otsu_threshold(const std::vector<std::size_t>& histogram);
BinaryMap otsu(const GrayImage& img);

// T(x,y) = m + k*S; pixel foreground iff intensity < T.
BinaryMap niblack(const GrayImage& img, const ThresholdParams& p = niblack_defaults());

// T(x,y) = m * (1 + k*(S/R - 1)); pixel foreground iff intensity < T.
BinaryMap sauvola(const GrayImage& img, const ThresholdParams& p = sauvola_defaults());

// T(x,y) = mu * (1 - k*exp(-mu_grad/M)) with mu, mu_grad, M taken over the
// statistics window. M = 0 degenerates to T = mu*(1-k). stats_window
// defaults to p.w; pass 256 for whole-block statistics.
BinaryMap mlt(const GrayImage& img, const ThresholdParams& p = mlt_defaults(),
              int stats_window = 0);

// Threshold fields, exposed for tests asserting threshold-level properties.
std::vector<double> niblack_thresholds(const GrayImage& img, const ThresholdParams& p);
std::vector<double> sauvola_thresholds(const GrayImage& img, const ThresholdParams& p);
std::vector<double> mlt_thresholds(const GrayImage& img, const ThresholdParams& p,
                                   int stats_window = 0);

} // namespace hdad

#endif
