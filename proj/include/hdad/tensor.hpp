#ifndef HDAD_TENSOR_HPP
#define HDAD_TENSOR_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hdad {

// Dense H x W x C tensor of 64-bit reals, channels innermost.
struct Tensor {
    int h = 0;
    int w = 0;
    int c = 0;
    std::vector<double> data;

    Tensor() = default;
    Tensor(int h_, int w_, int c_)
        : h(h_), w(w_), c(c_),
          data(static_cast<std::size_t>(h_) * w_ * c_, 0.0) {
        if (h_ < 1 || w_ < 1 || c_ < 1)
            throw std::invalid_argument("Tensor: dimensions must be >= 1");
    }

    std::size_t size() const { return data.size(); }

    double at(int y, int x, int ch) const {
        return data[(static_cast<std::size_t>(y) * w + x) * c + ch];
    }
    double& at(int y, int x, int ch) {
        return data[(static_cast<std::size_t>(y) * w + x) * c + ch];
    }

    const double* row(int y, int x) const {
        return data.data() + (static_cast<std::size_t>(y) * w + x) * c;
    }
    double* row(int y, int x) {
        return data.data() + (static_cast<std::size_t>(y) * w + x) * c;
    }

    bool same_shape(const Tensor& o) const {
        return h == o.h && w == o.w && c == o.c;
    }

    void fill(double v) { data.assign(data.size(), v); }
};

} // namespace hdad

#endif
