#ifndef HDAD_IMAGE_HPP
#define HDAD_IMAGE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hdad {

// Two-class pixel label. Serialized as 0 (foreground) / 255 (background).
enum class Label : std::uint8_t { foreground = 0, background = 1 };

class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::uint8_t fill = 0)
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(width) * height, fill) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("GrayImage: dimensions must be >= 1");
    }

    int width() const { return width_; }
    int height() const { return height_; }

    std::uint8_t at(int x, int y) const {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint8_t& at(int x, int y) {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }

    const std::vector<std::uint8_t>& data() const { return data_; }
    std::vector<std::uint8_t>& data() { return data_; }

    bool operator==(const GrayImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

class ColorImage {
public:
    ColorImage() = default;
    ColorImage(int width, int height)
        : width_(width), height_(height),
          data_(static_cast<std::size_t>(width) * height * 3, 0) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("ColorImage: dimensions must be >= 1");
    }

    int width() const { return width_; }
    int height() const { return height_; }

    // channel c in {0,1,2} = R,G,B
    std::uint8_t at(int x, int y, int c) const {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
    }
    std::uint8_t& at(int x, int y, int c) {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
    }

    const std::vector<std::uint8_t>& data() const { return data_; }
    std::vector<std::uint8_t>& data() { return data_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

class BinaryMap {
public:
    BinaryMap() = default;
    BinaryMap(int width, int height, Label fill = Label::background)
        : width_(width), height_(height),
          labels_(static_cast<std::size_t>(width) * height, fill) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("BinaryMap: dimensions must be >= 1");
    }

    int width() const { return width_; }
    int height() const { return height_; }

    Label at(int x, int y) const {
        return labels_[static_cast<std::size_t>(y) * width_ + x];
    }
    Label& at(int x, int y) {
        return labels_[static_cast<std::size_t>(y) * width_ + x];
    }
    bool is_foreground(int x, int y) const { return at(x, y) == Label::foreground; }

    const std::vector<Label>& labels() const { return labels_; }
    std::vector<Label>& labels() { return labels_; }

    std::size_t count_foreground() const {
        std::size_t n = 0;
        for (Label l : labels_)
            if (l == Label::foreground) ++n;
        return n;
    }

    bool operator==(const BinaryMap&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<Label> labels_;
};

// BT.601 luma, rounded to nearest.
GrayImage to_grayscale(const ColorImage& img);

} // namespace hdad

#endif
