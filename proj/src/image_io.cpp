#include "hdad/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace hdad {

namespace {

std::string lower_ext(const std::string& path) {
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

struct FileCloser {
    void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// ---- PNG ----

ColorImage read_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png read init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("png info init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("failed to decode PNG " + path);
    }

    png_init_io(png, fp.get());
    png_read_info(png, info);

    // Normalize everything to 8-bit RGB.
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY ||
        png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_read_update_info(png, info);

    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));

    ColorImage img(w, h);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y)
        rows[y] = img.data().data() + static_cast<std::size_t>(y) * w * 3;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void write_png(const std::string& path, const std::uint8_t* data, int w, int h, bool color) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("cannot write " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png write init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("png info init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("failed to encode PNG " + path);
    }

    png_init_io(png, fp.get());
    png_set_IHDR(png, info, w, h, 8,
                 color ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const int stride = color ? w * 3 : w;
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y)
        rows[y] = const_cast<png_bytep>(data + static_cast<std::size_t>(y) * stride);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

// ---- PNM (binary PGM/PPM) ----

int pnm_token(std::istream& in) {
    // skips whitespace and '#' comments
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF) throw std::runtime_error("truncated PNM header");
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    return value;
}

ColorImage read_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char p, kind;
    in.get(p);
    in.get(kind);
    if (p != 'P' || (kind != '5' && kind != '6'))
        throw std::runtime_error(path + ": only binary PGM (P5) / PPM (P6) supported");
    const int w = pnm_token(in);
    const int h = pnm_token(in);
    const int maxval = pnm_token(in);
    if (maxval != 255) throw std::runtime_error(path + ": only 8-bit PNM supported");

    ColorImage img(w, h);
    if (kind == '6') {
        in.read(reinterpret_cast<char*>(img.data().data()),
                static_cast<std::streamsize>(img.data().size()));
    } else {
        std::vector<std::uint8_t> gray(static_cast<std::size_t>(w) * h);
        in.read(reinterpret_cast<char*>(gray.data()), static_cast<std::streamsize>(gray.size()));
        for (std::size_t i = 0; i < gray.size(); ++i) {
            img.data()[3 * i] = img.data()[3 * i + 1] = img.data()[3 * i + 2] = gray[i];
        }
    }
    if (!in) throw std::runtime_error(path + ": truncated pixel data");
    return img;
}

void write_pnm(const std::string& path, const std::uint8_t* data, int w, int h, bool color) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << (color ? "P6\n" : "P5\n") << w << ' ' << h << "\n255\n";
    out.write(reinterpret_cast<const char*>(data),
              static_cast<std::streamsize>(w) * h * (color ? 3 : 1));
    if (!out) throw std::runtime_error("failed writing " + path);
}

bool is_pnm(const std::string& ext) { return ext == "pgm" || ext == "ppm" || ext == "pnm"; }

} // namespace

ColorImage read_color(const std::string& path) {
    const std::string ext = lower_ext(path);
    if (is_pnm(ext)) return read_pnm(path);
    return read_png(path);
}

GrayImage read_gray(const std::string& path) {
    return to_grayscale(read_color(path));
}

BinaryMap read_binary_map(const std::string& path) {
    GrayImage g = read_gray(path);
    BinaryMap map(g.width(), g.height());
    for (std::size_t i = 0; i < g.data().size(); ++i)
        map.labels()[i] = g.data()[i] < 128 ? Label::foreground : Label::background;
    return map;
}

void write_gray(const GrayImage& img, const std::string& path) {
    const std::string ext = lower_ext(path);
    if (is_pnm(ext))
        write_pnm(path, img.data().data(), img.width(), img.height(), false);
    else
        write_png(path, img.data().data(), img.width(), img.height(), false);
}

void write_color(const ColorImage& img, const std::string& path) {
    const std::string ext = lower_ext(path);
    if (is_pnm(ext))
        write_pnm(path, img.data().data(), img.width(), img.height(), true);
    else
        write_png(path, img.data().data(), img.width(), img.height(), true);
}

void write_binary_map(const BinaryMap& map, const std::string& path) {
    GrayImage g(map.width(), map.height());
    for (std::size_t i = 0; i < g.data().size(); ++i)
        g.data()[i] = map.labels()[i] == Label::foreground ? 0 : 255;
    write_gray(g, path);
}

} // namespace hdad
