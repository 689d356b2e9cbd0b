#ifndef HDAD_IMAGE_IO_HPP
#define HDAD_IMAGE_IO_HPP

#include <string>

#include "hdad/image.hpp"

namespace hdad {

// PNG and binary PGM/PPM (8-bit), selected by file extension.
// Binary maps serialize as 0 = foreground, 255 = background.

ColorImage read_color(const std::string& path);
GrayImage read_gray(const std::string& path); // color inputs are converted
BinaryMap read_binary_map(const std::string& path); // pixel < 128 => foreground

void write_gray(const GrayImage& img, const std::string& path);
void write_color(const ColorImage& img, const std::string& path);
void write_binary_map(const BinaryMap& map, const std::string& path);

} // namespace hdad

#endif
