#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aca::cli {

struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    unsigned maxval = 255;
    std::vector<std::uint8_t> pixels;  // row-major, top row first
};

/// Writes a binary PGM (P5). Throws aca::IoError.
void write_pgm(const std::string& path, const GrayImage& image);

/// Reads a binary PGM with maxval <= 255, comments allowed in the header.
/// Throws aca::IoError or aca::ParseError.
GrayImage read_pgm(const std::string& path);

}  // namespace aca::cli
