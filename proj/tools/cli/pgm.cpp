#include "pgm.hpp"

#include <cctype>
#include <fstream>

#include "aca/error.hpp"

namespace aca::cli {

void write_pgm(const std::string& path, const GrayImage& image) {
    if (image.pixels.size() != image.width * image.height) throw IoError("pixel buffer does not match image size");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "P5\n" << image.width << ' ' << image.height << '\n' << image.maxval << '\n';
    out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
    if (!out) throw IoError("write to " + path + " failed");
}

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

std::size_t header_number(std::istream& in, const char* what) {
    const auto tok = token(in);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(std::string("bad PGM ") + what + ": '" + tok + "'");
    }
    return std::stoul(tok);
}

}  // namespace

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    if (token(in) != "P5") throw ParseError(path + " is not a binary PGM");
    GrayImage img;
    img.width = header_number(in, "width");
    img.height = header_number(in, "height");
    img.maxval = static_cast<unsigned>(header_number(in, "maxval"));
    if (img.maxval == 0 || img.maxval > 255) throw ParseError("unsupported PGM maxval");
    img.pixels.resize(img.width * img.height);
    in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.pixels.size()) throw ParseError("truncated PGM pixel data");
    return img;
}

}  // namespace aca::cli
