#include "vigilsim/image.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>
#include <string>

namespace vigilsim {

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path.string());
    }
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              std::streamsize(img.pixels.size()));
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

namespace {

// Reads the next whitespace/comment-delimited token of a PGM header.
std::string next_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            if (!tok.empty()) break;
        } else {
            tok.push_back(char(c));
        }
        c = in.get();
    }
    return tok;
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open: " + path.string());
    }
    if (next_token(in) != "P5") {
        throw std::runtime_error("not a binary PGM (P5): " + path.string());
    }
    const int w = std::stoi(next_token(in));
    const int h = std::stoi(next_token(in));
    const int maxval = std::stoi(next_token(in));
    if (w <= 0 || h <= 0 || maxval != 255) {
        throw std::runtime_error("unsupported PGM header in " + path.string());
    }
    GrayImage img(w, h);
    in.read(reinterpret_cast<char*>(img.pixels.data()), std::streamsize(img.pixels.size()));
    if (in.gcount() != std::streamsize(img.pixels.size())) {
        throw std::runtime_error("truncated PGM data in " + path.string());
    }
    return img;
}

}  // namespace vigilsim
