#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace vigilsim {

// 8-bit grayscale image, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h) : width(w), height(h), pixels(std::size_t(w) * std::size_t(h), 0) {}

    std::uint8_t at(int x, int y) const { return pixels[std::size_t(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[std::size_t(y) * width + x]; }
    bool inside(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    std::size_t size() const { return pixels.size(); }
};

// Binary mask, one byte per pixel (0 or 1), row-major.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    BinaryImage() = default;
    BinaryImage(int w, int h) : width(w), height(h), bits(std::size_t(w) * std::size_t(h), 0) {}

    bool at(int x, int y) const { return bits[std::size_t(y) * width + x] != 0; }
    void set(int x, int y, bool v) { bits[std::size_t(y) * width + x] = v ? 1 : 0; }
    bool inside(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
};

// Binary PGM (P5), maxval 255.
void write_pgm(const GrayImage& img, const std::filesystem::path& path);
GrayImage read_pgm(const std::filesystem::path& path);

}  // namespace vigilsim
