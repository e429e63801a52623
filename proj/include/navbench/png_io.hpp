#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace navbench {

// Interleaved 8-bit RGB image buffer.
struct ImageRgb {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels;  // width * height * 3
};

// Deterministic PNG encoding (8-bit RGB, filter 0, fixed zlib level).
std::vector<uint8_t> encode_png(const ImageRgb& image);

// Decodes 8-bit gray/RGB/RGBA PNGs (alpha dropped, gray replicated).
ImageRgb decode_png(const std::vector<uint8_t>& bytes);

void save_png(const ImageRgb& image, const std::string& path);
ImageRgb load_png(const std::string& path);

std::string base64_encode(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> base64_decode(const std::string& text);

}  // namespace navbench
