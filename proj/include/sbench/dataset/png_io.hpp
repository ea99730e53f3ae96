#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace sbench::dataset {

/// 8-bit samples, row-major, `channels` interleaved samples per pixel
/// (1 = gray, 3 = RGB).
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> samples;

  std::uint8_t at(int x, int y, int c = 0) const {
    return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  friend bool operator==(const Image&, const Image&) = default;
};

/// Encodes with a fixed configuration (no filtering, zlib level 9, no
/// ancillary chunks), so equal images always give equal bytes.
std::vector<std::uint8_t> encode_png(const Image& img);
void write_png(const std::filesystem::path& path, const Image& img);

/// Strict decoder: the file must be 8-bit grayscale without alpha.
/// Throws ValidationError on any other format, IoError if unreadable.
Image read_png_gray8(const std::filesystem::path& path);

/// Tolerant decoder for externally produced masks: any bit depth or colour
/// type. A pixel is foreground when any non-alpha sample is nonzero.
/// Returns a 1-channel image with values 0/1.
Image read_png_foreground(const std::filesystem::path& path);

}  // namespace sbench::dataset
