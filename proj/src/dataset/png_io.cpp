#include "sbench/dataset/png_io.hpp"

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "sbench/core/errors.hpp"

namespace sbench::dataset {

namespace {

// libpng reports fatal errors through longjmp; these helpers keep every
// C++ object with a destructor outside the setjmp frames.

struct ErrorSink {
  char message[256] = "unknown libpng error";
};

void on_error(png_structp png, png_const_charp msg) {
  auto* sink = static_cast<ErrorSink*>(png_get_error_ptr(png));
  std::strncpy(sink->message, msg, sizeof(sink->message) - 1);
  png_longjmp(png, 1);
}

void on_warning(png_structp, png_const_charp) {}

void append_bytes(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + len);
}

void no_flush(png_structp) {}

struct MemoryReader {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos;
};

void read_bytes(png_structp png, png_bytep out, png_size_t len) {
  auto* r = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (len > r->size - r->pos) png_error(png, "unexpected end of file");
  std::memcpy(out, r->data + r->pos, len);
  r->pos += len;
}

bool encode_raw(const Image& img, std::vector<std::uint8_t>* out, ErrorSink* sink) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, sink, on_error, on_warning);
  if (png == nullptr) return false;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, out, append_bytes, no_flush);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
               img.channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);
  png_set_compression_level(png, 9);
  png_write_info(png, info);
  const std::size_t stride = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.channels);
  for (int y = 0; y < img.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(img.samples.data() + static_cast<std::size_t>(y) * stride));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

struct Decoded {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  int color_type = 0;
  int channels = 0;        // after transforms
  std::size_t rowbytes = 0;  // after transforms
  std::vector<std::uint8_t> rows;
  std::vector<png_bytep> row_ptrs;
};

enum class DecodeMode { kStrictGray8, kAnyFormat };

// Returns 0 on success, 1 on libpng error, 2 on a format the mode rejects.
int decode_raw(MemoryReader* reader, DecodeMode mode, Decoded* d, ErrorSink* sink) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, sink, on_error, on_warning);
  if (png == nullptr) return 1;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return 1;
  }
  png_set_read_fn(png, reader, read_bytes);
  png_read_info(png, info);
  d->width = png_get_image_width(png, info);
  d->height = png_get_image_height(png, info);
  d->bit_depth = png_get_bit_depth(png, info);
  d->color_type = png_get_color_type(png, info);
  if (mode == DecodeMode::kStrictGray8) {
    if (d->bit_depth != 8 || d->color_type != PNG_COLOR_TYPE_GRAY) {
      png_destroy_read_struct(&png, &info, nullptr);
      return 2;
    }
  } else {
    if (d->color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (d->color_type == PNG_COLOR_TYPE_GRAY && d->bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  }
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  d->channels = png_get_channels(png, info);
  d->rowbytes = png_get_rowbytes(png, info);
  d->rows.resize(d->rowbytes * d->height);
  d->row_ptrs.resize(d->height);
  for (png_uint_32 y = 0; y < d->height; ++y) d->row_ptrs[y] = d->rows.data() + y * d->rowbytes;
  png_read_image(png, d->row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return 0;
}

std::vector<std::uint8_t> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("cannot read " + path.string());
  return bytes;
}

Decoded decode_file(const std::filesystem::path& path, DecodeMode mode) {
  const auto bytes = slurp(path);
  MemoryReader reader{bytes.data(), bytes.size(), 0};
  Decoded d;
  ErrorSink sink;
  const int rc = decode_raw(&reader, mode, &d, &sink);
  if (rc == 1) throw ValidationError(path.string() + ": invalid PNG (" + sink.message + ")");
  if (rc == 2) {
    throw ValidationError(path.string() + ": expected 8-bit grayscale PNG, got bit depth " +
                          std::to_string(d.bit_depth) + " colour type " + std::to_string(d.color_type));
  }
  return d;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& img) {
  if (img.width < 1 || img.height < 1 || (img.channels != 1 && img.channels != 3) ||
      img.samples.size() != static_cast<std::size_t>(img.width) * img.height * img.channels) {
    throw DimensionError("encode_png: inconsistent image buffer");
  }
  std::vector<std::uint8_t> out;
  ErrorSink sink;
  if (!encode_raw(img, &out, &sink)) throw IoError(std::string("PNG encoding failed: ") + sink.message);
  return out;
}

void write_png(const std::filesystem::path& path, const Image& img) {
  const auto bytes = encode_png(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

Image read_png_gray8(const std::filesystem::path& path) {
  Decoded d = decode_file(path, DecodeMode::kStrictGray8);
  Image img;
  img.width = static_cast<int>(d.width);
  img.height = static_cast<int>(d.height);
  img.channels = 1;
  img.samples = std::move(d.rows);
  return img;
}

Image read_png_foreground(const std::filesystem::path& path) {
  const Decoded d = decode_file(path, DecodeMode::kAnyFormat);
  const bool has_alpha = (d.color_type & PNG_COLOR_MASK_ALPHA) != 0;
  const int colour_samples = has_alpha ? d.channels - 1 : d.channels;
  const int bytes_per_sample = d.bit_depth == 16 ? 2 : 1;
  Image img;
  img.width = static_cast<int>(d.width);
  img.height = static_cast<int>(d.height);
  img.channels = 1;
  img.samples.assign(static_cast<std::size_t>(d.width) * d.height, 0);
  for (png_uint_32 y = 0; y < d.height; ++y) {
    const std::uint8_t* row = d.rows.data() + y * d.rowbytes;
    for (png_uint_32 x = 0; x < d.width; ++x) {
      const std::uint8_t* px = row + static_cast<std::size_t>(x) * d.channels * bytes_per_sample;
      bool on = false;
      for (int b = 0; b < colour_samples * bytes_per_sample; ++b) on = on || px[b] != 0;
      img.samples[static_cast<std::size_t>(y) * d.width + x] = on ? 1 : 0;
    }
  }
  return img;
}

}  // namespace sbench::dataset
