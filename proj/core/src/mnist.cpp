#include "agan/mnist.hpp"

#include <cstdint>
#include <fstream>

#include "agan/errors.hpp"

namespace agan {

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;

std::uint32_t read_u32_be(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (!in) {
    throw FormatError("truncated IDX header");
  }
  return (static_cast<std::uint32_t>(bytes[0]) << 24) |
         (static_cast<std::uint32_t>(bytes[1]) << 16) |
         (static_cast<std::uint32_t>(bytes[2]) << 8) |
         static_cast<std::uint32_t>(bytes[3]);
}

}  // namespace

Matrix load_mnist_subset(const std::string& path, std::size_t max_images) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open IDX file: " + path);
  }
  const std::uint32_t magic = read_u32_be(in);
  if (magic != kImageMagic) {
    throw FormatError("bad IDX magic number (expected 0x00000803)");
  }
  const std::uint32_t count = read_u32_be(in);
  const std::uint32_t rows = read_u32_be(in);
  const std::uint32_t cols = read_u32_be(in);
  if (rows == 0 || cols == 0) {
    throw FormatError("IDX image dimensions are zero");
  }

  const std::size_t take = std::min<std::size_t>(count, max_images);
  const std::size_t pixels = static_cast<std::size_t>(rows) * cols;
  Matrix batch(take, pixels);
  std::vector<unsigned char> raw(pixels);
  for (std::size_t i = 0; i < take; ++i) {
    in.read(reinterpret_cast<char*>(raw.data()),
            static_cast<std::streamsize>(pixels));
    if (!in) {
      throw FormatError("truncated IDX image payload");
    }
    for (std::size_t p = 0; p < pixels; ++p) {
      batch(i, p) = static_cast<double>(raw[p]) / 255.0;
    }
  }
  return batch;
}

}  // namespace agan
