#pragma once

#include <cstddef>
#include <string>

#include "agan/matrix.hpp"

namespace agan {

// Reads the first max_images images of an IDX image file (big-endian, magic
// 0x00000803) into a matrix with one flattened image per row, pixel values
// scaled into [0,1]. Throws FormatError on a bad magic number or a
// truncated file.
Matrix load_mnist_subset(const std::string& path, std::size_t max_images);

}  // namespace agan
