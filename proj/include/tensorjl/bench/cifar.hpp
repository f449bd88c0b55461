#pragma once

#include "tensorjl/tensor.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tensorjl::bench {

// CIFAR-10 binary batch: records of 1 label byte followed by 3072 pixel bytes
// (red, green, blue 32x32 planes, each row-major).
inline constexpr std::size_t kCifarImageBytes = 3072;
inline constexpr std::size_t kCifarRecordBytes = 1 + kCifarImageBytes;

/// 4x4x4x4x4x3 holds exactly one image.
[[nodiscard]] Shape cifar_tensor_shape();

/// Loads the first `count` images as unit-norm tensors of cifar_tensor_shape().
/// Pixel byte j of a record (j = spatial + 1024 * channel) becomes flat element
/// j: the five size-4 modes enumerate the 1024 spatial bytes first-mode-fastest
/// and the size-3 mode selects the channel plane. Labels are discarded.
/// Throws ParseError for a truncated file or a size that is not a whole number of records.
[[nodiscard]] std::vector<DenseTensor> load_cifar10(const std::string& path, std::size_t count = 50);

}  // namespace tensorjl::bench
