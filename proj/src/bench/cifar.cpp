#include "tensorjl/bench/cifar.hpp"

#include "tensorjl/error.hpp"
#include "tensorjl/tensor_ops.hpp"

#include <filesystem>
#include <fstream>

namespace tensorjl::bench {

Shape cifar_tensor_shape() { return Shape{4, 4, 4, 4, 4, 3}; }

std::vector<DenseTensor> load_cifar10(const std::string& path, std::size_t count) {
    std::error_code ec;
    const auto file_size = static_cast<std::size_t>(std::filesystem::file_size(path, ec));
    if (ec) throw Error("cannot stat CIFAR-10 file '" + path + "': " + ec.message());
    if (file_size < count * kCifarRecordBytes)
        throw ParseError("truncated CIFAR-10 file: need " + std::to_string(count) + " records of " +
                             std::to_string(kCifarRecordBytes) + " bytes",
                         file_size);
    if (file_size % kCifarRecordBytes != 0)
        throw ParseError("wrong CIFAR-10 record size: file is not a whole number of 3073-byte records",
                         file_size - file_size % kCifarRecordBytes);

    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open CIFAR-10 file '" + path + "'");

    std::vector<DenseTensor> images;
    images.reserve(count);
    std::vector<unsigned char> record(kCifarRecordBytes);
    for (std::size_t n = 0; n < count; ++n) {
        if (!in.read(reinterpret_cast<char*>(record.data()), static_cast<std::streamsize>(record.size())))
            throw ParseError("truncated CIFAR-10 record", n * kCifarRecordBytes + static_cast<std::size_t>(in.gcount()));
        std::vector<double> values(kCifarImageBytes);
        for (std::size_t j = 0; j < kCifarImageBytes; ++j) values[j] = static_cast<double>(record[1 + j]);
        DenseTensor image(cifar_tensor_shape(), std::move(values));
        const double norm = frobenius_norm(image);
        if (norm == 0.0) throw DegenerateInput("CIFAR-10 record " + std::to_string(n) + " is all zero");
        for (double& v : image.values()) v /= norm;
        images.push_back(std::move(image));
    }
    return images;
}

}  // namespace tensorjl::bench
