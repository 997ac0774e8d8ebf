#include "sesh/simd/kernels.hpp"

namespace sesh::simd::scalar {

void dot(std::span<const std::int64_t> weights, const LatticeBlock& block, std::span<std::int64_t> out) {
    const std::size_t n = block.count();
    for (std::size_t i = 0; i < n; ++i) out[i] = 0;
    for (std::size_t j = 0; j < block.rank(); ++j) {
        const std::int64_t w = weights[j];
        if (w == 0) continue;
        const std::int64_t* col = block.column(j);
        for (std::size_t i = 0; i < n; ++i) out[i] += w * col[i];
    }
}

void quad(std::span<const std::int64_t> gram, const LatticeBlock& block, std::span<std::int64_t> out) {
    const std::size_t n = block.count();
    const std::size_t r = block.rank();
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < r; ++j) {
            std::int64_t u = 0;
            for (std::size_t k = 0; k < r; ++k) u += gram[j * r + k] * block.column(k)[i];
            acc += block.column(j)[i] * u;
        }
        out[i] = acc;
    }
}

}  // namespace sesh::simd::scalar
