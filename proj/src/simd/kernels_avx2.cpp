// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "sesh/simd/kernels.hpp"

namespace sesh::simd::avx2 {

namespace {

// _mm256_mul_epi32 multiplies the sign-extended low 32 bits of each 64-bit
// lane, which is exact for operands inside ±kOperandLimit.
inline __m256i load(const std::int64_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(std::int64_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

}  // namespace

void dot(std::span<const std::int64_t> weights, const LatticeBlock& block, std::span<std::int64_t> out) {
    const std::size_t n = block.count();
    const std::size_t r = block.rank();
    __m256i w[kMaxRank];
    for (std::size_t j = 0; j < r; ++j) w[j] = _mm256_set1_epi64x(weights[j]);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i acc = _mm256_setzero_si256();
        for (std::size_t j = 0; j < r; ++j) acc = _mm256_add_epi64(acc, _mm256_mul_epi32(w[j], load(block.column(j) + i)));
        store(out.data() + i, acc);
    }
    for (; i < n; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < r; ++j) acc += weights[j] * block.column(j)[i];
        out[i] = acc;
    }
}

void quad(std::span<const std::int64_t> gram, const LatticeBlock& block, std::span<std::int64_t> out) {
    const std::size_t n = block.count();
    const std::size_t r = block.rank();
    __m256i g[kMaxRank * kMaxRank];
    for (std::size_t k = 0; k < r * r; ++k) g[k] = _mm256_set1_epi64x(gram[k]);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v[kMaxRank];
        for (std::size_t k = 0; k < r; ++k) v[k] = load(block.column(k) + i);
        __m256i acc = _mm256_setzero_si256();
        for (std::size_t j = 0; j < r; ++j) {
            __m256i u = _mm256_setzero_si256();
            for (std::size_t k = 0; k < r; ++k) u = _mm256_add_epi64(u, _mm256_mul_epi32(g[j * r + k], v[k]));
            acc = _mm256_add_epi64(acc, _mm256_mul_epi32(v[j], u));
        }
        store(out.data() + i, acc);
    }
    for (; i < n; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < r; ++j) {
            std::int64_t u = 0;
            for (std::size_t k = 0; k < r; ++k) u += gram[j * r + k] * block.column(k)[i];
            acc += block.column(j)[i] * u;
        }
        out[i] = acc;
    }
}

}  // namespace sesh::simd::avx2
