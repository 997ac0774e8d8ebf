#include <cstdlib>
#include <cstring>

#include "sesh/errors.hpp"
#include "sesh/simd/kernels.hpp"

namespace sesh::simd {

std::vector<std::int64_t> LatticeBlock::vector_at(std::size_t i) const {
    std::vector<std::int64_t> v(rank_);
    for (std::size_t j = 0; j < rank_; ++j) v[j] = at(i, j);
    return v;
}

LatticeBlock box_block(std::size_t rank, std::int64_t box) {
    if (rank == 0 || rank > kMaxRank) throw PreconditionFailed("box enumeration supports rank 1.." + std::to_string(kMaxRank));
    if (box < 1 || box >= kOperandLimit) throw PreconditionFailed("box must be in [1, 2^29)");
    const auto side = static_cast<std::size_t>(2 * box + 1);
    std::size_t total = 1;
    for (std::size_t j = 0; j < rank; ++j) {
        if (total > kMaxBoxVectors / side) throw PreconditionFailed("box " + std::to_string(box) + " is too large for rank " + std::to_string(rank));
        total *= side;
    }
    LatticeBlock block(rank, total - 1);
    std::vector<std::int64_t> v(rank, -box);
    std::size_t out = 0;
    for (std::size_t n = 0; n < total; ++n) {
        bool zero = true;
        for (auto c : v) zero = zero && c == 0;
        if (!zero) {
            for (std::size_t j = 0; j < rank; ++j) block.column(j)[out] = v[j];
            ++out;
        }
        // odometer, last coordinate fastest
        for (std::size_t j = rank; j-- > 0;) {
            if (++v[j] <= box) break;
            v[j] = -box;
        }
    }
    return block;
}

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
    if (isa == Isa::Scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Isa active_isa() {
    static const Isa isa = [] {
        const char* pin = std::getenv("SESH_SIMD");
        if (pin != nullptr && std::strcmp(pin, "scalar") == 0) return Isa::Scalar;
        return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
    }();
    return isa;
}

bool operands_fit(std::span<const std::int64_t> values) {
    for (auto x : values)
        if (x <= -kOperandLimit || x >= kOperandLimit) return false;
    return true;
}

bool quad_fits(std::span<const std::int64_t> gram, std::size_t rank, std::int64_t max_coord) {
    if (!operands_fit(gram) || max_coord >= kOperandLimit) return false;
    for (std::size_t j = 0; j < rank; ++j) {
        // bound on |(G·v)_j| over the box
        __int128 row = 0;
        for (std::size_t k = 0; k < rank; ++k) row += static_cast<__int128>(gram[j * rank + k] < 0 ? -gram[j * rank + k] : gram[j * rank + k]) * max_coord;
        if (row >= kOperandLimit) return false;
    }
    return true;
}

void dot(Isa isa, std::span<const std::int64_t> weights, const LatticeBlock& block, std::span<std::int64_t> out) {
#if defined(__x86_64__) || defined(_M_X64)
    if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return avx2::dot(weights, block, out);
#endif
    (void)isa;
    scalar::dot(weights, block, out);
}

void quad(Isa isa, std::span<const std::int64_t> gram, const LatticeBlock& block, std::span<std::int64_t> out) {
#if defined(__x86_64__) || defined(_M_X64)
    if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return avx2::quad(gram, block, out);
#endif
    (void)isa;
    scalar::quad(gram, block, out);
}

void dot(std::span<const std::int64_t> weights, const LatticeBlock& block, std::span<std::int64_t> out) {
    dot(active_isa(), weights, block, out);
}

void quad(std::span<const std::int64_t> gram, const LatticeBlock& block, std::span<std::int64_t> out) {
    quad(active_isa(), gram, block, out);
}

}  // namespace sesh::simd
