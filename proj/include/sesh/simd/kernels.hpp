#pragma once

// Batched integer lattice kernels used by the box searches.
//
// Vectors are stored structure-of-arrays: coordinate j of vector i lives at
// column(j)[i]. Every kernel has a scalar reference implementation and an
// AVX2 implementation; both produce bit-identical int64 results as long as
// the operand limits below hold (callers check with the *_fits helpers and
// fall back to exact Scalar arithmetic otherwise).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sesh::simd {

/// Operands (coordinates, Gram entries, weights and the intermediate G·v)
/// must lie strictly inside ±kOperandLimit. Products then fit in 58 bits and
/// sums of up to kMaxRank of them cannot overflow int64.
inline constexpr std::int64_t kOperandLimit = std::int64_t{1} << 29;
inline constexpr std::size_t kMaxRank = 8;

class LatticeBlock {
public:
    LatticeBlock() = default;
    LatticeBlock(std::size_t rank, std::size_t count) : rank_(rank), count_(count), data_(rank * count) {}

    std::size_t rank() const { return rank_; }
    std::size_t count() const { return count_; }

    std::int64_t* column(std::size_t j) { return data_.data() + j * count_; }
    const std::int64_t* column(std::size_t j) const { return data_.data() + j * count_; }

    std::int64_t at(std::size_t i, std::size_t j) const { return data_[j * count_ + i]; }
    std::vector<std::int64_t> vector_at(std::size_t i) const;

private:
    std::size_t rank_ = 0;
    std::size_t count_ = 0;
    std::vector<std::int64_t> data_;
};

/// All nonzero integer vectors with coordinates in [-box, box], in
/// lexicographic order. Throws PreconditionFailed when the block would
/// exceed kMaxBoxVectors or rank > kMaxRank.
inline constexpr std::size_t kMaxBoxVectors = std::size_t{1} << 24;
LatticeBlock box_block(std::size_t rank, std::int64_t box);

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);

/// Best ISA supported by the running CPU. Setting SESH_SIMD=scalar in the
/// environment pins the scalar path.
Isa active_isa();
bool isa_available(Isa isa);

bool operands_fit(std::span<const std::int64_t> values);
/// True when quad() is exact for this Gram matrix on coordinates bounded by max_coord.
bool quad_fits(std::span<const std::int64_t> gram, std::size_t rank, std::int64_t max_coord);

/// out[i] = Σ_j weights[j]·v_i[j]
void dot(std::span<const std::int64_t> weights, const LatticeBlock& block, std::span<std::int64_t> out);
void dot(Isa isa, std::span<const std::int64_t> weights, const LatticeBlock& block, std::span<std::int64_t> out);

/// out[i] = v_iᵀ·G·v_i for a row-major rank×rank Gram matrix G.
void quad(std::span<const std::int64_t> gram, const LatticeBlock& block, std::span<std::int64_t> out);
void quad(Isa isa, std::span<const std::int64_t> gram, const LatticeBlock& block, std::span<std::int64_t> out);

namespace scalar {
void dot(std::span<const std::int64_t> weights, const LatticeBlock& block, std::span<std::int64_t> out);
void quad(std::span<const std::int64_t> gram, const LatticeBlock& block, std::span<std::int64_t> out);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void dot(std::span<const std::int64_t> weights, const LatticeBlock& block, std::span<std::int64_t> out);
void quad(std::span<const std::int64_t> gram, const LatticeBlock& block, std::span<std::int64_t> out);
}  // namespace avx2
#endif

}  // namespace sesh::simd
