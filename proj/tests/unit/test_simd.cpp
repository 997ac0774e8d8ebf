#include <cstdlib>
#include <random>
#include <string>

#include "doctest.h"
#include "sesh/errors.hpp"
#include "sesh/simd/kernels.hpp"

using namespace sesh;
using namespace sesh::simd;

namespace {

// Reference in 128-bit arithmetic, independent of both kernels.
std::int64_t ref_dot(const std::vector<std::int64_t>& w, const std::vector<std::int64_t>& v) {
    __int128 acc = 0;
    for (std::size_t j = 0; j < w.size(); ++j) acc += static_cast<__int128>(w[j]) * v[j];
    return static_cast<std::int64_t>(acc);
}

std::int64_t ref_quad(const std::vector<std::int64_t>& g, const std::vector<std::int64_t>& v) {
    const std::size_t n = v.size();
    __int128 acc = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc += static_cast<__int128>(v[i]) * g[i * n + j] * v[j];
    return static_cast<std::int64_t>(acc);
}

LatticeBlock random_block(std::mt19937_64& rng, std::size_t rank, std::size_t count, std::int64_t bound) {
    LatticeBlock b(rank, count);
    std::uniform_int_distribution<std::int64_t> d(-bound, bound);
    for (std::size_t j = 0; j < rank; ++j)
        for (std::size_t i = 0; i < count; ++i) b.column(j)[i] = d(rng);
    return b;
}

}  // namespace

TEST_CASE("box_block enumerates nonzero vectors lexicographically") {
    const LatticeBlock b = box_block(2, 1);
    REQUIRE(b.count() == 8);
    CHECK(b.vector_at(0) == std::vector<std::int64_t>{-1, -1});
    CHECK(b.vector_at(1) == std::vector<std::int64_t>{-1, 0});
    CHECK(b.vector_at(7) == std::vector<std::int64_t>{1, 1});
    for (std::size_t i = 0; i < b.count(); ++i) CHECK(b.vector_at(i) != std::vector<std::int64_t>{0, 0});
    for (std::size_t i = 1; i < b.count(); ++i) CHECK(b.vector_at(i - 1) < b.vector_at(i));
    CHECK(box_block(3, 10).count() == 21 * 21 * 21 - 1);
    CHECK_THROWS_AS(box_block(9, 1), PreconditionFailed);
    CHECK_THROWS_AS(box_block(8, 100), PreconditionFailed);
}

TEST_CASE("operand limits") {
    CHECK(operands_fit(std::vector<std::int64_t>{kOperandLimit - 1, -(kOperandLimit - 1)}));
    CHECK_FALSE(operands_fit(std::vector<std::int64_t>{kOperandLimit}));
    CHECK(quad_fits(std::vector<std::int64_t>{0, 1, 1, 0}, 2, 100));
    CHECK_FALSE(quad_fits(std::vector<std::int64_t>{kOperandLimit / 2, 0, 0, 1}, 2, 4));
}

TEST_CASE("active ISA honors the override") {
    const char* env = std::getenv("SESH_SIMD");
    if (env != nullptr && std::string(env) == "scalar") CHECK(active_isa() == Isa::Scalar);
    else CHECK(isa_available(active_isa()));
    CHECK(isa_available(Isa::Scalar));
    MESSAGE("active ISA: " << std::string(to_string(active_isa())));
}

TEST_CASE("scalar kernels match the 128-bit reference") {
    std::mt19937_64 rng(4242);
    for (std::size_t rank = 1; rank <= kMaxRank; ++rank) {
        const std::size_t count = 1 + rng() % 257;
        const LatticeBlock b = random_block(rng, rank, count, 1000);
        std::vector<std::int64_t> w(rank), g(rank * rank);
        for (auto& x : w) x = static_cast<std::int64_t>(rng() % 2001) - 1000;
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = i; j < rank; ++j) g[i * rank + j] = g[j * rank + i] = static_cast<std::int64_t>(rng() % 201) - 100;
        std::vector<std::int64_t> out(count);
        scalar::dot(w, b, out);
        for (std::size_t i = 0; i < count; ++i) REQUIRE(out[i] == ref_dot(w, b.vector_at(i)));
        scalar::quad(g, b, out);
        for (std::size_t i = 0; i < count; ++i) REQUIRE(out[i] == ref_quad(g, b.vector_at(i)));
    }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("AVX2 kernels are bit-identical to the scalar kernels") {
    if (!isa_available(Isa::Avx2)) {
        MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
        return;
    }
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t rank = 1 + rng() % kMaxRank;
        const std::size_t count = 1 + rng() % 300;
        // coordinates and G·v kept inside the operand limit
        std::int64_t coord = trial % 3 == 0 ? kOperandLimit - 1 : 1 + static_cast<std::int64_t>(rng() % 5000);
        coord = std::min<std::int64_t>(coord, (kOperandLimit - 1) / static_cast<std::int64_t>(rank));
        const LatticeBlock b = random_block(rng, rank, count, coord);
        std::vector<std::int64_t> w(rank), g(rank * rank);
        for (auto& x : w) x = static_cast<std::int64_t>(rng() % (2 * kOperandLimit - 1)) - (kOperandLimit - 1);
        const std::int64_t gmax = std::max<std::int64_t>(1, (kOperandLimit - 1) / (coord * static_cast<std::int64_t>(rank)));
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = i; j < rank; ++j)
                g[i * rank + j] = g[j * rank + i] = static_cast<std::int64_t>(rng() % (2 * gmax + 1)) - gmax;
        REQUIRE(quad_fits(g, rank, coord));

        std::vector<std::int64_t> s(count), v(count);
        scalar::dot(w, b, s);
        avx2::dot(w, b, v);
        REQUIRE(s == v);
        dot(Isa::Avx2, w, b, v);
        REQUIRE(s == v);
        scalar::quad(g, b, s);
        avx2::quad(g, b, v);
        REQUIRE(s == v);
        for (std::size_t i = 0; i < count; ++i) REQUIRE(s[i] == ref_quad(g, b.vector_at(i)));
    }
}

TEST_CASE("AVX2 handles the box enumeration tail lanes") {
    if (!isa_available(Isa::Avx2)) return;
    for (std::int64_t box = 1; box <= 6; ++box) {
        const LatticeBlock b = box_block(3, box);
        const std::vector<std::int64_t> g{0, 1, 1, 1, 0, 1, 1, 1, 0};
        std::vector<std::int64_t> s(b.count()), v(b.count());
        scalar::quad(g, b, s);
        avx2::quad(g, b, v);
        REQUIRE(s == v);
    }
}
#endif
