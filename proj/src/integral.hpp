#pragma once

// Bridges exact Scalar data to the int64 SIMD kernels. A rational object is
// scaled by the lcm of its denominators; anything irrational or too large for
// the kernel operand limits yields nullopt and the caller takes the exact path.

#include <cstdint>
#include <optional>
#include <vector>

#include "sesh/lattice.hpp"
#include "sesh/simd/kernels.hpp"

namespace sesh::detail {

/// values = scale · exact, entries as int64.
struct IntegralVector {
    std::vector<std::int64_t> values;
    Integer scale;
};

inline std::optional<IntegralVector> integral(const std::vector<Scalar>& xs) {
    Integer l = 1;
    for (const auto& x : xs) {
        if (!x.is_rational()) return std::nullopt;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.rational().get_den_mpz_t());
    }
    IntegralVector out{{}, l};
    for (const auto& x : xs) {
        Rational v = x.rational() * l;
        const Integer& num = v.get_num();
        if (!num.fits_slong_p()) return std::nullopt;
        out.values.push_back(num.get_si());
    }
    if (!simd::operands_fit(out.values)) return std::nullopt;
    return out;
}

inline std::optional<IntegralVector> integral(const DivisorClass& d) { return integral(d.coords()); }

inline std::optional<IntegralVector> integral(const IntersectionForm& form) {
    std::vector<Scalar> flat;
    for (const auto& row : form.gram())
        for (const auto& x : row) flat.push_back(x);
    return integral(flat);
}

/// G·v for an integral Gram matrix (row-major) and integral vector.
inline std::optional<std::vector<std::int64_t>> gram_times(const IntegralVector& gram, const IntegralVector& v) {
    const std::size_t n = v.values.size();
    std::vector<std::int64_t> w(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        __int128 acc = 0;
        for (std::size_t k = 0; k < n; ++k) acc += static_cast<__int128>(gram.values[i * n + k]) * v.values[k];
        if (acc <= -simd::kOperandLimit || acc >= simd::kOperandLimit) return std::nullopt;
        w[i] = static_cast<std::int64_t>(acc);
    }
    return w;
}

inline DivisorClass to_divisor(const std::vector<std::int64_t>& v) {
    std::vector<Scalar> coords;
    coords.reserve(v.size());
    for (auto x : v) coords.emplace_back(static_cast<long>(x));
    return DivisorClass(std::move(coords));
}

inline std::int64_t gcd_of(const std::vector<std::int64_t>& v) {
    std::int64_t g = 0;
    for (auto x : v) {
        std::int64_t a = x < 0 ? -x : x;
        while (a != 0) {
            std::int64_t t = g % a;
            g = a;
            a = t;
        }
    }
    return g;
}

}  // namespace sesh::detail
