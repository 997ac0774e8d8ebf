#pragma once

// Exact arithmetic in the biquadratic field Q(√2,√3).
//
// Every value is stored on the basis (1, √2, √3, √6) with canonical GMP
// rationals, so equality is coordinate equality and zero-testing is exact.
// Order comparisons go through rigorous rational interval enclosures of the
// real embedding.

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sesh {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p" or "-p/q". Canonicalizes; rejects a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Closed interval with rational endpoints.
struct Enclosure {
    Rational lo;
    Rational hi;

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool excludes_zero() const { return lo > 0 || hi < 0; }
    Rational width() const { return hi - lo; }
};

/// Decimal rendering of an enclosure, rounded outward so the printed
/// interval still contains the real value.
struct DecimalEnclosure {
    std::string lo;
    std::string hi;
};

DecimalEnclosure to_decimal(const Enclosure& e, unsigned digits);

class Scalar {
public:
    enum Coord : std::size_t { One = 0, Root2 = 1, Root3 = 2, Root6 = 3 };

    Scalar() = default;
    Scalar(long value) : c_{Rational(value), 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
    Scalar(const Rational& value) : c_{value, 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
    Scalar(Rational one, Rational r2, Rational r3, Rational r6);

    static Scalar sqrt2() { return {0, 1, 0, 0}; }
    static Scalar sqrt3() { return {0, 0, 1, 0}; }
    static Scalar sqrt6() { return {0, 0, 0, 1}; }

    const Rational& operator[](std::size_t i) const { return c_[i]; }
    const std::array<Rational, 4>& coords() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Rational part; equals the value when is_rational().
    const Rational& rational() const { return c_[One]; }

    Scalar inverse() const;

    Scalar& operator+=(const Scalar& y);
    Scalar& operator-=(const Scalar& y);
    Scalar& operator*=(const Scalar& y);
    Scalar& operator/=(const Scalar& y);

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(const Scalar& x, const Scalar& y);
    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }
    friend Scalar operator-(const Scalar& x);

    friend bool operator==(const Scalar& x, const Scalar& y) { return x.c_ == y.c_; }
    friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y);

private:
    std::array<Rational, 4> c_{};
};

enum class FieldOp { Add, Sub, Mul, Div };

Scalar field_op(FieldOp kind, const Scalar& x, const Scalar& y);

/// Exact sign. Zero iff every coordinate vanishes; otherwise refines an
/// interval enclosure at doubling precision until it excludes zero.
int sign(const Scalar& x);

bool is_rational(const Scalar& x);

/// The non-negative square root of r when r = q²·k with k ∈ {1,2,3,6}.
/// Throws NotRepresentable otherwise and NegativeInput for r < 0.
Scalar sqrt_embed(const Rational& r);

/// Non-throwing variant of sqrt_embed.
std::optional<Scalar> try_sqrt_embed(const Rational& r);

/// Rigorous enclosure with width ≤ 2^(1-bits)·max(1,|x|). Requires bits ≥ 16.
Enclosure approximate(const Scalar& x, unsigned bits);

/// Symbolic form, e.g. "3√3 - 3√2" or "15/2".
std::string to_string(const Scalar& x);
std::ostream& operator<<(std::ostream& os, const Scalar& x);

/// Parses a bare rational or a bracketed coordinate list "[a,b,c,d]".
Scalar parse_scalar(std::string_view text);

/// Least common multiple of the coordinate denominators.
Integer denominator_lcm(const Scalar& x);

}  // namespace sesh
