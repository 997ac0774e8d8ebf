#pragma once

#include <compare>
#include <optional>
#include <string>

#include "sesh/scalar.hpp"

namespace sesh {

/// A non-negative real known either exactly as a Scalar or only through its
/// square (when the square root leaves Q(√2,√3)). All comparisons are done
/// on squares, which is order-preserving on [0, ∞).
class Magnitude {
public:
    Magnitude() = default;

    /// Requires value ≥ 0.
    static Magnitude exact(Scalar value);
    /// √square for square ≥ 0; stored exactly when a rational square root
    /// embeds in the field.
    static Magnitude root_of(Scalar square);

    const Scalar& square() const { return square_; }
    const std::optional<Scalar>& value() const { return value_; }
    bool is_exact() const { return value_.has_value(); }

    /// t·this for rational t ≥ 0.
    Magnitude scaled(const Rational& t) const;

    Enclosure approximate(unsigned bits) const;

    /// "3/2" when exact, "√(5)" otherwise.
    std::string to_string() const;

    friend bool operator==(const Magnitude& a, const Magnitude& b) { return a.square_ == b.square_; }
    friend std::strong_ordering operator<=>(const Magnitude& a, const Magnitude& b) {
        return a.square_ <=> b.square_;
    }

private:
    Scalar square_;
    std::optional<Scalar> value_ = Scalar();
};

}  // namespace sesh
