#pragma once

// Divisor classes and the intersection pairing on a Néron–Severi lattice.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "sesh/scalar.hpp"

namespace sesh {

/// Coordinates of a (real) divisor class over the lattice basis.
class DivisorClass {
public:
    DivisorClass() = default;
    explicit DivisorClass(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
    DivisorClass(std::initializer_list<Scalar> coords) : coords_(coords) {}

    static DivisorClass zero(std::size_t rank) { return DivisorClass(std::vector<Scalar>(rank)); }
    static DivisorClass basis(std::size_t rank, std::size_t index);

    std::size_t rank() const { return coords_.size(); }
    const Scalar& operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<Scalar>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const;

    DivisorClass& operator+=(const DivisorClass& other);
    DivisorClass& operator-=(const DivisorClass& other);
    DivisorClass& operator*=(const Scalar& t);

    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator*(const Scalar& t, DivisorClass a) { return a *= t; }
    friend DivisorClass operator-(DivisorClass a) { return a *= Scalar(-1); }
    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

private:
    std::vector<Scalar> coords_;
};

/// "(1, 1, 0)"
std::string to_string(const DivisorClass& d);

/// Comma-separated scalars; bracketed scalars may contain commas,
/// e.g. "[0,1,0,0],[0,0,1,0],0".
DivisorClass parse_divisor(std::string_view text);

/// A symmetric Gram matrix over Q(√2,√3) with basis labels.
class IntersectionForm {
public:
    IntersectionForm() = default;
    /// Throws ValidationError when the matrix is not square or not exactly
    /// symmetric, or when labels do not match the rank.
    IntersectionForm(std::vector<std::vector<Scalar>> gram, std::vector<std::string> labels);

    std::size_t rank() const { return gram_.size(); }
    const Scalar& entry(std::size_t i, std::size_t j) const { return gram_[i][j]; }
    const std::vector<std::vector<Scalar>>& gram() const { return gram_; }
    const std::vector<std::string>& labels() const { return labels_; }

    friend bool operator==(const IntersectionForm&, const IntersectionForm&) = default;

private:
    std::vector<std::vector<Scalar>> gram_;
    std::vector<std::string> labels_;
};

Scalar pair(const IntersectionForm& form, const DivisorClass& d1, const DivisorClass& d2);
Scalar self_int(const IntersectionForm& form, const DivisorClass& d);

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
};

/// Inertia of the form via exact congruence diagonalization. Throws
/// Degenerate when the form is singular.
Signature signature(const IntersectionForm& form);

/// True iff the signature is (1, rank-1). Throws Degenerate for singular forms.
bool verify_signature(const IntersectionForm& form);

/// (a·d)² ≥ a²·d². Requires a² > 0 (PreconditionFailed otherwise).
bool hodge_check(const IntersectionForm& form, const DivisorClass& a, const DivisorClass& d);

/// Orthogonal extension by a new class e with e² = -1.
IntersectionForm blow_up_form(const IntersectionForm& form, const std::string& label = "E");


/// The unique class x with pair(form, x, basis_i) = targets[i] for every
/// basis element (exact solve of gram·x = targets). Throws Degenerate for
/// singular forms.
DivisorClass class_with_pairings(const IntersectionForm& form, const std::vector<Scalar>& targets);

}  // namespace sesh
