#include "sesh/lattice.hpp"

#include <algorithm>
#include <utility>

#include "sesh/errors.hpp"

namespace sesh {

DivisorClass DivisorClass::basis(std::size_t rank, std::size_t index) {
    DivisorClass d = zero(rank);
    d.coords_.at(index) = Scalar(1);
    return d;
}

bool DivisorClass::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& c) { return c.is_zero(); });
}

bool DivisorClass::is_rational() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& c) { return c.is_rational(); });
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
    if (other.rank() != rank()) throw DimensionMismatch(rank(), other.rank());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
    if (other.rank() != rank()) throw DimensionMismatch(rank(), other.rank());
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
}

DivisorClass& DivisorClass::operator*=(const Scalar& t) {
    for (auto& c : coords_) c *= t;
    return *this;
}

std::string to_string(const DivisorClass& d) {
    std::string out = "(";
    for (std::size_t i = 0; i < d.rank(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(d[i]);
    }
    return out + ")";
}

DivisorClass parse_divisor(std::string_view text) {
    std::vector<Scalar> coords;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || (text[i] == ',' && depth == 0)) {
            coords.push_back(parse_scalar(text.substr(start, i - start)));
            start = i + 1;
        } else if (text[i] == '[') {
            ++depth;
        } else if (text[i] == ']') {
            if (--depth < 0) throw ParseError("unbalanced ']' in divisor '" + std::string(text) + "'");
        }
    }
    if (depth != 0) throw ParseError("unbalanced '[' in divisor '" + std::string(text) + "'");
    return DivisorClass(std::move(coords));
}

IntersectionForm::IntersectionForm(std::vector<std::vector<Scalar>> gram, std::vector<std::string> labels)
    : gram_(std::move(gram)), labels_(std::move(labels)) {
    const std::size_t n = gram_.size();
    if (n == 0) throw ValidationError("rank-positive", "gram", "empty Gram matrix");
    if (labels_.size() != n)
        throw ValidationError("basis-length", "basis",
                              "expected " + std::to_string(n) + " labels, got " + std::to_string(labels_.size()));
    for (std::size_t i = 0; i < n; ++i) {
        if (gram_[i].size() != n)
            throw ValidationError("gram-square", "gram[" + std::to_string(i) + "]",
                                  "row has " + std::to_string(gram_[i].size()) + " entries, expected " +
                                      std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram_[i][j] != gram_[j][i])
                throw ValidationError("gram-symmetric",
                                      "gram[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                                      to_string(gram_[i][j]) + " != " + to_string(gram_[j][i]));
}

Scalar pair(const IntersectionForm& form, const DivisorClass& d1, const DivisorClass& d2) {
    const std::size_t n = form.rank();
    if (d1.rank() != n) throw DimensionMismatch(n, d1.rank());
    if (d2.rank() != n) throw DimensionMismatch(n, d2.rank());
    Scalar total;
    for (std::size_t i = 0; i < n; ++i) {
        if (d1[i].is_zero()) continue;
        Scalar row;
        for (std::size_t j = 0; j < n; ++j) {
            if (d2[j].is_zero() || form.entry(i, j).is_zero()) continue;
            row += form.entry(i, j) * d2[j];
        }
        total += d1[i] * row;
    }
    return total;
}

Scalar self_int(const IntersectionForm& form, const DivisorClass& d) { return pair(form, d, d); }

Signature signature(const IntersectionForm& form) {
    std::vector<std::vector<Scalar>> a = form.gram();
    const std::size_t n = a.size();
    Signature sig;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t j = k + 1;
            while (j < n && a[j][j].is_zero()) ++j;
            if (j < n) {
                std::swap(a[k], a[j]);
                for (auto& row : a) std::swap(row[k], row[j]);
            } else {
                j = k + 1;
                while (j < n && a[k][j].is_zero()) ++j;
                if (j == n) throw Degenerate("intersection form is singular (zero pivot at " + std::to_string(k) + ")");
                // e_k ← e_k + e_j makes the pivot 2·a[k][j] ≠ 0.
                for (std::size_t c = 0; c < n; ++c) a[k][c] += a[j][c];
                for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][j];
            }
        }
        const Scalar pivot = a[k][k];
        (sign(pivot) > 0 ? sig.positive : sig.negative) += 1;
        const Scalar inv = pivot.inverse();
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k].is_zero()) continue;
            const Scalar f = a[i][k] * inv;
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
        }
        for (std::size_t i = k + 1; i < n; ++i) a[i][k] = a[k][i] = Scalar();
    }
    return sig;
}

bool verify_signature(const IntersectionForm& form) {
    Signature s = signature(form);
    return s.positive == 1 && s.negative + 1 == form.rank();
}

bool hodge_check(const IntersectionForm& form, const DivisorClass& a, const DivisorClass& d) {
    const Scalar a2 = self_int(form, a);
    if (sign(a2) <= 0) throw PreconditionFailed("hodge_check requires a² > 0, got " + to_string(a2));
    const Scalar ad = pair(form, a, d);
    return ad * ad >= a2 * self_int(form, d);
}

IntersectionForm blow_up_form(const IntersectionForm& form, const std::string& label) {
    if (!verify_signature(form)) throw PreconditionFailed("blow-up requires a form of signature (1, rank-1)");
    auto gram = form.gram();
    for (auto& row : gram) row.emplace_back();
    gram.emplace_back(form.rank() + 1);
    gram.back().back() = Scalar(-1);
    auto labels = form.labels();
    labels.push_back(label);
    return IntersectionForm(std::move(gram), std::move(labels));
}


DivisorClass class_with_pairings(const IntersectionForm& form, const std::vector<Scalar>& targets) {
    const std::size_t n = form.rank();
    if (targets.size() != n) throw DimensionMismatch(n, targets.size());
    std::vector<std::vector<Scalar>> m = form.gram();
    for (std::size_t i = 0; i < n; ++i) m[i].push_back(targets[i]);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw Degenerate("intersection form is singular");
        std::swap(m[col], m[pivot]);
        const Scalar inv = m[col][col].inverse();
        for (std::size_t k = col; k <= n; ++k) m[col][k] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            const Scalar f = m[r][col];
            for (std::size_t k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
        }
    }
    std::vector<Scalar> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return DivisorClass(std::move(x));
}

}  // namespace sesh
