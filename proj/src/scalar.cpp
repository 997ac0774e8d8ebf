#include "sesh/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "sesh/errors.hpp"

namespace sesh {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

// floor(√k · 2^p) for small positive integers k.
Integer scaled_isqrt(unsigned long k, unsigned long p) {
    Integer n = k;
    n <<= 2 * p;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Rational dyadic(const Integer& num, unsigned long p) {
    Integer den = 1;
    den <<= p;
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::size_t bit_length(const Integer& n) {
    return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s = trim(text);
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    auto slash = s.find('/');
    std::string num = slash == std::string::npos ? s : trim(s.substr(0, slash));
    std::string den = slash == std::string::npos ? "1" : trim(s.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-')
        throw ParseError("malformed rational '" + std::string(text) + "'");
    Integer n(num, 10), d(den, 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& r) { return r.get_str(); }

DecimalEnclosure to_decimal(const Enclosure& e, unsigned digits) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    auto render = [&](const Rational& x, bool round_up) {
        Rational scaled = x * scale;
        Integer q;
        if (round_up)
            mpz_cdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        else
            mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        bool negative = q < 0;
        Integer mag = abs(q);
        std::string body = mag.get_str();
        if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
        std::string out = body.substr(0, body.size() - digits);
        if (digits > 0) out += "." + body.substr(body.size() - digits);
        return (negative ? "-" : "") + out;
    };
    return {render(e.lo, false), render(e.hi, true)};
}

Scalar::Scalar(Rational one, Rational r2, Rational r3, Rational r6)
    : c_{std::move(one), std::move(r2), std::move(r3), std::move(r6)} {
    for (auto& c : c_) c.canonicalize();
}

bool Scalar::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& c) { return c == 0; });
}

bool Scalar::is_rational() const { return c_[Root2] == 0 && c_[Root3] == 0 && c_[Root6] == 0; }

Scalar& Scalar::operator+=(const Scalar& y) {
    for (std::size_t i = 0; i < 4; ++i) c_[i] += y.c_[i];
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& y) {
    for (std::size_t i = 0; i < 4; ++i) c_[i] -= y.c_[i];
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& y) { return *this = *this * y; }

Scalar& Scalar::operator/=(const Scalar& y) { return *this = *this / y; }

Scalar operator*(const Scalar& x, const Scalar& y) {
    const auto& a = x.c_;
    const auto& b = y.c_;
    if (x.is_rational()) return {a[0] * b[0], a[0] * b[1], a[0] * b[2], a[0] * b[3]};
    if (y.is_rational()) return {a[0] * b[0], a[1] * b[0], a[2] * b[0], a[3] * b[0]};
    // √2√3 = √6, √2√6 = 2√3, √3√6 = 3√2
    Rational c0 = a[0] * b[0] + 2 * a[1] * b[1] + 3 * a[2] * b[2] + 6 * a[3] * b[3];
    Rational c1 = a[0] * b[1] + a[1] * b[0] + 3 * (a[2] * b[3] + a[3] * b[2]);
    Rational c2 = a[0] * b[2] + a[2] * b[0] + 2 * (a[1] * b[3] + a[3] * b[1]);
    Rational c3 = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1];
    return {std::move(c0), std::move(c1), std::move(c2), std::move(c3)};
}

Scalar operator-(const Scalar& x) { return {-x.c_[0], -x.c_[1], -x.c_[2], -x.c_[3]}; }

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) return Scalar(1 / c_[0]);

    // Column j of the multiplication matrix is this·e_j; solve M z = e_0.
    const std::array<Scalar, 4> unit{Scalar(1), sqrt2(), sqrt3(), sqrt6()};
    std::array<std::array<Rational, 5>, 4> m;
    for (std::size_t j = 0; j < 4; ++j) {
        Scalar col = *this * unit[j];
        for (std::size_t i = 0; i < 4; ++i) m[i][j] = col[i];
    }
    for (std::size_t i = 0; i < 4; ++i) m[i][4] = (i == 0) ? 1 : 0;

    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        while (pivot < 4 && m[pivot][col] == 0) ++pivot;
        // The matrix is invertible for nonzero elements of a field.
        if (pivot == 4) throw DivisionByZero();
        std::swap(m[col], m[pivot]);
        Rational inv = 1 / m[col][col];
        for (std::size_t k = col; k < 5; ++k) m[col][k] *= inv;
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t k = col; k < 5; ++k) m[r][k] -= f * m[col][k];
        }
    }
    return {m[0][4], m[1][4], m[2][4], m[3][4]};
}

std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    int s = sign(x - y);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Scalar field_op(FieldOp kind, const Scalar& x, const Scalar& y) {
    switch (kind) {
        case FieldOp::Add: return x + y;
        case FieldOp::Sub: return x - y;
        case FieldOp::Mul: return x * y;
        case FieldOp::Div: return x / y;
    }
    return {};
}

Enclosure approximate(const Scalar& x, unsigned bits) {
    if (bits < 16) throw PreconditionFailed("approximate requires bits >= 16");
    if (x.is_rational()) return {x[0], x[0]};

    Rational total = abs(x[1]) + abs(x[2]) + abs(x[3]);
    Integer ceil_total;
    mpz_cdiv_q(ceil_total.get_mpz_t(), total.get_num_mpz_t(), total.get_den_mpz_t());
    // Each √k is enclosed to width 2^-p, so the sum has width ≤ total·2^-p.
    unsigned long p = bits + bit_length(ceil_total) + 1;

    Enclosure e{x[0], x[0]};
    constexpr unsigned long radicands[] = {2, 3, 6};
    for (std::size_t i = 0; i < 3; ++i) {
        const Rational& c = x[i + 1];
        if (c == 0) continue;
        Integer s = scaled_isqrt(radicands[i], p);
        Rational lo = dyadic(s, p), hi = dyadic(s + 1, p);
        if (c > 0) {
            e.lo += c * lo;
            e.hi += c * hi;
        } else {
            e.lo += c * hi;
            e.hi += c * lo;
        }
    }
    return e;
}

int sign(const Scalar& x) {
    if (x.is_rational()) return sgn(x[0]);
    if (x.is_zero()) return 0;
    for (unsigned bits = 32;; bits *= 2) {
        Enclosure e = approximate(x, bits);
        if (e.lo > 0) return 1;
        if (e.hi < 0) return -1;
    }
}

bool is_rational(const Scalar& x) { return x.is_rational(); }

std::optional<Scalar> try_sqrt_embed(const Rational& r) {
    if (r < 0) throw NegativeInput("square root of negative rational " + r.get_str());
    if (r == 0) return Scalar();
    constexpr long radicands[] = {1, 2, 3, 6};
    for (std::size_t i = 0; i < 4; ++i) {
        Rational t = r / radicands[i];
        if (mpz_perfect_square_p(t.get_num_mpz_t()) == 0 ||
            mpz_perfect_square_p(t.get_den_mpz_t()) == 0)
            continue;
        Integer n, d;
        mpz_sqrt(n.get_mpz_t(), t.get_num_mpz_t());
        mpz_sqrt(d.get_mpz_t(), t.get_den_mpz_t());
        Rational q(n, d);
        q.canonicalize();
        std::array<Rational, 4> c{};
        c[i] = q;
        return Scalar(c[0], c[1], c[2], c[3]);
    }
    return std::nullopt;
}

Scalar sqrt_embed(const Rational& r) {
    if (auto s = try_sqrt_embed(r)) return *s;
    throw NotRepresentable("√(" + r.get_str() + ") is not in Q(√2,√3)");
}

std::string to_string(const Scalar& x) {
    if (x.is_zero()) return "0";
    static const char* const radical[] = {"", "√2", "√3", "√6"};
    std::string out;
    for (std::size_t i = 0; i < 4; ++i) {
        const Rational& c = x[i];
        if (c == 0) continue;
        Rational mag = abs(c);
        std::string term;
        if (i == 0) {
            term = mag.get_str();
        } else if (mag == 1) {
            term = radical[i];
        } else if (mag.get_den() == 1) {
            term = mag.get_str() + radical[i];
        } else {
            term = "(" + mag.get_str() + ")" + radical[i];
        }
        if (out.empty())
            out = (c < 0 ? "-" : "") + term;
        else
            out += (c < 0 ? " - " : " + ") + term;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << to_string(x); }

Scalar parse_scalar(std::string_view text) {
    std::string s = trim(text);
    if (s.empty()) throw ParseError("empty scalar");
    if (s.front() != '[') return Scalar(parse_rational(s));
    if (s.back() != ']') throw ParseError("unterminated scalar '" + s + "'");
    std::vector<std::string> parts;
    std::stringstream body(s.substr(1, s.size() - 2));
    for (std::string item; std::getline(body, item, ',');) {
        std::string t = trim(item);
        if (t.size() >= 2 && t.front() == '"' && t.back() == '"') t = t.substr(1, t.size() - 2);
        parts.push_back(t);
    }
    if (parts.size() != 4)
        throw ParseError("scalar '" + s + "' must have 4 coordinates on (1, √2, √3, √6)");
    return {parse_rational(parts[0]), parse_rational(parts[1]), parse_rational(parts[2]),
            parse_rational(parts[3])};
}

Integer denominator_lcm(const Scalar& x) {
    Integer l = 1;
    for (const auto& c : x.coords()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    return l;
}

}  // namespace sesh
