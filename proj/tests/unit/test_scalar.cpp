#include <cmath>
#include <random>

#include "doctest.h"
#include "sesh/errors.hpp"
#include "sesh/scalar.hpp"

using namespace sesh;

namespace {

const Scalar r2 = Scalar::sqrt2();
const Scalar r3 = Scalar::sqrt3();
const Scalar r6 = Scalar::sqrt6();

Rational decimal(const std::string& s) {
    const auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(Integer(s));
    const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    Integer den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    Rational q(Integer(digits), den);
    q.canonicalize();
    return q;
}

long double to_ld(const Rational& q) { return static_cast<long double>(q.get_d()); }

// Independent floating oracle: evaluates the real embedding in long double.
long double real_value(const Scalar& x) {
    return to_ld(x[0]) + to_ld(x[1]) * std::sqrt(2.0L) + to_ld(x[2]) * std::sqrt(3.0L) + to_ld(x[3]) * std::sqrt(6.0L);
}

struct Gen {
    std::mt19937_64 rng{12345};
    Rational rational(long bound) {
        Rational q(std::uniform_int_distribution<long>(-bound, bound)(rng), std::uniform_int_distribution<long>(1, 12)(rng));
        q.canonicalize();
        return q;
    }
    Scalar scalar() { return Scalar(rational(30), rational(30), rational(30), rational(30)); }
};

}  // namespace

TEST_CASE("arithmetic examples") {
    CHECK(r2 * r2 == Scalar(2));
    CHECK(r2 * r3 == r6);
    CHECK(r6 * r6 == Scalar(6));
    CHECK(Scalar(Rational(1, 2)) + Scalar(Rational(1, 3)) == Scalar(Rational(5, 6)));
    CHECK((Scalar(3) * r3 - Scalar(3) * r2) / (r2 + r3) == Scalar(15) - Scalar(6) * r6);
    CHECK(field_op(FieldOp::Sub, r2, r2).is_zero());
    CHECK(field_op(FieldOp::Div, r6, r2) == r3);
    CHECK_THROWS_AS(Scalar().inverse(), DivisionByZero);
    CHECK_THROWS_AS(field_op(FieldOp::Div, r2, Scalar()), DivisionByZero);
}

TEST_CASE("coefficient identity by back-multiplication") {
    const Scalar q = r6 / (r2 + r3);
    CHECK(q == Scalar(3) * r2 - Scalar(2) * r3);
    CHECK(q * (r2 + r3) == r6);
}

TEST_CASE("sign examples against the floating oracle") {
    CHECK(sign(Scalar()) == 0);
    const Scalar a = Scalar(3) * r3 - Scalar(3) * r2;
    CHECK(real_value(a) > 0);
    CHECK(sign(a) == 1);
    const Scalar b = Scalar(15) - Scalar(6) * r6;
    CHECK(real_value(b) > 0.30L);
    CHECK(real_value(b) < 0.31L);
    CHECK(sign(b) == 1);
    CHECK(sign(-b) == -1);
    // 5√2 - 7 ≈ 0.0711, 99 - 70√2 ≈ 0.00714
    CHECK(sign(Scalar(5) * r2 - Scalar(7)) == 1);
    CHECK(sign(Scalar(99) - Scalar(70) * r2) == 1);
    CHECK(sign(Scalar(70) * r2 - Scalar(99)) == -1);
}

TEST_CASE("sign resolves near-cancellations") {
    // (1 + √2)^k - (1 - √2)^k... the conjugate (1 - √2)^k is tiny and its sign alternates
    Scalar u = Scalar(1) - r2;
    Scalar p = Scalar(1);
    for (int k = 1; k <= 40; ++k) {
        p = p * u;
        CHECK(sign(p) == (k % 2 == 0 ? 1 : -1));
    }
}

TEST_CASE("is_rational") {
    CHECK(is_rational(Scalar(Rational(7, 3))));
    CHECK_FALSE(is_rational(Scalar(15) - Scalar(6) * r6));
    CHECK(is_rational(r2 * r2));
}

TEST_CASE("sqrt_embed") {
    CHECK(sqrt_embed(2) == r2);
    CHECK(sqrt_embed(Rational(9, 4)) == Scalar(Rational(3, 2)));
    CHECK(sqrt_embed(Rational(27, 4)) == Scalar(Rational(3, 2)) * r3);
    CHECK(sqrt_embed(24) == Scalar(2) * r6);
    CHECK(sqrt_embed(0).is_zero());
    CHECK_THROWS_AS(sqrt_embed(5), NotRepresentable);
    CHECK_THROWS_AS(sqrt_embed(-1), NegativeInput);
    CHECK_FALSE(try_sqrt_embed(Rational(5, 7)).has_value());
    CHECK(try_sqrt_embed(Rational(8, 3)).has_value());
}

TEST_CASE("approximate examples") {
    const Enclosure s = approximate(r2, 53);
    CHECK(s.lo <= Rational(141421356237, 100000000000) + Rational(1, 100000000000));
    CHECK(s.hi >= Rational(141421356237, 100000000000));
    CHECK(s.width() <= Rational(1, 1L << 52));
    const Enclosure z = approximate(Scalar(), 16);
    CHECK(z.lo == 0);
    CHECK(z.hi == 0);
    const Enclosure e = approximate(Scalar(15) - Scalar(6) * r6, 64);
    CHECK(e.lo > Rational(30, 100));
    CHECK(e.hi < Rational(31, 100));
    CHECK_THROWS_AS(approximate(r2, 8), PreconditionFailed);
}

TEST_CASE("decimal rendering is outward rounded") {
    const DecimalEnclosure d = to_decimal(approximate(r2, 53), 10);
    CHECK(decimal(d.lo) <= approximate(r2, 53).lo);
    CHECK(decimal(d.hi) >= approximate(r2, 53).hi);
}

TEST_CASE("parse and print") {
    CHECK(parse_scalar("3/4") == Scalar(Rational(3, 4)));
    CHECK(parse_scalar("[1,2,-3,1/2]") == Scalar(1, 2, -3, Rational(1, 2)));
    CHECK(parse_scalar("-5") == Scalar(-5));
    CHECK_THROWS_AS(parse_scalar("1.5"), ParseError);
    CHECK_THROWS_AS(parse_scalar("[1,2,3]"), ParseError);
    CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
    CHECK(to_string(Scalar(3) * r3 - Scalar(3) * r2) == "-3√2 + 3√3");
    CHECK(to_string(Scalar(Rational(15, 2))) == "15/2");
    CHECK(to_string(Scalar()) == "0");
    CHECK(denominator_lcm(Scalar(Rational(1, 4), Rational(1, 6), 0, 0)) == 12);
}

TEST_CASE("field axioms on random samples") {
    Gen g;
    for (int i = 0; i < 10000; ++i) {
        const Scalar x = g.scalar(), y = g.scalar(), z = g.scalar();
        REQUIRE((x + y) + z == x + (y + z));
        REQUIRE((x * y) * z == x * (y * z));
        REQUIRE(x + y == y + x);
        REQUIRE(x * y == y * x);
        REQUIRE(x * (y + z) == x * y + x * z);
        REQUIRE(x + Scalar() == x);
        REQUIRE(x * Scalar(1) == x);
        REQUIRE(x - x == Scalar());
        if (!x.is_zero()) REQUIRE(x * x.inverse() == Scalar(1));
    }
}

TEST_CASE("sign is compatible with arithmetic and the oracle") {
    Gen g;
    for (int i = 0; i < 10000; ++i) {
        const Scalar x = g.scalar(), y = g.scalar();
        const int sx = sign(x), sy = sign(y);
        REQUIRE(sign(x * y) == sx * sy);
        if (sx == sy) REQUIRE(sign(x + y) == sx);
        const long double v = real_value(x);
        if (std::fabs(v) > 1e-9L) REQUIRE(sx == (v > 0 ? 1 : -1));
        const Enclosure e = approximate(x, 64);
        if (sx > 0) REQUIRE(e.hi > 0);
        if (sx < 0) REQUIRE(e.lo < 0);
        const Rational mag = abs(e.lo) > abs(e.hi) ? Rational(abs(e.lo)) : Rational(abs(e.hi));
        const Rational scale = mag > 1 ? mag : Rational(1);
        REQUIRE(e.width() <= scale / Rational(Integer(1) << 63));
    }
}

TEST_CASE("sqrt_embed squares back") {
    Gen g;
    const long ks[] = {1, 2, 3, 6};
    for (int i = 0; i < 1000; ++i) {
        Rational q = g.rational(50);
        const Rational r = q * q * ks[i % 4];
        const Scalar s = sqrt_embed(r);
        REQUIRE(s * s == Scalar(r));
        REQUIRE(sign(s) >= 0);
    }
}
