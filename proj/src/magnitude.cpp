#include "sesh/magnitude.hpp"

#include "sesh/errors.hpp"

namespace sesh {

namespace {

// Enclosure of √r for a rational interval with non-negative endpoints.
Enclosure sqrt_enclosure(const Enclosure& sq, unsigned bits) {
    auto root = [bits](const Rational& r, bool up) {
        // floor/ceil of √r · 2^bits, divided back down.
        Rational scaled = r;
        scaled *= Rational(Integer(1) << (2 * bits));
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
        Integer s;
        mpz_sqrt(s.get_mpz_t(), q.get_mpz_t());
        if (up) s += 1;
        Rational out(s, Integer(1) << bits);
        out.canonicalize();
        return out;
    };
    Rational lo = sq.lo < 0 ? Rational(0) : sq.lo;
    return {root(lo, false), root(sq.hi, true)};
}

}  // namespace

Magnitude Magnitude::exact(Scalar value) {
    if (sign(value) < 0) throw NegativeInput("magnitude of negative value " + sesh::to_string(value));
    Magnitude m;
    m.square_ = value * value;
    m.value_ = std::move(value);
    return m;
}

Magnitude Magnitude::root_of(Scalar square) {
    if (sign(square) < 0) throw NegativeInput("square root of negative value " + sesh::to_string(square));
    Magnitude m;
    if (square.is_rational()) m.value_ = try_sqrt_embed(square.rational());
    else m.value_.reset();
    m.square_ = std::move(square);
    return m;
}

Magnitude Magnitude::scaled(const Rational& t) const {
    if (t < 0) throw NegativeInput("negative scale " + t.get_str());
    Magnitude m;
    m.square_ = square_ * Scalar(Rational(t * t));
    if (value_) m.value_ = *value_ * Scalar(t);
    else m.value_.reset();
    return m;
}

Enclosure Magnitude::approximate(unsigned bits) const {
    if (value_) return sesh::approximate(*value_, bits);
    return sqrt_enclosure(sesh::approximate(square_, bits + 2), bits + 2);
}

std::string Magnitude::to_string() const {
    if (value_) return sesh::to_string(*value_);
    return "√(" + sesh::to_string(square_) + ")";
}

}  // namespace sesh
