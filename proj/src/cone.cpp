#include "sesh/cone.hpp"

#include <algorithm>

#include "integral.hpp"
#include "sesh/errors.hpp"
#include "sesh/simd/kernels.hpp"

namespace sesh {

namespace {

std::string catalogue_caveat(const SurfaceModel& m) {
    return "relative to the " + m.name + " curve catalogue (complete up to ample degree " + to_string(m.complete_up_to) + ")";
}

Verdict certified(const SurfaceModel& m) {
    Verdict v;
    v.status = VerdictStatus::Certified;
    v.caveat = catalogue_caveat(m);
    v.completeness_bound = m.complete_up_to;
    return v;
}

template <class W>
Verdict refuted(W witness, std::string why) {
    Verdict v;
    v.status = VerdictStatus::Refuted;
    v.witness = std::move(witness);
    v.caveat = std::move(why);
    return v;
}

void check_rank(const SurfaceModel& m, const DivisorClass& d) {
    if (d.rank() != m.rank()) throw DimensionMismatch(m.rank(), d.rank());
}

std::optional<std::string> known_fiber(const SurfaceModel& m, const DivisorClass& d) {
    for (const auto& c : m.curves)
        if (c.moving && c.mult_eta == 1 && self_int(m.form, c.cls).is_zero() && same_ray(c.cls, d)) return c.label;
    return std::nullopt;
}

FibrationCandidate candidate_from_integral(const SurfaceModel& m, const std::vector<std::int64_t>& v) {
    FibrationCandidate c;
    c.cls = detail::to_divisor(v);
    c.primitive = true;
    c.ray_type = RayType::Rational;
    c.degree = pair(m.form, c.cls, m.ample_ref);
    c.fiber_label = known_fiber(m, c.cls);
    return c;
}

bool lex_less(const DivisorClass& a, const DivisorClass& b) {
    for (std::size_t i = 0; i < a.rank(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

}  // namespace

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Certified: return "Certified";
        case VerdictStatus::Refuted: return "Refuted";
        case VerdictStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(RayType t) { return t == RayType::Rational ? "Rational" : "Irrational"; }

Verdict is_nef(const SurfaceModel& m, const DivisorClass& d) {
    check_rank(m, d);
    for (const auto& c : m.curves)
        if (sign(pair(m.form, d, c.cls)) < 0) return refuted(c, "pairs negatively with catalogued curve " + c.label);
    if (sign(pair(m.form, d, m.ample_ref)) < 0) return refuted(m.ample_ref, "pairs negatively with the ample reference class");
    if (sign(self_int(m.form, d)) >= 0) return certified(m);
    Verdict v;
    v.status = VerdictStatus::Inconclusive;
    v.caveat = "negative self-intersection but no catalogued curve refutes; " + catalogue_caveat(m);
    return v;
}

Verdict is_ample(const SurfaceModel& m, const DivisorClass& d) {
    check_rank(m, d);
    if (sign(self_int(m.form, d)) <= 0) return refuted(d, "self-intersection is not positive");
    for (const auto& c : m.curves)
        if (sign(pair(m.form, d, c.cls)) <= 0) return refuted(c, "does not pair positively with catalogued curve " + c.label);
    if (sign(pair(m.form, d, m.ample_ref)) <= 0) return refuted(m.ample_ref, "does not pair positively with the ample reference class");
    return certified(m);
}

Verdict is_big(const SurfaceModel& m, const DivisorClass& d) {
    check_rank(m, d);
    if (sign(self_int(m.form, d)) <= 0) return refuted(d, "self-intersection is not positive");
    if (sign(pair(m.form, d, m.ample_ref)) <= 0) return refuted(m.ample_ref, "does not pair positively with the ample reference class");
    Verdict v;
    v.status = VerdictStatus::Certified;
    return v;
}

std::vector<FibrationCandidate> isotropic_nef_rays(const SurfaceModel& m, long box) {
    if (box < 1) throw PreconditionFailed("box must be >= 1");
    const std::size_t n = m.rank();
    const simd::LatticeBlock block = simd::box_block(n, box);
    const std::size_t count = block.count();
    std::vector<FibrationCandidate> out;

    auto gram = detail::integral(m.form);
    auto amp = detail::integral(m.ample_ref);
    std::optional<std::vector<std::int64_t>> amp_w;
    std::vector<std::vector<std::int64_t>> curve_w;
    bool fast = gram && amp && simd::quad_fits(gram->values, n, box);
    if (fast) amp_w = detail::gram_times(*gram, *amp);
    fast = fast && amp_w;
    for (std::size_t k = 0; fast && k < m.curves.size(); ++k) {
        auto c = detail::integral(m.curves[k].cls);
        auto w = c ? detail::gram_times(*gram, *c) : std::nullopt;
        if (!w) fast = false;
        else curve_w.push_back(std::move(*w));
    }

    if (fast) {
        std::vector<std::int64_t> q(count), deg(count), pc(count);
        std::vector<char> keep(count);
        simd::quad(gram->values, block, q);
        simd::dot(*amp_w, block, deg);
        for (std::size_t i = 0; i < count; ++i) keep[i] = q[i] == 0 && deg[i] > 0;
        for (const auto& w : curve_w) {
            simd::dot(w, block, pc);
            for (std::size_t i = 0; i < count; ++i) keep[i] = keep[i] && pc[i] >= 0;
        }
        for (std::size_t i = 0; i < count; ++i) {
            if (!keep[i]) continue;
            auto v = block.vector_at(i);
            if (detail::gcd_of(v) != 1) continue;
            out.push_back(candidate_from_integral(m, v));
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            auto v = block.vector_at(i);
            if (detail::gcd_of(v) != 1) continue;
            const DivisorClass d = detail::to_divisor(v);
            if (!self_int(m.form, d).is_zero() || sign(pair(m.form, d, m.ample_ref)) <= 0) continue;
            if (is_nef(m, d).refuted()) continue;
            out.push_back(candidate_from_integral(m, v));
        }
    }

    // exact re-check of every survivor
    for (const auto& c : out) {
        if (!self_int(m.form, c.cls).is_zero() || is_nef(m, c.cls).refuted())
            throw Error("isotropic scan produced an invalid candidate " + to_string(c.cls));
    }
    std::sort(out.begin(), out.end(), [](const FibrationCandidate& a, const FibrationCandidate& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return lex_less(a.cls, b.cls);
    });
    return out;
}

RayType ray_rationality(const DivisorClass& d) {
    std::size_t lead = 0;
    while (lead < d.rank() && d[lead].is_zero()) ++lead;
    if (lead == d.rank()) throw ZeroClass();
    const Scalar inv = d[lead].inverse();
    for (std::size_t i = lead + 1; i < d.rank(); ++i)
        if (!(d[i] * inv).is_rational()) return RayType::Irrational;
    return RayType::Rational;
}

bool same_ray(const DivisorClass& d, const DivisorClass& e) {
    if (d.rank() != e.rank() || d.is_zero() || e.is_zero()) return false;
    std::size_t lead = 0;
    while (e[lead].is_zero()) ++lead;
    const Scalar c = d[lead] / e[lead];
    if (sign(c) <= 0) return false;
    return d == c * e;
}

DivisorClass primitive_representative(const DivisorClass& d) {
    if (d.is_zero()) throw ZeroClass();
    if (!d.is_rational()) throw PreconditionFailed("primitive representative needs a rational class");
    Integer l = 1;
    for (const auto& c : d.coords()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rational().get_den_mpz_t());
    std::vector<Integer> ints;
    Integer g = 0;
    for (const auto& c : d.coords()) {
        Rational v = c.rational() * l;
        ints.push_back(v.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    }
    std::vector<Scalar> coords;
    for (const auto& x : ints) coords.emplace_back(Rational(Integer(x / g)));
    return DivisorClass(std::move(coords));
}

FibrationCandidate make_candidate(const SurfaceModel& m, const DivisorClass& d) {
    check_rank(m, d);
    if (d.is_zero()) throw ZeroClass();
    if (!self_int(m.form, d).is_zero()) throw PreconditionFailed("fibration candidate must satisfy d^2 = 0");
    if (sign(pair(m.form, d, m.ample_ref)) <= 0) throw PreconditionFailed("fibration candidate must have positive degree");
    if (is_nef(m, d).refuted()) throw PreconditionFailed("fibration candidate must be catalogue-nef");
    FibrationCandidate c;
    c.ray_type = ray_rationality(d);
    if (c.ray_type == RayType::Rational) {
        // an irrational common factor cancels on the ray
        std::size_t lead = 0;
        while (d[lead].is_zero()) ++lead;
        c.cls = primitive_representative(d[lead].inverse() * d);
        if (sign(pair(m.form, c.cls, m.ample_ref)) < 0) c.cls = -c.cls;
        c.primitive = true;
    } else {
        c.cls = d;
    }
    c.degree = pair(m.form, c.cls, m.ample_ref);
    c.fiber_label = known_fiber(m, c.cls);
    return c;
}

std::optional<FibrationCandidate> candidate_on_ray(const std::vector<FibrationCandidate>& candidates, const DivisorClass& d) {
    for (const auto& c : candidates)
        if (same_ray(d, c.cls)) return c;
    return std::nullopt;
}

}  // namespace sesh
