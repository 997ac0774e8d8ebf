#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "sesh/cone.hpp"
#include "sesh/errors.hpp"

using namespace sesh;

namespace {

const Scalar r2 = Scalar::sqrt2();
const Scalar r3 = Scalar::sqrt3();

DivisorClass boundary_class() { return DivisorClass{r2, r3, Scalar(2) * r3 - Scalar(3) * r2}; }

long as_long(const Scalar& x) { return x.rational().get_num().get_si(); }

long ipair(const std::vector<std::vector<long>>& g, const std::vector<long>& x, const std::vector<long>& y) {
    long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * g[i][j] * y[j];
    return s;
}

std::vector<long> ints(const DivisorClass& d) {
    std::vector<long> v;
    for (const auto& c : d.coords()) v.push_back(as_long(c));
    return v;
}

// Brute-force oracle in plain integers over the box; integer builtins only.
std::set<std::vector<long>> oracle_rays(const SurfaceModel& m, long box) {
    const std::size_t n = m.rank();
    std::vector<std::vector<long>> g(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = as_long(m.form.entry(i, j));
    const auto amp = ints(m.ample_ref);
    std::set<std::vector<long>> out;
    std::vector<long> v(n, -box);
    for (;;) {
        long gcd = 0;
        for (long x : v) gcd = std::gcd(gcd, x);
        if (gcd == 1 && ipair(g, v, v) == 0 && ipair(g, v, amp) > 0) {
            bool nef = true;
            for (const auto& c : m.curves) nef = nef && ipair(g, v, ints(c.cls)) >= 0;
            if (nef) out.insert(v);
        }
        std::size_t k = n;
        while (k > 0 && v[k - 1] == box) v[--k] = -box;
        if (k == 0) break;
        ++v[k - 1];
    }
    return out;
}

std::set<std::vector<long>> as_set(const std::vector<FibrationCandidate>& cs) {
    std::set<std::vector<long>> s;
    for (const auto& c : cs) s.insert(ints(c.cls));
    return s;
}

DivisorClass random_class(std::mt19937_64& rng, std::size_t n, long b) {
    std::vector<Scalar> c;
    for (std::size_t i = 0; i < n; ++i) c.emplace_back(std::uniform_int_distribution<long>(-b, b)(rng));
    return DivisorClass(std::move(c));
}

}  // namespace

TEST_CASE("boundary class with an irrational ray is nef") {
    const auto exe = builtin("ExE");
    const DivisorClass d = boundary_class();
    CHECK(self_int(exe.form, d).is_zero());
    const Scalar df1 = pair(exe.form, d, DivisorClass{1, 0, 0});
    const Scalar dd = pair(exe.form, d, DivisorClass{0, 0, 1});
    CHECK(df1 == Scalar(3) * r3 - Scalar(3) * r2);
    CHECK(pair(exe.form, d, DivisorClass{0, 1, 0}) == Scalar(2) * r3 - Scalar(2) * r2);
    CHECK(dd == r2 + r3);
    const Verdict v = is_nef(exe, d);
    CHECK(v.certified());
    CHECK(v.completeness_bound == exe.complete_up_to);
    CHECK(df1 / dd == Scalar(15) - Scalar(6) * Scalar::sqrt6());
    CHECK_FALSE(is_rational(df1 / dd));
    CHECK(ray_rationality(d) == RayType::Irrational);
    CHECK(is_ample(exe, d).refuted());
    const FibrationCandidate c = make_candidate(exe, d);
    CHECK(c.ray_type == RayType::Irrational);
    CHECK_FALSE(c.primitive);
}

TEST_CASE("is_nef examples") {
    const auto exe = builtin("ExE");
    const Verdict v = is_nef(exe, DivisorClass{-1, 0, 0});
    REQUIRE(v.refuted());
    const auto* w = std::get_if<CurveRecord>(&v.witness);
    REQUIRE(w != nullptr);
    CHECK(w->label == "F2");
    CHECK(is_nef(builtin("P2-blowup"), DivisorClass{1, -1}).certified());
    CHECK(is_nef(builtin("P2-blowup"), DivisorClass{1, 1}).refuted());
    CHECK_THROWS_AS(is_nef(exe, DivisorClass{1, 0}), DimensionMismatch);
}

TEST_CASE("is_ample and is_big examples") {
    const auto exe = builtin("ExE");
    CHECK(is_ample(exe, DivisorClass{1, 1, 0}).certified());
    CHECK(is_ample(builtin("C1xC2"), DivisorClass{1, 0}).refuted());
    CHECK(is_big(exe, DivisorClass{1, 1, 0}).certified());
    CHECK(is_big(exe, DivisorClass{1, 0, 0}).refuted());
    CHECK(self_int(exe.form, DivisorClass{1, 0, 1}) == Scalar(2));
    CHECK(is_big(exe, DivisorClass{1, 0, 1}).certified());
    // Refuted always carries a witness
    CHECK(is_ample(exe, DivisorClass{1, 0, 0}).witness.index() != 0);
}

TEST_CASE("ray_rationality") {
    CHECK(ray_rationality(DivisorClass{2, -1, 2}) == RayType::Rational);
    CHECK(ray_rationality(r2 * DivisorClass{1, 1, 0}) == RayType::Rational);
    CHECK_THROWS_AS(ray_rationality(DivisorClass::zero(3)), ZeroClass);
}

TEST_CASE("rays and primitive representatives") {
    CHECK(same_ray(DivisorClass{2, 4}, DivisorClass{1, 2}));
    CHECK_FALSE(same_ray(DivisorClass{-2, -4}, DivisorClass{1, 2}));
    CHECK(primitive_representative(DivisorClass{Scalar(Rational(1, 2)), Scalar(Rational(3, 4))}) == DivisorClass{2, 3});
    const auto c = make_candidate(builtin("C1xC2"), r2 * DivisorClass{3, 0});
    CHECK(c.cls == DivisorClass{1, 0});
    CHECK(c.primitive);
    CHECK(c.fiber_label == std::optional<std::string>("F1"));
    CHECK_THROWS_AS(make_candidate(builtin("C1xC2"), DivisorClass{1, 1}), PreconditionFailed);
    CHECK_THROWS_AS(make_candidate(builtin("C1xC2"), DivisorClass{-1, 0}), PreconditionFailed);
}

TEST_CASE("isotropic scan examples") {
    const auto c = isotropic_nef_rays(builtin("C1xC2"), 5);
    REQUIRE(c.size() == 2);
    CHECK(c[0].cls == DivisorClass{0, 1});
    CHECK(c[1].cls == DivisorClass{1, 0});
    CHECK(isotropic_nef_rays(builtin("P2"), 10).empty());
    const auto e = as_set(isotropic_nef_rays(builtin("ExE"), 2));
    for (const auto& v : std::vector<std::vector<long>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, -1, 2}}) CHECK(e.count(v) == 1);
    const auto b = isotropic_nef_rays(builtin("P2-blowup"), 10);
    REQUIRE(b.size() == 1);
    CHECK(b[0].cls == DivisorClass{1, -1});
    CHECK(b[0].fiber_label == std::optional<std::string>("line-through-point"));
    CHECK_THROWS_AS(isotropic_nef_rays(builtin("P2"), 0), PreconditionFailed);
}

TEST_CASE("isotropic scan agrees with the brute-force oracle") {
    for (const auto& name : builtin_names()) {
        const auto m = builtin(name);
        for (long box = 1; box <= 6; ++box) {
            const auto got = isotropic_nef_rays(m, box);
            REQUIRE(as_set(got) == oracle_rays(m, box));
            for (const auto& c : got) {
                REQUIRE(self_int(m.form, c.cls).is_zero());
                REQUIRE(sign(c.degree) > 0);
                for (const auto& curve : m.curves) REQUIRE(sign(pair(m.form, c.cls, curve.cls)) >= 0);
            }
        }
    }
}

TEST_CASE("exact fallback path matches the kernel path") {
    // an irrational ample reference forces the exact Scalar enumeration
    SurfaceModel m = builtin("C1xC2");
    m.ample_ref = DivisorClass{1, r2};
    validate(m);
    CHECK(as_set(isotropic_nef_rays(m, 4)) == as_set(isotropic_nef_rays(builtin("C1xC2"), 4)));
    SurfaceModel e = builtin("ExE");
    e.ample_ref = DivisorClass{r2, 1, 0};
    e.very_ample_ref = DivisorClass{2, 1, 1};
    validate(e);
    CHECK(as_set(isotropic_nef_rays(e, 3)) == as_set(isotropic_nef_rays(builtin("ExE"), 3)));
}

TEST_CASE("scan is deterministic and monotone in the box") {
    for (const auto& name : builtin_names()) {
        const auto m = builtin(name);
        const auto a = isotropic_nef_rays(m, 4);
        CHECK(a == isotropic_nef_rays(m, 4));
        const auto b = isotropic_nef_rays(m, 7);
        // results for the smaller box appear in the larger one, in the same order
        std::size_t j = 0;
        for (const auto& c : b)
            if (j < a.size() && c == a[j]) ++j;
        CHECK(j == a.size());
        for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i - 1].degree <= b[i].degree);
    }
}

TEST_CASE("gamma classes appear once they fit the box") {
    const auto exe = builtin("ExE");
    for (long box = 2; box <= 12; ++box) {
        const auto s = as_set(isotropic_nef_rays(exe, box));
        for (long m = 1; m * m - m <= box; ++m) CHECK(s.count(ints(gamma_class(m))) == 1);
    }
}

TEST_CASE("positivity implications on random classes") {
    std::mt19937_64 rng(31337);
    for (const auto& name : builtin_names()) {
        const auto m = builtin(name);
        const bool big_implies_nef = name != "P2-blowup";
        for (int i = 0; i < 2000; ++i) {
            const DivisorClass d = random_class(rng, m.rank(), 6);
            const bool ample = is_ample(m, d).certified();
            const bool big = is_big(m, d).certified();
            const bool nef_refuted = is_nef(m, d).refuted();
            if (ample) REQUIRE(big);
            if (ample) REQUIRE_FALSE(nef_refuted);
            if (big && big_implies_nef) REQUIRE_FALSE(nef_refuted);
        }
    }
    // big but not nef once the exceptional curve is present
    CHECK(is_big(builtin("P2-blowup"), DivisorClass{2, 1}).certified());
    CHECK(is_nef(builtin("P2-blowup"), DivisorClass{2, 1}).refuted());
}
