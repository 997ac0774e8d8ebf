#include "sesh/seshadri.hpp"

#include <cmath>

#include "integral.hpp"
#include "sesh/errors.hpp"
#include "sesh/simd/kernels.hpp"

namespace sesh {

namespace {

void require_not_refuted_ample(const SurfaceModel& m, const DivisorClass& a, const char* op) {
    if (is_ample(m, a).refuted()) throw PreconditionFailed(std::string(op) + " requires an ample class, got " + to_string(a));
}

// Largest m ≥ 1 with m(m-1) ≤ t, for t ≥ 0.
std::int64_t max_multiplicity(std::int64_t t) {
    auto m = static_cast<std::int64_t>((1.0L + std::sqrt(1.0L + 4.0L * static_cast<long double>(t))) / 2.0L);
    if (m < 1) m = 1;
    while (static_cast<__int128>(m) * (m + 1) <= t) ++m;
    while (m > 1 && static_cast<__int128>(m) * (m - 1) > t) --m;
    return m;
}

long max_multiplicity(const Scalar& v2) {
    long m = 1;
    while (Scalar((m + 1) * m) <= v2) ++m;
    return m;
}

Magnitude clamp_nonnegative(const Scalar& x) { return sign(x) < 0 ? Magnitude::exact(Scalar()) : Magnitude::exact(x); }

// Minimum of (a·v)/m over the box; nullopt when no pair is feasible.
std::optional<Scalar> box_minimum(const SurfaceModel& model, const DivisorClass& a, long box) {
    const std::size_t n = model.rank();
    const simd::LatticeBlock block = simd::box_block(n, box);
    const std::size_t count = block.count();
    const Scalar a2 = self_int(model.form, a);

    auto gram = detail::integral(model.form);
    auto amp = detail::integral(model.ample_ref);
    auto ai = detail::integral(a);
    std::optional<std::vector<std::int64_t>> w_amp, w_a;
    if (gram && amp && ai && simd::quad_fits(gram->values, n, box)) {
        w_amp = detail::gram_times(*gram, *amp);
        w_a = detail::gram_times(*gram, *ai);
    }

    if (w_amp && w_a) {
        std::vector<std::int64_t> q(count), deg(count), p(count);
        simd::quad(gram->values, block, q);
        simd::dot(*w_amp, block, deg);
        simd::dot(*w_a, block, p);
        const Integer sg = gram->scale, sa = ai->scale;
        const std::int64_t sg64 = sg.get_si();
        const Rational hodge_scale = Rational(a2.rational() * sg * sa * sa);
        std::int64_t best_p = 0, best_m = 0;
        bool found = false;
        for (std::size_t i = 0; i < count; ++i) {
            if (q[i] < 0 || deg[i] <= 0) continue;
            const std::int64_t m = max_multiplicity(q[i] / sg64);
            if (found && static_cast<__int128>(p[i]) * best_m >= static_cast<__int128>(best_p) * m) continue;
            // (a·v)² ≥ a²·v² in scaled integers
            const Integer pi = static_cast<long>(p[i]);
            if (p[i] > 0 && Rational(pi * pi) < hodge_scale * static_cast<long>(q[i])) continue;
            best_p = p[i];
            best_m = m;
            found = true;
        }
        if (!found) return std::nullopt;
        Rational r(Integer(static_cast<long>(best_p)), Integer(Integer(static_cast<long>(best_m)) * sg * sa));
        r.canonicalize();
        return Scalar(r);
    }

    std::optional<Scalar> best;
    for (std::size_t i = 0; i < count; ++i) {
        const DivisorClass v = detail::to_divisor(block.vector_at(i));
        const Scalar v2 = self_int(model.form, v);
        if (sign(v2) < 0 || sign(pair(model.form, v, model.ample_ref)) <= 0) continue;
        const Scalar av = pair(model.form, a, v);
        const Scalar ratio = av / Scalar(max_multiplicity(v2));
        if (best && ratio >= *best) continue;
        if (sign(av) > 0 && av * av < a2 * v2) continue;
        best = ratio;
    }
    return best;
}

Magnitude min_of(const Magnitude& x, const Magnitude& y) { return y < x ? y : x; }

}  // namespace

std::string witness_label(const SeshadriWitness& w) {
    if (const auto* c = std::get_if<CurveRecord>(&w)) return c->label;
    return "SurfaceItself";
}

SeshadriUpper seshadri_upper(const SurfaceModel& model, const DivisorClass& a) {
    require_not_refuted_ample(model, a, "seshadri_upper");
    const Magnitude cap = Magnitude::root_of(self_int(model.form, a));
    std::optional<std::size_t> best_index;
    Scalar best_ratio;
    for (std::size_t i = 0; i < model.curves.size(); ++i) {
        const auto& c = model.curves[i];
        if (!c.moving) continue;
        const Scalar ratio = pair(model.form, a, c.cls) / Scalar(c.mult_eta);
        if (!best_index || ratio < best_ratio) {
            best_index = i;
            best_ratio = ratio;
        }
    }
    if (!best_index) {
        if (!cap.is_exact()) throw EmptyCatalogue("no moving curves in " + model.name + " and √(a²) is not representable");
        return {cap, SurfaceItself{}};
    }
    const Magnitude curve_value = clamp_nonnegative(best_ratio);
    if (cap < curve_value) return {cap, SurfaceItself{}};
    return {curve_value, model.curves[*best_index]};
}

Magnitude seshadri_lower(const SurfaceModel& model, const DivisorClass& a, long box) {
    require_not_refuted_ample(model, a, "seshadri_lower");
    if (box < 1) throw PreconditionFailed("box must be >= 1");
    Magnitude best = Magnitude::root_of(self_int(model.form, a));
    for (const auto& c : model.curves) {
        if (!c.moving) continue;
        best = min_of(best, clamp_nonnegative(pair(model.form, a, c.cls) / Scalar(c.mult_eta)));
    }
    if (auto m = box_minimum(model, a, box)) best = min_of(best, clamp_nonnegative(*m));
    return best;
}

SeshadriEstimate seshadri_estimate(const SurfaceModel& model, const DivisorClass& a, long box) {
    SeshadriUpper up = seshadri_upper(model, a);
    SeshadriEstimate e;
    e.lower = seshadri_lower(model, a, box);
    e.upper = up.value;
    e.upper_witness = std::move(up.witness);
    e.certified_box = box;
    e.exact = e.lower == e.upper;
    return e;
}

const char* to_string(FilterClass c) {
    switch (c) {
        case FilterClass::FibrationShape: return "FibrationShape";
        case FilterClass::Admissible: return "Admissible";
        case FilterClass::Rejected: return "Rejected";
        case FilterClass::Infeasible: return "Infeasible";
    }
    return "?";
}

FeasibilityReport exceptional_filter(const SurfaceModel& model, const DivisorClass& a, const DivisorClass& c, long m,
                                     std::optional<Rational> alpha) {
    if (c.is_zero()) throw ZeroClass();
    if (m < 1) throw PreconditionFailed("multiplicity must be >= 1");
    const Scalar a2 = self_int(model.form, a);
    const Scalar ac = pair(model.form, a, c);
    const Scalar c2 = self_int(model.form, c);
    FeasibilityReport r;
    r.degree_bound = ac <= Scalar(m);
    r.multiplicity_bound = c2 >= Scalar(m * (m - 1));
    if (sign(a2) > 0) r.hodge = ac * ac >= a2 * c2;

    if (!r.degree_bound || !r.multiplicity_bound || (r.hodge && !*r.hodge)) {
        r.classification = FilterClass::Rejected;
        if (!r.multiplicity_bound) r.note = "violates C^2 >= m(m-1)";
        else if (!r.degree_bound) r.note = "a.c exceeds m, so the ratio exceeds 1";
        else r.note = "violates the Hodge index inequality";
        return r;
    }
    if (m >= 2 && alpha && (Rational(2) + *alpha) * (m - 1) > m) {
        r.classification = FilterClass::Infeasible;
        r.note = "a.c >= (2+alpha)(m-1) > m contradicts a.c <= m";
        return r;
    }
    if (m == 1 && c2.is_zero()) {
        r.classification = FilterClass::FibrationShape;
        r.note = "smooth at eta with C^2 = 0";
    } else {
        r.classification = FilterClass::Admissible;
    }
    return r;
}

CatalogueWitness catalogue_witness(const SurfaceModel& model, const DivisorClass& a) {
    std::vector<std::size_t> moving;
    for (std::size_t i = 0; i < model.curves.size(); ++i)
        if (model.curves[i].moving) moving.push_back(i);
    if (moving.size() > 20) throw PreconditionFailed("catalogue witness search supports at most 20 moving curves");

    CatalogueWitness best{{}, 0, DivisorClass::zero(model.rank())};
    const std::size_t subsets = std::size_t{1} << moving.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        long mult = 0;
        DivisorClass sum = DivisorClass::zero(model.rank());
        std::vector<std::size_t> chosen;
        for (std::size_t b = 0; b < moving.size(); ++b) {
            if ((mask >> b & 1U) == 0) continue;
            const auto& c = model.curves[moving[b]];
            mult += c.mult_eta;
            sum += c.cls;
            chosen.push_back(moving[b]);
        }
        if (mult <= best.total_mult) continue;
        if (!is_nef(model, a - sum).certified()) continue;
        best = {std::move(chosen), mult, std::move(sum)};
    }
    return best;
}

const char* to_string(MultSource s) { return s == MultSource::Formula ? "Formula" : "CatalogueWitness"; }

Magnitude multiplicity_formula(const Magnitude& eps, const Scalar& a2) {
    if (sign(eps.square()) <= 0) throw PreconditionFailed("multiplicity formula needs a positive Seshadri bound");
    const Scalar numer = eps.square() + a2;
    if (eps.is_exact()) return Magnitude::exact(numer / (Scalar(2) * *eps.value()));
    return Magnitude::root_of(numer * numer / (Scalar(4) * eps.square()));
}

MultiplicityBounds multiplicity_bounds(const SurfaceModel& model, const DivisorClass& a, long box) {
    MultiplicityBounds b;
    b.estimate = seshadri_estimate(model, a, box);
    if (sign(b.estimate.lower.square()) <= 0) throw PreconditionFailed("m_lower needs a positive Seshadri lower bound");
    const Scalar a2 = self_int(model.form, a);
    // The formula is decreasing in ε, so the upper bound keeps it a lower bound for m(A).
    b.formula = multiplicity_formula(b.estimate.upper, a2);
    const CatalogueWitness w = catalogue_witness(model, a);
    b.catalogue_mult = w.total_mult;
    const Magnitude witness_value = Magnitude::exact(Scalar(w.total_mult));
    if (witness_value > b.formula) {
        b.lower = witness_value;
        b.lower_source = MultSource::CatalogueWitness;
        for (std::size_t i = 0; i < w.curves.size(); ++i)
            b.witness += (i > 0 ? " + " : "") + model.curves[w.curves[i]].label;
    } else {
        b.lower = b.formula;
        b.lower_source = MultSource::Formula;
        b.witness = "eps + (a^2 - eps^2)/(2 eps) with eps = " + b.estimate.upper.to_string();
    }
    b.upper = m_upper(model, a);
    return b;
}

Magnitude m_lower(const SurfaceModel& model, const DivisorClass& a, long box) { return multiplicity_bounds(model, a, box).lower; }

Scalar m_upper(const SurfaceModel& model, const DivisorClass& a) { return pair(model.form, a, model.very_ample_ref); }

CcResult criterion_cc(const SurfaceModel& model, const DivisorClass& a, long box) {
    const SeshadriUpper up = seshadri_upper(model, a);
    CcResult r;
    r.a2 = self_int(model.form, a);
    r.three_eps2 = Scalar(3) * up.value.square();
    r.witness = up.witness;
    r.fired = r.a2 > r.three_eps2;
    if (!r.fired) {
        r.verdict.status = VerdictStatus::Inconclusive;
        r.verdict.caveat = "a^2 <= 3 eps^2: the criterion is sufficient, not necessary";
        return r;
    }
    const auto* curve = std::get_if<CurveRecord>(&up.witness);
    if (curve != nullptr) r.candidate = candidate_on_ray(isotropic_nef_rays(model, box), curve->cls);
    if (r.candidate) {
        r.verdict.status = VerdictStatus::Certified;
        r.verdict.witness = r.candidate->cls;
        r.verdict.caveat = "fibration predicted with Seshadri-exceptional fiber " + witness_label(up.witness);
        r.verdict.completeness_bound = model.complete_up_to;
    } else {
        r.consistent = false;
        r.verdict.status = VerdictStatus::Inconclusive;
        r.verdict.caveat = "criterion fired but no isotropic nef ray within box " + std::to_string(box) +
                           " contains the Seshadri witness; increase box";
    }
    return r;
}

C1Report criterion_c1(const SurfaceModel& model, const std::vector<DivisorClass>& samples, long box) {
    C1Report rep;
    for (const auto& a : samples) {
        if (!is_ample(model, a).certified()) throw PreconditionFailed("criterion_c1 sample " + to_string(a) + " is not ample");
        const SeshadriUpper up = seshadri_upper(model, a);
        C1Row row{a, self_int(model.form, a), Scalar(4) * up.value.square(), true};
        row.holds = row.a2 <= row.four_eps2;
        if (!row.holds) ++rep.violations;
        rep.rows.push_back(std::move(row));
    }
    rep.has_isotropic_ray = !isotropic_nef_rays(model, box).empty();
    rep.consistent = rep.violations == 0 || rep.has_isotropic_ray;
    return rep;
}

const char* to_string(T2Class c) {
    switch (c) {
        case T2Class::FibrationSmooth: return "FibrationSmooth";
        case T2Class::HodgeExcluded: return "HodgeExcluded";
        case T2Class::ProductLike: return "ProductLike";
        case T2Class::Infeasible: return "Infeasible";
    }
    return "?";
}

T2Class classify_t2(const Scalar& a2, const Scalar& ac, const Scalar& c2, long m) {
    if (sign(a2) > 0 && ac * ac < a2 * c2) return T2Class::HodgeExcluded;
    if (c2 < Scalar(m * (m - 1))) return T2Class::Infeasible;
    if (m == 1 && c2.is_zero()) return T2Class::FibrationSmooth;
    if (m == 2 && c2 == Scalar(2) && a2 == Scalar(2)) {
        // A ≡ C: A·(A - C) = 0 and (A - C)² = 0
        const Scalar a_dot_diff = a2 - ac;
        const Scalar diff_sq = a2 - Scalar(2) * ac + c2;
        if (a_dot_diff.is_zero() && diff_sq.is_zero()) return T2Class::ProductLike;
    }
    return T2Class::Infeasible;
}

T2Result criterion_t2(const SurfaceModel& model, const DivisorClass& a, long box, T2WitnessChoice choice) {
    const Scalar a2 = self_int(model.form, a);
    if (a2 <= Scalar(1)) throw PreconditionFailed("criterion_t2 requires a^2 > 1");
    const SeshadriEstimate est = seshadri_estimate(model, a, box);
    if (!est.exact || est.upper.square() != Scalar(1))
        throw PreconditionFailed("criterion_t2 requires an exact Seshadri constant equal to 1 (got [" + est.lower.to_string() +
                                 ", " + est.upper.to_string() + "])");

    T2Result r;
    std::vector<std::size_t> parts;
    if (choice == T2WitnessChoice::SeshadriCurve) {
        const auto* c = std::get_if<CurveRecord>(&est.upper_witness);
        if (c == nullptr) throw PreconditionFailed("Seshadri witness is the surface itself");
        r.witness = c->cls;
        r.witness_mult = c->mult_eta;
        parts.push_back(find_curve(model, c->label));
    } else {
        const CatalogueWitness w = catalogue_witness(model, a);
        if (w.total_mult == 0 || pair(model.form, a, w.cls) != Scalar(w.total_mult))
            throw PreconditionFailed("no catalogue composite is Seshadri exceptional for " + to_string(a));
        r.witness = w.cls;
        r.witness_mult = w.total_mult;
        parts = w.curves;
    }
    for (auto i : parts) r.components.push_back(model.curves[i].label);

    const Scalar ac = pair(model.form, a, r.witness);
    const Scalar c2 = self_int(model.form, r.witness);
    r.classification = classify_t2(a2, ac, c2, r.witness_mult);
    if (a2 >= Scalar(4)) r.delegated = criterion_cc(model, a, box);

    switch (r.classification) {
        case T2Class::FibrationSmooth: r.reason = "witness is smooth at eta with C^2 = 0"; break;
        case T2Class::ProductLike: r.reason = "C^2 = 2, mult 2 and A = C numerically; components give fibrations"; break;
        case T2Class::HodgeExcluded: r.reason = "witness violates (A.C)^2 >= A^2 C^2"; break;
        case T2Class::Infeasible: r.reason = "witness violates C^2 >= m(m-1) or fits no branch"; break;
    }
    if (r.classification == T2Class::FibrationSmooth || r.classification == T2Class::ProductLike) {
        const auto rays = isotropic_nef_rays(model, box);
        std::vector<DivisorClass> targets;
        if (r.classification == T2Class::FibrationSmooth) targets.push_back(r.witness);
        else
            for (auto i : parts) targets.push_back(model.curves[i].cls);
        for (const auto& t : targets) {
            if (auto c = candidate_on_ray(rays, t)) r.candidates.push_back(*c);
            else r.consistent = false;
        }
        if (!r.consistent) r.reason += "; some component has no isotropic nef ray within the box, increase box";
    }
    return r;
}

FamilyDemo unbounded_family_demo(const SurfaceModel& model, const FibrationCandidate& f, const DivisorClass& a,
                                 const Rational& alpha, long n_max) {
    const FibrationCandidate checked = make_candidate(model, f.cls);
    (void)checked;
    if (!is_ample(model, a).certified()) throw PreconditionFailed("family demo needs an ample class a");
    if (alpha <= 0) throw PreconditionFailed("alpha must be positive");
    if (n_max < 0) throw PreconditionFailed("n_max must be >= 0");

    const CurveRecord* fiber = nullptr;
    for (const auto& c : model.curves)
        if (c.moving && self_int(model.form, c.cls).is_zero() && same_ray(c.cls, f.cls)) {
            fiber = &c;
            break;
        }
    if (fiber == nullptr) throw PreconditionFailed("no catalogued fiber through eta on the ray of " + to_string(f.cls));
    if (Scalar(alpha) * pair(model.form, a, fiber->cls) > Scalar(1))
        throw PreconditionFailed("alpha * (a . F) must be <= 1");

    FamilyDemo demo;
    demo.fiber_label = fiber->label;
    demo.alpha = alpha;
    demo.unbounded = true;
    const DivisorClass base = Scalar(alpha) * a;
    const long base_mult = catalogue_witness(model, a).total_mult;
    for (long n = 0; n <= n_max; ++n) {
        FamilyRow row;
        row.n = n;
        row.cls = base + Scalar(n) * fiber->cls;
        const SeshadriUpper up = seshadri_upper(model, row.cls);
        row.eps_upper = up.value;
        row.eps_le_one = up.value <= Magnitude::exact(Scalar(1));
        // n fibers through η plus α times a catalogue decomposition of a
        const Magnitude fiber_witness = Magnitude::exact(Scalar(Rational(Rational(n * fiber->mult_eta) + alpha * base_mult)));
        const Magnitude formula = multiplicity_formula(up.value, self_int(model.form, row.cls));
        row.m_lower = fiber_witness > formula ? fiber_witness : formula;
        row.m_ge_n = row.m_lower >= Magnitude::exact(Scalar(n));
        demo.unbounded = demo.unbounded && row.eps_le_one && row.m_ge_n;
        demo.rows.push_back(std::move(row));
    }
    return demo;
}

FamilyScan mx_scan(const SurfaceModel& model, long degree_bound, long box) {
    if (degree_bound < 1) throw PreconditionFailed("degree bound must be >= 1");
    FamilyScan scan;
    scan.best_m_lower = Magnitude::exact(Scalar());
    const simd::LatticeBlock block = simd::box_block(model.rank(), box);

    for (std::size_t i = 0; i < block.count(); ++i) {
        const auto v = block.vector_at(i);
        if (detail::gcd_of(v) != 1) continue;
        const DivisorClass a = detail::to_divisor(v);
        const Scalar deg = pair(model.form, a, model.ample_ref);
        if (sign(deg) <= 0 || deg > Scalar(degree_bound)) continue;
        if (!is_ample(model, a).certified()) continue;
        const SeshadriUpper up = seshadri_upper(model, a);
        if (!up.value.is_exact() || !up.value.value()->is_rational()) {
            scan.notices.push_back("skipped " + to_string(a) + ": eps upper " + up.value.to_string() + " is not rational");
            continue;
        }
        FamilyMember mem;
        mem.original = a;
        mem.scale = 1 / up.value.value()->rational();
        mem.cls = Scalar(mem.scale) * a;
        const MultiplicityBounds mb = multiplicity_bounds(model, mem.cls, box);
        mem.m_lower = mb.lower;
        mem.source = mb.lower_source;
        mem.witness = mb.estimate.upper_witness;
        if (mem.m_lower > scan.best_m_lower) scan.best_m_lower = mem.m_lower;
        scan.family.push_back(std::move(mem));
    }

    const Magnitude two = Magnitude::exact(Scalar(2));
    scan.exceeds_two = scan.best_m_lower > two;
    scan.candidates = isotropic_nef_rays(model, box);

    for (const auto& c : scan.candidates) {
        if (!c.fiber_label) continue;
        const CurveRecord& fiber = model.curves[find_curve(model, *c.fiber_label)];
        const Rational alpha = 1 / pair(model.form, model.ample_ref, fiber.cls).rational();
        FamilyDemo demo = unbounded_family_demo(model, c, model.ample_ref, alpha, 3);
        if (demo.unbounded && demo.rows.back().m_lower > two) {
            scan.exceeds_two = true;
            scan.certification = std::move(demo);
            scan.linked_candidate = c;
            break;
        }
    }
    if (scan.exceeds_two && !scan.linked_candidate) {
        for (const auto& mem : scan.family) {
            const auto* w = std::get_if<CurveRecord>(&mem.witness);
            if (mem.m_lower == scan.best_m_lower && w != nullptr) scan.linked_candidate = candidate_on_ray(scan.candidates, w->cls);
            if (scan.linked_candidate) break;
        }
        if (!scan.linked_candidate && !scan.candidates.empty()) scan.linked_candidate = scan.candidates.front();
    }
    scan.consistent = scan.exceeds_two == !scan.candidates.empty();
    if (!scan.consistent)
        scan.notices.push_back(scan.exceeds_two ? "m_lower exceeds 2 but no isotropic nef ray was found; increase box"
                                                : "isotropic nef rays exist but no family exceeded 2");
    return scan;
}

}  // namespace sesh
