#pragma once

// Seshadri constants at a very general point, the multiplicity invariant
// m(A), the exceptional-curve feasibility filter and the fibration criteria.
//
// Seshadri values are Magnitudes: when √(A²) leaves Q(√2,√3) the value is
// carried by its square and every comparison is done on squares.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sesh/cone.hpp"
#include "sesh/magnitude.hpp"
#include "sesh/surface.hpp"

namespace sesh {

/// The surface itself realizes the bound √(A²).
struct SurfaceItself {
    friend bool operator==(const SurfaceItself&, const SurfaceItself&) = default;
};

using SeshadriWitness = std::variant<CurveRecord, SurfaceItself>;

std::string witness_label(const SeshadriWitness& w);

struct SeshadriUpper {
    Magnitude value;
    SeshadriWitness witness;
};

struct SeshadriEstimate {
    Magnitude lower;
    Magnitude upper;
    SeshadriWitness upper_witness;
    long certified_box = 0;
    bool exact = false;
};

/// min over moving catalogued curves of (a·C)/mult_eta(C), capped by √(a²).
/// Ties go to the earlier curve; the cap wins only when strictly smaller.
/// Requires is_ample(a) not Refuted.
SeshadriUpper seshadri_upper(const SurfaceModel& model, const DivisorClass& a);

/// Certified lower bound: no class v in [-box, box]^ρ with v² ≥ 0 and
/// v·ample_ref > 0, carrying a multiplicity m with m(m-1) ≤ v², has
/// (a·v)/m below it. Also never exceeds a catalogue ratio or √(a²).
Magnitude seshadri_lower(const SurfaceModel& model, const DivisorClass& a, long box);

SeshadriEstimate seshadri_estimate(const SurfaceModel& model, const DivisorClass& a, long box);

enum class FilterClass { FibrationShape, Admissible, Rejected, Infeasible };

const char* to_string(FilterClass c);

struct FeasibilityReport {
    bool degree_bound = false;        // a·c ≤ m
    bool multiplicity_bound = false;  // c² ≥ m(m-1)
    std::optional<bool> hodge;        // (a·c)² ≥ a²c², only when a² > 0
    FilterClass classification = FilterClass::Rejected;
    std::string note;
};

/// Feasibility of c as a curve with multiplicity m at η that is Seshadri
/// exceptional for a with ε ≤ 1. With alpha set (the m(A) > 2 + α context),
/// m ≥ 2 is infeasible as soon as (2 + α)(m - 1) > m.
FeasibilityReport exceptional_filter(const SurfaceModel& model, const DivisorClass& a, const DivisorClass& c, long m,
                                     std::optional<Rational> alpha = std::nullopt);

/// Sum of distinct moving catalogued curves with a - sum catalogue-nef.
struct CatalogueWitness {
    std::vector<std::size_t> curves;
    long total_mult = 0;
    DivisorClass cls;
};

/// The subset with the largest total multiplicity (first in subset order on ties).
CatalogueWitness catalogue_witness(const SurfaceModel& model, const DivisorClass& a);

enum class MultSource { Formula, CatalogueWitness };

const char* to_string(MultSource s);

struct MultiplicityBounds {
    Magnitude lower;
    Scalar upper;
    MultSource lower_source = MultSource::Formula;
    std::string witness;
    Magnitude formula;
    long catalogue_mult = 0;
    SeshadriEstimate estimate;
};

/// ε + (a² - ε²)/(2ε), which decreases in ε on (0, √(a²)].
Magnitude multiplicity_formula(const Magnitude& eps, const Scalar& a2);

MultiplicityBounds multiplicity_bounds(const SurfaceModel& model, const DivisorClass& a, long box);
Magnitude m_lower(const SurfaceModel& model, const DivisorClass& a, long box);
/// a · very_ample_ref
Scalar m_upper(const SurfaceModel& model, const DivisorClass& a);

struct CcResult {
    bool fired = false;
    Scalar a2;
    Scalar three_eps2;
    Verdict verdict;
    SeshadriWitness witness;
    std::optional<FibrationCandidate> candidate;
    /// false when the criterion fired but no isotropic ray in the box contains the witness.
    bool consistent = true;
};

CcResult criterion_cc(const SurfaceModel& model, const DivisorClass& a, long box);

struct C1Row {
    DivisorClass a;
    Scalar a2;
    Scalar four_eps2;
    bool holds = true;
};

struct C1Report {
    std::vector<C1Row> rows;
    std::size_t violations = 0;
    bool has_isotropic_ray = false;
    /// A violation on a model with no isotropic nef ray contradicts the
    /// no-fibration bound and points at an incomplete catalogue.
    bool consistent = true;
};

C1Report criterion_c1(const SurfaceModel& model, const std::vector<DivisorClass>& samples, long box);

enum class T2Class { FibrationSmooth, HodgeExcluded, ProductLike, Infeasible };

const char* to_string(T2Class c);

/// Classifies a Seshadri-exceptional witness C with mult m for an ample A
/// with ε(η, A) = 1 from the numbers A², A·C, C², m.
T2Class classify_t2(const Scalar& a2, const Scalar& ac, const Scalar& c2, long m);

enum class T2WitnessChoice { SeshadriCurve, CatalogueComposite };

struct T2Result {
    T2Class classification = T2Class::Infeasible;
    DivisorClass witness;
    long witness_mult = 1;
    std::vector<std::string> components;
    std::vector<FibrationCandidate> candidates;
    std::optional<CcResult> delegated;
    std::string reason;
    bool consistent = true;
};

/// Requires a² > 1 and an exact Seshadri estimate equal to 1.
T2Result criterion_t2(const SurfaceModel& model, const DivisorClass& a, long box,
                      T2WitnessChoice choice = T2WitnessChoice::SeshadriCurve);

struct FamilyRow {
    long n = 0;
    DivisorClass cls;
    Magnitude eps_upper;
    bool eps_le_one = false;
    Magnitude m_lower;
    bool m_ge_n = false;
};

struct FamilyDemo {
    std::string fiber_label;
    Rational alpha;
    std::vector<FamilyRow> rows;
    bool unbounded = false;
};

/// Rows α·a + n·F for n = 0..n_max, F the catalogued fiber on f's ray.
FamilyDemo unbounded_family_demo(const SurfaceModel& model, const FibrationCandidate& f, const DivisorClass& a,
                                 const Rational& alpha, long n_max);

struct FamilyMember {
    DivisorClass original;
    Rational scale;
    DivisorClass cls;
    Magnitude m_lower;
    MultSource source = MultSource::Formula;
    SeshadriWitness witness;
};

struct FamilyScan {
    std::vector<FamilyMember> family;
    Magnitude best_m_lower;
    bool exceeds_two = false;
    std::optional<FibrationCandidate> linked_candidate;
    std::optional<FamilyDemo> certification;
    std::vector<FibrationCandidate> candidates;
    std::vector<std::string> notices;
    /// exceeds_two agrees with the presence of isotropic nef rays
    bool consistent = true;
};

FamilyScan mx_scan(const SurfaceModel& model, long degree_bound, long box);

}  // namespace sesh
