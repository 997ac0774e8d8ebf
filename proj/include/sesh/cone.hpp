#pragma once

// Catalogue-relative positivity tests and the isotropic nef ray search.
//
// Nothing here can see curves that are missing from a model's catalogue, so
// a Certified verdict always carries the model's completeness bound.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sesh/lattice.hpp"
#include "sesh/surface.hpp"

namespace sesh {

enum class VerdictStatus { Certified, Refuted, Inconclusive };

const char* to_string(VerdictStatus s);

struct Verdict {
    VerdictStatus status = VerdictStatus::Inconclusive;
    std::variant<std::monostate, DivisorClass, CurveRecord> witness;
    std::string caveat;
    /// Set on Certified verdicts.
    std::optional<Scalar> completeness_bound;

    bool certified() const { return status == VerdictStatus::Certified; }
    bool refuted() const { return status == VerdictStatus::Refuted; }
};

enum class RayType { Rational, Irrational };

const char* to_string(RayType t);

struct FibrationCandidate {
    DivisorClass cls;
    bool primitive = false;
    RayType ray_type = RayType::Rational;
    /// cls · ample_ref
    Scalar degree;
    /// Catalogued curve with square zero on this ray, i.e. a known fiber.
    std::optional<std::string> fiber_label;

    friend bool operator==(const FibrationCandidate&, const FibrationCandidate&) = default;
};

Verdict is_nef(const SurfaceModel& model, const DivisorClass& d);
Verdict is_ample(const SurfaceModel& model, const DivisorClass& d);
Verdict is_big(const SurfaceModel& model, const DivisorClass& d);

/// Primitive integer classes v in [-box, box]^ρ with v² = 0, v·ample_ref > 0
/// and v·C ≥ 0 for every catalogued curve, sorted by degree then
/// lexicographically.
std::vector<FibrationCandidate> isotropic_nef_rays(const SurfaceModel& model, long box);

/// Rational iff d is a Scalar multiple of a rational vector. Throws ZeroClass.
RayType ray_rationality(const DivisorClass& d);

/// d = c·e for some Scalar c > 0.
bool same_ray(const DivisorClass& d, const DivisorClass& e);

/// Primitive integer vector on the ray of a nonzero rational class.
DivisorClass primitive_representative(const DivisorClass& d);

/// Validates the candidate invariants (d² = 0, d·ample_ref > 0, no catalogue
/// curve pairs negatively) and classifies the ray. Throws PreconditionFailed.
FibrationCandidate make_candidate(const SurfaceModel& model, const DivisorClass& d);

/// First candidate whose ray contains d.
std::optional<FibrationCandidate> candidate_on_ray(const std::vector<FibrationCandidate>& candidates,
                                                   const DivisorClass& d);

}  // namespace sesh
