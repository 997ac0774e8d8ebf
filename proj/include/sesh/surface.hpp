#pragma once

// Surface models: a Néron–Severi lattice plus a catalogue of known curves.
//
// The very general point η is never represented as data. A curve record
// says how the members of its family that pass through η look there:
// `mult_eta` is their multiplicity at η and `moving` says whether the family
// covers the surface at all. Non-moving curves (e.g. exceptional curves of a
// blow-up) still constrain positivity but are skipped by every η-computation.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "sesh/lattice.hpp"
#include "sesh/scalar.hpp"

namespace sesh {

struct CurveRecord {
    std::string label;
    DivisorClass cls;
    long mult_eta = 1;
    bool irreducible = true;
    bool moving = true;

    friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

struct SurfaceModel {
    std::string name;
    IntersectionForm form;
    std::vector<CurveRecord> curves;
    DivisorClass ample_ref;
    DivisorClass very_ample_ref;
    /// Every irreducible curve through η of ample_ref-degree at most this
    /// bound is catalogued. Certificates are relative to it.
    Scalar complete_up_to;

    std::size_t rank() const { return form.rank(); }

    friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;
};

/// Checks a record against a form: nonzero class of the right rank,
/// mult_eta ≥ 1 and, for moving curves, C² ≥ m(m-1).
void validate_curve(const IntersectionForm& form, const CurveRecord& curve, const std::string& location);

/// Full model validation; throws ValidationError naming the invariant.
void validate(const SurfaceModel& model);

/// "P2", "C1xC2", "ExE", "P2-blowup". Throws UnknownSurface.
SurfaceModel builtin(std::string_view name);
std::vector<std::string> builtin_names();

/// Blow-up at a very general point: pulls back every curve, adds the strict
/// transform C - E of each moving family through the point (moving when
/// C² ≥ 1, a single rigid curve when C² = 0) and the non-moving exceptional
/// curve E.
SurfaceModel blow_up(const SurfaceModel& model);

/// Class of a fiber of (x, y) ↦ mx - y on E×E, solved from its pairings with
/// F1, F2 and Δ. Requires m ≥ 1.
DivisorClass gamma_class(long m);

/// Returns a new model with the record appended; throws ValidationError.
SurfaceModel add_curve(const SurfaceModel& model, CurveRecord record);

nlohmann::ordered_json scalar_to_json(const Scalar& x);
Scalar scalar_from_json(const nlohmann::ordered_json& j, const std::string& location);
nlohmann::ordered_json divisor_to_json(const DivisorClass& d);
DivisorClass divisor_from_json(const nlohmann::ordered_json& j, const std::string& location);

nlohmann::ordered_json to_json(const SurfaceModel& model);
/// Parses and validates. Throws ParseError or ValidationError.
SurfaceModel surface_from_json(const nlohmann::ordered_json& j);

/// Throws IoError, ParseError or ValidationError.
SurfaceModel load(const std::filesystem::path& path);
/// Two-space indentation with arrays of plain values kept on one line.
std::string dump_compact(const nlohmann::ordered_json& j);
void save(const SurfaceModel& model, const std::filesystem::path& path);

/// Index of the curve labelled `label`, or npos.
std::size_t find_curve(const SurfaceModel& model, std::string_view label);

}  // namespace sesh
