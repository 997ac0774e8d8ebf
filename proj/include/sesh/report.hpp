#pragma once

// Report assembly for the command-line front end. Every command builds an
// ordered JSON payload; text rendering walks the same tree.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sesh/seshadri.hpp"

namespace sesh {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

enum class ExitCode : int { Ok = 0, Input = 1, Inconsistent = 2, Io = 3 };

struct Report {
    std::string surface;
    std::string command;
    ordered_json inputs = ordered_json::object();
    ordered_json results = ordered_json::object();
    std::vector<std::string> caveats;
    ExitCode exit = ExitCode::Ok;
    std::optional<double> timing_ms;
};

ordered_json to_json(const Report& r);
/// Inverse of to_json; throws ParseError on a malformed document.
Report report_from_json(const ordered_json& j);

std::string render_json(const Report& r);
std::string render_text(const Report& r, bool color);

/// {"exact": [4 coords], "text": symbolic, "approx": [lo, hi]}
ordered_json scalar_json(const Scalar& x);
/// Exact value when representable, otherwise the exact square.
ordered_json magnitude_json(const Magnitude& m);
ordered_json divisor_json(const DivisorClass& d);
ordered_json verdict_json(const Verdict& v);
ordered_json candidate_json(const FibrationCandidate& c);
ordered_json estimate_json(const SeshadriEstimate& e);

Report analyze_report(const SurfaceModel& model, const DivisorClass& d);
Report seshadri_report(const SurfaceModel& model, const DivisorClass& a, long box);
Report mult_report(const SurfaceModel& model, const DivisorClass& a, long box);
Report fibration_scan_report(const SurfaceModel& model, long box);
Report criteria_report(const SurfaceModel& model, const DivisorClass& a, long box, T2WitnessChoice choice);
Report mx_scan_report(const SurfaceModel& model, long degree_bound, long box);
Report family_demo_report(const SurfaceModel& model, const DivisorClass& fiber, const DivisorClass& a,
                          const Rational& alpha, long n_max);

struct ScenarioResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The bundled scenario suite; uses builtin models only.
std::vector<ScenarioResult> run_scenarios();
Report verify_paper_report();

}  // namespace sesh
