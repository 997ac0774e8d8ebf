#include <cmath>

#include "doctest.h"
#include "sesh/errors.hpp"
#include "sesh/report.hpp"

using namespace sesh;

namespace {

std::vector<Report> sample_reports() {
    const auto exe = builtin("ExE");
    const auto c = builtin("C1xC2");
    return {
        analyze_report(exe, DivisorClass{Scalar::sqrt2(), Scalar::sqrt3(), Scalar(2) * Scalar::sqrt3() - Scalar(3) * Scalar::sqrt2()}),
        seshadri_report(exe, DivisorClass{1, 1, 0}, 10),
        seshadri_report(builtin("P2-blowup"), DivisorClass{3, -2}, 5),
        mult_report(exe, DivisorClass{1, 4, 0}, 6),
        fibration_scan_report(builtin("P2"), 10),
        criteria_report(c, DivisorClass{1, 1}, 6, T2WitnessChoice::CatalogueComposite),
        criteria_report(builtin("P2"), DivisorClass{1}, 6, T2WitnessChoice::SeshadriCurve),
        mx_scan_report(exe, 3, 4),
        family_demo_report(c, DivisorClass{1, 0}, DivisorClass{1, 1}, Rational(1, 2), 5),
    };
}

}  // namespace

TEST_CASE("reports round-trip through JSON") {
    for (auto r : sample_reports()) {
        r.timing_ms = 1.5;
        const std::string text = render_json(r);
        const Report back = report_from_json(ordered_json::parse(text));
        CHECK(render_json(back) == text);
        CHECK(to_json(back) == to_json(r));
    }
}

TEST_CASE("reruns give byte-identical results") {
    const auto a = sample_reports();
    const auto b = sample_reports();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].results.dump() == b[i].results.dump());
}

TEST_CASE("top-level key order follows the schema") {
    Report r = seshadri_report(builtin("ExE"), DivisorClass{1, 1, 0}, 10);
    r.timing_ms = 2.0;
    const ordered_json j = to_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"tool_version", "surface", "command", "inputs", "results", "caveats", "exit", "timing_ms"});
}

TEST_CASE("seshadri report content") {
    const Report r = seshadri_report(builtin("ExE"), DivisorClass{1, 1, 0}, 10);
    CHECK(r.exit == ExitCode::Ok);
    CHECK(r.results["lower"]["text"] == "1");
    CHECK(r.results["upper"]["text"] == "1");
    CHECK(r.results["witness"]["label"] == "F1");
    CHECK(r.results["exact"] == true);
    CHECK(r.caveats.size() == 2);
}

TEST_CASE("scalar rendering carries exact coordinates and an enclosure") {
    const ordered_json j = scalar_json(Scalar(15) - Scalar(6) * Scalar::sqrt6());
    CHECK(j["exact"] == ordered_json::array({"15", "0", "0", "-6"}));
    const double lo = std::stod(j["approx"][0].get<std::string>());
    const double hi = std::stod(j["approx"][1].get<std::string>());
    CHECK(lo <= hi);
    const double ref = 15.0 - 6.0 * std::sqrt(6.0);
    CHECK(lo <= ref + 1e-12);
    CHECK(hi >= ref - 1e-12);
    CHECK(hi - lo < 1e-12);
    const ordered_json m = magnitude_json(Magnitude::root_of(Scalar(5)));
    CHECK(m["representable"] == false);
    CHECK_FALSE(m.contains("value"));
    CHECK(m["square"]["exact"] == ordered_json::array({"5", "0", "0", "0"}));
}

TEST_CASE("text rendering without color has no escape codes") {
    for (const auto& r : sample_reports()) {
        CHECK(render_text(r, false).find('\033') == std::string::npos);
        CHECK_FALSE(render_text(r, false).empty());
    }
    CHECK(render_text(sample_reports()[1], true).find('\033') != std::string::npos);
}

TEST_CASE("inconsistency maps to exit code 2") {
    SurfaceModel m = builtin("ExE");
    m.curves = {CurveRecord{"Gamma3", gamma_class(3), 1, true, true}};
    m.ample_ref = Scalar(2) * gamma_class(3) + DivisorClass{1, 0, 0};
    m.very_ample_ref = m.ample_ref;
    m.complete_up_to = Scalar(0);
    const Report r = criteria_report(m, m.ample_ref, 2, T2WitnessChoice::SeshadriCurve);
    CHECK(r.exit == ExitCode::Inconsistent);
    bool mentions = false;
    for (const auto& c : r.caveats) mentions = mentions || c.find("increase box") != std::string::npos;
    CHECK(mentions);
    CHECK(criteria_report(m, m.ample_ref, 6, T2WitnessChoice::SeshadriCurve).exit == ExitCode::Ok);
}

TEST_CASE("malformed reports are rejected") {
    ordered_json j = to_json(fibration_scan_report(builtin("P2"), 3));
    j.erase("results");
    CHECK_THROWS_AS(report_from_json(j), ParseError);
    j = to_json(fibration_scan_report(builtin("P2"), 3));
    j["exit"] = 9;
    CHECK_THROWS_AS(report_from_json(j), ParseError);
}

TEST_CASE("bundled scenarios all pass") {
    const Report r = verify_paper_report();
    CHECK(r.exit == ExitCode::Ok);
    REQUIRE(r.results["scenarios"].size() == 9);
    for (const auto& s : r.results["scenarios"])
        CHECK_MESSAGE(s["result"] == "PASS", std::string(s["name"].get<std::string>() + ": " + s["detail"].get<std::string>()));
}
