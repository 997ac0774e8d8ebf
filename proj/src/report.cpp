#include "sesh/report.hpp"

#include <sstream>

#include "sesh/errors.hpp"

namespace sesh {

namespace {

constexpr unsigned kApproxBits = 53;
constexpr unsigned kApproxDigits = 15;

ordered_json exact_json(const Scalar& x) {
    ordered_json exact = ordered_json::array();
    for (const auto& c : x.coords()) exact.push_back(to_string(c));
    return exact;
}

ordered_json approx_json(const Enclosure& e) {
    const DecimalEnclosure d = to_decimal(e, kApproxDigits);
    return ordered_json::array({d.lo, d.hi});
}

std::string completeness_caveat(const SurfaceModel& m) {
    return "verdicts are relative to the " + m.name + " curve catalogue, complete up to ample degree " +
           to_string(m.complete_up_to);
}

std::string box_caveat(long box) {
    return "searches certified over integer classes in [-" + std::to_string(box) + ", " + std::to_string(box) + "]^rank";
}

Report base(const SurfaceModel& m, std::string command) {
    Report r;
    r.surface = m.name;
    r.command = std::move(command);
    r.caveats.push_back(completeness_caveat(m));
    return r;
}

ordered_json witness_json(const SeshadriWitness& w) {
    ordered_json j;
    j["label"] = witness_label(w);
    if (const auto* c = std::get_if<CurveRecord>(&w)) {
        j["class"] = divisor_json(c->cls);
        j["mult_eta"] = c->mult_eta;
    }
    return j;
}

ordered_json candidates_json(const std::vector<FibrationCandidate>& cs) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : cs) arr.push_back(candidate_json(c));
    return arr;
}

ordered_json cc_json(const CcResult& r) {
    ordered_json j;
    j["fired"] = r.fired;
    j["a2"] = scalar_json(r.a2);
    j["three_eps2"] = scalar_json(r.three_eps2);
    j["witness"] = witness_label(r.witness);
    j["verdict"] = verdict_json(r.verdict);
    j["candidate"] = r.candidate ? candidate_json(*r.candidate) : ordered_json(nullptr);
    j["consistent"] = r.consistent;
    return j;
}

ordered_json c1_json(const C1Report& r) {
    ordered_json j;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json x;
        x["class"] = divisor_json(row.a);
        x["a2"] = scalar_json(row.a2);
        x["four_eps2"] = scalar_json(row.four_eps2);
        x["holds"] = row.holds;
        rows.push_back(std::move(x));
    }
    j["rows"] = std::move(rows);
    j["violations"] = r.violations;
    j["has_isotropic_ray"] = r.has_isotropic_ray;
    j["consistent"] = r.consistent;
    return j;
}

ordered_json t2_json(const T2Result& r) {
    ordered_json j;
    j["classification"] = to_string(r.classification);
    j["witness"] = divisor_json(r.witness);
    j["witness_mult"] = r.witness_mult;
    j["components"] = r.components;
    j["candidates"] = candidates_json(r.candidates);
    j["delegated_cc"] = r.delegated ? cc_json(*r.delegated) : ordered_json(nullptr);
    j["reason"] = r.reason;
    j["consistent"] = r.consistent;
    return j;
}

ordered_json demo_json(const FamilyDemo& d) {
    ordered_json j;
    j["fiber"] = d.fiber_label;
    j["alpha"] = to_string(d.alpha);
    ordered_json rows = ordered_json::array();
    for (const auto& row : d.rows) {
        ordered_json x;
        x["n"] = row.n;
        x["class"] = divisor_json(row.cls);
        x["eps_upper"] = magnitude_json(row.eps_upper);
        x["eps_le_one"] = row.eps_le_one;
        x["m_lower"] = magnitude_json(row.m_lower);
        x["m_ge_n"] = row.m_ge_n;
        rows.push_back(std::move(x));
    }
    j["rows"] = std::move(rows);
    j["unbounded"] = d.unbounded;
    return j;
}

bool is_scalar_node(const ordered_json& j) { return j.is_object() && j.contains("text") && j.contains("approx"); }

std::string leaf_text(const ordered_json& j) {
    if (is_scalar_node(j)) {
        const auto& a = j["approx"];
        return j["text"].get<std::string>() + "  ~ [" + a[0].get<std::string>() + ", " + a[1].get<std::string>() + "]";
    }
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

bool inline_array(const ordered_json& j) {
    for (const auto& x : j)
        if (x.is_object() || x.is_array()) return false;
    return true;
}

struct Style {
    bool color;
    std::string key(const std::string& k) const { return color ? "\033[1m" + k + "\033[0m" : k; }
    std::string value(const std::string& v) const {
        if (!color) return v;
        if (v == "true" || v == "PASS" || v == "Certified") return "\033[32m" + v + "\033[0m";
        if (v == "false" || v == "FAIL" || v == "Refuted") return "\033[31m" + v + "\033[0m";
        return v;
    }
};

void render_node(std::ostream& os, const ordered_json& j, int indent, const Style& st) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object() && !is_scalar_node(j)) {
        for (const auto& [k, v] : j.items()) {
            if ((v.is_object() && !is_scalar_node(v) && !v.empty()) || (v.is_array() && !inline_array(v))) {
                os << pad << st.key(k) << ":\n";
                render_node(os, v, indent + 1, st);
            } else if (v.is_array()) {
                os << pad << st.key(k) << ": [";
                for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << leaf_text(v[i]);
                os << "]\n";
            } else {
                os << pad << st.key(k) << ": " << st.value(leaf_text(v)) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() && !is_scalar_node(v)) {
                os << pad << "-\n";
                render_node(os, v, indent + 1, st);
            } else {
                os << pad << "- " << st.value(leaf_text(v)) << "\n";
            }
        }
    } else {
        os << pad << st.value(leaf_text(j)) << "\n";
    }
}

}  // namespace

ordered_json scalar_json(const Scalar& x) {
    ordered_json j;
    j["exact"] = exact_json(x);
    j["text"] = to_string(x);
    j["approx"] = approx_json(approximate(x, kApproxBits));
    return j;
}

ordered_json magnitude_json(const Magnitude& m) {
    ordered_json j;
    j["text"] = m.to_string();
    j["approx"] = approx_json(m.approximate(kApproxBits));
    j["representable"] = m.is_exact();
    if (m.is_exact()) j["value"] = scalar_json(*m.value());
    j["square"] = scalar_json(m.square());
    return j;
}

ordered_json divisor_json(const DivisorClass& d) {
    ordered_json j;
    j["text"] = to_string(d);
    ordered_json coords = ordered_json::array();
    for (const auto& c : d.coords()) coords.push_back(scalar_to_json(c));
    j["coords"] = std::move(coords);
    return j;
}

ordered_json verdict_json(const Verdict& v) {
    ordered_json j;
    j["status"] = to_string(v.status);
    if (const auto* d = std::get_if<DivisorClass>(&v.witness)) j["witness"] = divisor_json(*d);
    else if (const auto* c = std::get_if<CurveRecord>(&v.witness)) j["witness"] = c->label;
    else j["witness"] = nullptr;
    j["caveat"] = v.caveat;
    j["completeness_bound"] = v.completeness_bound ? ordered_json(to_string(*v.completeness_bound)) : ordered_json(nullptr);
    return j;
}

ordered_json candidate_json(const FibrationCandidate& c) {
    ordered_json j;
    j["class"] = divisor_json(c.cls);
    j["primitive"] = c.primitive;
    j["ray_type"] = to_string(c.ray_type);
    j["degree"] = scalar_json(c.degree);
    j["fiber"] = c.fiber_label ? ordered_json(*c.fiber_label) : ordered_json(nullptr);
    return j;
}

ordered_json estimate_json(const SeshadriEstimate& e) {
    ordered_json j;
    j["lower"] = magnitude_json(e.lower);
    j["upper"] = magnitude_json(e.upper);
    j["witness"] = witness_json(e.upper_witness);
    j["certified_box"] = e.certified_box;
    j["exact"] = e.exact;
    return j;
}

ordered_json to_json(const Report& r) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["surface"] = r.surface;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["results"] = r.results;
    j["caveats"] = r.caveats;
    j["exit"] = static_cast<int>(r.exit);
    if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
    return j;
}

Report report_from_json(const ordered_json& j) {
    try {
        Report r;
        if (j.at("tool_version").get<std::string>() != kToolVersion) throw ParseError("unsupported report version");
        r.surface = j.at("surface").get<std::string>();
        r.command = j.at("command").get<std::string>();
        r.inputs = j.at("inputs");
        r.results = j.at("results");
        r.caveats = j.at("caveats").get<std::vector<std::string>>();
        const int code = j.at("exit").get<int>();
        if (code < 0 || code > 3) throw ParseError("exit code out of range");
        r.exit = static_cast<ExitCode>(code);
        if (j.contains("timing_ms")) r.timing_ms = j["timing_ms"].get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

std::string render_json(const Report& r) { return dump_compact(to_json(r)) + "\n"; }

std::string render_text(const Report& r, bool color) {
    const Style st{color};
    std::ostringstream os;
    os << st.key("sesh " + std::string(kToolVersion)) << "  " << r.command;
    if (!r.surface.empty()) os << " on " << r.surface;
    os << "\n";
    if (!r.inputs.empty()) {
        os << st.key("inputs") << ":\n";
        render_node(os, r.inputs, 1, st);
    }
    os << st.key("results") << ":\n";
    render_node(os, r.results, 1, st);
    if (!r.caveats.empty()) {
        os << st.key("caveats") << ":\n";
        for (const auto& c : r.caveats) os << "  - " << c << "\n";
    }
    if (r.timing_ms) os << st.key("timing_ms") << ": " << *r.timing_ms << "\n";
    os << st.key("exit") << ": " << static_cast<int>(r.exit) << "\n";
    return os.str();
}

Report analyze_report(const SurfaceModel& model, const DivisorClass& d) {
    Report r = base(model, "analyze");
    r.inputs["divisor"] = divisor_json(d);
    r.results["self_intersection"] = scalar_json(self_int(model.form, d));
    r.results["degree"] = scalar_json(pair(model.form, d, model.ample_ref));
    ordered_json pairings;
    for (const auto& c : model.curves) pairings[c.label] = scalar_json(pair(model.form, d, c.cls));
    r.results["curve_pairings"] = std::move(pairings);
    r.results["nef"] = verdict_json(is_nef(model, d));
    r.results["ample"] = verdict_json(is_ample(model, d));
    r.results["big"] = verdict_json(is_big(model, d));
    r.results["ray_type"] = d.is_zero() ? ordered_json(nullptr) : ordered_json(to_string(ray_rationality(d)));
    return r;
}

Report seshadri_report(const SurfaceModel& model, const DivisorClass& a, long box) {
    Report r = base(model, "seshadri");
    r.inputs["divisor"] = divisor_json(a);
    r.inputs["box"] = box;
    r.caveats.push_back(box_caveat(box));
    r.results = estimate_json(seshadri_estimate(model, a, box));
    return r;
}

Report mult_report(const SurfaceModel& model, const DivisorClass& a, long box) {
    Report r = base(model, "mult");
    r.inputs["divisor"] = divisor_json(a);
    r.inputs["box"] = box;
    r.caveats.push_back(box_caveat(box));
    const MultiplicityBounds b = multiplicity_bounds(model, a, box);
    r.results["lower"] = magnitude_json(b.lower);
    r.results["lower_source"] = to_string(b.lower_source);
    r.results["witness"] = b.witness;
    r.results["formula"] = magnitude_json(b.formula);
    r.results["catalogue_mult"] = b.catalogue_mult;
    r.results["upper"] = scalar_json(b.upper);
    r.results["seshadri"] = estimate_json(b.estimate);
    return r;
}

Report fibration_scan_report(const SurfaceModel& model, long box) {
    Report r = base(model, "fibration-scan");
    r.inputs["box"] = box;
    r.caveats.push_back(box_caveat(box));
    r.results["candidates"] = candidates_json(isotropic_nef_rays(model, box));
    return r;
}

Report criteria_report(const SurfaceModel& model, const DivisorClass& a, long box, T2WitnessChoice choice) {
    Report r = base(model, "criteria");
    r.inputs["divisor"] = divisor_json(a);
    r.inputs["box"] = box;
    r.inputs["t2_witness"] = choice == T2WitnessChoice::SeshadriCurve ? "curve" : "composite";
    r.caveats.push_back(box_caveat(box));
    bool consistent = true;

    const CcResult cc = criterion_cc(model, a, box);
    r.results["cc"] = cc_json(cc);
    consistent = consistent && cc.consistent;

    const C1Report c1 = criterion_c1(model, {a}, box);
    r.results["c1"] = c1_json(c1);
    consistent = consistent && c1.consistent;

    try {
        const T2Result t2 = criterion_t2(model, a, box, choice);
        r.results["t2"] = t2_json(t2);
        consistent = consistent && t2.consistent;
    } catch (const PreconditionFailed& e) {
        r.results["t2"] = {{"applicable", false}, {"reason", e.what()}};
    }
    if (!consistent) {
        r.exit = ExitCode::Inconsistent;
        r.caveats.push_back("a criterion fired without a matching isotropic nef ray; increase box");
    }
    return r;
}

Report mx_scan_report(const SurfaceModel& model, long degree_bound, long box) {
    Report r = base(model, "mx-scan");
    r.inputs["degree"] = degree_bound;
    r.inputs["box"] = box;
    r.caveats.push_back(box_caveat(box));
    const FamilyScan s = mx_scan(model, degree_bound, box);
    ordered_json family = ordered_json::array();
    for (const auto& m : s.family) {
        ordered_json x;
        x["original"] = divisor_json(m.original);
        x["scale"] = to_string(m.scale);
        x["m_lower"] = magnitude_json(m.m_lower);
        x["source"] = to_string(m.source);
        x["eps_witness"] = witness_label(m.witness);
        family.push_back(std::move(x));
    }
    r.results["family"] = std::move(family);
    r.results["best_m_lower"] = magnitude_json(s.best_m_lower);
    r.results["exceeds_two"] = s.exceeds_two;
    r.results["linked_candidate"] = s.linked_candidate ? candidate_json(*s.linked_candidate) : ordered_json(nullptr);
    r.results["certification"] = s.certification ? demo_json(*s.certification) : ordered_json(nullptr);
    r.results["candidates"] = candidates_json(s.candidates);
    r.results["notices"] = s.notices;
    r.results["consistent"] = s.consistent;
    if (!s.consistent) r.exit = ExitCode::Inconsistent;
    return r;
}

Report family_demo_report(const SurfaceModel& model, const DivisorClass& fiber, const DivisorClass& a,
                          const Rational& alpha, long n_max) {
    Report r = base(model, "family-demo");
    r.inputs["fiber"] = divisor_json(fiber);
    r.inputs["ample"] = divisor_json(a);
    r.inputs["alpha"] = to_string(alpha);
    r.inputs["n"] = n_max;
    const FamilyDemo d = unbounded_family_demo(model, make_candidate(model, fiber), a, alpha, n_max);
    r.results = demo_json(d);
    if (!d.unbounded) r.exit = ExitCode::Inconsistent;
    return r;
}

Report verify_paper_report() {
    Report r;
    r.command = "verify-paper";
    ordered_json items = ordered_json::array();
    bool all = true;
    for (const auto& s : run_scenarios()) {
        ordered_json x;
        x["id"] = s.id;
        x["name"] = s.name;
        x["result"] = s.pass ? "PASS" : "FAIL";
        x["detail"] = s.detail;
        items.push_back(std::move(x));
        all = all && s.pass;
    }
    r.results["scenarios"] = std::move(items);
    r.results["all_pass"] = all;
    r.caveats.push_back("scenarios use the builtin surface models only");
    if (!all) r.exit = ExitCode::Inconsistent;
    return r;
}

}  // namespace sesh
