#include "sesh/surface.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sesh/errors.hpp"

namespace sesh {

namespace {

using json = nlohmann::ordered_json;

IntersectionForm integer_form(std::vector<std::vector<long>> rows, std::vector<std::string> labels) {
    std::vector<std::vector<Scalar>> gram;
    for (const auto& row : rows) {
        auto& out = gram.emplace_back();
        for (long x : row) out.emplace_back(x);
    }
    return IntersectionForm(std::move(gram), std::move(labels));
}

CurveRecord curve(std::string label, DivisorClass cls, long mult = 1, bool moving = true) {
    return CurveRecord{std::move(label), std::move(cls), mult, true, moving};
}

SurfaceModel make_p2() {
    SurfaceModel m;
    m.name = "P2";
    m.form = integer_form({{1}}, {"H"});
    m.curves = {curve("line", {1})};
    m.ample_ref = {1};
    m.very_ample_ref = {3};
    m.complete_up_to = 3;
    return m;
}

SurfaceModel make_c1xc2() {
    SurfaceModel m;
    m.name = "C1xC2";
    m.form = integer_form({{0, 1}, {1, 0}}, {"F1", "F2"});
    m.curves = {curve("F1", {1, 0}), curve("F2", {0, 1})};
    m.ample_ref = {1, 1};
    m.very_ample_ref = {3, 3};
    m.complete_up_to = 1;
    return m;
}

SurfaceModel make_exe() {
    SurfaceModel m;
    m.name = "ExE";
    m.form = integer_form({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {"F1", "F2", "Delta"});
    m.curves = {curve("F1", {1, 0, 0}), curve("F2", {0, 1, 0}), curve("Delta", {0, 0, 1})};
    m.ample_ref = {1, 1, 0};
    m.very_ample_ref = {1, 1, 1};
    // the anti-diagonal x + y = c already has degree 2 and is not catalogued
    m.complete_up_to = 1;
    return m;
}

SurfaceModel make_p2_blowup() {
    SurfaceModel m = blow_up(make_p2());
    m.name = "P2-blowup";
    m.complete_up_to = 2;
    return m;
}

std::string index_loc(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
    return j.at(key);
}

}  // namespace

void validate_curve(const IntersectionForm& form, const CurveRecord& c, const std::string& location) {
    if (c.cls.rank() != form.rank())
        throw ValidationError("class-rank", location + ".cls",
                              "expected " + std::to_string(form.rank()) + " coordinates, got " + std::to_string(c.cls.rank()));
    if (c.cls.is_zero()) throw ValidationError("curve-nonzero", location + ".cls", "curve class is zero");
    if (c.mult_eta < 1)
        throw ValidationError("mult-positive", location + ".mult_eta", "multiplicity must be >= 1, got " + std::to_string(c.mult_eta));
    if (c.moving) {
        const Scalar c2 = self_int(form, c.cls);
        const Scalar bound(Rational(c.mult_eta * (c.mult_eta - 1)));
        if (c2 < bound)
            throw ValidationError("curve-multiplicity-bound (C^2 >= m(m-1))", location,
                                  "C^2 = " + to_string(c2) + " < " + to_string(bound) + " for m = " + std::to_string(c.mult_eta));
    }
}

void validate(const SurfaceModel& m) {
    const std::size_t n = m.form.rank();
    try {
        Signature s = signature(m.form);
        if (s.positive != 1 || s.negative + 1 != n)
            throw ValidationError("signature", "gram",
                                  "expected (1, " + std::to_string(n - 1) + "), got (" + std::to_string(s.positive) + ", " +
                                      std::to_string(s.negative) + ")");
    } catch (const Degenerate& e) {
        throw ValidationError("signature", "gram", e.what());
    }
    if (m.ample_ref.rank() != n) throw ValidationError("class-rank", "ample_ref", "wrong number of coordinates");
    if (m.very_ample_ref.rank() != n) throw ValidationError("class-rank", "very_ample_ref", "wrong number of coordinates");
    const Scalar a2 = self_int(m.form, m.ample_ref);
    if (sign(a2) <= 0) throw ValidationError("ample-positive-square", "ample_ref", "ample_ref^2 = " + to_string(a2));
    if (sign(m.complete_up_to) < 0) throw ValidationError("completeness-nonnegative", "complete_up_to", to_string(m.complete_up_to));

    const DivisorClass excess = m.very_ample_ref - m.ample_ref;
    for (std::size_t i = 0; i < m.curves.size(); ++i) {
        const auto loc = index_loc("curves", i);
        validate_curve(m.form, m.curves[i], loc);
        const Scalar deg = pair(m.form, m.ample_ref, m.curves[i].cls);
        if (sign(deg) <= 0)
            throw ValidationError("ample-positive-on-curves", loc, "ample_ref . " + m.curves[i].label + " = " + to_string(deg));
        const Scalar dom = pair(m.form, excess, m.curves[i].cls);
        if (sign(dom) < 0)
            throw ValidationError("very-ample-dominates", loc,
                                  "(very_ample_ref - ample_ref) . " + m.curves[i].label + " = " + to_string(dom));
    }
}

SurfaceModel builtin(std::string_view name) {
    if (name == "P2") return make_p2();
    if (name == "C1xC2") return make_c1xc2();
    if (name == "ExE") return make_exe();
    if (name == "P2-blowup") return make_p2_blowup();
    throw UnknownSurface(std::string(name));
}

std::vector<std::string> builtin_names() { return {"P2", "C1xC2", "ExE", "P2-blowup"}; }

SurfaceModel blow_up(const SurfaceModel& model) {
    SurfaceModel out;
    out.name = model.name + "-blowup";
    out.form = blow_up_form(model.form, "E");
    const std::size_t n = model.rank();
    auto lift = [n](const DivisorClass& d, long e_coeff) {
        auto coords = d.coords();
        coords.emplace_back(e_coeff);
        (void)n;
        return DivisorClass(std::move(coords));
    };

    std::vector<CurveRecord> strict;
    for (const auto& c : model.curves) {
        if (!c.moving || c.mult_eta != 1) continue;
        // a fiber (C² = 0) has a single member through the point, so its strict transform is rigid
        const int s = sign(self_int(model.form, c.cls));
        if (s < 0) continue;
        strict.push_back(CurveRecord{c.label + "-through-point", lift(c.cls, -1), 1, c.irreducible, s > 0});
    }
    out.curves = strict;
    for (const auto& c : model.curves) out.curves.push_back(CurveRecord{c.label, lift(c.cls, 0), c.mult_eta, c.irreducible, c.moving});
    out.curves.push_back(CurveRecord{"E", DivisorClass::basis(n + 1, n), 1, true, false});

    // smallest k ≥ 1 with k·A - E ample against the new catalogue
    const Scalar a2 = self_int(model.form, model.ample_ref);
    long k = 1;
    auto ok = [&](long kk) {
        if (Scalar(kk * kk) * a2 <= Scalar(1)) return false;
        for (const auto& c : model.curves) {
            if (!c.moving || c.mult_eta != 1 || sign(self_int(model.form, c.cls)) < 0) continue;
            if (Scalar(kk) * pair(model.form, model.ample_ref, c.cls) <= Scalar(1)) return false;
        }
        return true;
    };
    while (!ok(k)) ++k;
    out.ample_ref = lift(Scalar(k) * model.ample_ref, -1);
    out.very_ample_ref = lift(model.very_ample_ref + Scalar(k) * model.ample_ref, -1);
    out.complete_up_to = Scalar(0);
    validate(out);
    return out;
}

DivisorClass gamma_class(long m) {
    if (m < 1) throw PreconditionFailed("gamma_class requires m >= 1");
    const SurfaceModel exe = make_exe();
    // Γ_m·F1 = deg of y ↦ mx - y = 1, Γ_m·F2 = m², Γ_m·Δ = #{(m-1)x = P} = (m-1)²
    return class_with_pairings(exe.form, {Scalar(1), Scalar(m * m), Scalar((m - 1) * (m - 1))});
}

SurfaceModel add_curve(const SurfaceModel& model, CurveRecord record) {
    const auto loc = index_loc("curves", model.curves.size());
    validate_curve(model.form, record, loc);
    const Scalar deg = pair(model.form, model.ample_ref, record.cls);
    if (sign(deg) <= 0) throw ValidationError("ample-positive-on-curves", loc, "ample_ref . " + record.label + " = " + to_string(deg));
    if (sign(pair(model.form, model.very_ample_ref - model.ample_ref, record.cls)) < 0)
        throw ValidationError("very-ample-dominates", loc, record.label);
    SurfaceModel out = model;
    out.curves.push_back(std::move(record));
    return out;
}

json scalar_to_json(const Scalar& x) {
    json arr = json::array();
    for (const auto& c : x.coords()) arr.push_back(to_string(c));
    return arr;
}

Scalar scalar_from_json(const json& j, const std::string& location) {
    try {
        if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
        if (j.is_number_integer()) return Scalar(j.get<long>());
        if (j.is_array() && j.size() == 4) {
            std::array<Rational, 4> c;
            for (std::size_t i = 0; i < 4; ++i) {
                if (j[i].is_string()) c[i] = parse_rational(j[i].get<std::string>());
                else if (j[i].is_number_integer()) c[i] = j[i].get<long>();
                else throw ParseError("coordinate must be a rational string");
            }
            return {c[0], c[1], c[2], c[3]};
        }
    } catch (const ParseError& e) {
        throw ParseError(location + ": " + e.what());
    }
    throw ParseError(location + ": expected \"p/q\" or a 4-element array of rationals");
}

json divisor_to_json(const DivisorClass& d) {
    json arr = json::array();
    for (const auto& c : d.coords()) arr.push_back(scalar_to_json(c));
    return arr;
}

DivisorClass divisor_from_json(const json& j, const std::string& location) {
    if (!j.is_array()) throw ParseError(location + ": expected an array of scalars");
    std::vector<Scalar> coords;
    for (std::size_t i = 0; i < j.size(); ++i) coords.push_back(scalar_from_json(j[i], index_loc(location, i)));
    return DivisorClass(std::move(coords));
}

json to_json(const SurfaceModel& m) {
    json gram = json::array();
    for (const auto& row : m.form.gram()) {
        json r = json::array();
        for (const auto& x : row) r.push_back(scalar_to_json(x));
        gram.push_back(r);
    }
    json curves = json::array();
    for (const auto& c : m.curves)
        curves.push_back({{"label", c.label}, {"cls", divisor_to_json(c.cls)}, {"mult_eta", c.mult_eta},
                          {"irreducible", c.irreducible}, {"moving", c.moving}});
    return {{"name", m.name},
            {"rank", m.rank()},
            {"basis", m.form.labels()},
            {"gram", gram},
            {"curves", curves},
            {"ample_ref", divisor_to_json(m.ample_ref)},
            {"very_ample_ref", divisor_to_json(m.very_ample_ref)},
            {"complete_up_to", scalar_to_json(m.complete_up_to)}};
}

SurfaceModel surface_from_json(const json& j) {
    SurfaceModel m;
    try {
        m.name = require(j, "name").get<std::string>();
        const auto rank = require(j, "rank").get<std::size_t>();
        auto labels = require(j, "basis").get<std::vector<std::string>>();
        if (labels.size() != rank)
            throw ValidationError("basis-length", "basis", "rank is " + std::to_string(rank) + " but " +
                                                               std::to_string(labels.size()) + " labels given");
        const json& g = require(j, "gram");
        if (!g.is_array() || g.size() != rank)
            throw ValidationError("gram-square", "gram", "expected " + std::to_string(rank) + " rows");
        std::vector<std::vector<Scalar>> gram;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!g[i].is_array()) throw ParseError(index_loc("gram", i) + ": expected an array");
            auto& row = gram.emplace_back();
            for (std::size_t k = 0; k < g[i].size(); ++k)
                row.push_back(scalar_from_json(g[i][k], index_loc(index_loc("gram", i), k)));
        }
        m.form = IntersectionForm(std::move(gram), std::move(labels));

        const json& cs = require(j, "curves");
        if (!cs.is_array()) throw ParseError("curves: expected an array");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const auto loc = index_loc("curves", i);
            CurveRecord c;
            c.label = require(cs[i], "label").get<std::string>();
            c.cls = divisor_from_json(require(cs[i], "cls"), loc + ".cls");
            c.mult_eta = require(cs[i], "mult_eta").get<long>();
            c.irreducible = require(cs[i], "irreducible").get<bool>();
            c.moving = require(cs[i], "moving").get<bool>();
            m.curves.push_back(std::move(c));
        }
        m.ample_ref = divisor_from_json(require(j, "ample_ref"), "ample_ref");
        m.very_ample_ref = divisor_from_json(require(j, "very_ample_ref"), "very_ample_ref");
        m.complete_up_to = scalar_from_json(require(j, "complete_up_to"), "complete_up_to");
    } catch (const json::exception& e) {
        throw ParseError(std::string("surface file: ") + e.what());
    }
    validate(m);
    return m;
}

SurfaceModel load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open surface file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return surface_from_json(j);
}

namespace {

void write_pretty(std::ostream& os, const json& j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    const bool flat = j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
    if (flat || j.is_primitive() || j.empty()) {
        os << j.dump();
        return;
    }
    const bool obj = j.is_object();
    os << (obj ? "{\n" : "[\n");
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        os << inner;
        if (obj) os << json(it.key()).dump() << ": ";
        write_pretty(os, *it, indent + 1);
        os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << (obj ? "}" : "]");
}

}  // namespace

std::string dump_compact(const json& j) {
    std::ostringstream os;
    write_pretty(os, j, 0);
    return os.str();
}

void save(const SurfaceModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write surface file '" + path.string() + "'");
    write_pretty(out, to_json(model), 0);
    out << '\n';
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::size_t find_curve(const SurfaceModel& model, std::string_view label) {
    for (std::size_t i = 0; i < model.curves.size(); ++i)
        if (model.curves[i].label == label) return i;
    return static_cast<std::size_t>(-1);
}

}  // namespace sesh
