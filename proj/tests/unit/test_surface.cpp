#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "sesh/cone.hpp"
#include "sesh/errors.hpp"
#include "sesh/surface.hpp"

using namespace sesh;
using json = nlohmann::ordered_json;

namespace {

const std::filesystem::path kData = SESH_DATA_DIR;

std::filesystem::path write_temp(const std::string& name, const json& j) {
    const auto p = std::filesystem::temp_directory_path() / ("sesh_test_" + name + ".json");
    std::ofstream(p) << j.dump();
    return p;
}

template <class F>
std::string invariant_of(F&& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        return e.invariant();
    }
    return "";
}

}  // namespace

TEST_CASE("builtin models") {
    const auto exe = builtin("ExE");
    CHECK(exe.form.gram() == std::vector<std::vector<Scalar>>{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    CHECK(exe.curves.size() == 3);
    const auto c = builtin("C1xC2");
    CHECK(pair(c.form, DivisorClass{1, 0}, DivisorClass{0, 1}) == Scalar(1));
    const auto bl = builtin("P2-blowup");
    CHECK(self_int(bl.form, DivisorClass{1, -1}).is_zero());
    CHECK(bl.form.gram() == std::vector<std::vector<Scalar>>{{1, 0}, {0, -1}});
    const auto e = bl.curves[find_curve(bl, "E")];
    CHECK_FALSE(e.moving);
    const auto p2 = builtin("P2");
    CHECK(p2.curves.size() == 1);
    CHECK(p2.complete_up_to == Scalar(3));
    CHECK_THROWS_AS(builtin("K3"), UnknownSurface);
    for (const auto& name : builtin_names()) CHECK_NOTHROW(validate(builtin(name)));
}

TEST_CASE("shipped fixtures equal the builtins") {
    CHECK(load(kData / "exe.surface.json") == builtin("ExE"));
    CHECK(load(kData / "p2.surface.json") == builtin("P2"));
    CHECK(load(kData / "c1xc2.surface.json") == builtin("C1xC2"));
    CHECK(load(kData / "p2blowup.surface.json") == builtin("P2-blowup"));
}

TEST_CASE("serialization round-trips every builtin") {
    for (const auto& name : builtin_names()) {
        const auto m = builtin(name);
        CHECK(surface_from_json(to_json(m)) == m);
        const auto p = std::filesystem::temp_directory_path() / "sesh_roundtrip.json";
        save(m, p);
        CHECK(load(p) == m);
    }
}

TEST_CASE("scalar file encoding") {
    CHECK(scalar_to_json(Scalar(Rational(3, 2))) == json::array({"3/2", "0", "0", "0"}));
    CHECK(scalar_from_json(json("3/2"), "x") == Scalar(Rational(3, 2)));
    CHECK(scalar_from_json(json::array({"0", "1", "0", "0"}), "x") == Scalar::sqrt2());
    CHECK_THROWS_AS(scalar_from_json(json::array({"0", "1"}), "x"), ParseError);
    CHECK_THROWS_AS(scalar_from_json(json(true), "x"), ParseError);
}

TEST_CASE("loader rejects invalid files with a precise diagnostic") {
    const json good = to_json(builtin("ExE"));

    json asym = good;
    asym["gram"][0][1] = json::array({"2", "0", "0", "0"});
    CHECK(invariant_of([&] { load(write_temp("asym", asym)); }) == "gram-symmetric");

    json bad_curve = good;
    bad_curve["curves"][2]["mult_eta"] = 2;
    std::string what;
    try {
        load(write_temp("curve", bad_curve));
    } catch (const ValidationError& e) {
        what = e.what();
        CHECK(e.location() == "curves[2]");
    }
    CHECK(what.find("C^2 >= m(m-1)") != std::string::npos);

    json sig = to_json(builtin("C1xC2"));
    sig["gram"] = json::array({json::array({"1", "0"}), json::array({"0", "1"})});
    CHECK(invariant_of([&] { load(write_temp("sig", sig)); }) == "signature");

    json zero = good;
    zero["curves"][0]["cls"] = json::array({"0", "0", "0"});
    CHECK(invariant_of([&] { load(write_temp("zero", zero)); }) == "curve-nonzero");

    json ample = good;
    ample["ample_ref"] = json::array({"1", "0", "0"});
    CHECK(invariant_of([&] { load(write_temp("ample", ample)); }) == "ample-positive-square");

    json missing = good;
    missing.erase("gram");
    CHECK_THROWS_AS(load(write_temp("missing", missing)), ParseError);

    const auto garbage = std::filesystem::temp_directory_path() / "sesh_garbage.json";
    std::ofstream(garbage) << "{not json";
    CHECK_THROWS_AS(load(garbage), ParseError);
    CHECK_THROWS_AS(load("/nonexistent/surface.json"), IoError);
}

TEST_CASE("gamma_class examples") {
    CHECK(gamma_class(1) == DivisorClass{0, 0, 1});
    CHECK(gamma_class(2) == DivisorClass{2, -1, 2});
    CHECK_THROWS_AS(gamma_class(0), PreconditionFailed);
}

TEST_CASE("gamma_class matches the closed form and its defining pairings") {
    const auto exe = builtin("ExE");
    const DivisorClass f1{1, 0, 0}, f2{0, 1, 0}, delta{0, 0, 1};
    for (long m = 1; m <= 1000; ++m) {
        const DivisorClass g = gamma_class(m);
        REQUIRE(g == DivisorClass{m * m - m, 1 - m, m});
        REQUIRE(pair(exe.form, g, f1) == Scalar(1));
        REQUIRE(pair(exe.form, g, f2) == Scalar(m * m));
        REQUIRE(pair(exe.form, g, delta) == Scalar((m - 1) * (m - 1)));
        REQUIRE(self_int(exe.form, g).is_zero());
    }
}

TEST_CASE("add_curve") {
    const auto exe = builtin("ExE");
    const auto with_gamma = add_curve(exe, CurveRecord{"Gamma2", gamma_class(2), 1, true, true});
    CHECK(with_gamma.curves.size() == 4);
    CHECK(with_gamma.complete_up_to == exe.complete_up_to);
    CHECK(invariant_of([&] { add_curve(exe, CurveRecord{"D2", DivisorClass{0, 0, 1}, 2, true, true}); }) ==
          "curve-multiplicity-bound (C^2 >= m(m-1))");
    CHECK(invariant_of([&] { add_curve(exe, CurveRecord{"zero", DivisorClass::zero(3), 1, true, true}); }) == "curve-nonzero");
}

TEST_CASE("blow_up") {
    const auto b = blow_up(builtin("P2"));
    CHECK(b.name == "P2-blowup");
    CHECK(b.form == builtin("P2-blowup").form);
    CHECK(b.curves == builtin("P2-blowup").curves);
    const auto be = blow_up(builtin("ExE"));
    CHECK(be.rank() == 4);
    CHECK(verify_signature(be.form));
    // the fiber through the point has a rigid strict transform of square -1
    const auto& f1 = be.curves[find_curve(be, "F1-through-point")];
    CHECK_FALSE(f1.moving);
    CHECK(self_int(be.form, f1.cls) == Scalar(-1));
    CHECK(is_ample(be, be.ample_ref).certified());
}
