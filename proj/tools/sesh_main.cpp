// sesh: positivity, Seshadri constants and fibration criteria on surface models.

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "sesh/errors.hpp"
#include "sesh/report.hpp"

namespace {

using namespace sesh;

struct Options {
    std::string surface;
    std::string divisor;
    std::string fiber;
    std::string ample;
    std::string alpha = "1";
    std::string out;
    std::string format = "text";
    std::string witness = "curve";
    long box = 10;
    long degree = 5;
    long n = 10;
    bool timing = false;
};

// "builtin:NAME" selects a bundled model; anything else is a surface file.
SurfaceModel open_surface(const std::string& spec) {
    constexpr std::string_view prefix = "builtin:";
    if (spec.rfind(prefix, 0) == 0) return builtin(spec.substr(prefix.size()));
    return load(spec);
}

void emit(const Report& r, const Options& o) {
    if (o.format == "json") {
        std::cout << render_json(r);
        return;
    }
    const bool color = std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO) != 0;
    std::cout << render_text(r, color);
}

Report dispatch(const std::string& cmd, const Options& o) {
    if (cmd == "verify-paper") return verify_paper_report();
    const SurfaceModel m = open_surface(o.surface);
    Report r;
    if (cmd == "analyze") r = analyze_report(m, parse_divisor(o.divisor));
    else if (cmd == "seshadri") r = seshadri_report(m, parse_divisor(o.divisor), o.box);
    else if (cmd == "mult") r = mult_report(m, parse_divisor(o.divisor), o.box);
    else if (cmd == "fibration-scan") r = fibration_scan_report(m, o.box);
    else if (cmd == "criteria")
        r = criteria_report(m, parse_divisor(o.divisor), o.box,
                            o.witness == "composite" ? T2WitnessChoice::CatalogueComposite : T2WitnessChoice::SeshadriCurve);
    else if (cmd == "mx-scan") r = mx_scan_report(m, o.degree, o.box);
    else if (cmd == "family-demo")
        r = family_demo_report(m, parse_divisor(o.fiber), parse_divisor(o.ample), parse_rational(o.alpha), o.n);
    else if (cmd == "blowup") {
        const SurfaceModel b = blow_up(m);
        save(b, o.out);
        r.surface = m.name;
        r.command = "blowup";
        r.inputs["out"] = o.out;
        r.results["name"] = b.name;
        r.results["rank"] = b.rank();
        r.results["curves"] = b.curves.size();
        r.results["ample_ref"] = divisor_json(b.ample_ref);
        r.results["very_ample_ref"] = divisor_json(b.very_ample_ref);
    }
    r.inputs["surface"] = o.surface;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seshadri constants, multiplicity bounds and fibration criteria on algebraic surface models"};
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Output rendering")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--timing", o.timing, "Include wall-clock timing in the report");

    auto add_surface = [&](CLI::App* s) {
        s->add_option("--surface", o.surface, "Surface file, or builtin:NAME")->required();
    };
    auto add_divisor = [&](CLI::App* s) {
        s->add_option("--divisor", o.divisor, "Comma-separated scalars, e.g. \"1,1,0\"")->required();
    };
    auto add_box = [&](CLI::App* s) {
        s->add_option("--box", o.box, "Search box half-width")->check(CLI::Range(1L, 100L));
    };

    auto* analyze = app.add_subcommand("analyze", "Positivity verdicts and intersection numbers");
    add_surface(analyze);
    add_divisor(analyze);
    auto* seshadri = app.add_subcommand("seshadri", "Seshadri constant bounds at a very general point");
    add_surface(seshadri);
    add_divisor(seshadri);
    add_box(seshadri);
    auto* mult = app.add_subcommand("mult", "Bounds on the multiplicity invariant m(A)");
    add_surface(mult);
    add_divisor(mult);
    add_box(mult);
    auto* scan = app.add_subcommand("fibration-scan", "Isotropic nef rays in a box");
    add_surface(scan);
    add_box(scan);
    auto* criteria = app.add_subcommand("criteria", "Fibration criteria for an ample class");
    add_surface(criteria);
    add_divisor(criteria);
    add_box(criteria);
    criteria->add_option("--witness", o.witness, "Witness for the A^2 = 2 classifier")->check(CLI::IsMember({"curve", "composite"}));
    auto* mx = app.add_subcommand("mx-scan", "Scan normalized ample classes for m > 2");
    add_surface(mx);
    add_box(mx);
    mx->add_option("--degree", o.degree, "Degree bound against the ample reference")->check(CLI::Range(1L, 1000L));
    auto* demo = app.add_subcommand("family-demo", "Rows alpha*a + n*F with growing multiplicity");
    add_surface(demo);
    demo->add_option("--fiber", o.fiber, "Fiber class")->required();
    demo->add_option("--ample", o.ample, "Ample class")->required();
    demo->add_option("--alpha", o.alpha, "Positive rational, e.g. 1/2");
    demo->add_option("--n", o.n, "Largest n")->check(CLI::Range(0L, 100000L));
    auto* blowup = app.add_subcommand("blowup", "Blow up a very general point and save the model");
    add_surface(blowup);
    blowup->add_option("--out", o.out, "Output surface file")->required();
    app.add_subcommand("verify-paper", "Run the bundled scenario suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::Input);
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        const auto start = std::chrono::steady_clock::now();
        Report r = dispatch(cmd, o);
        if (o.timing)
            r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        emit(r, o);
        return static_cast<int>(r.exit);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Io);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Io);
    } catch (const ValidationError& e) {
        std::cerr << "error: invariant " << e.invariant() << " violated at " << e.location() << ": " << e.what() << "\n";
        return static_cast<int>(ExitCode::Input);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::Input);
    }
}
