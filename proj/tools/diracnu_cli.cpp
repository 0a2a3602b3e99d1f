#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diracnu/verification.hpp"
#include "diracnu/verify_suite.hpp"

using namespace diracnu;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "diracnu 1.0.0";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Variant parse_variant(const std::string& name) {
    if (name == "real") return Variant::Real;
    if (name == "pt") return Variant::PTSymmetric;
    if (name == "pseudo") return Variant::PseudoHermitian;
    if (name == "exp") return Variant::Exponential;
    throw CLI::ValidationError("--variant", "expected real|pt|pseudo|exp");
}

// "0..3", "0,1,2" or "2"
std::vector<int> parse_levels(const std::string& text) {
    std::vector<int> out;
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        if (lo < 0 || hi < lo) throw CLI::ValidationError("--n", "bad range");
        for (int n = lo; n <= hi; ++n) out.push_back(n);
        return out;
    }
    size_t pos = 0;
    while (pos < text.size()) {
        const auto comma = text.find(',', pos);
        const std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(std::stoi(tok));
        if (out.back() < 0) throw CLI::ValidationError("--n", "levels must be >= 0");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw CLI::ValidationError("--n", "no levels given");
    return out;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

const char* branch_name(BranchSign sg) { return sg == BranchSign::Plus ? "plus" : "minus"; }

// Output is assembled fully in memory, then written in one shot, so a failed
// computation never leaves a partial file.
void emit(const std::optional<std::string>& path, const std::string& content) {
    if (!path) {
        std::cout << content;
        return;
    }
    std::ofstream f(*path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file: " + *path);
    f << content;
    if (!f.good()) {
        f.close();
        std::filesystem::remove(*path);
        throw std::runtime_error("write failed: " + *path);
    }
}

json params_json(const PotentialSpec& spec) {
    const char* names[] = {"real", "pt", "pseudo", "exp"};
    return json{{"variant", names[static_cast<int>(spec.variant)]},
                {"m", spec.m},
                {"q", spec.q},
                {"alpha", spec.alpha},
                {"V0", spec.V0}};
}

std::string csv_header(const PotentialSpec& spec, const std::string& cmdline) {
    const char* names[] = {"real", "pt", "pseudo", "exp"};
    std::string h;
    h += "# " + std::string(kVersion) + "\n";
    h += "# command: " + cmdline + "\n";
    h += "# variant=" + std::string(names[static_cast<int>(spec.variant)]) +
         " m=" + fmt17(spec.m) + " q=" + fmt17(spec.q) + " alpha=" + fmt17(spec.alpha) +
         " V0=" + fmt17(spec.V0) + "\n";
    return h;
}

struct OutputOpts {
    std::optional<std::string> path;
    std::string format{"csv"};
    std::string cmdline;
};

void add_potential_flags(CLI::App* cmd, PotentialSpec& spec, std::string& variant) {
    cmd->add_option("--variant", variant, "potential variant: real|pt|pseudo|exp");
    cmd->add_option("--m", spec.m, "fermion mass");
    cmd->add_option("--q", spec.q, "shape parameter");
    cmd->add_option("--alpha", spec.alpha, "range parameter");
    cmd->add_option("--V0", spec.V0, "coupling strength");
}

void add_output_flags(CLI::App* cmd, OutputOpts& out) {
    cmd->add_option("--out", out.path, "output file (stdout if omitted)");
    cmd->add_option("--format", out.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
}

int run_spectrum(const PotentialSpec& spec, const std::vector<int>& levels,
                 const OutputOpts& out) {
    spec.validate();
    struct Row {
        int n;
        BranchSign sg;
        BoundState st;
    };
    std::vector<Row> rows;
    for (int n : levels)
        for (auto sg : {BranchSign::Plus, BranchSign::Minus})
            rows.push_back({n, sg, energy_closed_form(spec, n, sg)});

    if (out.format == "json") {
        json results = json::array();
        for (const auto& r : rows)
            results.push_back({{"n", r.n},
                               {"branch", branch_name(r.sg)},
                               {"E", {{"re", r.st.energy.real()}, {"im", r.st.energy.imag()}}},
                               {"is_real", r.st.is_real_spectrum},
                               {"in_window", r.st.is_real_spectrum}});
        const json doc{{"params", params_json(spec)},
                       {"results", results},
                       {"provenance", {{"version", kVersion}, {"command_line", out.cmdline}}}};
        emit(out.path, doc.dump(2) + "\n");
    } else {
        std::string body = csv_header(spec, out.cmdline);
        body += "n,branch,E_re,E_im,is_real,in_window\n";
        for (const auto& r : rows)
            body += std::to_string(r.n) + "," + branch_name(r.sg) + "," +
                    fmt17(r.st.energy.real()) + "," + fmt17(r.st.energy.imag()) + "," +
                    (r.st.is_real_spectrum ? "1" : "0") + "," +
                    (r.st.is_real_spectrum ? "1" : "0") + "\n";
        emit(out.path, body);
    }
    return 0;
}

int run_scan(PotentialSpec spec, const std::vector<int>& levels, const std::string& vary,
             double from, double to, int steps, const OutputOpts& out) {
    if (steps < 2) throw std::runtime_error("--steps must be >= 2");
    struct Row {
        double p;
        int n;
        BranchSign sg;
        BoundState st;
    };
    std::vector<Row> rows;
    for (int i = 0; i < steps; ++i) {
        const double p = from + (to - from) * static_cast<double>(i) /
                                    static_cast<double>(steps - 1);
        PotentialSpec ps = spec;
        if (vary == "V0")
            ps.V0 = p;
        else if (vary == "alpha")
            ps.alpha = p;
        else if (vary == "q")
            ps.q = p;
        else if (vary == "m")
            ps.m = p;
        else
            throw std::runtime_error("--vary must be one of V0|alpha|q|m");
        ps.validate();
        for (int n : levels)
            for (auto sg : {BranchSign::Plus, BranchSign::Minus})
                rows.push_back({p, n, sg, energy_closed_form(ps, n, sg)});
    }
    // deterministic order regardless of evaluation order
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.p != b.p) return a.p < b.p;
        if (a.n != b.n) return a.n < b.n;
        return a.sg < b.sg;
    });

    if (out.format == "json") {
        json results = json::array();
        for (const auto& r : rows)
            results.push_back({{"param_value", r.p},
                               {"n", r.n},
                               {"branch", branch_name(r.sg)},
                               {"E", {{"re", r.st.energy.real()}, {"im", r.st.energy.imag()}}},
                               {"is_real", r.st.is_real_spectrum},
                               {"in_window", r.st.is_real_spectrum}});
        const json doc{{"params", params_json(spec)},
                       {"vary", {{"name", vary}, {"from", from}, {"to", to}, {"steps", steps}}},
                       {"results", results},
                       {"provenance", {{"version", kVersion}, {"command_line", out.cmdline}}}};
        emit(out.path, doc.dump(2) + "\n");
    } else {
        std::string body = csv_header(spec, out.cmdline);
        body += "# vary=" + vary + " from=" + fmt17(from) + " to=" + fmt17(to) +
                " steps=" + std::to_string(steps) + "\n";
        body += "param_value,n,branch,E_re,E_im,is_real,outside_window\n";
        for (const auto& r : rows)
            body += fmt17(r.p) + "," + std::to_string(r.n) + "," + branch_name(r.sg) + "," +
                    fmt17(r.st.energy.real()) + "," + fmt17(r.st.energy.imag()) + "," +
                    (r.st.is_real_spectrum ? "1" : "0") + "," +
                    (r.st.is_real_spectrum ? "0" : "1") + "\n";
        emit(out.path, body);
    }
    return 0;
}

int run_wavefunction(const PotentialSpec& spec, const std::vector<int>& levels,
                     const std::string& branch, double x_from, double x_to, int steps,
                     double energy_re, double energy_im, const OutputOpts& out) {
    spec.validate();
    if (steps < 2) throw std::runtime_error("--steps must be >= 2");
    const BranchSign sg = (branch == "minus") ? BranchSign::Minus : BranchSign::Plus;
    struct Sample {
        int n;
        double x;
        Complex up, lo;
    };
    std::vector<Sample> samples;
    const auto xs = linspace(x_from, x_to, steps);
    if (spec.variant == Variant::Exponential) {
        const auto ev = q0_state(spec, Complex{energy_re, energy_im});
        for (double x : xs) {
            const auto e = ev.at_x(x);
            samples.push_back({0, x, e.upper, e.lower});
        }
    } else {
        for (int n : levels) {
            const auto st = energy_closed_form(spec, n, sg);
            const auto ev = spinor_state(spec, st);
            for (double x : xs) {
                const auto e = ev.at_x(x);
                samples.push_back({n, x, e.upper, e.lower});
            }
        }
    }

    if (out.format == "json") {
        json results = json::array();
        for (const auto& smp : samples)
            results.push_back({{"n", smp.n},
                               {"branch", branch},
                               {"x", smp.x},
                               {"upper", {{"re", smp.up.real()}, {"im", smp.up.imag()}}},
                               {"lower", {{"re", smp.lo.real()}, {"im", smp.lo.imag()}}}});
        const json doc{{"params", params_json(spec)},
                       {"results", results},
                       {"provenance", {{"version", kVersion}, {"command_line", out.cmdline}}}};
        emit(out.path, doc.dump(2) + "\n");
    } else {
        std::string body = csv_header(spec, out.cmdline);
        body += "x,n,branch,upper_re,upper_im,lower_re,lower_im\n";
        for (const auto& smp : samples)
            body += fmt17(smp.x) + "," + std::to_string(smp.n) + "," + branch + "," +
                    fmt17(smp.up.real()) + "," + fmt17(smp.up.imag()) + "," +
                    fmt17(smp.lo.real()) + "," + fmt17(smp.lo.imag()) + "\n";
        emit(out.path, body);
    }
    return 0;
}

int run_oracle(const PotentialSpec& spec, const GridSpec& grid, const OutputOpts& out) {
    const auto sp = fd_dirac_spectrum(spec, grid);
    if (out.format == "json") {
        json eig = json::array();
        for (const Complex& e : sp.eigenvalues)
            eig.push_back({{"re", e.real()}, {"im", e.imag()}});
        const json doc{{"params", params_json(spec)},
                       {"grid",
                        {{"x_min", grid.x_min},
                         {"x_max", grid.x_max},
                         {"n_points", grid.n_points},
                         {"h", sp.h}}},
                       {"eigenvalues", eig},
                       {"provenance", {{"version", kVersion}, {"command_line", out.cmdline}}}};
        emit(out.path, doc.dump(2) + "\n");
    } else {
        std::string body = csv_header(spec, out.cmdline);
        body += "# grid x_min=" + fmt17(grid.x_min) + " x_max=" + fmt17(grid.x_max) +
                " n_points=" + std::to_string(grid.n_points) + " h=" + fmt17(sp.h) + "\n";
        body += "index,E_re,E_im\n";
        for (size_t i = 0; i < sp.eigenvalues.size(); ++i)
            body += std::to_string(i) + "," + fmt17(sp.eigenvalues[i].real()) + "," +
                    fmt17(sp.eigenvalues[i].imag()) + "\n";
        emit(out.path, body);
    }
    return 0;
}

int run_verify(double tol_scale) {
    const VerifyReport rep = run_verify_suite(tol_scale);
    for (const auto& c : rep.checks)
        std::printf("%s  %-36s measured=%.3e tolerance=%.3e\n",
                    c.passed ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.tolerance);
    std::printf("%s: %zu checks\n", rep.all_passed ? "OK" : "FAILED", rep.checks.size());
    return rep.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirac equation solver for the generalized Hulthen potential family"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    PotentialSpec spec;
    std::string variant = "real";
    std::string levels_text = "0";
    OutputOpts out;
    out.cmdline = join_args(argc, argv);

    auto* spectrum = app.add_subcommand("spectrum", "closed-form bound-state energies");
    add_potential_flags(spectrum, spec, variant);
    spectrum->add_option("--n", levels_text, "levels: N, N..M or comma list");
    add_output_flags(spectrum, out);

    std::string vary = "V0";
    double from = 0.0, to = 1.0;
    int steps = 2;
    auto* scan = app.add_subcommand("scan", "energy vs one swept parameter");
    add_potential_flags(scan, spec, variant);
    scan->add_option("--n", levels_text, "levels");
    scan->add_option("--vary", vary, "parameter to sweep: V0|alpha|q|m");
    scan->add_option("--from", from, "sweep start")->required();
    scan->add_option("--to", to, "sweep end")->required();
    scan->add_option("--steps", steps, "number of sweep points")->required();
    add_output_flags(scan, out);

    std::string branch = "plus";
    double x_from = 0.1, x_to = 5.0, e_re = 0.5, e_im = 0.0;
    int x_steps = 201;
    auto* wf = app.add_subcommand("wavefunction", "sampled spinor components");
    add_potential_flags(wf, spec, variant);
    wf->add_option("--n", levels_text, "levels");
    wf->add_option("--branch", branch, "plus|minus")
        ->check(CLI::IsMember({"plus", "minus"}));
    wf->add_option("--x-from", x_from, "sampling start");
    wf->add_option("--x-to", x_to, "sampling end");
    wf->add_option("--steps", x_steps, "number of samples");
    wf->add_option("--energy-re", e_re, "energy (q = 0 states only)");
    wf->add_option("--energy-im", e_im, "energy imaginary part (q = 0 states only)");
    add_output_flags(wf, out);

    GridSpec grid;
    grid.x_min = -10.0;
    grid.x_max = 10.0;
    grid.n_points = 400;
    auto* oracle = app.add_subcommand("oracle", "finite-difference Dirac spectrum");
    add_potential_flags(oracle, spec, variant);
    oracle->add_option("--x-min", grid.x_min, "domain start");
    oracle->add_option("--x-max", grid.x_max, "domain end");
    oracle->add_option("--grid-points", grid.n_points, "number of intervals");
    add_output_flags(oracle, out);

    double tol_scale = 1.0;
    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("--tolerance-scale", tol_scale,
                       "multiply all tolerances (a small value forces failures)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        const auto levels = parse_levels(levels_text);
        spec.variant = parse_variant(variant);
        if (spectrum->parsed()) return run_spectrum(spec, levels, out);
        if (scan->parsed()) return run_scan(spec, levels, vary, from, to, steps, out);
        if (wf->parsed())
            return run_wavefunction(spec, levels, branch, x_from, x_to, x_steps, e_re, e_im,
                                    out);
        if (oracle->parsed()) return run_oracle(spec, grid, out);
        if (verify->parsed()) return run_verify(tol_scale);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
