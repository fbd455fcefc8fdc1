// Copyright 2026 The djnmr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "djnmr/compiler.h"
#include "djnmr/functions.h"
#include "djnmr/io.h"
#include "djnmr/plot.h"
#include "djnmr/simulator.h"
#include "djnmr/spectra.h"

using namespace djnmr;

namespace {

constexpr int kExitBalanced = 1;
constexpr int kExitCompare = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitInternal = 70;
constexpr int kExitCantWrite = 73;

struct Globals {
    std::string system_path;
    std::string out_path;
    uint64_t seed = 0;
};

SpinSystem load_system(const Globals &g) {
    if (g.system_path.empty()) {
        return SpinSystem::alanine();
    }
    return system_from_json(parse_json(read_file(g.system_path)));
}

void emit(const Globals &g, const std::string &text) {
    if (g.out_path.empty() || g.out_path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) {
            throw OutputError("cannot write to stdout");
        }
    } else {
        write_file(g.out_path, text);
    }
}

SimMode pick_mode(const std::string &mode, const PulseProgram &program) {
    if (mode == "ideal") {
        return SimMode::Ideal;
    }
    if (mode == "timed") {
        return SimMode::Timed;
    }
    return program.zeeman_corrected ? SimMode::Timed : SimMode::Ideal;
}

Spectrum phased(const Fid &fid, const PulseProgram &program, const std::vector<Window> &windows) {
    if (program.passive_phases_deg.size() != windows.size()) {
        throw Error("program and system spin counts differ");
    }
    return apply_passive_phases(fft_spectrum(fid), program.passive_phases_deg, windows);
}

// ---- functions ----

std::string class_label(const FunctionClass &c) {
    return c.class_id == 0 ? "fconst" : "f" + std::to_string(c.class_id);
}

struct FunctionsArgs {
    std::string name;
    bool table = false;
    bool json = false;
};

std::string truth_table_text(const FunctionSpec &f) {
    std::string out = "x2 x1 x0 | f\n";
    for (size_t x = 0; x < f.truth_table.size(); x++) {
        for (size_t b = f.n_bits; b-- > 0;) {
            out += std::to_string((x >> b) & 1) + "  ";
        }
        out += "| " + std::to_string(f.truth_table[x]) + "\n";
    }
    return out;
}

int run_functions_list(const Globals &g, const FunctionsArgs &a) {
    auto reps = list_representatives();
    if (a.json) {
        Json arr = Json::array();
        for (const auto &f : reps) {
            arr.push_back(to_json(f));
        }
        emit(g, dump_json(arr));
        return 0;
    }
    std::string out;
    for (const auto &f : reps) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-6s %s  %-9s %s\n", f.name.c_str(), f.bitstring().c_str(),
                      kind_name(classify_kind(f.truth_table)), f.polynomial().c_str());
        out += buf;
    }
    emit(g, out);
    return 0;
}

int run_functions_show(const Globals &g, const FunctionsArgs &a) {
    FunctionSpec f = parse_function(a.name);
    if (a.json) {
        emit(g, dump_json(to_json(f)));
        return 0;
    }
    std::string out = "table      " + f.bitstring() + "\n";
    out += "polynomial " + f.polynomial() + "\n";
    out += std::string("kind       ") + kind_name(classify_kind(f.truth_table)) + "\n";
    if (f.n_bits == 3 && classify_kind(f.truth_table) != Kind::Neither) {
        FunctionClass c = canonical_class(f);
        out += "class      " + class_label(c) + "\n";
        out += "quadratic  " + std::to_string(c.active_class) + "\n";
    }
    if (a.table) {
        out += truth_table_text(f);
    }
    emit(g, out);
    return 0;
}

// ---- compile ----

struct CompileArgs {
    std::string function;
    std::string indirect = "swap-cnot";
    double ratio = 0.25;
    bool no_shortcut = false;
    bool no_zeeman = false;
    bool no_search = false;
    bool gates = false;
    double refocus_phase = 0;
};

CompileOptions compile_options(const CompileArgs &a) {
    CompileOptions o;
    o.indirect = a.indirect == "swap-scal" ? IndirectStrategy::SwapScal : IndirectStrategy::SwapCnot;
    o.ratio_threshold = a.ratio;
    o.thermal_shortcut = !a.no_shortcut;
    o.zeeman_bookkeeping = !a.no_zeeman;
    o.search = !a.no_search;
    o.refocus_phase_deg = a.refocus_phase;
    return o;
}

int run_compile(const Globals &g, const CompileArgs &a) {
    SpinSystem system = load_system(g);
    FunctionSpec f = parse_function(a.function);
    CompileOptions o = compile_options(a);
    if (a.gates) {
        std::vector<std::string> notes;
        DeferredZ dz = compile_to_gates(build_dj_circuit(f, o.init_axis_phase_deg), system, o, &notes);
        emit(g, dump_json(Json{{"gates", to_json(dz.seq)}, {"passive_phases_deg", dz.passive_deg}, {"notes", notes}}));
        return 0;
    }
    emit(g, dump_json(to_json(compile(f, system, o))));
    return 0;
}

// ---- simulate ----

struct SimulateArgs {
    std::string program;
    std::string mode = "auto";
    size_t points = 4096;
    double sweep = 400;
    double phi_acq = 0;
    std::string report;
};

int run_simulate(const Globals &g, const SimulateArgs &a) {
    SpinSystem system = load_system(g);
    PulseProgram program = program_from_json(parse_json(read_file(a.program)));
    DensityOperator rho = apply_program(thermal_state(system), program, system, pick_mode(a.mode, program));
    if (!a.report.empty()) {
        ProductExpansion exp = product_expansion(apply_passive(rho, program.passive_phases_deg));
        Json j{{"state", exp.to_string()},
               {"coefficients", exp.significant()},
               {"multiplets", to_json(predict_multiplets(exp, system))}};
        write_file(a.report, dump_json(j));
    }
    emit(g, dump_json(to_json(acquire(rho, system, a.points, a.sweep, a.phi_acq))));
    return 0;
}

// ---- spectrum ----

struct SpectrumArgs {
    std::string fid;
    std::string program;
    std::string fiducial_fid;
    std::string fiducial_program;
    std::string svg;
};

int run_spectrum(const Globals &g, const SpectrumArgs &a) {
    SpinSystem system = load_system(g);
    auto windows = multiplet_windows(system);
    Fid fid = fid_from_json(parse_json(read_file(a.fid)));
    PulseProgram program = program_from_json(parse_json(read_file(a.program)));
    Spectrum spec = phased(fid, program, windows);
    if (!a.fiducial_fid.empty()) {
        if (a.fiducial_program.empty()) {
            throw Error("--fiducial-fid needs --fiducial-program");
        }
        Fid ffid = fid_from_json(parse_json(read_file(a.fiducial_fid)));
        PulseProgram fprog = program_from_json(parse_json(read_file(a.fiducial_program)));
        spec = apply_passive_phases(spec, fiducial_phases(phased(ffid, fprog, windows), windows), windows);
    }
    if (!a.svg.empty()) {
        write_file(a.svg, spectrum_svg(spec, windows, program.source.empty() ? "spectrum" : program.source));
    }
    emit(g, spectrum_to_csv(spec));
    return 0;
}

// ---- classify ----

struct ClassifyArgs {
    std::string spectrum;
    std::string fiducial;
    double threshold = 0.2;
    bool batch = false;
    std::string mode = "auto";
    std::string set = "all";
    size_t points = 4096;
    double sweep = 400;
};

int run_classify_batch(const Globals &g, const ClassifyArgs &a) {
    SpinSystem system = load_system(g);
    auto windows = multiplet_windows(system);
    CompileOptions o;
    o.zeeman_bookkeeping = a.mode != "ideal";
    PulseProgram fprog = compile(parse_function("fconst"), system, o);
    auto spectrum_of = [&](const PulseProgram &p) {
        DensityOperator rho = apply_program(thermal_state(system), p, system, pick_mode(a.mode, p));
        return phased(acquire(rho, system, a.points, a.sweep), p, windows);
    };
    Spectrum fid_spec = spectrum_of(fprog);
    auto phases = fiducial_phases(fid_spec, windows);
    fid_spec = apply_passive_phases(fid_spec, phases, windows);
    auto set = a.set == "representatives" ? list_representatives() : all_admissible();
    std::string out;
    size_t wrong = 0;
    for (const auto &f : set) {
        Spectrum s = apply_passive_phases(spectrum_of(compile(f, system, o)), phases, windows);
        Kind got = classify_dj(s, fid_spec, a.threshold);
        Kind want = classify_kind(f.truth_table);
        bool ok = got == want;
        wrong += !ok;
        std::string label = class_label(canonical_class(f));
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-6s %s %-9s %-9s %s\n", label.c_str(),
                      f.bitstring().c_str(), kind_name(want), kind_name(got), ok ? "ok" : "WRONG");
        out += buf;
    }
    out += std::to_string(set.size() - wrong) + "/" + std::to_string(set.size()) + " correct\n";
    emit(g, out);
    return wrong == 0 ? 0 : 1;
}

int run_classify(const Globals &g, const ClassifyArgs &a) {
    if (a.batch) {
        return run_classify_batch(g, a);
    }
    if (a.spectrum.empty() || a.fiducial.empty()) {
        throw CLI::ValidationError("classify", "--spectrum and --fiducial are required without --batch");
    }
    Spectrum s = spectrum_from_csv(read_file(a.spectrum));
    Spectrum f = spectrum_from_csv(read_file(a.fiducial));
    Kind k;
    try {
        k = classify_dj(s, f, a.threshold);
    } catch (const Error &e) {
        std::cerr << "djnmr: " << e.what() << "\n";
        return kExitCompare;
    }
    emit(g, std::string(kind_name(k)) + "\n");
    return k == Kind::Balanced ? kExitBalanced : 0;
}

// ---- fitj ----

struct FitArgs {
    std::string spectrum;
    std::optional<double> center;
    double window = 40;
    std::optional<double> synth_j;
    std::optional<double> synth_fwhm;
};

int run_fitj(const Globals &g, const FitArgs &a) {
    Spectrum spec;
    double center = a.center.value_or(0);
    if (a.synth_j) {
        if (!a.synth_fwhm) {
            throw CLI::ValidationError("fitj", "--synth-j needs --synth-linewidth-hz");
        }
        double half = a.window / 2;
        spec = synthesize_doublet(*a.synth_j, 2 * kPi * *a.synth_fwhm, center, DoubletMode::AntiphaseDisp,
                                  uniform_axis(center - half, center + half, 8001));
    } else {
        if (a.spectrum.empty() || !a.center) {
            throw CLI::ValidationError("fitj", "give --spectrum with --center, or --synth-j");
        }
        spec = spectrum_from_csv(read_file(a.spectrum));
    }
    emit(g, dump_json(to_json(fit_j_from_dispersion(spec, center, a.window))));
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Deutsch-Jozsa NMR compiler and simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--system", g.system_path, "spin system JSON (default: built-in alanine)");
    app.add_option("-o,--out", g.out_path, "output file (default: stdout)");
    app.add_option("--seed", g.seed, "reserved; all computations are deterministic");

    int code = 0;
    std::function<int()> action;

    auto *functions = app.add_subcommand("functions", "list or show test functions");
    functions->require_subcommand(1);
    FunctionsArgs fa;
    auto *flist = functions->add_subcommand("list", "the eleven class representatives");
    flist->add_flag("--json", fa.json);
    flist->callback([&] { action = [&] { return run_functions_list(g, fa); }; });
    auto *fshow = functions->add_subcommand("show", "one function by name or bitstring");
    fshow->add_option("name", fa.name)->required();
    fshow->add_flag("--table", fa.table, "print the truth table");
    fshow->add_flag("--json", fa.json);
    fshow->callback([&] { action = [&] { return run_functions_show(g, fa); }; });

    CompileArgs ca;
    auto *comp = app.add_subcommand("compile", "compile a function to a pulse program");
    comp->add_option("function", ca.function, "name (fconst, f1..f10) or 8-bit table")->required();
    comp->add_option("--indirect", ca.indirect)->check(CLI::IsMember({"swap-cnot", "swap-scal"}));
    comp->add_option("--ratio", ca.ratio, "weak coupling threshold relative to the strongest");
    comp->add_option("--refocus-phase", ca.refocus_phase, "phase of the refocusing 180s, degrees");
    comp->add_flag("--no-shortcut", ca.no_shortcut, "keep delays that act on the thermal state");
    comp->add_flag("--no-zeeman", ca.no_zeeman, "skip Zeeman phase bookkeeping");
    comp->add_flag("--no-search", ca.no_search, "fixed gate order and upper CNOT signs");
    comp->add_flag("--gates", ca.gates, "emit the gate sequence instead of the program");
    comp->callback([&] { action = [&] { return run_compile(g, ca); }; });

    SimulateArgs sa;
    auto *sim = app.add_subcommand("simulate", "run a program on the thermal state and acquire");
    sim->add_option("--program", sa.program)->required();
    sim->add_option("--mode", sa.mode)->check(CLI::IsMember({"auto", "ideal", "timed"}));
    sim->add_option("--points", sa.points)->check(CLI::PositiveNumber);
    sim->add_option("--sweep", sa.sweep, "spectral width, Hz")->check(CLI::PositiveNumber);
    sim->add_option("--phi-acq", sa.phi_acq, "receiver phase, degrees");
    sim->add_option("--report", sa.report, "write the final product operator state here");
    sim->callback([&] { action = [&] { return run_simulate(g, sa); }; });

    SpectrumArgs pa;
    auto *spc = app.add_subcommand("spectrum", "FFT and phase a FID, writing CSV");
    spc->add_option("--fid", pa.fid)->required();
    spc->add_option("--program", pa.program)->required();
    spc->add_option("--fiducial-fid", pa.fiducial_fid);
    spc->add_option("--fiducial-program", pa.fiducial_program);
    spc->add_option("--svg", pa.svg, "also plot the spectrum");
    spc->callback([&] { action = [&] { return run_spectrum(g, pa); }; });

    ClassifyArgs la;
    auto *cls = app.add_subcommand("classify", "decide constant or balanced from spectra");
    cls->add_option("--spectrum", la.spectrum);
    cls->add_option("--fiducial", la.fiducial);
    cls->add_option("--threshold", la.threshold)->check(CLI::Range(0.0, 1.0));
    cls->add_flag("--batch", la.batch, "compile, simulate and classify every admissible function");
    cls->add_option("--mode", la.mode)->check(CLI::IsMember({"auto", "ideal", "timed"}));
    cls->add_option("--set", la.set)->check(CLI::IsMember({"all", "representatives"}));
    cls->callback([&] { action = [&] { return run_classify(g, la); }; });

    FitArgs ja;
    auto *fit = app.add_subcommand("fitj", "estimate J from a dispersion antiphase doublet");
    fit->add_option("--spectrum", ja.spectrum);
    fit->add_option("--center", ja.center, "doublet center, Hz");
    fit->add_option("--window", ja.window, "width of the fitted region, Hz")->check(CLI::PositiveNumber);
    fit->add_option("--synth-j", ja.synth_j, "fit a synthetic doublet with this J, Hz");
    fit->add_option("--synth-linewidth-hz", ja.synth_fwhm, "FWHM of the synthetic lines, Hz")
        ->check(CLI::PositiveNumber);
    fit->callback([&] { action = [&] { return run_fitj(g, ja); }; });

    try {
        app.parse(argc, argv);
        code = action();
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::Error &e) {
        app.exit(e);
        return kExitUsage;
    } catch (const InputError &e) {
        std::cerr << "djnmr: " << e.what() << "\n";
        return kExitNoInput;
    } catch (const OutputError &e) {
        std::cerr << "djnmr: " << e.what() << "\n";
        return kExitCantWrite;
    } catch (const Error &e) {
        std::cerr << "djnmr: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception &e) {
        std::cerr << "djnmr: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return code;
}
