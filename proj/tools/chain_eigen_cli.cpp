#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chain_eigen/chain_eigen.hpp"

namespace {

using ojson = nlohmann::ordered_json;
using namespace chain_eigen;

constexpr const char* schema_id = "chain-eigen/1";

std::uint64_t dimension_cap() {
    const char* env = std::getenv("CHAIN_EIGEN_MAX_DIM");
    if (env == nullptr || *env == '\0') return default_dimension_cap;
    std::uint64_t value = 0;
    const char* p = env;
    for (; *p != '\0'; ++p) {
        if (*p < '0' || *p > '9')
            throw domain_error("CHAIN_EIGEN_MAX_DIM must be a positive integer");
        value = value * 10 + static_cast<std::uint64_t>(*p - '0');
        if (value > (std::uint64_t(1) << 62))
            throw domain_error("CHAIN_EIGEN_MAX_DIM out of range");
    }
    if (value == 0) throw domain_error("CHAIN_EIGEN_MAX_DIM must be a positive integer");
    return value;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    f << text;
    if (!f.good()) throw resource_error("cannot write output file: " + out_path);
}

std::string csv_quote(const std::vector<int>& xs) {
    std::string s = "\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) s += ' ';
        s += std::to_string(xs[i]);
    }
    return s + "\"";
}

ojson pattern_json(const std::vector<int>& xs) {
    ojson a = ojson::array();
    for (int x : xs) a.push_back(x);
    return a;
}

ojson report_json(const VerificationReport& r) {
    ojson j;
    j["check"] = r.check_name;
    j["N"] = r.n_atoms;
    if (r.n_excitations < 0)
        j["M"] = nullptr;
    else
        j["M"] = r.n_excitations;
    j["max_deviation"] = r.max_deviation;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    ojson details = ojson::array();
    for (const auto& [label, value] : r.details) details.push_back(ojson::array({label, value}));
    j["details"] = details;
    return j;
}

struct SpectrumArgs {
    int n_atoms = 0;
    std::optional<int> m;
    double omega0 = 0.0;
    double omega = 1.0;
    std::string format = "json";
    std::string out;
};

int run_spectrum(const SpectrumArgs& a) {
    const ChainConfig cfg{a.n_atoms, a.omega0, a.omega};
    validate_config(cfg);
    const std::uint64_t cap = dimension_cap();
    std::vector<int> levels;
    if (a.m)
        levels.push_back(*a.m);
    else
        for (int m = 0; m <= a.n_atoms; ++m) levels.push_back(m);

    std::vector<std::pair<ModeTuple, double>> rows;
    for (int m : levels)
        for (auto& entry : full_spectrum(cfg, m, cap)) rows.push_back(std::move(entry));

    std::string text;
    if (a.format == "json") {
        ojson doc;
        doc["schema"] = schema_id;
        doc["command"] = "spectrum";
        doc["n_atoms"] = a.n_atoms;
        if (a.m)
            doc["n_excitations"] = *a.m;
        else
            doc["n_excitations"] = nullptr;
        doc["omega0"] = a.omega0;
        doc["coupling"] = a.omega;
        ojson states = ojson::array();
        for (const auto& [mode, e] : rows) {
            ojson row;
            row["g"] = pattern_json(mode.modes);
            row["energy"] = e;
            states.push_back(row);
        }
        doc["states"] = states;
        text = doc.dump(2) + "\n";
    } else {
        text = "M,g,energy\n";
        for (const auto& [mode, e] : rows)
            text += std::to_string(mode.modes.size()) + ',' + csv_quote(mode.modes) + ',' +
                    format_double(e) + '\n';
    }
    emit(text, a.out);
    return 0;
}

struct StateArgs {
    int n_atoms = 0;
    std::vector<int> mode;
    double omega0 = 0.0;
    double omega = 1.0;
    bool unnormalized = false;
    std::string format = "json";
    std::string out;
};

int run_state(const StateArgs& a) {
    const ChainConfig cfg{a.n_atoms, a.omega0, a.omega};
    validate_config(cfg);
    const ModeTuple mode{a.mode};
    validate_mode(mode, a.n_atoms);
    const std::uint64_t cap = dimension_cap();
    const Eigenstate st = eigenstate(mode, cfg, !a.unnormalized, cap);
    const int m = static_cast<int>(a.mode.size());
    const SubspaceAddress addr{a.n_atoms, m};

    std::string text;
    if (a.format == "json") {
        ojson doc;
        doc["schema"] = schema_id;
        doc["command"] = "state";
        doc["n_atoms"] = a.n_atoms;
        doc["n_excitations"] = m;
        doc["omega0"] = a.omega0;
        doc["coupling"] = a.omega;
        doc["g"] = pattern_json(a.mode);
        doc["energy"] = st.energy;
        doc["normalized"] = st.normalized;
        ojson amps = ojson::array();
        for (std::uint64_t r = 0; r < st.amplitudes.size(); ++r) {
            const ExcitationPattern p = unrank(r, addr);
            amps.push_back(ojson::array({pattern_json(p.indices), st.amplitudes[r], 0.0}));
        }
        doc["amplitudes"] = amps;
        text = doc.dump(2) + "\n";
    } else {
        text = "pattern,re,im\n";
        for (std::uint64_t r = 0; r < st.amplitudes.size(); ++r) {
            const ExcitationPattern p = unrank(r, addr);
            text += csv_quote(p.indices) + ',' + format_double(st.amplitudes[r]) + ",0\n";
        }
    }
    emit(text, a.out);
    return 0;
}

struct DimsArgs {
    int n_atoms = 0;
    std::string format = "json";
    std::string out;
};

int run_dims(const DimsArgs& a) {
    validate_config({a.n_atoms, 0.0, 1.0});
    std::vector<std::uint64_t> levels;
    std::uint64_t total = 0;
    for (int m = 0; m <= a.n_atoms; ++m) {
        levels.push_back(binomial(a.n_atoms, m));
        total += levels.back();
    }
    std::string text;
    if (a.format == "json") {
        ojson doc;
        doc["schema"] = schema_id;
        doc["command"] = "dims";
        doc["n_atoms"] = a.n_atoms;
        doc["levels"] = levels;
        doc["total"] = total;
        text = doc.dump(2) + "\n";
    } else {
        text = "M,dimension\n";
        for (std::size_t m = 0; m < levels.size(); ++m)
            text += std::to_string(m) + ',' + std::to_string(levels[m]) + '\n';
    }
    emit(text, a.out);
    return 0;
}

struct DarkArgs {
    int n_atoms = 0;
    std::string format = "json";
    std::string out;
};

int run_dark(const DarkArgs& a) {
    validate_config({a.n_atoms, 0.0, 1.0});
    std::vector<DipoleReport> reports;
    for (int g1 = 1; g1 <= a.n_atoms; ++g1) reports.push_back(dipole_to_ground(g1, a.n_atoms));

    std::string text;
    if (a.format == "json") {
        ojson doc;
        doc["schema"] = schema_id;
        doc["command"] = "dark";
        doc["n_atoms"] = a.n_atoms;
        ojson modes = ojson::array();
        for (const auto& r : reports) {
            ojson row;
            row["g1"] = r.mode_g1;
            row["amplitude"] = r.amplitude;
            row["dark"] = r.is_dark;
            modes.push_back(row);
        }
        doc["modes"] = modes;
        text = doc.dump(2) + "\n";
    } else {
        text = "g1,amplitude,dark\n";
        for (const auto& r : reports)
            text += std::to_string(r.mode_g1) + ',' + format_double(r.amplitude) + ',' +
                    (r.is_dark ? "true" : "false") + '\n';
    }
    emit(text, a.out);
    return 0;
}

struct EvolveArgs {
    int n_atoms = 0;
    double omega0 = 0.0;
    double omega = 1.0;
    double time = 0.0;
    std::string initial;
    std::string format = "json";
    std::string out;
};

// Initial state file: either a bare JSON array of [[k...], re, im] rows or
// an object with that array under "amplitudes" (the `state` output).
std::map<int, ComplexStateVector> load_initial(const std::string& path, int n_atoms,
                                               std::uint64_t cap) {
    std::ifstream f(path, std::ios::binary);
    if (!f.good()) throw domain_error("cannot read initial state file: " + path);
    ojson doc;
    try {
        doc = ojson::parse(f);
    } catch (const std::exception& e) {
        throw domain_error("initial state file is not valid JSON: " + std::string(e.what()));
    }
    const ojson* rows = &doc;
    if (doc.is_object()) {
        if (!doc.contains("amplitudes"))
            throw domain_error("initial state object has no \"amplitudes\" field");
        rows = &doc["amplitudes"];
    }
    if (!rows->is_array()) throw domain_error("initial state must be a JSON array");
    std::map<int, ComplexStateVector> blocks;
    for (const ojson& row : *rows) {
        if (!row.is_array() || row.size() != 3 || !row[0].is_array() || !row[1].is_number() ||
            !row[2].is_number())
            throw domain_error("initial state rows must look like [[k...], re, im]");
        std::vector<int> indices;
        for (const ojson& k : row[0]) {
            if (!k.is_number_integer()) throw domain_error("pattern indices must be integers");
            indices.push_back(k.get<int>());
        }
        const int m = static_cast<int>(indices.size());
        const SubspaceAddress addr{n_atoms, m};
        const ExcitationPattern p{indices};
        validate_pattern(p, addr);
        auto it = blocks.find(m);
        if (it == blocks.end()) {
            const std::uint64_t dim = subspace_dimension(addr);
            if (dim > cap)
                throw resource_error("initial state block M=" + std::to_string(m) +
                                     " exceeds dimension cap");
            it = blocks.emplace(m, ComplexStateVector(dim, std::complex<double>{})).first;
        }
        it->second[rank(p, addr)] += std::complex<double>(row[1].get<double>(),
                                                          row[2].get<double>());
    }
    if (blocks.empty()) throw domain_error("initial state is empty");
    return blocks;
}

int run_evolve(const EvolveArgs& a) {
    const ChainConfig cfg{a.n_atoms, a.omega0, a.omega};
    validate_config(cfg);
    const std::uint64_t cap = dimension_cap();
    std::map<int, ComplexStateVector> blocks = load_initial(a.initial, a.n_atoms, cap);
    for (auto& [m, state] : blocks) state = evolve(state, a.time, cfg, m, cap);

    std::string text;
    if (a.format == "json") {
        ojson doc;
        doc["schema"] = schema_id;
        doc["command"] = "evolve";
        doc["n_atoms"] = a.n_atoms;
        doc["omega0"] = a.omega0;
        doc["coupling"] = a.omega;
        doc["time"] = a.time;
        ojson amps = ojson::array();
        for (const auto& [m, state] : blocks) {
            const SubspaceAddress addr{a.n_atoms, m};
            for (std::uint64_t r = 0; r < state.size(); ++r) {
                const ExcitationPattern p = unrank(r, addr);
                amps.push_back(ojson::array(
                    {pattern_json(p.indices), state[r].real(), state[r].imag()}));
            }
        }
        doc["amplitudes"] = amps;
        text = doc.dump(2) + "\n";
    } else {
        text = "pattern,re,im\n";
        for (const auto& [m, state] : blocks) {
            const SubspaceAddress addr{a.n_atoms, m};
            for (std::uint64_t r = 0; r < state.size(); ++r) {
                const ExcitationPattern p = unrank(r, addr);
                text += csv_quote(p.indices) + ',' + format_double(state[r].real()) + ',' +
                        format_double(state[r].imag()) + '\n';
            }
        }
    }
    emit(text, a.out);
    return 0;
}

struct VerifyArgs {
    int n_atoms = 0;
    std::optional<int> m;
    bool all = false;
    double omega0 = 0.0;
    double omega = 1.0;
    std::optional<double> tol;
    bool inject_failure = false;
    std::string format = "json";
    std::string out;
};

int run_verify(const VerifyArgs& a) {
    const ChainConfig cfg{a.n_atoms, a.omega0, a.omega};
    validate_config(cfg);
    const std::uint64_t cap = dimension_cap();
    std::vector<VerificationReport> reports;
    auto add = [&](VerificationReport r) {
        if (a.tol) {
            r.tolerance = *a.tol;
            r.passed = r.max_deviation <= r.tolerance;
        }
        reports.push_back(std::move(r));
    };

    std::vector<int> levels;
    if (a.m)
        levels.push_back(*a.m);
    else
        for (int m = 0; m <= a.n_atoms; ++m) levels.push_back(m);

    for (int m : levels) {
        add(residual_sweep(cfg, m, 1e-10, cap));
        add(recurrence_sweep(a.n_atoms, m, 1e-10, cap));
        add(orthonormality(cfg, m, 1e-10, cap));
        if (subspace_dimension({a.n_atoms, m}) <=
            static_cast<std::uint64_t>(default_dense_cap)) {
            add(spectrum_match(cfg, m, 1e-9, cap));
            add(eigenspace_projector_match(cfg, m, 1e-8, cap));
        }
    }
    add(degeneracy_census(cfg, cap));
    if (a.n_atoms <= 10) add(commutator_report(cfg, 1e-12));
    if (a.inject_failure) add(make_report("injected_failure", a.n_atoms, -1, 1.0, 0.0));

    bool all_passed = true;
    for (const auto& r : reports) all_passed = all_passed && r.passed;

    std::string text;
    if (a.format == "json") {
        ojson doc;
        doc["schema"] = schema_id;
        doc["command"] = "verify";
        doc["n_atoms"] = a.n_atoms;
        doc["omega0"] = a.omega0;
        doc["coupling"] = a.omega;
        ojson rs = ojson::array();
        for (const auto& r : reports) rs.push_back(report_json(r));
        doc["reports"] = rs;
        doc["all_passed"] = all_passed;
        text = doc.dump(2) + "\n";
    } else {
        text = "check,N,M,max_deviation,tolerance,passed\n";
        for (const auto& r : reports)
            text += r.check_name + ',' + std::to_string(r.n_atoms) + ',' +
                    (r.n_excitations < 0 ? std::string() : std::to_string(r.n_excitations)) +
                    ',' + format_double(r.max_deviation) + ',' + format_double(r.tolerance) +
                    ',' + (r.passed ? "true" : "false") + '\n';
    }
    emit(text, a.out);
    return all_passed ? 0 : 2;
}

int error_exit(const char* type, const std::string& message) {
    ojson err;
    err["schema"] = schema_id;
    err["error"] = ojson{{"type", type}, {"message", message}};
    std::cerr << err.dump() << "\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "chain-eigen: exact eigenstates, spectra, and dynamics of an open chain of\n"
        "nearest-neighbor dipole-coupled two-level atoms."};
    app.require_subcommand(1);
    app.set_version_flag("--version", "chain-eigen 1.0.0");
    app.footer(
        "Energies are reported as E = M*omega0 + 2*coupling*sum_i cos(g_i*pi/(N+1)).\n"
        "The traceless S^z form of the free Hamiltonian differs from this by the\n"
        "constant offset -N*omega0/2. Set CHAIN_EIGEN_MAX_DIM to override the\n"
        "default subspace dimension cap (2^26).");

    SpectrumArgs spectrum_args;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues for one or all levels");
    spectrum->add_option("-n,--atoms", spectrum_args.n_atoms, "Chain length N")->required();
    spectrum->add_option("-m,--excitations", spectrum_args.m,
                         "Excitation level M (default: all levels)");
    spectrum->add_option("--omega0", spectrum_args.omega0, "Transition frequency omega_0");
    spectrum->add_option("--coupling", spectrum_args.omega, "Nearest-neighbor coupling Omega");
    spectrum->add_option("--format", spectrum_args.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    spectrum->add_option("--out", spectrum_args.out, "Write output to a file");

    StateArgs state_args;
    auto* state = app.add_subcommand("state", "Amplitudes of one eigenstate");
    state->add_option("-n,--atoms", state_args.n_atoms, "Chain length N")->required();
    state->add_option("--mode", state_args.mode, "Mode tuple g1,g2,...")
        ->required()
        ->delimiter(',');
    state->add_option("--omega0", state_args.omega0, "Transition frequency omega_0");
    state->add_option("--coupling", state_args.omega, "Nearest-neighbor coupling Omega");
    state->add_flag("--unnormalized", state_args.unnormalized,
                    "Report raw sine-determinant amplitudes");
    state->add_option("--format", state_args.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    state->add_option("--out", state_args.out, "Write output to a file");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Cross-check the closed form against oracles");
    verify->add_option("-n,--atoms", verify_args.n_atoms, "Chain length N")->required();
    auto* verify_m = verify->add_option("-m,--excitations", verify_args.m,
                                        "Check a single excitation level");
    auto* verify_all =
        verify->add_flag("--all", verify_args.all, "Check every level (the default)");
    verify_m->excludes(verify_all);
    verify->add_option("--omega0", verify_args.omega0, "Transition frequency omega_0");
    verify->add_option("--coupling", verify_args.omega, "Nearest-neighbor coupling Omega");
    verify->add_option("--tol", verify_args.tol, "Override every check tolerance");
    verify->add_flag("--inject-failure", verify_args.inject_failure, "")->group("");
    verify->add_option("--format", verify_args.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--out", verify_args.out, "Write output to a file");

    DarkArgs dark_args;
    auto* dark = app.add_subcommand("dark", "Dark/bright scan of the single-excitation modes");
    dark->add_option("-n,--atoms", dark_args.n_atoms, "Chain length N")->required();
    dark->add_option("--format", dark_args.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    dark->add_option("--out", dark_args.out, "Write output to a file");

    EvolveArgs evolve_args;
    auto* evolve = app.add_subcommand("evolve", "Spectral time evolution of an initial state");
    evolve->add_option("-n,--atoms", evolve_args.n_atoms, "Chain length N")->required();
    evolve->add_option("--time", evolve_args.time, "Evolution time t");
    evolve->add_option("--initial", evolve_args.initial,
                       "JSON file with [[k...], re, im] rows (or a `state` output)")
        ->required();
    evolve->add_option("--omega0", evolve_args.omega0, "Transition frequency omega_0");
    evolve->add_option("--coupling", evolve_args.omega, "Nearest-neighbor coupling Omega");
    evolve->add_option("--format", evolve_args.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    evolve->add_option("--out", evolve_args.out, "Write output to a file");

    DimsArgs dims_args;
    auto* dims = app.add_subcommand("dims", "Subspace dimensions binomial(N, M)");
    dims->add_option("-n,--atoms", dims_args.n_atoms, "Chain length N")->required();
    dims->add_option("--format", dims_args.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    dims->add_option("--out", dims_args.out, "Write output to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (*spectrum) return run_spectrum(spectrum_args);
        if (*state) return run_state(state_args);
        if (*verify) return run_verify(verify_args);
        if (*dark) return run_dark(dark_args);
        if (*evolve) return run_evolve(evolve_args);
        if (*dims) return run_dims(dims_args);
    } catch (const domain_error& e) {
        return error_exit("domain", e.what());
    } catch (const resource_error& e) {
        return error_exit("resource", e.what());
    } catch (const convergence_error& e) {
        return error_exit("convergence", e.what());
    } catch (const std::exception& e) {
        return error_exit("internal", e.what());
    }
    return 64;
}
