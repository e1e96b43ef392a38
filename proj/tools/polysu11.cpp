// polysu11 CLI: verification reports, weight tables, coherent-state dumps,
// and SUSY spectra as JSON/CSV. Identical invocations produce byte-identical
// output. Exit 0 on success, 1 on failed checks, 2 on argument errors.
#include "CLI11.hpp"
#include "json.hpp"

#include "polysu11/coherent_states.hpp"
#include "polysu11/resolution_of_unity.hpp"
#include "polysu11/susy_oscillator.hpp"
#include "polysu11/verification.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace polysu11;

std::vector<double> parse_csv_reals(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size())
            throw std::invalid_argument(std::string(what) + ": malformed real '" + item + "'");
        values.push_back(value);
    }
    if (values.empty())
        throw std::invalid_argument(std::string(what) + ": empty list");
    return values;
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file: " + path);
    out << payload;
}

StateFamily parse_family(const std::string& name) {
    if (name == "bg")
        return StateFamily::lowering_eigenstate;
    if (name == "p")
        return StateFamily::displacement;
    throw std::invalid_argument("family must be 'bg' or 'p'");
}

std::optional<double> tolerance_override_from_env() {
    const char* env = std::getenv("POLYSU11_TOL");
    if (!env)
        return std::nullopt;
    std::size_t used = 0;
    const std::string text(env);
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !(value > 0.0))
        throw std::invalid_argument("POLYSU11_TOL must be a positive real");
    return value;
}

int run_verify(int p, const std::string& alpha_csv, double k, double gamma, int trunc,
               double state_tol, const std::string& json_path) {
    AlgebraSpec spec;
    spec.p = p;
    spec.alpha = parse_csv_reals(alpha_csv, "--alpha");
    spec.k = k;
    VerifyOptions opt;
    opt.trunc = trunc;
    opt.gamma = gamma;
    opt.state_tol = state_tol;
    opt.tolerance_override = tolerance_override_from_env();
    validate(spec, std::max(trunc, AlgebraSpec::default_nmax)); // argument errors exit 2

    const VerificationReport report = run_verification(spec, opt);
    write_output(json_path, report_json(report));
    for (const CheckResult& check : report.checks)
        if (!check.pass)
            std::cerr << "check failed: " << check.name << " = " << format_real(check.value)
                      << " > " << format_real(check.tolerance) << "\n";
    return report.all_pass ? 0 : 1;
}

int run_weights(const std::string& family_name, const std::string& gamma_csv, double tmax,
                int steps, const std::string& out_path) {
    const StateFamily family = parse_family(family_name);
    const std::vector<double> gammas = parse_csv_reals(gamma_csv, "--gamma");
    const std::vector<WeightTableRow> rows = weight_table(family, gammas, tmax, steps);
    std::string csv = "gamma,t,rho\n";
    for (const WeightTableRow& row : rows)
        csv += format_real(row.gamma) + "," + format_real(row.t) + "," +
               format_real(row.rho) + "\n";
    write_output(out_path, csv);
    return 0;
}

int run_states(const std::string& family_name, const std::string& zeta_csv, int p,
               const std::string& alpha_csv, double k, double tol,
               const std::string& out_path) {
    const StateFamily family = parse_family(family_name);
    const std::vector<double> zeta_parts = parse_csv_reals(zeta_csv, "--zeta");
    if (zeta_parts.size() != 2)
        throw std::invalid_argument("--zeta expects '<re>,<im>'");
    AlgebraSpec spec;
    spec.p = p;
    spec.alpha = parse_csv_reals(alpha_csv, "--alpha");
    spec.k = k;
    validate(spec);

    const CoherentState state = build_state(StructureSequence(spec), family,
                                            {zeta_parts[0], zeta_parts[1]}, tol);
    std::string csv = "n,Re(c_n),Im(c_n),|c_n|^2\n";
    for (std::size_t n = 0; n < state.coeff.size(); ++n)
        csv += std::to_string(n) + "," + format_real(state.coeff[n].real()) + "," +
               format_real(state.coeff[n].imag()) + "," +
               format_real(std::norm(state.coeff[n])) + "\n";
    write_output(out_path, csv);
    return 0;
}

int run_spectrum(double gamma, std::optional<double> epsilon, double r_max, int points,
                 int levels, const std::string& out_path) {
    OscillatorParams par;
    par.gamma = gamma;
    par.epsilon = epsilon.value_or(-gamma - 0.5);
    if (!check_validity(par).convergent)
        throw std::invalid_argument("spectrum: epsilon (1 + 2 gamma) + 2 must be positive");
    GridSpectrumOptions opt;
    opt.r_max = r_max;
    opt.points = points;
    opt.levels = levels;

    const GridSpectrum plus = grid_spectrum(par, Partner::plus, opt);
    const GridSpectrum minus = grid_spectrum(par, Partner::minus, opt);
    const double shift = std::max(plus.refinement_shift, minus.refinement_shift);
    if (shift > 1e-3)
        std::cerr << "warning: grid refinement moved levels by " << format_real(shift)
                  << "; increase --points or shrink --rmax\n";

    nlohmann::ordered_json j;
    j["gamma"] = par.gamma;
    j["epsilon"] = par.epsilon;
    j["levels"] = nlohmann::ordered_json::array();
    for (int n = 0; n < levels; ++n)
        j["levels"].push_back({{"n", n},
                               {"analytic", energy_level(par, n)},
                               {"grid_plus", plus.levels[n]},
                               {"grid_minus", minus.levels[n]}});
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deformed su(1,1) algebras: verification, weights, states, spectra"};
    app.require_subcommand(1);

    // verify
    int p = 1, trunc = 64;
    std::string alpha_csv;
    double k = 1.0, gamma = 0.25, state_tol = 1e-14;
    std::string json_path;
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite, emit JSON");
    verify->add_option("--p", p, "polynomial degree parameter")->required();
    verify->add_option("--alpha", alpha_csv, "structure coefficients, comma separated")
        ->required();
    verify->add_option("--k", k, "Bargmann index")->required();
    verify->add_option("--gamma", gamma, "worked-case deformation parameter");
    verify->add_option("--trunc", trunc, "representation truncation");
    verify->add_option("--tol", state_tol, "state truncation tolerance");
    verify->add_option("--json", json_path, "report path (stdout when omitted)");

    // weights
    std::string family_name, gamma_csv, out_path;
    double tmax = 20.0;
    int steps = 400;
    CLI::App* weights = app.add_subcommand("weights", "cubic weight densities as CSV");
    weights->add_option("--family", family_name, "bg | p")->required();
    weights->add_option("--gamma", gamma_csv, "deformation parameters, comma separated")
        ->required();
    weights->add_option("--tmax", tmax, "grid upper edge");
    weights->add_option("--steps", steps, "grid points per gamma");
    weights->add_option("--out", out_path, "CSV path (stdout when omitted)");

    // states
    std::string zeta_csv;
    CLI::App* states = app.add_subcommand("states", "coherent-state coefficients as CSV");
    states->add_option("--family", family_name, "bg | p")->required();
    states->add_option("--zeta", zeta_csv, "label '<re>,<im>'")->required();
    states->add_option("--p", p, "polynomial degree parameter")->required();
    states->add_option("--alpha", alpha_csv, "structure coefficients, comma separated")
        ->required();
    states->add_option("--k", k, "Bargmann index")->required();
    states->add_option("--tol", state_tol, "truncation tolerance");
    states->add_option("--out", out_path, "CSV path (stdout when omitted)");

    // spectrum
    double gamma_s = 0.25, r_max = 12.0;
    int points = 4000, levels = 6;
    std::optional<double> epsilon;
    CLI::App* spectrum = app.add_subcommand("spectrum", "analytic vs grid levels as JSON");
    spectrum->add_option("--gamma", gamma_s, "centrifugal parameter")->required();
    spectrum->add_option("--epsilon", epsilon, "offset (default -gamma - 1/2)");
    spectrum->add_option("--rmax", r_max, "Dirichlet box edge");
    spectrum->add_option("--points", points, "grid subintervals");
    spectrum->add_option("--levels", levels, "number of levels");
    spectrum->add_option("--out", out_path, "JSON path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // argument errors exit 2; --help exits 0
    }

    try {
        if (*verify)
            return run_verify(p, alpha_csv, k, gamma, trunc, state_tol, json_path);
        if (*weights)
            return run_weights(family_name, gamma_csv, tmax, steps, out_path);
        if (*states)
            return run_states(family_name, zeta_csv, p, alpha_csv, k, state_tol, out_path);
        if (*spectrum)
            return run_spectrum(gamma_s, epsilon, r_max, points, levels, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
