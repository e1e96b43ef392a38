#include "polysu11/verification.hpp"

#include "polysu11/coherent_states.hpp"
#include "polysu11/rep_matrix.hpp"
#include "polysu11/resolution_of_unity.hpp"
#include "polysu11/susy_oscillator.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace polysu11 {

namespace {

constexpr double two_pi = 6.283185307179586476925287;

double uniform01(std::mt19937& rng) {
    return rng() * (1.0 / 4294967296.0);
}

std::complex<double> sample_disk(std::mt19937& rng, double radius) {
    const double r = radius * std::sqrt(uniform01(rng));
    return std::polar(r, two_pi * uniform01(rng));
}

double minus_defect_probe(const StructureSequence& seq, double state_tol, std::mt19937& rng,
                          EigenDefects* first) {
    double worst = 0.0;
    for (int probe = 0; probe < 8; ++probe) {
        const std::complex<double> xi = sample_disk(rng, 5.0);
        const CoherentState state =
            build_state(seq, StateFamily::lowering_eigenstate, xi, state_tol);
        const EigenDefects defects = lowering_eigendefect(seq, state);
        if (first && probe == 0)
            *first = defects;
        worst = std::max(worst, defects.minus_defect);
    }
    return worst;
}

double normalization_gap(const StructureSequence& seq, std::mt19937& rng) {
    double worst = 0.0;
    for (StateFamily family : {StateFamily::lowering_eigenstate, StateFamily::displacement}) {
        const double cap = radius_sq(seq, family);
        const double radius = std::isfinite(cap) ? 0.9 * std::sqrt(cap) : 3.0;
        for (int probe = 0; probe < 20; ++probe) {
            const double zeta_sq = std::norm(sample_disk(rng, radius));
            const double series = normalization_series(seq, family, zeta_sq);
            const double closed = normalization_closed_form(seq, family, zeta_sq);
            worst = std::max(worst, std::abs(closed / series - 1.0));
        }
    }
    return worst;
}

double linear_limit_gap(double state_tol) {
    const StructureSequence nearly(AlgebraSpec{2, {1.0, 1e-8}, 1.0});
    const StructureSequence line(AlgebraSpec{1, {1.0}, 1.0});
    const struct {
        StateFamily family;
        std::complex<double> zeta;
    } probes[] = {{StateFamily::lowering_eigenstate, {1.5, 0.75}},
                  {StateFamily::displacement, {0.6, 0.3}}};
    double worst = 0.0;
    for (const auto& probe : probes) {
        const CoherentState a = build_state(nearly, probe.family, probe.zeta, state_tol);
        const CoherentState b = build_state(line, probe.family, probe.zeta, state_tol);
        const std::size_t len = std::max(a.coeff.size(), b.coeff.size());
        for (std::size_t i = 0; i < len; ++i) {
            const std::complex<double> ca = i < a.coeff.size() ? a.coeff[i] : 0.0;
            const std::complex<double> cb = i < b.coeff.size() ? b.coeff[i] : 0.0;
            worst = std::max(worst, std::abs(ca - cb));
        }
    }
    return worst;
}

// per-n relative moment residuals shared by the moment-law and unity checks
std::vector<double> moment_defect_list(const StructureSequence& seq, StateFamily family,
                                       int max_n) {
    const WeightFunctionSpec ws = make_weight_spec(seq, family);
    std::vector<double> defects;
    for (int n = 0; n <= max_n; ++n) {
        const double target = moment_target_log(seq, family, n);
        defects.push_back(std::abs(moment_quadrature(ws, n) * std::exp(-target) - 1.0));
    }
    return defects;
}

struct MomentSummary {
    double law = 0.0;   // max residual, n <= 6
    double unity = 0.0; // max residual, n <= 5
};

MomentSummary moment_summary(double gamma) {
    MomentSummary sum;
    const StructureSequence bessel_case(AlgebraSpec{1, {1.0}, 1.0});
    const StructureSequence beta_case(AlgebraSpec{1, {1.0}, 1.25});
    const StructureSequence cubic(cubic_deformation(gamma));
    const struct {
        const StructureSequence* seq;
        StateFamily family;
    } combos[] = {{&bessel_case, StateFamily::lowering_eigenstate},
                  {&beta_case, StateFamily::displacement},
                  {&cubic, StateFamily::lowering_eigenstate},
                  {&cubic, StateFamily::displacement}};
    for (const auto& combo : combos) {
        const std::vector<double> defects = moment_defect_list(*combo.seq, combo.family, 6);
        for (int n = 0; n <= 6; ++n) {
            sum.law = std::max(sum.law, defects[n]);
            if (n <= 5)
                sum.unity = std::max(sum.unity, defects[n]);
        }
    }
    return sum;
}

double susy_spectrum_gap(double gamma) {
    const OscillatorParams par = cubic_oscillator(gamma);
    double worst = 0.0;
    for (Partner which : {Partner::plus, Partner::minus}) {
        const GridSpectrum gs = grid_spectrum(par, which);
        for (int n = 0; n <= 5; ++n)
            worst = std::max(worst, std::abs(gs.levels[n] - (2.0 * n + gamma + 1.5)));
    }
    return worst;
}

double ladder_identity_gap(double gamma) {
    const OscillatorParams par = cubic_oscillator(gamma);
    const StructureSequence seq(cubic_deformation(gamma));
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n) {
        const LadderAmplitudes amp = ladder_amplitudes(par, n);
        worst = std::max(worst, std::abs(amp.up * amp.up / seq.phi(n + 1) - 1.0));
    }
    return worst;
}

double weight_positivity_gap(double gamma) {
    double worst = 0.0;
    for (StateFamily family : {StateFamily::lowering_eigenstate, StateFamily::displacement}) {
        const std::vector<WeightTableRow> rows = weight_table(family, {gamma}, 20.0, 400);
        double lowest = rows.front().rho;
        for (const WeightTableRow& row : rows)
            lowest = std::min(lowest, row.rho);
        worst = std::max(worst, std::max(0.0, -lowest));
        const double mid = rows[rows.size() / 2].rho;
        const double last = rows.back().rho;
        if (!(last < mid)) // tail fails to decay (or is NaN)
            worst = std::max(worst, 1.0);
    }
    return worst;
}

} // namespace

VerificationReport run_verification(const AlgebraSpec& spec, const VerifyOptions& opt) {
    validate(spec, std::max(opt.trunc, AlgebraSpec::default_nmax));
    const StructureSequence seq(spec);
    std::mt19937 rng(static_cast<std::mt19937::result_type>(sampling_seed));

    VerificationReport report;
    report.spec = spec;
    report.options = opt;
    for (const std::complex<double>& root : seq.roots())
        if (root.imag() != 0.0)
            report.complex_deformation_roots = true;
    report.invariant_eigenvalue = eval_structure_function(spec, spec.k * (spec.k - 1.0));
    report.bargmann_label = spec.k * (spec.k - 1.0);

    const auto push = [&](std::string name, double value, double tolerance) {
        const double tol = opt.tolerance_override.value_or(tolerance);
        report.checks.push_back({std::move(name), value, tol, value <= tol});
    };

    const RepMatrices rep = build_rep(seq, opt.trunc);
    const StructureDefects defects = structure_defects(rep, seq);
    push("commutator_defect", defects.commutator, 1e-10);
    push("casimir_defect", std::max(defects.casimir_lower, defects.casimir_upper), 1e-10);

    EigenDefects first;
    push("eigenrelation_minus_defect", minus_defect_probe(seq, opt.state_tol, rng, &first),
         1e-8);
    report.minus_defect = first.minus_defect;
    report.plus_defect = first.plus_defect;
    report.eigenrelation_held_by =
        first.minus_defect <= first.plus_defect ? "lowering" : "raising";

    push("normalization_agreement", normalization_gap(seq, rng), 1e-10);
    push("linear_limit_agreement", linear_limit_gap(opt.state_tol), 1e-6);

    const MomentSummary moments = moment_summary(opt.gamma);
    push("moment_law_defect", moments.law, 1e-5);
    push("unity_defect", moments.unity, 1e-4);

    const StructureSequence disk_case(AlgebraSpec{1, {2.0}, 1.0});
    push("displacement_radius_deviation",
         std::abs(convergence_ratio(disk_case, StateFamily::displacement, 10000) / 2.0 - 1.0),
         1e-2);
    const StructureSequence cubic(cubic_deformation(opt.gamma));
    const double growth = std::min(
        convergence_ratio(cubic, StateFamily::lowering_eigenstate, 10000),
        convergence_ratio(cubic, StateFamily::displacement, 10000));
    push("entire_growth_margin", 1e6 / growth, 1.0);

    push("susy_spectrum_defect", susy_spectrum_gap(opt.gamma), 1e-3);
    push("ladder_identity_defect", ladder_identity_gap(opt.gamma), 1e-12);
    push("weight_positivity_defect", weight_positivity_gap(opt.gamma), 0.0);

    report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const CheckResult& c) { return c.pass; });
    return report;
}

std::string report_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["version"] = library_version;
    j["spec"] = {{"p", report.spec.p}, {"alpha", report.spec.alpha}, {"k", report.spec.k}};
    j["options"] = {{"trunc", report.options.trunc},
                    {"gamma", report.options.gamma},
                    {"state_tol", report.options.state_tol},
                    {"seed", sampling_seed}};
    if (report.options.tolerance_override)
        j["options"]["tolerance_override"] = *report.options.tolerance_override;
    else
        j["options"]["tolerance_override"] = nullptr;
    j["flags"] = {{"complex_deformation_roots", report.complex_deformation_roots}};
    j["casimir"] = {{"invariant_eigenvalue", report.invariant_eigenvalue},
                    {"bargmann_label", report.bargmann_label}};
    j["eigenrelation"] = {{"minus_defect", report.minus_defect},
                          {"plus_defect", report.plus_defect},
                          {"held_by", report.eigenrelation_held_by}};
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& check : report.checks)
        j["checks"].push_back({{"name", check.name},
                               {"value", check.value},
                               {"tolerance", check.tolerance},
                               {"pass", check.pass}});
    j["all_pass"] = report.all_pass;
    return j.dump(2) + "\n";
}

} // namespace polysu11
