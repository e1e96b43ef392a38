#pragma once

#include "polysu11/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polysu11 {

inline constexpr const char* library_version = "0.1.0";
// seed of the deterministic sample generator used for the zeta probes; raw
// mt19937 words are mapped to doubles so outputs are platform-stable
inline constexpr unsigned long sampling_seed = 12345;

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false; // value <= tolerance
};

struct VerifyOptions {
    int trunc = 64;           // representation truncation for the matrix checks
    double gamma = 0.25;      // worked-case deformation parameter
    double state_tol = 1e-14; // relative truncation tolerance for state builds
    // uniform replacement for every check tolerance (POLYSU11_TOL)
    std::optional<double> tolerance_override;
};

struct VerificationReport {
    AlgebraSpec spec;
    VerifyOptions options;
    bool complex_deformation_roots = false;
    double invariant_eigenvalue = 0.0; // Phi(k(k-1)), the operative value
    double bargmann_label = 0.0;       // k(k-1), the index-labeled shorthand
    double minus_defect = 0.0;         // |K- state - zeta state| at the first probe
    double plus_defect = 0.0;          // same for K+; stays O(1)
    std::string eigenrelation_held_by; // "lowering" or "raising", whichever wins
    std::vector<CheckResult> checks;
    bool all_pass = false;
};

// Full invariant suite for one algebra spec plus the worked-case checks at
// options.gamma. Check names and tolerances mirror the acceptance gate.
VerificationReport run_verification(const AlgebraSpec& spec, const VerifyOptions& opt = {});

// Pretty-printed JSON (2-space indent, trailing newline); key order is fixed
// so identical runs serialize byte-identically.
std::string report_json(const VerificationReport& report);

} // namespace polysu11
