#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qmckay {

struct SelftestResult {
    bool pass = false;
    double max_rel_error = 0.0; // worst gamma_ratio vs float-oracle deviation
    int gamma_cases = 0;
    std::vector<std::string> failures;
};

// Randomized cross-check of gamma_ratio against the floating Gamma oracle
// (1000 cases, tolerance 1e-9 relative) plus the exact cyclotomic identity
// suite (zeta^2N = 1, geometric sum = 0, Phi(zeta) = 0, ring laws, complex
// embedding homomorphism). The seed makes the sample set reproducible.
// corrupt_oracle injects a perturbed Lanczos table as a negative control;
// with it the suite must fail.
SelftestResult run_selftest(std::uint64_t seed, bool corrupt_oracle = false);

} // namespace qmckay
