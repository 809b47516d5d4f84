// Theorem-verification suites over sampled and constructed states, plus the
// phase-condition checker. Suites report defects instead of aborting, so one
// run characterizes the whole distribution of violations.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcoh/parallel.hpp"
#include "qcoh/roof.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

struct SuiteViolation {
    std::string fingerprint;  // (seed, draw index) style, never the full matrix
    double defect = 0.0;
};

struct SuiteReport {
    std::string suite;
    int samples = 0;
    std::vector<SuiteViolation> violations;
    double max_defect = 0.0;  // worst signed defect seen (negative = margin)
    bool passed = true;
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    int samples = 0;  // 0: per-suite acceptance default
    Exec exec = Exec::parallel;
};

// True iff every triple i != j != k with |rho_ij rho_jk rho_ki| > tol has a
// product phase within tol of zero. d = 2 is unconditionally true.
struct PhaseConditionResult {
    bool satisfied = true;
    int i = -1, j = -1, k = -1;  // worst triple, when any was inspected
    double max_deviation = 0.0;
};

PhaseConditionResult check_phase_condition(const DensityMatrix& rho, double tol = 1e-9);

// Selective incoherent operations never increase the objective on pure
// states: sum_n p_n g(psi_n) <= g(psi) + 1e-10 over sampled (state, Kraus
// set) pairs.
SuiteReport strong_monotonicity_suite(int d, int samples, const MonotoneId& objective,
                                      std::uint64_t seed, Exec exec = Exec::parallel);

SuiteReport normalization_suite(const SuiteOptions& opts);
SuiteReport ordering_suite(const SuiteOptions& opts);
SuiteReport eq6_cross_suite(const SuiteOptions& opts);
SuiteReport superadditivity_suite(const SuiteOptions& opts);
SuiteReport theorem4_pure_suite(const SuiteOptions& opts);
SuiteReport conversion_pure_suite(const SuiteOptions& opts);
SuiteReport conversion_mixed_suite(const SuiteOptions& opts);
SuiteReport rank_witness_suite(const SuiteOptions& opts);
SuiteReport theorem4_mixed_suite(const SuiteOptions& opts);
SuiteReport theorem5_suite(const SuiteOptions& opts);
SuiteReport strong_monotonicity_all_suite(const SuiteOptions& opts);
SuiteReport convexity_suite(const SuiteOptions& opts);
SuiteReport multislit_suite(const SuiteOptions& opts);

// All suites, acceptance budgets and tolerances.
std::vector<SuiteReport> theorem_suites(const SuiteOptions& opts);

// Names accepted by `verify --suite`.
std::vector<std::string> suite_names();
SuiteReport run_suite_by_name(const std::string& name, const SuiteOptions& opts);

} // namespace qcoh
