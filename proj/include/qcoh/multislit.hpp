// Quanton-detector model for d-slit interference: reduced quanton states for
// pure and mixed quantons, the unambiguous-discrimination failure-probability
// chain, path distinguishability, and the distinguishable-slit count.

#pragma once

#include "qcoh/roof.hpp"
#include "qcoh/states.hpp"

#include <array>

namespace qcoh {

// Inner-product data of the detector states
//   |i>_D = phi_i |phi_i> + sum_a sqrt(p_a) q_a^i |a>,
// which is all the reduced quanton state depends on. Normalization
// |phi_i|^2 + sum_a p_a |q_a^i|^2 = 1 is enforced at construction.
struct DetectorModel {
    int d = 0;
    std::vector<Complex> phi;  // success amplitudes, length d
    std::vector<double> p;     // failure-direction weights, length A, sum 1
    Matrix q;                  // A x d failure coefficients

    // Rescales each column of raw_q so the normalization holds; refuses
    // |phi_i| > 1 and columns that cannot be normalized.
    static DetectorModel build(std::vector<Complex> phi, std::vector<double> p, Matrix raw_q);

    double normalization_defect() const;
};

// Pure quanton (amplitudes c_i) or mixed quanton (weights lambda_x with
// row-normalized chi_x^i); exactly one case is populated.
struct QuantonSpec {
    std::vector<Complex> c;       // pure case
    std::vector<double> lambda;   // mixed case
    Matrix chi;                   // X x d

    bool is_pure() const { return !c.empty(); }
    int dim() const;

    static QuantonSpec pure(std::vector<Complex> amplitudes);
    static QuantonSpec mixed(std::vector<double> lambda, Matrix chi);
};

// Reduced quanton state together with the pure-state decomposition the
// partial trace writes down (diagonal terms as basis states, one term per
// failure direction a, or per (a, x) for mixed quantons).
struct ReducedState {
    DensityMatrix rho;
    Decomposition induced;
};

ReducedState reduced_state(const QuantonSpec& quanton, const DetectorModel& detector);

// The three lower bounds on the failure probability Q_d, in chain order:
// bound1 >= bound2 >= roof_estimate (the C_c^(2) convex-roof estimate
// warm-started from the induced decomposition).
struct FailureChain {
    double bound1 = 0.0;
    double bound2 = 0.0;
    double roof_estimate = 0.0;
};

FailureChain failure_chain(const QuantonSpec& quanton, const DetectorModel& detector,
                           const RoofOptions& opts = {});

struct DistinguishabilityReport {
    DensityMatrix rho_s;
    double d_q = 0.0;                       // 1 - C_c^(2) estimate
    std::array<double, 3> q_lower_bounds{}; // the chain, left to right
    double l1_bound = 0.0;                  // 1 - C_l1 / (d - 1)
    int slit_count = 0;                     // d - r_hat, evidence-based
    CoherenceNumberReport coherence_number;
};

DistinguishabilityReport distinguishability(const QuantonSpec& quanton,
                                            const DetectorModel& detector,
                                            const RoofOptions& opts = {});

// d - r_hat where r_hat = coherence_number_estimate(rho_s, epsilon).
int distinguishable_slit_count(const DensityMatrix& rho_s, double epsilon = 1e-4,
                               const RoofOptions& opts = {});

} // namespace qcoh
