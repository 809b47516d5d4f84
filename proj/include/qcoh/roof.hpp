// Convex-roof extension of pure-state monotones to mixed states: ensembles
// are steered through isometries acting on the eigendecomposition, the
// optimizer is a gradient-free coordinate descent over rotation generators
// (exact single-generator exponentials), and every estimate is an upper bound
// on the true roof, returned together with its certificate decomposition.

#pragma once

#include <cstdint>
#include <vector>

#include "qcoh/monotones.hpp"
#include "qcoh/parallel.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

// Pure-state objective usable on unnormalized ensemble members: member_value
// returns ||u||^2 * g(u / ||u||), which is the weighted contribution of the
// member and stays finite as the weight vanishes.
class RoofObjective {
public:
    static RoofObjective make(const MonotoneId& id, int dim);

    double member_value(const Vector& u) const;
    double pure_value(const PureState& psi) const { return member_value(psi.amp); }
    double decomposition_value(const Decomposition& dec) const;

    const MonotoneId& id() const { return id_; }
    int dim() const { return dim_; }

private:
    RoofObjective(MonotoneId id, int dim, int local_dim)
        : id_(id), dim_(dim), local_dim_(local_dim) {}

    MonotoneId id_;
    int dim_;        // dimension of the member vectors
    int local_dim_;  // reshape dimension for the entanglement family
};

struct RoofOptions {
    int ensemble_size = 0;  // 0: default rank^2 (never below rank)
    int restarts = 16;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    int max_iters = 500;  // coordinate-descent sweeps per search
    Exec exec = Exec::parallel;
};

struct RoofProblem {
    DensityMatrix target;
    MonotoneId objective;
    RoofOptions opts;
};

struct MonotoneEstimate {
    double value = 0.0;
    MonotoneId objective{MonotoneFamily::l1_coherence, std::nullopt};
    Decomposition certificate;
    int iterations = 0;                  // sweeps used by the winning search
    std::vector<double> restart_values;  // restarts first, then warm starts
    bool converged = false;
};

// Ensemble steering: sqrt(p_a)|psi_a> = sum_i V_ai sqrt(lambda_i)|e_i>.
// V must have orthonormal columns (within 1e-10) and at least as many rows
// as eig has members. Zero-weight members (< 1e-14) are dropped.
Decomposition decomposition_from_isometry(const Decomposition& eig, const Matrix& V);

// Inverse map onto the isometry manifold (columns re-orthonormalized);
// rejects decompositions that do not reconstruct the same state.
Matrix isometry_from_decomposition(const Decomposition& eig, const Decomposition& dec);

// Multi-restart minimization of the convex-roof objective. Restart 0 starts
// from the eigendecomposition, later restarts from seeded Haar isometries,
// plus one search per warm start. Deterministic in (seed, restarts,
// ensemble_size) regardless of execution policy.
MonotoneEstimate minimize_roof(const RoofProblem& problem,
                               const std::vector<Decomposition>& warm_starts = {});

MonotoneEstimate coherence_k_concurrence_mixed(const DensityMatrix& rho, int k,
                                               const RoofOptions& opts = {},
                                               const std::vector<Decomposition>& warm_starts = {});

MonotoneEstimate qi_concurrence_mixed(const DensityMatrix& rho,
                                      const RoofOptions& opts = {},
                                      const std::vector<Decomposition>& warm_starts = {});

struct CoherenceNumberReport {
    int r_hat = 1;
    double threshold = 1e-4;
    std::vector<int> ks;          // the orders evaluated (2..d)
    std::vector<double> values;   // roof estimates per order
    // Estimates are upper bounds: values <= threshold certify the true
    // C_c^(k) is below it; values above are evidence, not proof, of r_C >= k.
    bool evidence_only = false;
};

CoherenceNumberReport coherence_number_estimate(const DensityMatrix& rho,
                                                double threshold = 1e-4,
                                                const RoofOptions& opts = {});

} // namespace qcoh
