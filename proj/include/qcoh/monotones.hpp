// Closed-form monotone evaluations for pure states: elementary symmetric
// polynomials, coherence k-concurrence, coherence rank, l1-norm coherence,
// the coherence concurrence and the entanglement k-concurrence in both the
// Schmidt and the general (minor-based) route.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcoh/states.hpp"

namespace qcoh {

enum class MonotoneFamily {
    coherence_k_concurrence,
    entanglement_k_concurrence,
    l1_coherence,
    qi_coherence_concurrence,
};

// Identity of a monotone; k is present exactly for the k-concurrence families.
struct MonotoneId {
    MonotoneFamily family;
    std::optional<int> k;

    static MonotoneId coherence_k(int k) {
        return {MonotoneFamily::coherence_k_concurrence, k};
    }
    static MonotoneId entanglement_k(int k) {
        return {MonotoneFamily::entanglement_k_concurrence, k};
    }
    static MonotoneId l1() { return {MonotoneFamily::l1_coherence, std::nullopt}; }
    static MonotoneId qi() { return {MonotoneFamily::qi_coherence_concurrence, std::nullopt}; }

    std::string name() const;
};

std::optional<MonotoneId> parse_monotone(const std::string& name, std::optional<int> k);

// Binomial coefficient as a double (exact for the sizes used here).
double binomial(int n, int k);

// Elementary symmetric polynomial S_k(values) by the O(n*k) running-table
// recurrence; exact-signless and stable for nonnegative inputs.
double elementary_symmetric(const std::vector<double>& values, int k);

// d * (S_k(|psi_1|^2, ..., |psi_d|^2) / C(d,k))^(1/k), in [0, 1].
double coherence_k_concurrence_pure(const PureState& psi, int k);

// 2 * sum_{j<k} |rho_jk|.
double l1_coherence(const DensityMatrix& rho);

// 2 * sum_{j<k} |psi_j psi_k|; equals l1_coherence of the projector.
double qi_coherence_concurrence_pure(const PureState& psi);

// Number of amplitudes with |psi_i| > tol.
int coherence_rank(const PureState& psi, double tol = 1e-9);

// [S_k(lambda) / S_k(1/d, ..., 1/d)]^(1/k) from the Schmidt coefficients.
// Requires d_A == d_B.
double ent_k_concurrence_schmidt(const BipartitePureState& psi, int k);

// Same value through the antisymmetrized-product route: sums |det|^2 over all
// k x k submatrices of the amplitude matrix. Requires d_A == d_B <= 6.
double ent_k_concurrence_general(const BipartitePureState& psi, int k);

// Shared normalization: d * (S_k(weights)/C(d,k))^(1/k) with the tiny-value
// guard applied before the root.
double k_concurrence_from_weights(const std::vector<double>& weights, int d, int k);

} // namespace qcoh
