// Coherence-to-entanglement conversion: the generalized CNOT permutation
// unitary, the channel that appends a reference ancilla and conjugates by it,
// and verification of the concurrence conversion identity.

#pragma once

#include "qcoh/roof.hpp"
#include "qcoh/states.hpp"

#include <variant>

namespace qcoh {

// The generalized CNOT on a d x d product space, kept as an index permutation
// rather than a dense d^2 x d^2 matrix: |i>|j> -> |i>|(i + j) mod d>.
// Restricted to the reference ancilla |0> it copies the basis index.
struct GeneralizedCnot {
    int d;

    explicit GeneralizedCnot(int dim);

    // Image of a product-basis index (row-major |i>|j> <-> i*d + j).
    int image(int index) const {
        const int i = index / d;
        const int j = index % d;
        return i * d + (i + j) % d;
    }
    int preimage(int index) const {
        const int i = index / d;
        const int j = index % d;
        return i * d + ((j - i) % d + d) % d;
    }
};

// Lambda_u: append the ancilla in |0><0| and conjugate by the generalized
// CNOT. Pure inputs sum_i psi_i|i> map to sum_i psi_i|ii> exactly.
BipartitePureState lambda_u(const PureState& psi);
DensityMatrix lambda_u(const DensityMatrix& rho);

struct ConversionResult {
    std::variant<BipartitePureState, DensityMatrix> output;
    double coherence_side = 0.0;
    double entanglement_side = 0.0;
    double delta = 0.0;
};

// Pure case: both sides in closed form, delta required below 1e-12.
ConversionResult verify_conversion(const PureState& psi, int k);

// Mixed case: coherence side by convex roof, entanglement side by a convex
// roof over the channel output warm-started from the image of the coherence
// certificate (and the coherence side re-run from the pulled-back
// entanglement certificate when that is tighter).
ConversionResult verify_conversion(const DensityMatrix& rho, int k,
                                   const RoofOptions& opts = {});

// Image of a decomposition under the channel (member-wise).
Decomposition lambda_u_image(const Decomposition& dec);

// Pull a decomposition of the channel output back through the unitary;
// every member of a valid output decomposition is the image of a d-vector.
Decomposition lambda_u_pullback(const Decomposition& dec, int d);

} // namespace qcoh
