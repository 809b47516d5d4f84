#include "qcoh/conversion.hpp"

#include <cmath>

namespace qcoh {

GeneralizedCnot::GeneralizedCnot(int dim) : d(dim) {
    if (d < 2) {
        throw std::invalid_argument("GeneralizedCnot: d must be >= 2");
    }
}

BipartitePureState lambda_u(const PureState& psi) {
    const int d = psi.dim();
    Matrix amp = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        amp(i, i) = psi.amp(i);
    }
    return BipartitePureState(std::move(amp));
}

DensityMatrix lambda_u(const DensityMatrix& rho) {
    const int d = rho.dim();
    const GeneralizedCnot u(d);
    Matrix out = Matrix::Zero(d * d, d * d);
    // rho tensor |0><0| lives on indices (i*d + 0, j*d + 0); conjugation by
    // the permutation moves entry (r, c) to (image(r), image(c)).
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            out(u.image(i * d), u.image(j * d)) = rho.rho(i, j);
        }
    }
    return DensityMatrix(std::move(out));
}

Decomposition lambda_u_image(const Decomposition& dec) {
    Decomposition out;
    out.weights = dec.weights;
    out.states.reserve(dec.size());
    for (const auto& s : dec.states) {
        out.states.emplace_back(lambda_u(s).flattened());
    }
    return out;
}

Decomposition lambda_u_pullback(const Decomposition& dec, int d) {
    const GeneralizedCnot u(d);
    Decomposition out;
    out.weights = dec.weights;
    out.states.reserve(dec.size());
    for (const auto& s : dec.states) {
        // U^dag maps the member into range(rho tensor |0><0|): only the
        // ancilla-|0> block can be populated for a valid output member.
        Vector pulled(d);
        double leak = 0.0;
        for (int idx = 0; idx < d * d; ++idx) {
            const Complex amp = s.amp(u.image(idx));
            if (idx % d == 0) {
                pulled(idx / d) = amp;
            } else {
                leak += std::norm(amp);
            }
        }
        if (leak > 1e-9) {
            throw std::invalid_argument("lambda_u_pullback: member outside the channel range");
        }
        pulled /= pulled.norm();
        out.states.emplace_back(std::move(pulled));
    }
    return out;
}

ConversionResult verify_conversion(const PureState& psi, int k) {
    const BipartitePureState out = lambda_u(psi);
    const double coh = coherence_k_concurrence_pure(psi, k);
    const double ent = ent_k_concurrence_schmidt(out, k);
    const double delta = std::abs(coh - ent);
    if (delta >= 1e-12) {
        throw std::logic_error("verify_conversion: pure identity violated, delta=" +
                               std::to_string(delta));
    }
    return {out, coh, ent, delta};
}

ConversionResult verify_conversion(const DensityMatrix& rho, int k, const RoofOptions& opts) {
    const int d = rho.dim();
    const DensityMatrix out = lambda_u(rho);

    MonotoneEstimate coh = coherence_k_concurrence_mixed(rho, k, opts);
    MonotoneEstimate ent = minimize_roof({out, MonotoneId::entanglement_k(k), opts},
                                         {lambda_u_image(coh.certificate)});
    if (coh.value - ent.value > opts.tol) {
        // The entanglement search found a better ensemble; pull it back.
        MonotoneEstimate coh2 = coherence_k_concurrence_mixed(
            rho, k, opts, {lambda_u_pullback(ent.certificate, d)});
        if (coh2.value < coh.value) coh = std::move(coh2);
    }
    return {out, coh.value, ent.value, std::abs(coh.value - ent.value)};
}

} // namespace qcoh
