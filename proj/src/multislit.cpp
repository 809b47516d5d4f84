#include "qcoh/multislit.hpp"

#include <cmath>

namespace qcoh {

namespace {

// sum_{i != j} x_i y_j over ordered pairs.
double offdiag_pair_sum(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0.0, sy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxy += x[i] * y[i];
    }
    return sx * sy - sxy;
}

double chain_term(int d, const std::vector<double>& x, const std::vector<double>& y) {
    const double s = offdiag_pair_sum(x, y);
    return s <= 0.0 ? 0.0 : std::sqrt(static_cast<double>(d) / (d - 1) * s);
}

} // namespace

DetectorModel DetectorModel::build(std::vector<Complex> phi, std::vector<double> p,
                                   Matrix raw_q) {
    const int d = static_cast<int>(phi.size());
    const int n_fail = static_cast<int>(p.size());
    if (d < 2) {
        throw std::invalid_argument("DetectorModel: need at least two slits");
    }
    if (raw_q.rows() != n_fail || raw_q.cols() != d) {
        throw std::invalid_argument("DetectorModel: q must be A x d");
    }
    double psum = 0.0;
    for (double w : p) {
        if (w < 0.0) throw std::invalid_argument("DetectorModel: negative failure weight");
        psum += w;
    }
    if (psum <= 0.0) throw std::invalid_argument("DetectorModel: failure weights sum to zero");
    for (double& w : p) w /= psum;

    for (int i = 0; i < d; ++i) {
        const double phi2 = std::norm(phi[i]);
        if (phi2 > 1.0 + 1e-12) {
            throw std::invalid_argument("DetectorModel: |phi_i| > 1");
        }
        const double residual = std::max(0.0, 1.0 - phi2);
        double qmass = 0.0;
        for (int a = 0; a < n_fail; ++a) {
            qmass += p[a] * std::norm(raw_q(a, i));
        }
        if (residual < 1e-15) {
            raw_q.col(i).setZero();
            continue;
        }
        if (qmass <= 0.0) {
            throw std::invalid_argument("DetectorModel: column " + std::to_string(i) +
                                        " cannot be normalized (zero failure mass)");
        }
        raw_q.col(i) *= std::sqrt(residual / qmass);
    }

    DetectorModel m;
    m.d = d;
    m.phi = std::move(phi);
    m.p = std::move(p);
    m.q = std::move(raw_q);
    return m;
}

double DetectorModel::normalization_defect() const {
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
        double total = std::norm(phi[i]);
        for (std::size_t a = 0; a < p.size(); ++a) {
            total += p[a] * std::norm(q(static_cast<int>(a), i));
        }
        worst = std::max(worst, std::abs(total - 1.0));
    }
    return worst;
}

int QuantonSpec::dim() const {
    return is_pure() ? static_cast<int>(c.size()) : static_cast<int>(chi.cols());
}

QuantonSpec QuantonSpec::pure(std::vector<Complex> amplitudes) {
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw std::invalid_argument("QuantonSpec: pure amplitudes not normalized");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : amplitudes) a *= scale;
    QuantonSpec s;
    s.c = std::move(amplitudes);
    return s;
}

QuantonSpec QuantonSpec::mixed(std::vector<double> lambda, Matrix chi) {
    if (static_cast<int>(lambda.size()) != chi.rows() || chi.rows() < 1) {
        throw std::invalid_argument("QuantonSpec: lambda/chi shape mismatch");
    }
    double lsum = 0.0;
    for (double l : lambda) {
        if (l < 0.0) throw std::invalid_argument("QuantonSpec: negative mixing weight");
        lsum += l;
    }
    if (std::abs(lsum - 1.0) > 1e-10) {
        throw std::invalid_argument("QuantonSpec: mixing weights not normalized");
    }
    for (double& l : lambda) l /= lsum;
    for (int x = 0; x < chi.rows(); ++x) {
        const double rn = chi.row(x).norm();
        if (std::abs(rn * rn - 1.0) > 1e-10) {
            throw std::invalid_argument("QuantonSpec: chi row " + std::to_string(x) +
                                        " not normalized");
        }
        chi.row(x) /= rn;
    }
    QuantonSpec s;
    s.lambda = std::move(lambda);
    s.chi = std::move(chi);
    return s;
}

ReducedState reduced_state(const QuantonSpec& quanton, const DetectorModel& detector) {
    const int d = detector.d;
    if (quanton.dim() != d) {
        throw std::invalid_argument("reduced_state: quanton/detector dimension mismatch");
    }
    const int n_fail = static_cast<int>(detector.p.size());

    Decomposition induced;
    auto add_member = [&](double weight, Vector v) {
        if (weight < kDropWeight) return;
        v /= v.norm();
        induced.weights.push_back(weight);
        induced.states.emplace_back(std::move(v));
    };

    if (quanton.is_pure()) {
        for (int i = 0; i < d; ++i) {
            const double w = std::norm(quanton.c[i]) * std::norm(detector.phi[i]);
            add_member(w, Vector::Unit(d, i));
        }
        for (int a = 0; a < n_fail; ++a) {
            Vector v(d);
            double mass = 0.0;
            for (int i = 0; i < d; ++i) {
                v(i) = quanton.c[i] * detector.q(a, i);
                mass += std::norm(v(i));
            }
            add_member(detector.p[a] * mass, std::move(v));
        }
    } else {
        const int n_mix = static_cast<int>(quanton.lambda.size());
        for (int i = 0; i < d; ++i) {
            double occupancy = 0.0;
            for (int x = 0; x < n_mix; ++x) {
                occupancy += quanton.lambda[x] * std::norm(quanton.chi(x, i));
            }
            add_member(occupancy * std::norm(detector.phi[i]), Vector::Unit(d, i));
        }
        for (int a = 0; a < n_fail; ++a) {
            for (int x = 0; x < n_mix; ++x) {
                Vector v(d);
                double mass = 0.0;
                for (int i = 0; i < d; ++i) {
                    v(i) = quanton.chi(x, i) * detector.q(a, i);
                    mass += std::norm(v(i));
                }
                add_member(detector.p[a] * quanton.lambda[x] * mass, std::move(v));
            }
        }
    }

    return {DensityMatrix(induced.reconstruct()), std::move(induced)};
}

FailureChain failure_chain(const QuantonSpec& quanton, const DetectorModel& detector,
                           const RoofOptions& opts) {
    const int d = detector.d;
    const int n_fail = static_cast<int>(detector.p.size());
    const ReducedState red = reduced_state(quanton, detector);

    FailureChain chain;
    if (quanton.is_pure()) {
        std::vector<double> cw(d);
        for (int i = 0; i < d; ++i) cw[i] = std::norm(quanton.c[i]);

        std::vector<double> marginal(d, 0.0);
        for (int i = 0; i < d; ++i) {
            for (int a = 0; a < n_fail; ++a) {
                marginal[i] += detector.p[a] * std::norm(detector.q(a, i));
            }
        }
        std::vector<double> x(d);
        for (int i = 0; i < d; ++i) x[i] = cw[i] * marginal[i];
        chain.bound1 = chain_term(d, x, x);

        for (int a = 0; a < n_fail; ++a) {
            std::vector<double> y(d);
            for (int i = 0; i < d; ++i) y[i] = cw[i] * std::norm(detector.q(a, i));
            chain.bound2 += detector.p[a] * chain_term(d, y, y);
        }
    } else {
        const int n_mix = static_cast<int>(quanton.lambda.size());
        std::vector<double> occupancy(d, 0.0);
        for (int i = 0; i < d; ++i) {
            for (int x = 0; x < n_mix; ++x) {
                occupancy[i] += quanton.lambda[x] * std::norm(quanton.chi(x, i));
            }
        }
        for (int a = 0; a < n_fail; ++a) {
            std::vector<double> y(d);
            for (int i = 0; i < d; ++i) y[i] = occupancy[i] * std::norm(detector.q(a, i));
            chain.bound1 += detector.p[a] * chain_term(d, y, y);
        }
        for (int a = 0; a < n_fail; ++a) {
            for (int x = 0; x < n_mix; ++x) {
                std::vector<double> y(d);
                for (int i = 0; i < d; ++i) {
                    y[i] = std::norm(quanton.chi(x, i)) * std::norm(detector.q(a, i));
                }
                chain.bound2 += detector.p[a] * quanton.lambda[x] * chain_term(d, y, y);
            }
        }
    }

    chain.roof_estimate =
        coherence_k_concurrence_mixed(red.rho, 2, opts, {red.induced}).value;

    if (chain.bound1 < chain.bound2 - 1e-8 || chain.bound2 < chain.roof_estimate - 1e-8) {
        throw std::logic_error("failure_chain: bound chain violated");
    }
    return chain;
}

DistinguishabilityReport distinguishability(const QuantonSpec& quanton,
                                            const DetectorModel& detector,
                                            const RoofOptions& opts) {
    const int d = detector.d;
    ReducedState red = reduced_state(quanton, detector);
    const FailureChain chain = failure_chain(quanton, detector, opts);

    const double d_q = std::min(1.0, std::max(0.0, 1.0 - chain.roof_estimate));
    const double l1_bound = 1.0 - l1_coherence(red.rho) / (d - 1);
    if (d_q > l1_bound + 1e-8) {
        throw std::logic_error("distinguishability: D_Q exceeded the l1 bound");
    }
    CoherenceNumberReport number = coherence_number_estimate(red.rho, 1e-4, opts);
    const int slits = d - number.r_hat;
    return DistinguishabilityReport{std::move(red.rho),
                                    d_q,
                                    {chain.bound1, chain.bound2, chain.roof_estimate},
                                    l1_bound,
                                    slits,
                                    std::move(number)};
}

int distinguishable_slit_count(const DensityMatrix& rho_s, double epsilon,
                               const RoofOptions& opts) {
    const auto report = coherence_number_estimate(rho_s, epsilon, opts);
    return rho_s.dim() - report.r_hat;
}

} // namespace qcoh
