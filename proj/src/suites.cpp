#include "qcoh/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qcoh/conversion.hpp"
#include "qcoh/multislit.hpp"

namespace qcoh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Measurement {
    std::string fingerprint;
    double defect = 0.0;  // check is "defect <= tol"
    double tol = 0.0;
};

using SampleResult = std::vector<Measurement>;

// Run n independent samples under the execution policy; workers must not
// throw, so exceptions become infinite-defect measurements.
template <typename Fn>
std::vector<SampleResult> run_samples(int n, Exec exec, Fn&& fn) {
    std::vector<SampleResult> results(n);
    for_each_index(static_cast<std::size_t>(n), exec, [&](std::size_t i) {
        try {
            results[i] = fn(static_cast<int>(i));
        } catch (const std::exception& e) {
            results[i] = {{"i=" + std::to_string(i) + "/exception: " + e.what(), kInf, 0.0}};
        }
    });
    return results;
}

SuiteReport aggregate(std::string name, const std::vector<SampleResult>& results) {
    SuiteReport report;
    report.suite = std::move(name);
    report.samples = static_cast<int>(results.size());
    report.max_defect = -kInf;
    for (const auto& sample : results) {
        for (const auto& m : sample) {
            report.max_defect = std::max(report.max_defect, m.defect);
            if (m.defect > m.tol) {
                report.violations.push_back({m.fingerprint, m.defect});
            }
        }
    }
    if (report.max_defect == -kInf) report.max_defect = 0.0;
    report.passed = report.violations.empty();
    return report;
}

int pick(const SuiteOptions& opts, int fallback) {
    return opts.samples > 0 ? opts.samples : fallback;
}

RoofOptions roof_opts(const SuiteOptions& opts, const char* tag, int i) {
    RoofOptions r;
    r.seed = stream_seed(opts.seed, tag, static_cast<std::uint64_t>(i));
    r.exec = Exec::serial;  // suites parallelize over samples, not restarts
    return r;
}

PureState rank_limited_pure(int d, int r, Rng& rng) {
    // r exact-zero amplitudes outside a random r-subset of the basis.
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i) order[i] = i;
    for (int i = d - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(i + 1)]);
    Vector v = Vector::Zero(d);
    for (int i = 0; i < r; ++i) v(order[i]) = rng.cnormal();
    v /= v.norm();
    return PureState(std::move(v));
}

DensityMatrix real_nonnegative_rank2(int d, Rng& rng) {
    Vector v1(d), v2(d);
    for (int i = 0; i < d; ++i) {
        v1(i) = std::abs(rng.normal());
        v2(i) = std::abs(rng.normal());
    }
    v1 /= v1.norm();
    v2 /= v2.norm();
    const double w = 0.1 + 0.8 * rng.uniform();
    Matrix rho = w * (v1 * v1.adjoint()) + (1.0 - w) * (v2 * v2.adjoint());
    return DensityMatrix(std::move(rho));
}

} // namespace

PhaseConditionResult check_phase_condition(const DensityMatrix& rho, double tol) {
    PhaseConditionResult res;
    const int d = rho.dim();
    if (d == 2) {
        return res;  // always satisfied
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            for (int k = j + 1; k < d; ++k) {
                const Complex prod = rho.rho(i, j) * rho.rho(j, k) * rho.rho(k, i);
                if (std::abs(prod) <= tol) continue;
                const double deviation = std::abs(std::arg(prod));
                if (deviation > res.max_deviation) {
                    res.max_deviation = deviation;
                    res.i = i;
                    res.j = j;
                    res.k = k;
                }
            }
        }
    }
    res.satisfied = res.max_deviation < tol;
    return res;
}

SuiteReport strong_monotonicity_suite(int d, int samples, const MonotoneId& objective,
                                      std::uint64_t seed, Exec exec) {
    const RoofObjective obj = RoofObjective::make(objective, d);
    auto results = run_samples(samples, exec, [&](int i) -> SampleResult {
        Rng state_rng = derived_rng(seed, "c3.state", i);
        const PureState psi = random_pure(d, state_rng);

        Rng kraus_rng = derived_rng(seed, "c3.kraus", i);
        const int n_ops = 1 + kraus_rng.uniform_int(3);
        const KrausSet ks = random_incoherent_kraus(d, n_ops, kraus_rng);

        double lhs = 0.0;
        for (const auto& k : ks.ops) {
            const Vector w = k * psi.amp;
            if (w.squaredNorm() < 1e-12) continue;  // skip negligible branches
            lhs += obj.member_value(w);
        }
        const double rhs = obj.pure_value(psi);
        return {{"d=" + std::to_string(d) + "/i=" + std::to_string(i), lhs - rhs, 1e-10}};
    });
    return aggregate("strong_monotonicity[" + objective.name() + ",d=" + std::to_string(d) + "]",
                     results);
}

SuiteReport normalization_suite(const SuiteOptions& opts) {
    std::vector<SampleResult> results;
    for (int d = 2; d <= 6; ++d) {
        Vector max_amp = Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0));
        const PureState maximally_coherent(max_amp);
        const PureState basis(Vector::Unit(d, 0));
        SampleResult sample;
        for (int k = 2; k <= d; ++k) {
            const std::string fp = "d=" + std::to_string(d) + "/k=" + std::to_string(k);
            sample.push_back({fp + "/max",
                              std::abs(coherence_k_concurrence_pure(maximally_coherent, k) - 1.0),
                              1e-12});
            // Basis states must evaluate to exactly zero.
            sample.push_back({fp + "/basis", coherence_k_concurrence_pure(basis, k), 0.0});
        }
        results.push_back(std::move(sample));
    }
    return aggregate("normalization", results);
}

SuiteReport ordering_suite(const SuiteOptions& opts) {
    const int per_d = pick(opts, 1000);
    const int n = 5 * 2 * per_d;  // d in 2..6, pure and bipartite variants
    auto results = run_samples(n, opts.exec, [&](int idx) -> SampleResult {
        const int d = 2 + idx / (2 * per_d);
        const int j = idx % (2 * per_d);
        const bool bipartite = j >= per_d;
        const int i = j % per_d;
        SampleResult sample;
        if (!bipartite) {
            Rng rng = derived_rng(opts.seed, "ordering.pure", idx);
            const PureState psi = random_pure(d, rng);
            double prev = 0.0;
            for (int k = 2; k <= d; ++k) {
                const double cur = coherence_k_concurrence_pure(psi, k);
                if (k > 2) {
                    sample.push_back({"d=" + std::to_string(d) + "/pure/i=" + std::to_string(i) +
                                          "/k=" + std::to_string(k),
                                      cur - prev, 1e-12});
                }
                prev = cur;
            }
        } else {
            Rng rng = derived_rng(opts.seed, "ordering.bipartite", idx);
            Vector v(d * d);
            for (int t = 0; t < d * d; ++t) v(t) = rng.cnormal();
            v /= v.norm();
            const BipartitePureState psi = BipartitePureState::from_flat(v, d, d);
            double prev = 0.0;
            for (int k = 2; k <= d; ++k) {
                const double cur = ent_k_concurrence_schmidt(psi, k);
                if (k > 2) {
                    sample.push_back({"d=" + std::to_string(d) + "/ent/i=" + std::to_string(i) +
                                          "/k=" + std::to_string(k),
                                      cur - prev, 1e-12});
                }
                prev = cur;
            }
        }
        return sample;
    });
    return aggregate("ordering", results);
}

SuiteReport eq6_cross_suite(const SuiteOptions& opts) {
    const int n = pick(opts, 200);
    auto results = run_samples(n, opts.exec, [&](int i) -> SampleResult {
        const int d = 2 + i % 3;
        Rng rng = derived_rng(opts.seed, "eq6", i);
        Vector v(d * d);
        for (int t = 0; t < d * d; ++t) v(t) = rng.cnormal();
        v /= v.norm();
        const BipartitePureState psi = BipartitePureState::from_flat(v, d, d);
        SampleResult sample;
        for (int k = 2; k <= d; ++k) {
            const double via_schmidt = ent_k_concurrence_schmidt(psi, k);
            const double via_minors = ent_k_concurrence_general(psi, k);
            sample.push_back({"d=" + std::to_string(d) + "/k=" + std::to_string(k) +
                                  "/i=" + std::to_string(i),
                              std::abs(via_minors - via_schmidt), 1e-9});
        }
        return sample;
    });
    return aggregate("eq6_cross", results);
}

SuiteReport superadditivity_suite(const SuiteOptions& opts) {
    const int n = pick(opts, 500);
    auto results = run_samples(n, opts.exec, [&](int i) -> SampleResult {
        Rng rng = derived_rng(opts.seed, "subadd", i);
        const int len = 2 + rng.uniform_int(7);
        const int k = 1 + rng.uniform_int(len);
        std::vector<double> a(len), b(len), sum(len);
        for (int t = 0; t < len; ++t) {
            a[t] = std::abs(rng.normal()) * (0.1 + rng.uniform());
            b[t] = std::abs(rng.normal()) * (0.1 + rng.uniform());
            sum[t] = a[t] + b[t];
        }
        const double lhs = std::pow(elementary_symmetric(a, k), 1.0 / k) +
                           std::pow(elementary_symmetric(b, k), 1.0 / k);
        const double rhs = std::pow(elementary_symmetric(sum, k), 1.0 / k);
        return {{"len=" + std::to_string(len) + "/k=" + std::to_string(k) +
                     "/i=" + std::to_string(i),
                 lhs - rhs, 1e-12}};
    });
    return aggregate("superadditivity", results);
}

SuiteReport theorem4_pure_suite(const SuiteOptions& opts) {
    const int per_d = pick(opts, 1000);
    const int n = 5 * per_d;
    auto results = run_samples(n, opts.exec, [&](int idx) -> SampleResult {
        const int d = 2 + idx / per_d;
        Rng rng = derived_rng(opts.seed, "theorem4.pure", idx);
        const PureState psi = random_pure(d, rng);
        const double c2 = coherence_k_concurrence_pure(psi, 2);
        const double cc = qi_coherence_concurrence_pure(psi);
        const std::string fp = "d=" + std::to_string(d) + "/i=" + std::to_string(idx % per_d);
        return {
            {fp + "/lower", cc / (d - 1) - c2, 1e-12},
            {fp + "/upper", c2 - std::sqrt(d / (2.0 * (d - 1))) * cc, 1e-12},
        };
    });
    return aggregate("theorem4_pure", results);
}

SuiteReport conversion_pure_suite(const SuiteOptions& opts) {
    const int n = pick(opts, 500);
    auto results = run_samples(n, opts.exec, [&](int i) -> SampleResult {
        const int d = 2 + i % 5;
        Rng rng = derived_rng(opts.seed, "conversion.pure", i);
        const PureState psi = random_pure(d, rng);
        SampleResult sample;
        for (int k = 2; k <= d; ++k) {
            const auto res = verify_conversion(psi, k);
            sample.push_back({"d=" + std::to_string(d) + "/k=" + std::to_string(k) +
                                  "/i=" + std::to_string(i),
                              res.delta, 1e-12});
        }
        // Rank chain through the channel: nonzero output concurrence exactly
        // down to the coherence rank.
        const int r = 1 + rng.uniform_int(d);
        const PureState limited = rank_limited_pure(d, r, rng);
        const BipartitePureState image = lambda_u(limited);
        for (int k = 2; k <= d; ++k) {
            const double e = ent_k_concurrence_schmidt(image, k);
            const bool want_positive = k <= r;
            const double defect = want_positive ? (e > 1e-9 ? 0.0 : 1.0) : e;
            sample.push_back({"rank_chain/d=" + std::to_string(d) + "/r=" + std::to_string(r) +
                                  "/k=" + std::to_string(k) + "/i=" + std::to_string(i),
                              defect, want_positive ? 0.5 : 0.0});
        }
        return sample;
    });
    return aggregate("conversion_pure", results);
}

SuiteReport conversion_mixed_suite(const SuiteOptions& opts) {
    const int n = pick(opts, 50);
    auto results = run_samples(n, opts.exec, [&](int i) -> SampleResult {
        Rng rng = derived_rng(opts.seed, "conversion.mixed", i);
        const DensityMatrix rho = random_mixed(3, 2, rng);
        SampleResult sample;
        for (int k : {2, 3}) {
            const auto res = verify_conversion(rho, k, roof_opts(opts, "conversion.roof", i));
            sample.push_back({"d=3/k=" + std::to_string(k) + "/i=" + std::to_string(i),
                              res.delta, 2e-4});
        }
        return sample;
    });
    return aggregate("conversion_mixed", results);
}

SuiteReport rank_witness_suite(const SuiteOptions& opts) {
    const int n_mix = pick(opts, 50);
    const int n_pure = pick(opts, 50);
    auto results = run_samples(n_mix + n_pure, opts.exec, [&](int i) -> SampleResult {
        if (i < n_mix) {
            // Mixture of coherence-rank-2 members in d = 3: the roof of
            // C_c^(3) is exactly zero and the estimate must certify it.
            Rng rng = derived_rng(opts.seed, "rank.mixture", i);
            const int members = 2 + rng.uniform_int(2);
            Matrix rho = Matrix::Zero(3, 3);
            std::vector<double> w(members);
            double wsum = 0.0;
            for (int a = 0; a < members; ++a) {
                const double g = rng.normal();
                w[a] = g * g + 0.05;
                wsum += w[a];
            }
            for (int a = 0; a < members; ++a) {
                const PureState member = rank_limited_pure(3, 2, rng);
                rho += (w[a] / wsum) * member.projector();
            }
            const auto est = coherence_k_concurrence_mixed(DensityMatrix(std::move(rho)), 3,
                                                           roof_opts(opts, "rank.roof", i));
            return {{"mixture/i=" + std::to_string(i), est.value, 1e-6}};
        }
        const int idx = i - n_mix;
        const int d = 2 + idx % 5;
        Rng rng = derived_rng(opts.seed, "rank.pure", idx);
        const int r = 1 + rng.uniform_int(d);
        const PureState psi = rank_limited_pure(d, r, rng);
        SampleResult sample;
        for (int k = 2; k <= d; ++k) {
            const double c = coherence_k_concurrence_pure(psi, k);
            const bool want_positive = k <= r;
            const double defect = want_positive ? (c > 1e-9 ? 0.0 : 1.0) : c;
            sample.push_back({"pure/d=" + std::to_string(d) + "/r=" + std::to_string(r) +
                                  "/k=" + std::to_string(k) + "/i=" + std::to_string(idx),
                              defect, want_positive ? 0.5 : 0.0});
        }
        return sample;
    });
    return aggregate("rank_witness", results);
}

SuiteReport theorem4_mixed_suite(const SuiteOptions& opts) {
    const int n = pick(opts, 100);
    auto results = run_samples(n, opts.exec, [&](int i) -> SampleResult {
        const int d = 2 + i % 3;
        Rng rng = derived_rng(opts.seed, "theorem4.mixed", i);
        const DensityMatrix rho = random_mixed(d, 2, rng);
        const RoofOptions ro = roof_opts(opts, "theorem4.roof", i);

        // Cross-seeded optimizers: each side restarts from the other's
        // certificate so the pointwise pure-state bounds transfer.
        const auto c2_base = coherence_k_concurrence_mixed(rho, 2, ro);
        const auto cc_base = qi_concurrence_mixed(rho, ro);
        const auto c2 = coherence_k_concurrence_mixed(rho, 2, ro,
                                                      {cc_base.certificate, c2_base.certificate});
        const auto cc = qi_concurrence_mixed(rho, ro,
                                             {c2_base.certificate, cc_base.certificate});

        const std::string fp = "d=" + std::to_string(d) + "/i=" + std::to_string(i);
        return {
            {fp + "/lower", cc.value / (d - 1) - c2.value, 1e-4},
            {fp + "/upper", c2.value - std::sqrt(d / (2.0 * (d - 1))) * cc.value, 1e-4},
        };
    });
    return aggregate("theorem4_mixed", results);
}

SuiteReport theorem5_suite(const SuiteOptions& opts) {
    const int per_d = pick(opts, 50);
    const int n = 3 * per_d;  // d = 3, 4 real-nonnegative; d = 2 unconditional
    auto results = run_samples(n, opts.exec, [&](int i) -> SampleResult {
        Rng rng = derived_rng(opts.seed, "theorem5", i);
        SampleResult sample;
        const int block = i / per_d;
        if (block < 2) {
            const int d = 3 + block;
            const DensityMatrix rho = real_nonnegative_rank2(d, rng);
            const auto phase = check_phase_condition(rho);
            const std::string fp = "d=" + std::to_string(d) + "/i=" + std::to_string(i % per_d);
            sample.push_back({fp + "/phase", phase.satisfied ? 0.0 : 1.0, 0.5});
            const auto est = qi_concurrence_mixed(rho, roof_opts(opts, "theorem5.roof", i));
            sample.push_back({fp + "/equality", std::abs(est.value - l1_coherence(rho)), 1e-4});
        } else {
            const DensityMatrix rho = random_mixed(2, 2, rng);
            const auto est = qi_concurrence_mixed(rho, roof_opts(opts, "theorem5.roof", i));
            sample.push_back({"d=2/i=" + std::to_string(i % per_d) + "/equality",
                              std::abs(est.value - l1_coherence(rho)), 1e-4});
        }
        return sample;
    });
    return aggregate("theorem5", results);
}

SuiteReport strong_monotonicity_all_suite(const SuiteOptions& opts) {
    const int per_case = pick(opts, 1000);
    SuiteReport merged;
    merged.suite = "strong_monotonicity";
    merged.max_defect = -kInf;
    for (int d = 2; d <= 4; ++d) {
        std::vector<MonotoneId> objectives = {MonotoneId::coherence_k(2), MonotoneId::qi()};
        if (d >= 3) objectives.insert(objectives.begin() + 1, MonotoneId::coherence_k(3));
        for (const auto& objective : objectives) {
            const auto sub = strong_monotonicity_suite(
                d, per_case, objective,
                stream_seed(opts.seed, "c3.case",
                            static_cast<std::uint64_t>(d * 8 + objective.k.value_or(0))),
                opts.exec);
            merged.samples += sub.samples;
            merged.max_defect = std::max(merged.max_defect, sub.max_defect);
            for (auto v : sub.violations) {
                v.fingerprint = objective.name() + "/" + v.fingerprint;
                merged.violations.push_back(std::move(v));
            }
        }
    }
    if (merged.max_defect == -kInf) merged.max_defect = 0.0;
    merged.passed = merged.violations.empty();
    return merged;
}

SuiteReport convexity_suite(const SuiteOptions& opts) {
    const int n = pick(opts, 200);
    auto results = run_samples(n, opts.exec, [&](int i) -> SampleResult {
        const int d = 2 + i % 3;
        Rng rng = derived_rng(opts.seed, "convexity", i);
        const int r1 = 1 + rng.uniform_int(std::min(3, d));
        const int r2 = 1 + rng.uniform_int(std::min(3, d));
        const DensityMatrix rho1 = random_mixed(d, r1, rng);
        const DensityMatrix rho2 = random_mixed(d, r2, rng);
        const double w = rng.uniform();
        const MonotoneId objective = (i % 2 == 0) ? MonotoneId::coherence_k(2) : MonotoneId::qi();
        const RoofOptions ro = roof_opts(opts, "convexity.roof", i);

        const auto est1 = minimize_roof({rho1, objective, ro});
        const auto est2 = minimize_roof({rho2, objective, ro});

        DensityMatrix mix(Matrix(w * rho1.rho + (1.0 - w) * rho2.rho));
        Decomposition warm;
        for (std::size_t a = 0; a < est1.certificate.size(); ++a) {
            warm.weights.push_back(w * est1.certificate.weights[a]);
            warm.states.push_back(est1.certificate.states[a]);
        }
        for (std::size_t a = 0; a < est2.certificate.size(); ++a) {
            warm.weights.push_back((1.0 - w) * est2.certificate.weights[a]);
            warm.states.push_back(est2.certificate.states[a]);
        }
        const auto est = minimize_roof({mix, objective, ro}, {warm});

        return {{"d=" + std::to_string(d) + "/i=" + std::to_string(i),
                 est.value - (w * est1.value + (1.0 - w) * est2.value), 1e-8}};
    });
    return aggregate("convexity", results);
}

SuiteReport multislit_suite(const SuiteOptions& opts) {
    const int n_random = pick(opts, 500);
    const int n_fixed = 1 + 1 + 9 + 3;
    auto results = run_samples(n_fixed + n_random, opts.exec, [&](int i) -> SampleResult {
        if (i == 0) {
            // Orthogonal detectors: perfect which-path, D_Q = 1.
            Rng rng = derived_rng(opts.seed, "multislit.orthogonal", 0);
            const PureState c = random_pure(3, rng);
            std::vector<Complex> amps(c.amp.data(), c.amp.data() + 3);
            auto det = DetectorModel::build({1.0, 1.0, 1.0}, {1.0}, Matrix::Zero(1, 3));
            const auto rep = distinguishability(QuantonSpec::pure(amps), det,
                                                roof_opts(opts, "multislit.roof", i));
            return {{"orthogonal", std::abs(rep.d_q - 1.0), 1e-12}};
        }
        if (i == 1) {
            // Identical detector states on a maximally coherent quanton.
            const int d = 3;
            std::vector<Complex> amps(d, Complex(1.0 / std::sqrt(3.0), 0.0));
            auto det = DetectorModel::build(std::vector<Complex>(d, 0.0), {1.0},
                                            Matrix::Ones(1, d));
            const auto rep = distinguishability(QuantonSpec::pure(amps), det,
                                                roof_opts(opts, "multislit.roof", i));
            return {{"identical", std::abs(rep.d_q - 0.0), 1e-4}};
        }
        if (i < 11) {
            // Two-slit symmetric configuration with detector overlap p:
            // D_Q matches the two-state discrimination optimum 1 - p.
            const double overlap = 0.1 * (i - 1);
            const Complex phi(std::sqrt(1.0 - overlap), 0.0);
            auto det = DetectorModel::build({phi, phi}, {1.0}, Matrix::Ones(1, 2));
            const double inv = 1.0 / std::sqrt(2.0);
            const auto chain = failure_chain(QuantonSpec::pure({inv, inv}), det,
                                             roof_opts(opts, "multislit.roof", i));
            const double d_q = 1.0 - chain.roof_estimate;
            return {{"twoslit/p=" + std::to_string(overlap),
                     std::abs(d_q - (1.0 - overlap)), 1e-4}};
        }
        if (i < 14) {
            const RoofOptions ro = roof_opts(opts, "multislit.slits", i);
            if (i == 11) {
                Rng rng = derived_rng(opts.seed, "multislit.diag", 0);
                std::vector<double> probs(4);
                double total = 0.0;
                for (int t = 0; t < 4; ++t) {
                    const double g = rng.normal();
                    probs[t] = g * g + 0.05;
                    total += probs[t];
                }
                Matrix rho = Matrix::Zero(4, 4);
                for (int t = 0; t < 4; ++t) rho(t, t) = probs[t] / total;
                const int count = distinguishable_slit_count(DensityMatrix(std::move(rho)), 1e-4, ro);
                return {{"slits/diagonal_d4", count == 3 ? 0.0 : 1.0, 0.5}};
            }
            if (i == 12) {
                Vector amp = Vector::Constant(4, Complex(0.5, 0.0));
                const DensityMatrix rho = DensityMatrix::from_pure(PureState(amp));
                const int count = distinguishable_slit_count(rho, 1e-4, ro);
                return {{"slits/max_coherent_d4", count == 0 ? 0.0 : 1.0, 0.5}};
            }
            // Slits 0 and 1 confusable, slit 2 perfectly marked.
            const Complex soft(std::sqrt(0.1), 0.0);
            Matrix raw(1, 3);
            raw << 1.0, 1.0, 0.0;
            auto det = DetectorModel::build({soft, soft, 1.0}, {1.0}, raw);
            const double inv = 1.0 / std::sqrt(3.0);
            const auto red = reduced_state(QuantonSpec::pure({inv, inv, inv}), det);
            const int count = distinguishable_slit_count(red.rho, 1e-4, ro);
            return {{"slits/confusable_pair_d3", count == 1 ? 0.0 : 1.0, 0.5}};
        }

        // Random configurations: chain monotone and D_Q below the l1 bound.
        const int idx = i - n_fixed;
        Rng rng = derived_rng(opts.seed, "multislit.random", idx);
        const int d = 2 + idx % 3;
        const int n_fail = 1 + rng.uniform_int(3);

        std::vector<Complex> phi(d);
        for (int t = 0; t < d; ++t) {
            const double mag = std::sqrt(rng.uniform());
            const double theta = 2.0 * 3.14159265358979323846 * rng.uniform();
            phi[t] = Complex(mag * std::cos(theta), mag * std::sin(theta));
        }
        std::vector<double> p(n_fail);
        for (int a = 0; a < n_fail; ++a) {
            const double g = rng.normal();
            p[a] = g * g + 0.02;
        }
        Matrix raw(n_fail, d);
        for (int a = 0; a < n_fail; ++a) {
            for (int t = 0; t < d; ++t) raw(a, t) = rng.cnormal();
        }
        auto det = DetectorModel::build(std::move(phi), std::move(p), std::move(raw));

        QuantonSpec quanton = [&] {
            if (idx % 2 == 0) {
                const PureState c = random_pure(d, rng);
                return QuantonSpec::pure({c.amp.data(), c.amp.data() + d});
            }
            const double u = 0.1 + 0.8 * rng.uniform();
            Matrix chi(2, d);
            for (int x = 0; x < 2; ++x) {
                Vector row(d);
                for (int t = 0; t < d; ++t) row(t) = rng.cnormal();
                chi.row(x) = row.transpose() / row.norm();
            }
            return QuantonSpec::mixed({u, 1.0 - u}, std::move(chi));
        }();

        const auto red = reduced_state(quanton, det);
        const auto chain = failure_chain(quanton, det, roof_opts(opts, "multislit.roof", i));
        const double d_q = std::min(1.0, std::max(0.0, 1.0 - chain.roof_estimate));
        const double l1_bound = 1.0 - l1_coherence(red.rho) / (d - 1);
        const std::string fp = "random/d=" + std::to_string(d) + "/i=" + std::to_string(idx);
        return {
            {fp + "/chain12", chain.bound2 - chain.bound1, 1e-8},
            {fp + "/chain23", chain.roof_estimate - chain.bound2, 1e-8},
            {fp + "/l1", d_q - l1_bound, 1e-8},
        };
    });
    return aggregate("multislit", results);
}

std::vector<std::string> suite_names() {
    return {"normalization",  "ordering",        "eq6_cross",       "superadditivity",
            "theorem4_pure",  "conversion_pure", "conversion_mixed", "rank_witness",
            "theorem4_mixed", "theorem5",        "strong_monotonicity", "convexity",
            "multislit"};
}

SuiteReport run_suite_by_name(const std::string& name, const SuiteOptions& opts) {
    if (name == "normalization") return normalization_suite(opts);
    if (name == "ordering") return ordering_suite(opts);
    if (name == "eq6_cross") return eq6_cross_suite(opts);
    if (name == "superadditivity") return superadditivity_suite(opts);
    if (name == "theorem4_pure") return theorem4_pure_suite(opts);
    if (name == "conversion_pure") return conversion_pure_suite(opts);
    if (name == "conversion_mixed") return conversion_mixed_suite(opts);
    if (name == "rank_witness") return rank_witness_suite(opts);
    if (name == "theorem4_mixed") return theorem4_mixed_suite(opts);
    if (name == "theorem5") return theorem5_suite(opts);
    if (name == "strong_monotonicity") return strong_monotonicity_all_suite(opts);
    if (name == "convexity") return convexity_suite(opts);
    if (name == "multislit") return multislit_suite(opts);
    throw std::invalid_argument("unknown suite: " + name);
}

std::vector<SuiteReport> theorem_suites(const SuiteOptions& opts) {
    std::vector<SuiteReport> reports;
    for (const auto& name : suite_names()) {
        reports.push_back(run_suite_by_name(name, opts));
    }
    return reports;
}

} // namespace qcoh
