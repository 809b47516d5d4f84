#include "qcoh/roof.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace qcoh {

namespace {

constexpr double kRootFlush = 1e-300;
constexpr double kInitialStep = 0.5;   // radians
constexpr double kPolishFloor = 1e-12; // step floor for the refinement phase

struct SearchResult {
    double value = std::numeric_limits<double>::infinity();
    Decomposition certificate;
    int sweeps = 0;
    bool converged = false;
};

// Apply the 2x2 unitary exp of a single rotation generator to a column pair.
// type 0 mixes with real coefficients, type 1 with imaginary ones.
void rotated_pair(const Vector& ua, const Vector& ub, double theta, int type,
                  Vector& out_a, Vector& out_b) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    if (type == 0) {
        out_a = c * ua - s * ub;
        out_b = s * ua + c * ub;
    } else {
        const Complex is(0.0, s);
        out_a = c * ua + is * ub;
        out_b = is * ua + c * ub;
    }
}

// Coordinate descent over rotation generators acting on the member matrix
// U (d x m, column a is the unnormalized member u_a). Halve the step on a
// sweep without progress; the spec-visible phase stops at step < tol, then a
// short refinement continues halving to kPolishFloor so kink minima (exact
// zeros of the objective) are located to full precision.
SearchResult descend(Matrix u, const RoofObjective& obj, double tol, int max_sweeps) {
    const int m = static_cast<int>(u.cols());
    std::vector<double> member(m);
    for (int a = 0; a < m; ++a) {
        member[a] = obj.member_value(u.col(a));
    }

    SearchResult res;
    double step = kInitialStep;
    double last_decrease = std::numeric_limits<double>::infinity();
    int sweeps = 0;
    bool spec_phase_done = false;

    Vector cand_a, cand_b, best_a, best_b;
    while (sweeps < max_sweeps) {
        if (!spec_phase_done && step < tol) {
            res.converged = last_decrease < tol;
            res.sweeps = sweeps;
            spec_phase_done = true;
        }
        if (step < kPolishFloor) {
            break;
        }
        double decrease = 0.0;
        for (int a = 0; a < m; ++a) {
            for (int b = a + 1; b < m; ++b) {
                for (int type = 0; type < 2; ++type) {
                    const double cur = member[a] + member[b];
                    double best = cur;
                    double best_theta = 0.0;
                    for (const double theta : {step, -step}) {
                        rotated_pair(u.col(a), u.col(b), theta, type, cand_a, cand_b);
                        const double val = obj.member_value(cand_a) + obj.member_value(cand_b);
                        if (val < best) {
                            best = val;
                            best_theta = theta;
                            best_a = cand_a;
                            best_b = cand_b;
                        }
                    }
                    if (best_theta == 0.0) {
                        continue;
                    }
                    // Keep walking the same direction while it helps.
                    while (true) {
                        rotated_pair(best_a, best_b, best_theta, type, cand_a, cand_b);
                        const double val = obj.member_value(cand_a) + obj.member_value(cand_b);
                        if (val >= best) break;
                        best = val;
                        best_a.swap(cand_a);
                        best_b.swap(cand_b);
                    }
                    u.col(a) = best_a;
                    u.col(b) = best_b;
                    member[a] = obj.member_value(best_a);
                    member[b] = obj.member_value(best_b);
                    decrease += cur - best;
                }
            }
        }
        ++sweeps;
        if (decrease <= 0.0) {
            step *= 0.5;
        }
        last_decrease = decrease;
    }
    if (!spec_phase_done) {
        res.converged = last_decrease < tol;
        res.sweeps = sweeps;
    }

    // Certificate from the final members; value recomputed on it so the
    // reported number is exactly the certificate's objective value.
    Decomposition cert;
    for (int a = 0; a < m; ++a) {
        const double w = u.col(a).squaredNorm();
        if (w < kDropWeight) continue;
        cert.weights.push_back(w);
        cert.states.emplace_back(Vector(u.col(a) / std::sqrt(w)));
    }
    res.certificate = std::move(cert);
    res.value = obj.decomposition_value(res.certificate);
    return res;
}

Matrix member_matrix(const Decomposition& eig, const Matrix& v) {
    const int d = eig.states.front().dim();
    const int r = static_cast<int>(eig.size());
    Matrix e(d, r);
    for (int i = 0; i < r; ++i) {
        e.col(i) = std::sqrt(eig.weights[i]) * eig.states[i].amp;
    }
    return e * v.transpose();
}

} // namespace

RoofObjective RoofObjective::make(const MonotoneId& id, int dim) {
    switch (id.family) {
    case MonotoneFamily::coherence_k_concurrence: {
        if (!id.k || *id.k < 2 || *id.k > dim) {
            throw std::invalid_argument("roof objective: k must be in [2, d]");
        }
        return RoofObjective(id, dim, dim);
    }
    case MonotoneFamily::qi_coherence_concurrence:
        return RoofObjective(id, dim, dim);
    case MonotoneFamily::entanglement_k_concurrence: {
        const int local = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
        if (local * local != dim || local < 2) {
            throw std::invalid_argument("roof objective: entanglement family needs a d x d bipartite space");
        }
        if (!id.k || *id.k < 2 || *id.k > local) {
            throw std::invalid_argument("roof objective: k must be in [2, d_local]");
        }
        return RoofObjective(id, dim, local);
    }
    case MonotoneFamily::l1_coherence:
        throw std::invalid_argument("roof objective: l1_coherence has no convex-roof form "
                                    "(its pure restriction is qi_coherence_concurrence)");
    }
    throw std::invalid_argument("roof objective: unknown family");
}

double RoofObjective::member_value(const Vector& u) const {
    switch (id_.family) {
    case MonotoneFamily::coherence_k_concurrence: {
        std::vector<double> probs(dim_);
        for (int i = 0; i < dim_; ++i) probs[i] = std::norm(u(i));
        const double sk = elementary_symmetric(probs, *id_.k);
        if (sk < kRootFlush) return 0.0;
        return dim_ * std::pow(sk / binomial(dim_, *id_.k), 1.0 / *id_.k);
    }
    case MonotoneFamily::qi_coherence_concurrence: {
        double sum = 0.0;
        for (int j = 0; j < dim_; ++j) {
            const double aj = std::abs(u(j));
            if (aj == 0.0) continue;
            for (int k = j + 1; k < dim_; ++k) {
                sum += aj * std::abs(u(k));
            }
        }
        return 2.0 * sum;
    }
    case MonotoneFamily::entanglement_k_concurrence: {
        Matrix m(local_dim_, local_dim_);
        for (int i = 0; i < local_dim_; ++i) {
            for (int j = 0; j < local_dim_; ++j) {
                m(i, j) = u(i * local_dim_ + j);
            }
        }
        Eigen::JacobiSVD<Matrix> svd(m);
        std::vector<double> lambda(local_dim_);
        for (int i = 0; i < local_dim_; ++i) {
            lambda[i] = svd.singularValues()(i) * svd.singularValues()(i);
        }
        const double sk = elementary_symmetric(lambda, *id_.k);
        if (sk < kRootFlush) return 0.0;
        return local_dim_ * std::pow(sk / binomial(local_dim_, *id_.k), 1.0 / *id_.k);
    }
    case MonotoneFamily::l1_coherence:
        break;
    }
    throw std::logic_error("roof objective: unsupported family");
}

double RoofObjective::decomposition_value(const Decomposition& dec) const {
    double acc = 0.0;
    for (std::size_t a = 0; a < dec.size(); ++a) {
        acc += dec.weights[a] * member_value(dec.states[a].amp);
    }
    return acc;
}

Decomposition decomposition_from_isometry(const Decomposition& eig, const Matrix& v) {
    const int r = static_cast<int>(eig.size());
    if (v.cols() != r || v.rows() < r) {
        throw std::invalid_argument("decomposition_from_isometry: V must be m x r with m >= r");
    }
    const double iso_defect = (v.adjoint() * v - Matrix::Identity(r, r)).norm();
    if (iso_defect > 1e-10) {
        throw std::invalid_argument("decomposition_from_isometry: V columns not orthonormal");
    }
    Matrix u = member_matrix(eig, v);
    Decomposition out;
    for (int a = 0; a < u.cols(); ++a) {
        const double w = u.col(a).squaredNorm();
        if (w < kDropWeight) continue;
        out.weights.push_back(w);
        out.states.emplace_back(Vector(u.col(a) / std::sqrt(w)));
    }
    return out;
}

Matrix isometry_from_decomposition(const Decomposition& eig, const Decomposition& dec) {
    const int r = static_cast<int>(eig.size());
    const int m = static_cast<int>(dec.size());
    if (m < r) {
        throw std::invalid_argument("isometry_from_decomposition: fewer members than rank");
    }
    Matrix v(m, r);
    for (int a = 0; a < m; ++a) {
        for (int i = 0; i < r; ++i) {
            const Complex overlap = eig.states[i].amp.dot(dec.states[a].amp);
            v(a, i) = overlap * std::sqrt(dec.weights[a] / eig.weights[i]);
        }
    }
    // Project back onto the manifold; rounding in the caller's decomposition
    // leaves V only approximately isometric.
    Eigen::JacobiSVD<Matrix> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Matrix projected = svd.matrixU() * svd.matrixV().adjoint();
    if ((projected - v).norm() > 1e-6) {
        throw std::invalid_argument("isometry_from_decomposition: decomposition does not realize the target");
    }
    return projected;
}

MonotoneEstimate minimize_roof(const RoofProblem& problem,
                               const std::vector<Decomposition>& warm_starts) {
    const DensityMatrix& rho = problem.target;
    const int d = rho.dim();
    const RoofObjective obj = RoofObjective::make(problem.objective, d);
    const RoofOptions& opts = problem.opts;

    const Decomposition eig = eig_decompose(rho);
    const int r = static_cast<int>(eig.size());

    MonotoneEstimate est;
    est.objective = problem.objective;

    // Pure target: a single decomposition class, value is the closed form.
    if (r == 1 && warm_starts.empty()) {
        est.value = obj.pure_value(eig.states.front());
        est.certificate = eig;
        est.restart_values = {est.value};
        est.converged = true;
        return est;
    }

    int m = opts.ensemble_size == 0 ? r * r : opts.ensemble_size;
    if (opts.ensemble_size != 0 && opts.ensemble_size < r) {
        throw std::invalid_argument("minimize_roof: ensemble_size below target rank");
    }
    m = std::max(m, r);

    const int n_restarts = std::max(1, opts.restarts);
    const int n_searches = n_restarts + static_cast<int>(warm_starts.size());
    std::vector<SearchResult> results(n_searches);

    for_each_index(static_cast<std::size_t>(n_searches), opts.exec, [&](std::size_t idx) {
        Matrix v;
        if (idx == 0) {
            v = Matrix::Zero(m, r);
            v.topRows(r) = Matrix::Identity(r, r);
        } else if (idx < static_cast<std::size_t>(n_restarts)) {
            Rng rng = derived_rng(opts.seed, "roof.restart", idx);
            v = random_isometry(m, r, rng);
        } else {
            const Decomposition& w = warm_starts[idx - n_restarts];
            v = isometry_from_decomposition(eig, w);
        }
        results[idx] = descend(member_matrix(eig, v), obj, opts.tol, opts.max_iters);
    });

    int best = 0;
    for (int i = 1; i < n_searches; ++i) {
        if (results[i].value < results[best].value) best = i;
    }
    est.value = results[best].value;
    est.certificate = results[best].certificate;
    est.iterations = results[best].sweeps;
    est.converged = results[best].converged;
    est.restart_values.reserve(n_searches);
    for (const auto& s : results) est.restart_values.push_back(s.value);
    return est;
}

MonotoneEstimate coherence_k_concurrence_mixed(const DensityMatrix& rho, int k,
                                               const RoofOptions& opts,
                                               const std::vector<Decomposition>& warm_starts) {
    return minimize_roof({rho, MonotoneId::coherence_k(k), opts}, warm_starts);
}

MonotoneEstimate qi_concurrence_mixed(const DensityMatrix& rho, const RoofOptions& opts,
                                      const std::vector<Decomposition>& warm_starts) {
    return minimize_roof({rho, MonotoneId::qi(), opts}, warm_starts);
}

CoherenceNumberReport coherence_number_estimate(const DensityMatrix& rho, double threshold,
                                                const RoofOptions& opts) {
    CoherenceNumberReport report;
    report.threshold = threshold;
    const int d = rho.dim();
    for (int k = 2; k <= d; ++k) {
        const auto est = coherence_k_concurrence_mixed(rho, k, opts);
        report.ks.push_back(k);
        report.values.push_back(est.value);
        if (est.value > threshold) {
            report.r_hat = k;
        }
    }
    report.evidence_only = report.r_hat > 1;
    return report;
}

} // namespace qcoh
