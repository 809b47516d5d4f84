#include "qcoh/states.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcoh {

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
    std::string msg = "invalid state:";
    for (const auto& v : vs) {
        msg += " [" + v.what + " defect=" + std::to_string(v.defect) + "]";
    }
    return msg;
}

} // namespace

PureState::PureState(Vector a) : amp(std::move(a)) {
    if (amp.size() < 2) {
        throw std::invalid_argument("PureState: dim must be >= 2");
    }
    const double defect = std::abs(amp.squaredNorm() - 1.0);
    if (defect > kNormTol) {
        throw ValidationError("PureState: norm defect " + std::to_string(defect));
    }
}

DensityMatrix::DensityMatrix(Matrix m) : rho(std::move(m)) {
    auto violations = validate_state(rho);
    if (!violations.empty()) {
        throw ValidationError(join_violations(violations));
    }
}

BipartitePureState::BipartitePureState(Matrix a) : amp(std::move(a)) {
    if (amp.rows() < 2 || amp.cols() < 2) {
        throw std::invalid_argument("BipartitePureState: local dims must be >= 2");
    }
    const double defect = std::abs(amp.squaredNorm() - 1.0);
    if (defect > kNormTol) {
        throw ValidationError("BipartitePureState: norm defect " + std::to_string(defect));
    }
}

Vector BipartitePureState::flattened() const {
    Vector v(amp.size());
    for (int i = 0; i < amp.rows(); ++i) {
        for (int j = 0; j < amp.cols(); ++j) {
            v(i * amp.cols() + j) = amp(i, j);
        }
    }
    return v;
}

BipartitePureState BipartitePureState::from_flat(const Vector& v, int da, int db) {
    if (v.size() != static_cast<Eigen::Index>(da) * db) {
        throw std::invalid_argument("from_flat: size mismatch");
    }
    Matrix m(da, db);
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < db; ++j) {
            m(i, j) = v(i * db + j);
        }
    }
    return BipartitePureState(std::move(m));
}

Matrix Decomposition::reconstruct() const {
    if (states.empty()) {
        throw std::invalid_argument("Decomposition: empty");
    }
    const int d = states.front().dim();
    Matrix acc = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < states.size(); ++a) {
        acc.noalias() += weights[a] * (states[a].amp * states[a].amp.adjoint());
    }
    return acc;
}

double Decomposition::reconstruction_defect(const Matrix& target) const {
    return (reconstruct() - target).norm();
}

double KrausSet::completeness_defect() const {
    if (ops.empty()) {
        return 1.0;
    }
    const int d = static_cast<int>(ops.front().cols());
    Matrix acc = Matrix::Zero(d, d);
    for (const auto& k : ops) {
        acc.noalias() += k.adjoint() * k;
    }
    return (acc - Matrix::Identity(d, d)).norm();
}

bool KrausSet::columns_incoherent(double tol) const {
    for (const auto& k : ops) {
        for (int j = 0; j < k.cols(); ++j) {
            int nonzero = 0;
            for (int i = 0; i < k.rows(); ++i) {
                if (std::abs(k(i, j)) > tol) {
                    ++nonzero;
                }
            }
            if (nonzero > 1) {
                return false;
            }
        }
    }
    return true;
}

std::vector<Violation> validate_state(const Matrix& rho) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("validate_state: matrix must be square");
    }
    if (rho.rows() < 2) {
        throw std::invalid_argument("validate_state: dim must be >= 2");
    }
    std::vector<Violation> out;

    const double herm_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > kHermTol) {
        out.push_back({"hermiticity", herm_defect});
    }

    const double trace_defect = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
    if (trace_defect > kTraceTol) {
        out.push_back({"trace", trace_defect});
    }

    // Spectrum of the hermitized matrix; values in [-kEigClamp, 0) are
    // tolerated as numerical zeros.
    Matrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -kEigClamp) {
        out.push_back({"positivity", -min_eig});
    }
    return out;
}

Decomposition eig_decompose(const DensityMatrix& rho) {
    const int d = rho.dim();

    // A numerically diagonal matrix gets the basis eigenvectors directly;
    // any orthonormal eigenbasis is acceptable and this one keeps incoherent
    // states incoherent under the decomposition.
    double offdiag = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (i != j) offdiag = std::max(offdiag, std::abs(rho.rho(i, j)));
        }
    }
    if (offdiag <= 1e-15) {
        std::vector<std::pair<double, int>> diag_order;
        for (int i = 0; i < d; ++i) {
            const double w = rho.rho(i, i).real();
            if (w >= 1e-10) diag_order.emplace_back(w, i);
        }
        std::sort(diag_order.begin(), diag_order.end(), [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first > y.first;
            return x.second < y.second;
        });
        double total = 0.0;
        for (const auto& [w, idx] : diag_order) total += w;
        Decomposition dec;
        for (const auto& [w, idx] : diag_order) {
            dec.weights.push_back(w / total);
            dec.states.emplace_back(Vector(Vector::Unit(d, idx)));
        }
        return dec;
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.rho);
    if (es.info() != Eigen::Success) {
        throw ValidationError("eig_decompose: eigensolver failed");
    }
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();

    // Eigen returns ascending order; emit descending.
    std::vector<std::pair<double, int>> order;
    for (int i = 0; i < vals.size(); ++i) {
        if (vals(i) >= 1e-10) {
            order.emplace_back(vals(i), i);
        }
    }
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first > y.first;
        return x.second < y.second;
    });
    if (order.empty()) {
        throw ValidationError("eig_decompose: no eigenvalue above threshold");
    }

    double total = 0.0;
    for (const auto& [w, idx] : order) total += w;

    Decomposition dec;
    dec.weights.reserve(order.size());
    dec.states.reserve(order.size());
    for (const auto& [w, idx] : order) {
        Vector v = vecs.col(idx);
        v /= v.norm();
        dec.weights.push_back(w / total);
        dec.states.emplace_back(std::move(v));
    }
    return dec;
}

std::vector<double> schmidt_coefficients(const BipartitePureState& psi) {
    Eigen::JacobiSVD<Matrix> svd(psi.amp);
    const auto& sv = svd.singularValues();
    // Singular values come out descending already; normalize the tiny
    // rounding drift away and drop numerical zeros, so the Schmidt rank is
    // the length of the list.
    std::vector<double> lambda;
    lambda.reserve(sv.size());
    for (int i = 0; i < sv.size(); ++i) {
        const double l = sv(i) * sv(i);
        if (l >= 1e-12) lambda.push_back(l);
    }
    double total = 0.0;
    for (double l : lambda) total += l;
    for (auto& l : lambda) l /= total;
    return lambda;
}

PureState random_pure(int d, Rng& rng) {
    if (d < 2) {
        throw std::invalid_argument("random_pure: d must be >= 2");
    }
    Vector v(d);
    for (int i = 0; i < d; ++i) {
        v(i) = rng.cnormal();
    }
    v /= v.norm();
    return PureState(std::move(v));
}

PureState random_pure(int d, std::uint64_t seed) {
    Rng rng = derived_rng(seed, "random_pure");
    return random_pure(d, rng);
}

DensityMatrix random_mixed(int d, int rank, Rng& rng) {
    if (d < 2) {
        throw std::invalid_argument("random_mixed: d must be >= 2");
    }
    if (rank < 1 || rank > d) {
        throw std::invalid_argument("random_mixed: rank must be in [1, d]");
    }
    Matrix g(d, rank);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < rank; ++j) {
            g(i, j) = rng.cnormal();
        }
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix(std::move(rho));
}

DensityMatrix random_mixed(int d, int rank, std::uint64_t seed) {
    Rng rng = derived_rng(seed, "random_mixed");
    return random_mixed(d, rank, rng);
}

KrausSet random_incoherent_kraus(int d, int n_ops, Rng& rng) {
    if (d < 2 || n_ops < 1) {
        throw std::invalid_argument("random_incoherent_kraus: need d >= 2, n_ops >= 1");
    }
    // Per-operator permutation targets s_n(i).
    std::vector<std::vector<int>> perm(n_ops, std::vector<int>(d));
    for (int n = 0; n < n_ops; ++n) {
        for (int i = 0; i < d; ++i) perm[n][i] = i;
        for (int i = d - 1; i > 0; --i) {
            std::swap(perm[n][i], perm[n][rng.uniform_int(i + 1)]);
        }
    }

    KrausSet ks;
    ks.incoherent = true;
    ks.ops.assign(n_ops, Matrix::Zero(d, d));
    for (int i = 0; i < d; ++i) {
        // Column weight distribution across operators, then phases.
        std::vector<double> w(n_ops);
        double total = 0.0;
        for (int n = 0; n < n_ops; ++n) {
            const double g = rng.normal();
            w[n] = g * g + 1e-12;
            total += w[n];
        }
        for (int n = 0; n < n_ops; ++n) {
            const double theta = 2.0 * 3.14159265358979323846 * rng.uniform();
            const double mag = std::sqrt(w[n] / total);
            ks.ops[n](perm[n][i], i) = Complex(mag * std::cos(theta), mag * std::sin(theta));
        }
    }
    return ks;
}

KrausSet random_incoherent_kraus(int d, int n_ops, std::uint64_t seed) {
    Rng rng = derived_rng(seed, "random_incoherent_kraus");
    return random_incoherent_kraus(d, n_ops, rng);
}

Matrix random_isometry(int m, int r, Rng& rng) {
    if (m < r || r < 1) {
        throw std::invalid_argument("random_isometry: need m >= r >= 1");
    }
    Matrix g(m, r);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < r; ++j) {
            g(i, j) = rng.cnormal();
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(m, r);
    // Fix the phase ambiguity of QR so draws are a function of g alone.
    Matrix rmat = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    for (int j = 0; j < r; ++j) {
        const Complex diag = rmat(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(j) *= diag / mag;
        }
    }
    return q;
}

} // namespace qcoh
