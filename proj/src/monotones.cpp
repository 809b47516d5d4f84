#include "qcoh/monotones.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace qcoh {

namespace {

// Values whose k-th root would be garbage are flushed to exactly 0.
constexpr double kRootFlush = 1e-300;

// |det| of a k x k complex matrix: direct expansion for k <= 3,
// partial-pivot elimination above.
double abs_det(Matrix m) {
    const int k = static_cast<int>(m.rows());
    switch (k) {
    case 1:
        return std::abs(m(0, 0));
    case 2:
        return std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    case 3:
        return std::abs(m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                        m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                        m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)));
    default: {
        double absdet = 1.0;
        for (int c = 0; c < k; ++c) {
            int pivot = c;
            for (int r = c + 1; r < k; ++r) {
                if (std::abs(m(r, c)) > std::abs(m(pivot, c))) pivot = r;
            }
            if (std::abs(m(pivot, c)) == 0.0) return 0.0;
            if (pivot != c) m.row(pivot).swap(m.row(c));
            absdet *= std::abs(m(c, c));
            for (int r = c + 1; r < k; ++r) {
                const Complex f = m(r, c) / m(c, c);
                m.row(r).tail(k - c) -= f * m.row(c).tail(k - c);
            }
        }
        return absdet;
    }
    }
}

// Enumerate k-subsets of {0..n-1} in lexicographic order.
bool next_subset(std::vector<int>& idx, int n) {
    const int k = static_cast<int>(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

} // namespace

std::string MonotoneId::name() const {
    switch (family) {
    case MonotoneFamily::coherence_k_concurrence:
        return "coherence_k_concurrence(k=" + std::to_string(*k) + ")";
    case MonotoneFamily::entanglement_k_concurrence:
        return "entanglement_k_concurrence(k=" + std::to_string(*k) + ")";
    case MonotoneFamily::l1_coherence:
        return "l1_coherence";
    case MonotoneFamily::qi_coherence_concurrence:
        return "qi_coherence_concurrence";
    }
    return "unknown";
}

std::optional<MonotoneId> parse_monotone(const std::string& name, std::optional<int> k) {
    if (name == "coherence_k_concurrence") {
        if (!k) return std::nullopt;
        return MonotoneId::coherence_k(*k);
    }
    if (name == "entanglement_k_concurrence") {
        if (!k) return std::nullopt;
        return MonotoneId::entanglement_k(*k);
    }
    if (name == "l1_coherence") return MonotoneId::l1();
    if (name == "qi_coherence_concurrence") return MonotoneId::qi();
    return std::nullopt;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double out = 1.0;
    for (int i = 1; i <= k; ++i) {
        out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(out);
}

double elementary_symmetric(const std::vector<double>& values, int k) {
    const int n = static_cast<int>(values.size());
    if (k < 1 || k > n) {
        throw std::invalid_argument("elementary_symmetric: k out of range");
    }
    // e[j] after processing t values holds S_j of those values.
    std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (int t = 0; t < n; ++t) {
        const double x = values[t];
        const int top = std::min(k, t + 1);
        for (int j = top; j >= 1; --j) {
            e[j] += x * e[j - 1];
        }
    }
    return e[k];
}

double k_concurrence_from_weights(const std::vector<double>& weights, int d, int k) {
    if (k < 2 || k > d) {
        throw std::invalid_argument("k_concurrence: k must be in [2, d]");
    }
    std::vector<double> padded = weights;
    padded.resize(d, 0.0);
    double sk = elementary_symmetric(padded, k);
    if (sk < kRootFlush) return 0.0;
    return d * std::pow(sk / binomial(d, k), 1.0 / k);
}

double coherence_k_concurrence_pure(const PureState& psi, int k) {
    const int d = psi.dim();
    std::vector<double> probs(d);
    for (int i = 0; i < d; ++i) {
        probs[i] = std::norm(psi.amp(i));
    }
    return k_concurrence_from_weights(probs, d, k);
}

double l1_coherence(const DensityMatrix& rho) {
    double sum = 0.0;
    const int d = rho.dim();
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            sum += std::abs(rho.rho(j, k));
        }
    }
    return 2.0 * sum;
}

double qi_coherence_concurrence_pure(const PureState& psi) {
    double sum = 0.0;
    const int d = psi.dim();
    for (int j = 0; j < d; ++j) {
        const double aj = std::abs(psi.amp(j));
        for (int k = j + 1; k < d; ++k) {
            sum += aj * std::abs(psi.amp(k));
        }
    }
    return 2.0 * sum;
}

int coherence_rank(const PureState& psi, double tol) {
    int count = 0;
    for (int i = 0; i < psi.dim(); ++i) {
        if (std::abs(psi.amp(i)) > tol) ++count;
    }
    return count;
}

double ent_k_concurrence_schmidt(const BipartitePureState& psi, int k) {
    if (psi.dim_a() != psi.dim_b()) {
        throw std::invalid_argument("ent_k_concurrence: requires d_A == d_B");
    }
    const int d = psi.dim_a();
    if (k < 2 || k > d) {
        throw std::invalid_argument("ent_k_concurrence: k must be in [2, d]");
    }
    return k_concurrence_from_weights(schmidt_coefficients(psi), d, k);
}

double ent_k_concurrence_general(const BipartitePureState& psi, int k) {
    if (psi.dim_a() != psi.dim_b()) {
        throw std::invalid_argument("ent_k_concurrence_general: requires d_A == d_B");
    }
    const int d = psi.dim_a();
    if (d > 6) {
        throw std::invalid_argument("ent_k_concurrence_general: d > 6 not supported");
    }
    if (k < 2 || k > d) {
        throw std::invalid_argument("ent_k_concurrence_general: k must be in [2, d]");
    }

    // Sum of squared minor moduli over all row and column k-subsets. The
    // epsilon-tensor contraction over a_1..a_k is exactly the submatrix
    // determinant, so minors are all that is needed.
    double acc = 0.0;
    std::vector<int> rows(k);
    for (int i = 0; i < k; ++i) rows[i] = i;
    do {
        std::vector<int> cols(k);
        for (int i = 0; i < k; ++i) cols[i] = i;
        do {
            Matrix sub(k, k);
            for (int r = 0; r < k; ++r) {
                for (int c = 0; c < k; ++c) {
                    sub(r, c) = psi.amp(rows[r], cols[c]);
                }
            }
            const double ad = abs_det(sub);
            acc += ad * ad;
        } while (next_subset(cols, d));
    } while (next_subset(rows, d));

    if (acc < kRootFlush) return 0.0;
    return d * std::pow(acc / binomial(d, k), 1.0 / k);
}

} // namespace qcoh
