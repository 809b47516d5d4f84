// State and operator types for finite-dimensional systems in a fixed
// incoherent (classical) basis: pure states, density matrices, bipartite pure
// states, pure-state decompositions and Kraus sets, together with validation,
// spectral/Schmidt factorizations and seeded random-state generation.

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcoh/rng.hpp"

namespace qcoh {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigClamp = 1e-10;       // eigenvalues in [-kEigClamp, 0) count as 0
inline constexpr double kWeightSumTol = 1e-10;
inline constexpr double kReconstructTol = 1e-8;
inline constexpr double kDropWeight = 1e-14;

struct Violation {
    std::string what;
    double defect = 0.0;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Normalized amplitude vector in the incoherent basis, dim >= 2.
struct PureState {
    Vector amp;

    explicit PureState(Vector a);
    int dim() const { return static_cast<int>(amp.size()); }
    Matrix projector() const { return amp * amp.adjoint(); }
};

// Hermitian, unit-trace, positive-semidefinite matrix (within tolerances).
struct DensityMatrix {
    Matrix rho;

    explicit DensityMatrix(Matrix m);
    int dim() const { return static_cast<int>(rho.rows()); }

    static DensityMatrix from_pure(const PureState& psi) {
        return DensityMatrix(psi.projector());
    }
};

// d_A x d_B amplitude matrix psi_ij with unit Frobenius norm.
struct BipartitePureState {
    Matrix amp;

    explicit BipartitePureState(Matrix a);
    int dim_a() const { return static_cast<int>(amp.rows()); }
    int dim_b() const { return static_cast<int>(amp.cols()); }

    // Flatten to a vector in the product basis |i>|j>, row-major.
    Vector flattened() const;
    static BipartitePureState from_flat(const Vector& v, int da, int db);
};

// Ensemble {p_a, |psi_a>} realizing some density matrix.
struct Decomposition {
    std::vector<double> weights;
    std::vector<PureState> states;

    std::size_t size() const { return weights.size(); }
    Matrix reconstruct() const;
    double reconstruction_defect(const Matrix& target) const;
};

// Kraus operators K_n with sum K_n^dag K_n = I. When incoherent, each column
// of each K_n has at most one nonzero entry (K_n = sum_i c_n^i |s_i><i|).
struct KrausSet {
    std::vector<Matrix> ops;
    bool incoherent = false;

    double completeness_defect() const;
    bool columns_incoherent(double tol = 1e-12) const;
};

// Invariant checks for a would-be density matrix. Empty result means valid.
// Non-square input or dim < 2 throws std::invalid_argument.
std::vector<Violation> validate_state(const Matrix& rho);

// Eigendecomposition as a Decomposition; eigenvalues below 1e-10 are dropped
// and the kept weights renormalized. Weights sorted descending.
Decomposition eig_decompose(const DensityMatrix& rho);

// Squared singular values of the amplitude matrix, sorted descending,
// summing to 1.
std::vector<double> schmidt_coefficients(const BipartitePureState& psi);

// Haar-random pure state: normalized vector of iid complex normals.
PureState random_pure(int d, Rng& rng);
PureState random_pure(int d, std::uint64_t seed);

// GG^dag / tr(GG^dag) with G a d x rank complex standard-normal draw.
DensityMatrix random_mixed(int d, int rank, Rng& rng);
DensityMatrix random_mixed(int d, int rank, std::uint64_t seed);

// Random incoherent Kraus set: per-operator permutation targets, per-column
// weight distribution across operators, exactly complete by construction.
KrausSet random_incoherent_kraus(int d, int n_ops, Rng& rng);
KrausSet random_incoherent_kraus(int d, int n_ops, std::uint64_t seed);

// Haar-random m x r isometry (V^dag V = I_r) via QR of a Ginibre draw.
Matrix random_isometry(int m, int r, Rng& rng);

} // namespace qcoh
