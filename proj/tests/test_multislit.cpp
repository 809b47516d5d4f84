#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qcoh/io.hpp"
#include "qcoh/multislit.hpp"

using namespace qcoh;

namespace {

DetectorModel orthogonal_detectors(int d) {
    return DetectorModel::build(std::vector<Complex>(d, 1.0), {1.0}, Matrix::Zero(1, d));
}

DetectorModel identical_detectors(int d) {
    return DetectorModel::build(std::vector<Complex>(d, 0.0), {1.0}, Matrix::Ones(1, d));
}

DetectorModel symmetric_two_slit(double overlap) {
    const Complex phi(std::sqrt(1.0 - overlap), 0.0);
    return DetectorModel::build({phi, phi}, {1.0}, Matrix::Ones(1, 2));
}

QuantonSpec balanced_quanton(int d) {
    return QuantonSpec::pure(std::vector<Complex>(d, Complex(1.0 / std::sqrt(double(d)), 0.0)));
}

} // namespace

TEST_CASE("detector builder enforces the normalization identity") {
    Rng rng(81);
    for (int i = 0; i < 20; ++i) {
        const int d = 2 + rng.uniform_int(3);
        const int n_fail = 1 + rng.uniform_int(3);
        std::vector<Complex> phi(d);
        for (int t = 0; t < d; ++t) phi[t] = std::sqrt(rng.uniform());
        std::vector<double> p(n_fail);
        for (int a = 0; a < n_fail; ++a) p[a] = rng.uniform() + 0.01;
        Matrix raw(n_fail, d);
        for (int a = 0; a < n_fail; ++a) {
            for (int t = 0; t < d; ++t) raw(a, t) = rng.cnormal();
        }
        const auto det = DetectorModel::build(phi, p, raw);
        CHECK(det.normalization_defect() < 1e-10);
        double psum = 0.0;
        for (double w : det.p) psum += w;
        CHECK(psum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("detector builder refuses super-unit success amplitudes") {
    CHECK_THROWS_AS(DetectorModel::build({1.2, 0.5}, {1.0}, Matrix::Ones(1, 2)),
                    std::invalid_argument);
}

TEST_CASE("detector builder refuses unnormalizable columns") {
    // |phi_0| < 1 but no failure mass to carry the rest.
    Matrix raw = Matrix::Zero(1, 2);
    raw(0, 1) = 1.0;
    CHECK_THROWS_AS(DetectorModel::build({0.5, 0.5}, {1.0}, raw), std::invalid_argument);
}

TEST_CASE("orthogonal detectors give a fully diagonal reduced state") {
    Rng rng(83);
    const PureState c = random_pure(3, rng);
    const auto quanton = QuantonSpec::pure({c.amp.data(), c.amp.data() + 3});
    const auto red = reduced_state(quanton, orthogonal_detectors(3));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                CHECK(red.rho.rho(i, i).real() == doctest::Approx(std::norm(c.amp(i))));
            } else {
                CHECK(std::abs(red.rho.rho(i, j)) == 0.0);
            }
        }
    }
}

TEST_CASE("identical detector states leave the quanton pure") {
    Rng rng(87);
    const PureState c = random_pure(3, rng);
    const auto quanton = QuantonSpec::pure({c.amp.data(), c.amp.data() + 3});
    const auto red = reduced_state(quanton, identical_detectors(3));
    CHECK((red.rho.rho - c.projector()).norm() < 1e-12);
    REQUIRE(red.induced.size() == 1);
}

TEST_CASE("two-slit symmetric overlap puts p/2 off the diagonal") {
    const auto red = reduced_state(balanced_quanton(2), symmetric_two_slit(0.4));
    CHECK(red.rho.rho(0, 1).real() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(red.rho.rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("induced decomposition reconstructs the reduced state") {
    Rng rng(91);
    for (int i = 0; i < 10; ++i) {
        const int d = 2 + rng.uniform_int(3);
        const int n_fail = 1 + rng.uniform_int(2);
        std::vector<Complex> phi(d);
        for (int t = 0; t < d; ++t) phi[t] = std::sqrt(rng.uniform());
        std::vector<double> p(n_fail, 1.0);
        Matrix raw(n_fail, d);
        for (int a = 0; a < n_fail; ++a) {
            for (int t = 0; t < d; ++t) raw(a, t) = rng.cnormal();
        }
        const auto det = DetectorModel::build(phi, p, raw);

        // Alternate pure and mixed quantons.
        QuantonSpec quanton = [&] {
            if (i % 2 == 0) {
                const PureState c = random_pure(d, rng);
                return QuantonSpec::pure({c.amp.data(), c.amp.data() + d});
            }
            Matrix chi(2, d);
            for (int x = 0; x < 2; ++x) {
                Vector row(d);
                for (int t = 0; t < d; ++t) row(t) = rng.cnormal();
                chi.row(x) = row.transpose() / row.norm();
            }
            const double u = 0.3 + 0.4 * rng.uniform();
            return QuantonSpec::mixed({u, 1.0 - u}, std::move(chi));
        }();

        const auto red = reduced_state(quanton, det);
        CHECK(red.induced.reconstruction_defect(red.rho.rho) < 1e-10);
    }
}

TEST_CASE("reduced_state rejects mismatched dimensions") {
    CHECK_THROWS_AS(reduced_state(balanced_quanton(3), symmetric_two_slit(0.5)),
                    std::invalid_argument);
}

TEST_CASE("failure chain on the named examples") {
    // Orthogonal detectors: every bound vanishes.
    {
        const auto chain = failure_chain(balanced_quanton(3), orthogonal_detectors(3));
        CHECK(chain.bound1 == 0.0);
        CHECK(chain.bound2 == 0.0);
        CHECK(chain.roof_estimate <= 1e-10);
    }
    // Identical detector states: bound2 equals the pure quanton value.
    {
        Rng rng(95);
        const PureState c = random_pure(3, rng);
        const auto quanton = QuantonSpec::pure({c.amp.data(), c.amp.data() + 3});
        const auto chain = failure_chain(quanton, identical_detectors(3));
        const double pure_value = coherence_k_concurrence_pure(c, 2);
        CHECK(chain.bound2 == doctest::Approx(pure_value).epsilon(1e-10));
        CHECK(chain.roof_estimate == doctest::Approx(pure_value).epsilon(1e-10));
    }
    // Two-slit symmetric overlap 0.4: the known discrimination optimum.
    {
        const auto chain = failure_chain(balanced_quanton(2), symmetric_two_slit(0.4));
        CHECK(chain.roof_estimate == doctest::Approx(0.4).epsilon(1e-4));
    }
}

TEST_CASE("chain order holds on random configurations") {
    Rng rng(97);
    for (int i = 0; i < 15; ++i) {
        const int d = 2 + rng.uniform_int(3);
        const int n_fail = 1 + rng.uniform_int(3);
        std::vector<Complex> phi(d);
        for (int t = 0; t < d; ++t) {
            phi[t] = std::polar(std::sqrt(rng.uniform()), 6.28 * rng.uniform());
        }
        std::vector<double> p(n_fail);
        for (int a = 0; a < n_fail; ++a) p[a] = rng.uniform() + 0.05;
        Matrix raw(n_fail, d);
        for (int a = 0; a < n_fail; ++a) {
            for (int t = 0; t < d; ++t) raw(a, t) = rng.cnormal();
        }
        const auto det = DetectorModel::build(phi, p, raw);
        const PureState c = random_pure(d, rng);
        const auto quanton = QuantonSpec::pure({c.amp.data(), c.amp.data() + d});

        const auto chain = failure_chain(quanton, det);
        CHECK(chain.bound1 >= chain.bound2 - 1e-8);
        CHECK(chain.bound2 >= chain.roof_estimate - 1e-8);
    }
}

TEST_CASE("distinguishability on the named examples") {
    {
        const auto rep = distinguishability(balanced_quanton(3), orthogonal_detectors(3));
        CHECK(rep.d_q == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(rep.slit_count == 2);  // r_hat = 1 for the diagonal state
    }
    {
        const auto rep = distinguishability(balanced_quanton(3), identical_detectors(3));
        CHECK(rep.d_q == doctest::Approx(0.0).epsilon(1e-4));
        CHECK(rep.slit_count == 0);
    }
    {
        const auto rep = distinguishability(balanced_quanton(2), symmetric_two_slit(0.4));
        CHECK(rep.d_q == doctest::Approx(0.6).epsilon(1e-4));
        CHECK(rep.d_q <= rep.l1_bound + 1e-8);
    }
}

TEST_CASE("distinguishable slit counts") {
    RoofOptions opts;
    {
        Matrix diag = Matrix::Zero(4, 4);
        diag(0, 0) = 0.4;
        diag(1, 1) = 0.3;
        diag(2, 2) = 0.2;
        diag(3, 3) = 0.1;
        CHECK(distinguishable_slit_count(DensityMatrix(diag), 1e-4, opts) == 3);
    }
    {
        const PureState psi(Vector::Constant(4, Complex(0.5, 0.0)));
        CHECK(distinguishable_slit_count(DensityMatrix::from_pure(psi), 1e-4, opts) == 0);
    }
    {
        // Only slits 0 and 1 confusable; slit 2 perfectly marked.
        Matrix raw(1, 3);
        raw << 1.0, 1.0, 0.0;
        const Complex soft(std::sqrt(0.1), 0.0);
        const auto det = DetectorModel::build({soft, soft, 1.0}, {1.0}, raw);
        const auto red = reduced_state(balanced_quanton(3), det);
        CHECK(distinguishable_slit_count(red.rho, 1e-4, opts) == 1);
    }
}

TEST_CASE("reduced state approaches the quanton projector as detectors merge") {
    const auto quanton = balanced_quanton(3);
    Matrix projector = reduced_state(quanton, identical_detectors(3)).rho.rho;
    double previous = 1e9;
    for (double t : {0.2, 0.1, 0.05, 0.01}) {
        const Complex phi(std::sqrt(t), 0.0);
        const auto det = DetectorModel::build(std::vector<Complex>(3, phi), {1.0},
                                              Matrix::Ones(1, 3));
        const double dist = (reduced_state(quanton, det).rho.rho - projector).norm();
        CHECK(dist < previous);
        CHECK(dist < 2.0 * t);
        previous = dist;
    }
}

TEST_CASE("multislit config files parse into working models") {
    namespace fs = std::filesystem;
    const auto path = (fs::temp_directory_path() / "qcoh_test_slit.json").string();
    {
        std::ofstream out(path);
        out << R"({"slits": 2,
                   "c": [[0.70710678118654752, 0], [0.70710678118654752, 0]],
                   "phi": [0.77459666924148338, 0.77459666924148338],
                   "p": [1.0],
                   "q": [[1.0, 1.0]]})";
    }
    const auto config = read_multislit_config(path);
    CHECK(config.detector.d == 2);
    const auto red = reduced_state(config.quanton, config.detector);
    CHECK(red.rho.rho(0, 1).real() == doctest::Approx(0.2).epsilon(1e-8));
    fs::remove(path);

    // Mixed quanton variant.
    const auto mixed_path = (fs::temp_directory_path() / "qcoh_test_slit_mixed.json").string();
    {
        std::ofstream out(mixed_path);
        out << R"({"slits": 2,
                   "lambda": [0.5, 0.5],
                   "chi": [[[1, 0], [0, 0]], [[0.70710678118654752, 0], [0.70710678118654752, 0]]],
                   "phi": [0.5, 0.5],
                   "p": [1.0],
                   "q": [[1.0, 1.0]]})";
    }
    const auto mixed = read_multislit_config(mixed_path);
    CHECK(!mixed.quanton.is_pure());
    CHECK_NOTHROW(reduced_state(mixed.quanton, mixed.detector));
    fs::remove(mixed_path);
}
