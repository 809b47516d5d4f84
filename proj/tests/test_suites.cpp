#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcoh/conversion.hpp"
#include "qcoh/suites.hpp"

using namespace qcoh;

TEST_CASE("phase condition holds for entrywise-nonnegative states") {
    Rng rng(101);
    Vector a(3), b(3);
    for (int i = 0; i < 3; ++i) {
        a(i) = std::abs(rng.normal());
        b(i) = std::abs(rng.normal());
    }
    a /= a.norm();
    b /= b.norm();
    const DensityMatrix rho(Matrix(0.6 * a * a.adjoint() + 0.4 * b * b.adjoint()));
    CHECK(check_phase_condition(rho).satisfied);
}

TEST_CASE("phase condition detects a constructed violation") {
    // Off-diagonal phases pi/3 around the cycle: triple product phase pi.
    const Complex w = std::polar(0.05, 3.14159265358979323846 / 3.0);
    Matrix m = Matrix::Identity(3, 3) / 3.0;
    m(0, 1) = w;
    m(1, 0) = std::conj(w);
    m(1, 2) = w;
    m(2, 1) = std::conj(w);
    m(2, 0) = w;
    m(0, 2) = std::conj(w);
    const auto res = check_phase_condition(DensityMatrix(m));
    CHECK(!res.satisfied);
    CHECK(res.max_deviation == doctest::Approx(3.14159265358979323846).epsilon(1e-9));
    CHECK(res.i == 0);
    CHECK(res.j == 1);
    CHECK(res.k == 2);
}

TEST_CASE("phase condition is unconditional for qubits") {
    const DensityMatrix rho = random_mixed(2, 2, 103);
    CHECK(check_phase_condition(rho).satisfied);
}

TEST_CASE("phase condition is invariant under diagonal unitary conjugation") {
    for (int i = 0; i < 20; ++i) {
        Rng rng = derived_rng(107, "phase.diag", i);
        const int d = 3 + rng.uniform_int(2);
        const DensityMatrix rho = random_mixed(d, 2, rng);
        Matrix conjugated = rho.rho;
        std::vector<Complex> phases(d);
        for (int t = 0; t < d; ++t) {
            phases[t] = std::polar(1.0, 6.283185307179586 * rng.uniform());
        }
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                conjugated(r, c) *= phases[r] * std::conj(phases[c]);
            }
        }
        const auto base = check_phase_condition(rho);
        const auto rotated = check_phase_condition(DensityMatrix(conjugated));
        CHECK(base.satisfied == rotated.satisfied);
        CHECK(std::abs(base.max_deviation - rotated.max_deviation) < 1e-9);
    }
}

TEST_CASE("dephasing and incoherent unitaries respect strong monotonicity") {
    Rng rng(109);
    const PureState psi = random_pure(3, rng);
    const RoofObjective obj = RoofObjective::make(MonotoneId::coherence_k(2), 3);

    // Dephasing Kraus set {|n><n|}: every branch is incoherent.
    double lhs = 0.0;
    for (int n = 0; n < 3; ++n) {
        Matrix k = Matrix::Zero(3, 3);
        k(n, n) = 1.0;
        lhs += obj.member_value(k * psi.amp);
    }
    CHECK(lhs == 0.0);

    // A single permutation-with-phases Kraus operator: exact equality.
    Matrix perm = Matrix::Zero(3, 3);
    perm(1, 0) = std::polar(1.0, 0.3);
    perm(2, 1) = std::polar(1.0, 1.1);
    perm(0, 2) = std::polar(1.0, 2.7);
    CHECK(obj.member_value(perm * psi.amp) ==
          doctest::Approx(obj.pure_value(psi)).epsilon(1e-12));
}

TEST_CASE("strong monotonicity suite sees no violations") {
    const auto report = strong_monotonicity_suite(4, 100, MonotoneId::coherence_k(2), 1);
    CHECK(report.passed);
    CHECK(report.samples == 100);
    CHECK(report.max_defect <= 1e-10);
}

TEST_CASE("suite reports fail when a defect exceeds tolerance") {
    // The ordering suite with zero samples trivially passes; the pass flag
    // tracks the violation list.
    SuiteOptions opts;
    opts.samples = 2;
    const auto report = ordering_suite(opts);
    CHECK(report.passed == report.violations.empty());
}

TEST_CASE("reduced-budget suites all pass") {
    SuiteOptions opts;
    opts.seed = 5;
    opts.samples = 12;
    for (const auto& name : suite_names()) {
        SuiteOptions per = opts;
        if (name == "conversion_mixed" || name == "theorem4_mixed" || name == "theorem5" ||
            name == "convexity" || name == "multislit" || name == "rank_witness") {
            per.samples = 6;
        }
        const auto report = run_suite_by_name(name, per);
        INFO(name, ": max_defect=", report.max_defect,
             " violations=", report.violations.size(),
             (report.violations.empty() ? "" : (" first=" + report.violations[0].fingerprint)));
        CHECK(report.passed);
    }
    CHECK_THROWS_AS(run_suite_by_name("nonsense", opts), std::invalid_argument);
}

TEST_CASE("suites are deterministic across executions and policies") {
    SuiteOptions serial, parallel;
    serial.samples = parallel.samples = 25;
    serial.seed = parallel.seed = 3;
    serial.exec = Exec::serial;
    parallel.exec = Exec::parallel;

    const auto a = theorem5_suite(serial);
    const auto b = theorem5_suite(parallel);
    CHECK(a.max_defect == b.max_defect);
    CHECK(a.samples == b.samples);
    CHECK(a.violations.size() == b.violations.size());

    const auto c = multislit_suite(serial);
    const auto d = multislit_suite(parallel);
    CHECK(c.max_defect == d.max_defect);
    CHECK(c.violations.size() == d.violations.size());
}
