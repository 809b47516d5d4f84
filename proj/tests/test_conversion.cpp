#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qcoh/conversion.hpp"

using namespace qcoh;

TEST_CASE("generalized CNOT reproduces the d=2 truth table") {
    const GeneralizedCnot u(2);
    // |00> -> |00>, |01> -> |01>, |10> -> |11>, |11> -> |10>
    CHECK(u.image(0) == 0);
    CHECK(u.image(1) == 1);
    CHECK(u.image(2) == 3);
    CHECK(u.image(3) == 2);
}

TEST_CASE("generalized CNOT is a permutation (exact unitarity)") {
    for (int d = 2; d <= 6; ++d) {
        const GeneralizedCnot u(d);
        std::vector<bool> hit(d * d, false);
        for (int idx = 0; idx < d * d; ++idx) {
            const int img = u.image(idx);
            REQUIRE(img >= 0);
            REQUIRE(img < d * d);
            CHECK(!hit[img]);
            hit[img] = true;
            CHECK(u.preimage(img) == idx);
        }
    }
}

TEST_CASE("generalized CNOT copies onto the reference ancilla") {
    const GeneralizedCnot u(3);
    CHECK(u.image(2 * 3 + 0) == 2 * 3 + 2);  // |2>|0> -> |2>|2>
    for (int d = 2; d <= 5; ++d) {
        const GeneralizedCnot ud(d);
        for (int i = 0; i < d; ++i) {
            CHECK(ud.image(i * d) == i * d + i);
        }
    }
}

TEST_CASE("lambda_u on pure states produces the diagonal bipartite state") {
    Vector v = Vector::Constant(3, Complex(1.0 / std::sqrt(3.0), 0.0));
    const BipartitePureState out = lambda_u(PureState(v));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) {
                CHECK(out.amp(i, j) == v(i));
            } else {
                CHECK(out.amp(i, j) == Complex(0.0, 0.0));
            }
        }
    }

    const BipartitePureState basis_out = lambda_u(PureState(Vector::Unit(3, 0)));
    CHECK(ent_k_concurrence_schmidt(basis_out, 2) == 0.0);
}

TEST_CASE("lambda_u maps incoherent states to classically correlated states") {
    Matrix diag = Matrix::Zero(3, 3);
    diag(0, 0) = 0.2;
    diag(1, 1) = 0.3;
    diag(2, 2) = 0.5;
    const DensityMatrix out = lambda_u(DensityMatrix(diag));
    for (int r = 0; r < 9; ++r) {
        for (int c = 0; c < 9; ++c) {
            if (r == c && r % 4 == 0) continue;  // the |ii><ii| entries
            CHECK(std::abs(out.rho(r, c)) == 0.0);
        }
    }
    CHECK(out.rho(0, 0).real() == doctest::Approx(0.2));
    CHECK(out.rho(4, 4).real() == doctest::Approx(0.3));
    CHECK(out.rho(8, 8).real() == doctest::Approx(0.5));
}

TEST_CASE("pure conversion identity at the frozen example") {
    Vector v(3);
    v << std::sqrt(0.5), 0.5, 0.5;
    const auto res = verify_conversion(PureState(v), 2);
    CHECK(res.coherence_side == doctest::Approx(0.96824583655185426).epsilon(1e-13));
    CHECK(res.entanglement_side == doctest::Approx(0.96824583655185426).epsilon(1e-13));
    CHECK(res.delta < 1e-12);
}

TEST_CASE("pure conversion identity on random states") {
    for (int i = 0; i < 60; ++i) {
        Rng rng = derived_rng(61, "conv.unit", i);
        const int d = 2 + rng.uniform_int(5);
        const PureState psi = random_pure(d, rng);
        for (int k = 2; k <= d; ++k) {
            CHECK(verify_conversion(psi, k).delta < 1e-12);
        }
    }
}

TEST_CASE("conversion on incoherent mixed states vanishes on both sides") {
    Matrix diag = Matrix::Zero(3, 3);
    diag(0, 0) = 0.6;
    diag(1, 1) = 0.4;
    for (int k = 2; k <= 3; ++k) {
        const auto res = verify_conversion(DensityMatrix(diag), k);
        CHECK(res.coherence_side <= 1e-8);
        CHECK(res.entanglement_side <= 1e-8);
    }
}

TEST_CASE("mixed conversion delta stays within optimizer slack") {
    for (int i = 0; i < 6; ++i) {
        Rng rng = derived_rng(67, "conv.mixed", i);
        const DensityMatrix rho = random_mixed(3, 2, rng);
        RoofOptions opts;
        opts.seed = 100 + i;
        const auto res = verify_conversion(rho, 2, opts);
        CHECK(res.delta <= 2.0 * 1e-4);
    }
}

TEST_CASE("rank chain through the channel") {
    for (int i = 0; i < 20; ++i) {
        Rng rng = derived_rng(71, "conv.rank", i);
        const int d = 2 + rng.uniform_int(4);
        const int r = 1 + rng.uniform_int(d);
        std::vector<int> order(d);
        for (int t = 0; t < d; ++t) order[t] = t;
        for (int t = d - 1; t > 0; --t) std::swap(order[t], order[rng.uniform_int(t + 1)]);
        Vector v = Vector::Zero(d);
        for (int t = 0; t < r; ++t) v(order[t]) = rng.cnormal();
        v /= v.norm();
        const BipartitePureState image = lambda_u(PureState(v));
        for (int k = 2; k <= d; ++k) {
            if (k <= r) {
                CHECK(ent_k_concurrence_schmidt(image, k) > 1e-9);
            } else {
                CHECK(ent_k_concurrence_schmidt(image, k) == 0.0);
            }
        }
    }
}

TEST_CASE("image and pullback of decompositions invert each other") {
    const DensityMatrix rho = random_mixed(3, 2, 73);
    const auto dec = eig_decompose(rho);
    const auto image = lambda_u_image(dec);
    const auto back = lambda_u_pullback(image, 3);
    REQUIRE(back.size() == dec.size());
    for (std::size_t a = 0; a < dec.size(); ++a) {
        CHECK(std::abs(back.states[a].amp.dot(dec.states[a].amp)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(image.reconstruction_defect(lambda_u(rho).rho) < 1e-10);
}
