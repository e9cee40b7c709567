#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "helpers.hpp"
#include "model.hpp"

using namespace qotto;
using namespace qotto::model;

TEST_CASE("splitting") {
    CHECK(splitting({0.0, 1.0}) == 1.0);
    CHECK(splitting({3.0, 4.0}) == 5.0);
    CHECK(splitting({2.0, 1.0}) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("tls_hamiltonian puts the ground state at zero") {
    const Matrix diag = tls_hamiltonian({1.0, 0.0});
    CHECK(diag(0, 0) == Complex(1.0));
    CHECK(diag(1, 1) == Complex(0.0));
    CHECK(diag(0, 1) == Complex(0.0));

    const auto sys = linops::hermitian_eig(tls_hamiltonian({0.0, 1.0}));
    CHECK(sys.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(sys.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));

    const Matrix h = tls_hamiltonian({2.0, 1.0});
    CHECK(h.trace().real() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));

    // eigenvalues are {0, mu} for generic parameters
    for (auto [eps, dlt] : {std::pair{0.7, 1.9}, std::pair{-1.2, 0.4}}) {
        const auto s = linops::hermitian_eig(tls_hamiltonian({eps, dlt}));
        CHECK(s.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(s.eigenvalues(1) ==
              doctest::Approx(splitting({eps, dlt})).epsilon(1e-13));
    }
}

TEST_CASE("spectral_density") {
    const ReservoirSpec spec{1.0, 0.005, 2.0};
    CHECK(spectral_density(spec, 0.0) == 0.0);
    CHECK(spectral_density(spec, 2.0) == doctest::Approx(0.0025).epsilon(1e-15));
    // the maximum sits at omega = omega_c
    CHECK(spectral_density(spec, 2.0) > spectral_density(spec, 1.8));
    CHECK(spectral_density(spec, 2.0) > spectral_density(spec, 2.2));
    CHECK(spectral_density(spec, 2.0) == doctest::Approx(spec.alpha / 2.0));
    CHECK_THROWS_AS(spectral_density(spec, -0.1), NumericError);
}

TEST_CASE("rc_mapping parameters") {
    const ReservoirSpec spec{1.0, 0.005, 2.0};
    const TlsParams p{2.0, 1.0};
    const RcMapping m = rc_mapping(spec, p, 30);
    CHECK(m.omega_rc == splitting(p)); // bitwise, by construction
    CHECK(m.gamma == doctest::Approx(0.1779406358542943).epsilon(1e-12));
    CHECK(m.lambda == doctest::Approx(0.13252183528612113).epsilon(1e-12));
    CHECK(m.n == 30);
    // gamma is consistent with the mode frequency
    CHECK(2.0 * std::numbers::pi * m.gamma * spec.omega_c ==
          doctest::Approx(m.omega_rc).epsilon(1e-15));

    const RcMapping decoupled = rc_mapping({1.0, 0.0, 2.0}, p, 10);
    CHECK(decoupled.lambda == 0.0);
    CHECK(decoupled.omega_rc == splitting(p));

    // lambda scales as sqrt(alpha): doubling alpha multiplies lambda by sqrt(2)
    const RcMapping twice = rc_mapping({1.0, 0.01, 2.0}, p, 30);
    CHECK(twice.lambda ==
          doctest::Approx(std::sqrt(2.0) * m.lambda).epsilon(1e-15));

    CHECK_THROWS_AS(rc_mapping(spec, TlsParams{0.0, 0.0}, 30), NumericError);
    CHECK_THROWS_AS(rc_mapping(spec, p, 0), NumericError);
}

TEST_CASE("mapped_hamiltonian decoupled spectrum") {
    const TlsParams p{2.0, 1.0};
    const int n = 6;
    const RcMapping m = rc_mapping({1.0, 0.0, 2.0}, p, n);
    const Matrix h = mapped_hamiltonian(p, m);

    std::vector<double> expected;
    for (int k = 0; k < n; ++k) {
        expected.push_back(m.omega_rc * k);
        expected.push_back(splitting(p) + m.omega_rc * k);
    }
    std::sort(expected.begin(), expected.end());
    const auto sys = linops::hermitian_eig(h);
    for (int i = 0; i < 2 * n; ++i) {
        CHECK(sys.eigenvalues(i) == doctest::Approx(expected[i]).epsilon(1e-12));
    }
}

TEST_CASE("mapped_hamiltonian with one mode level reduces to the bare TLS") {
    const TlsParams p{0.3, 1.1};
    const RcMapping m = rc_mapping({2.0, 0.7, 2.0}, p, 1);
    const Matrix h = mapped_hamiltonian(p, m);
    CHECK((h - tls_hamiltonian(p)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("mapped_hamiltonian ground state dips below zero at finite coupling") {
    const TlsParams p{2.0, 1.0};
    const RcMapping m = rc_mapping({1.0, 0.005, 2.0}, p, 30);
    const Matrix h = mapped_hamiltonian(p, m);
    CHECK(h.rows() == 60);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <=
          1e-14 * h.cwiseAbs().maxCoeff());
    const auto sys = linops::hermitian_eig(h);
    CHECK(sys.eigenvalues(0) < 0.0);
    CHECK(sys.eigenvalues(0) ==
          doctest::Approx(-0.007071656916111118).epsilon(1e-8));
}
