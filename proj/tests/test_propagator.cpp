#include <doctest.h>

#include <cmath>
#include <random>

#include "bpi/propagator.hpp"

using namespace bpi;

namespace {

TimeGrid default_grid(const PulseSpec& pulse, double dt = 1.0 / 2000.0) {
    return TimeGrid::from_step(pulse.t_start, pulse.t_end, dt);
}

Vector random_state(int dim, std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    v /= v.norm();
    return v;
}

} // namespace

TEST_CASE("Hamiltonian skeleton: diagonal layout and dense/apply agreement") {
    SystemSpec s{3, 2, 0.4, 0.3, 0.1};
    const HamiltonianSkeleton skel = HamiltonianSkeleton::build(s);
    CHECK(skel.diag(0) == 0.0);
    CHECK(skel.diag(2) == doctest::Approx(0.8));
    CHECK(skel.diag(3) == doctest::Approx(0.1));
    CHECK(skel.diag(4) == doctest::Approx(0.4));

    const Matrix dense = skel.dense(1.7);
    CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    // no intra-manifold couplings
    CHECK(dense(0, 1) == Complex(0.0, 0.0));
    CHECK(dense(3, 4) == Complex(0.0, 0.0));
    CHECK(dense(0, 3).real() == doctest::Approx(-0.85));
    CHECK(dense(0, 3).imag() == 0.0);

    std::mt19937 rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const Vector x = random_state(s.dim(), rng);
        Vector y;
        skel.apply(1.7, x, y);
        CHECK((y - dense * x).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("zero pulse: populations frozen, amplitudes pick up level phases") {
    SystemSpec s{2, 2, 0.4, 0.4, 0.0};
    PulseSpec p{0.0, 1.0, -4.0, 4.0};
    std::mt19937 rng(3);
    const Vector psi0 = random_state(s.dim(), rng);

    PopulationTrace trace;
    const Vector final_state = propagate_vector(s, p, default_grid(p), psi0, &trace);

    for (int row = 0; row < trace.n_records(); ++row)
        for (int c = 0; c < s.dim(); ++c)
            CHECK(trace.per_level(row, c) == doctest::Approx(std::norm(psi0(c))).epsilon(1e-12));

    const HamiltonianSkeleton skel = HamiltonianSkeleton::build(s);
    const double span = p.t_end - p.t_start;
    for (int c = 0; c < s.dim(); ++c) {
        const Complex expected = psi0(c) * std::exp(Complex(0.0, -skel.diag(c) * span));
        CHECK(std::abs(final_state(c) - expected) < 1e-9);
    }
}

TEST_CASE("two-level pi pulse inverts the population") {
    SystemSpec s{1, 1, 0.0, 0.0, 0.0};
    PulseSpec p{pi, 1.0, -4.0, 4.0};
    const auto [final_state, trace] =
        propagate(s, p, default_grid(p), ground_basis_state(s, 1));
    CHECK(std::norm(final_state.amplitudes()(1)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(trace.p_excited(trace.n_records() - 1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("degenerate oracle: theta = 0 is the identity, pi pulse flips a two-level system") {
    SystemSpec s{1, 1, 0.0, 0.0, 0.0};
    PulseSpec p{pi, 1.0, -4.0, 4.0};
    const StateVector psi0 = ground_basis_state(s, 1);
    const StateVector at_start = propagate_degenerate_oracle(s, p, p.t_start, psi0);
    CHECK((at_start.amplitudes() - psi0.amplitudes()).cwiseAbs().maxCoeff() < 1e-14);
    const StateVector at_end = propagate_degenerate_oracle(s, p, p.t_end, psi0);
    CHECK(std::norm(at_end.amplitudes()(1)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("degenerate oracle: rejects non-degenerate systems") {
    SystemSpec s{2, 1, 0.4, 0.4, 0.0};
    PulseSpec p{pi, 1.0, -4.0, 4.0};
    CHECK_THROWS_AS(propagate_degenerate_oracle(s, p, 0.0, ground_basis_state(s, 1)),
                    config_error);
}

TEST_CASE("oracle closed form: two ground levels cap excitation at one half") {
    // P_E(t) = sin^2(sqrt(N_f/2) theta) / 2 for N_i = 2, from the collective model
    SystemSpec s{2, 1, 0.0, 0.0, 0.0};
    PulseSpec p{7.0, 1.0, -4.0, 4.0};
    const StateVector psi0 = ground_basis_state(s, 1);
    for (double t : {-1.0, -0.2, 0.0, 0.4, 1.3, 2.8, 4.0}) {
        const double theta = accumulated_area(p, t);
        const StateVector at_t = propagate_degenerate_oracle(s, p, t, psi0);
        const double p_e = std::norm(at_t.amplitudes()(2));
        const double expect = 0.5 * std::pow(std::sin(std::sqrt(0.5) * theta), 2);
        CHECK(p_e == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("propagate matches the degenerate oracle componentwise") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> levels(1, 7);
    std::uniform_real_distribution<double> areas(0.0, 10.0 * pi);
    for (int trial = 0; trial < 8; ++trial) {
        SystemSpec s{levels(rng), levels(rng), 0.0, 0.0, 0.0};
        PulseSpec p{areas(rng), 1.0, -4.0, 4.0};
        const Vector psi0 = random_state(s.dim(), rng);

        const double lambda_peak =
            0.5 * std::sqrt(double(s.n_i) * double(s.n_f)) * p.peak_rabi();
        const int steps_per_tau =
            2000 * std::max(1, static_cast<int>(std::ceil(lambda_peak / 10.0)));

        const Vector via_rk4 =
            propagate_vector(s, p, default_grid(p, 1.0 / steps_per_tau), psi0);
        const Vector via_exp =
            propagate_degenerate_oracle(s, p, p.t_end, StateVector::from_amplitudes(psi0))
                .amplitudes();
        CHECK((via_rk4 - via_exp).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("Raman transfer for two ground levels with finite spacing") {
    SystemSpec s{2, 1, 0.4, 0.4, 0.0};
    PulseSpec p{5.0 * pi, 1.0, -4.0, 4.0};
    const auto [final_state, trace] =
        propagate(s, p, default_grid(p), ground_basis_state(s, 1));
    (void)final_state;
    double max_p_r = 0.0;
    for (int row = 0; row < trace.n_records(); ++row)
        max_p_r = std::max(max_p_r, trace.per_level(row, 1));  // population of g2
    CHECK(max_p_r > 0.8);
    CHECK(trace.p_excited(trace.n_records() - 1) < 0.5);
}

TEST_CASE("seven-fold manifolds: single-level start caps excitation at 1/7") {
    SystemSpec s{7, 7, 0.0, 0.0, 0.0};
    PulseSpec p{5.0 * pi, 1.0, -4.0, 4.0};
    const auto [final_state, trace] =
        propagate(s, p, default_grid(p, 1.0 / 8000.0), ground_basis_state(s, 1));
    (void)final_state;
    double max_p_e = 0.0;
    for (int row = 0; row < trace.n_records(); ++row)
        max_p_e = std::max(max_p_e, trace.p_excited(row));
    CHECK(max_p_e == doctest::Approx(1.0 / 7.0).epsilon(1e-6));
}

TEST_CASE("unitarity: norm preserved to 1e-10 across parameters") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        std::uniform_int_distribution<int> levels(1, 6);
        std::uniform_real_distribution<double> spacing(0.0, 0.8);
        SystemSpec s{levels(rng), levels(rng), spacing(rng), spacing(rng), 0.0};
        PulseSpec p{3.0 * pi, 1.0, -4.0, 4.0};
        PopulationTrace trace;
        propagate_vector(s, p, default_grid(p), random_state(s.dim(), rng), &trace);
        CHECK(trace.max_norm_deviation < 1e-10);
        for (int row = 0; row < trace.n_records(); ++row)
            CHECK(std::abs(trace.per_level.row(row).sum() - 1.0) < 1e-9);
    }
}

TEST_CASE("step halving changes the final state by less than 1e-9") {
    SystemSpec s{2, 1, 0.4, 0.4, 0.0};
    PulseSpec p{5.0 * pi, 1.0, -4.0, 4.0};
    const Vector psi0 = ground_basis_state(s, 1).amplitudes();
    const Vector coarse = propagate_vector(s, p, default_grid(p), psi0);
    const Vector fine = propagate_vector(s, p, default_grid(p, 1.0 / 4000.0), psi0);
    CHECK((coarse - fine).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("propagation is linear in the initial state") {
    SystemSpec s{3, 2, 0.4, 0.4, 0.0};
    PulseSpec p{2.0 * pi, 1.0, -4.0, 4.0};
    const TimeGrid grid = default_grid(p);
    std::mt19937 rng(17);
    const Vector a = random_state(s.dim(), rng);
    const Vector b = random_state(s.dim(), rng);
    const Complex alpha(0.3, -0.4), beta(0.7, 0.2);

    const Vector combined = propagate_vector(s, p, grid, alpha * a + beta * b);
    const Vector separate =
        alpha * propagate_vector(s, p, grid, a) + beta * propagate_vector(s, p, grid, b);
    CHECK((combined - separate).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("degenerate start from g1: permutation symmetry of the trace") {
    SystemSpec s{4, 3, 0.0, 0.0, 0.0};
    PulseSpec p{3.0 * pi, 1.0, -4.0, 4.0};
    PopulationTrace trace;
    propagate_vector(s, p, default_grid(p), ground_basis_state(s, 1).amplitudes(), &trace);
    for (int row = 0; row < trace.n_records(); ++row) {
        for (int j = 2; j < s.n_i; ++j)
            CHECK(trace.per_level(row, j) == doctest::Approx(trace.per_level(row, 1)).epsilon(1e-10));
        for (int k = 1; k < s.n_f; ++k)
            CHECK(trace.per_level(row, s.n_i + k) ==
                  doctest::Approx(trace.per_level(row, s.n_i)).epsilon(1e-10));
    }
}

TEST_CASE("coarse steps on a strong pulse raise an accuracy error") {
    SystemSpec s{7, 7, 0.0, 0.0, 0.0};
    PulseSpec p{10.0 * pi, 1.0, -4.0, 4.0};
    CHECK_THROWS_AS(
        propagate_vector(s, p, TimeGrid::from_step(-4.0, 4.0, 0.1),
                         ground_basis_state(s, 1).amplitudes()),
        accuracy_error);
}

TEST_CASE("propagate rejects mismatched dimensions and short grids") {
    SystemSpec s{2, 1, 0.0, 0.0, 0.0};
    PulseSpec p{pi, 1.0, -4.0, 4.0};
    Vector wrong = Vector::Zero(5);
    wrong(0) = 1.0;
    CHECK_THROWS_AS(propagate_vector(s, p, default_grid(p), wrong), config_error);
    CHECK_THROWS_AS(
        propagate_vector(s, p, TimeGrid::from_step(-2.0, 4.0, 0.001),
                         ground_basis_state(s, 1).amplitudes()),
        config_error);
}
