#include "bpi/propagator.hpp"

#include <cmath>
#include <string>

namespace bpi {

HamiltonianSkeleton HamiltonianSkeleton::build(const SystemSpec& system) {
    system.validate();
    HamiltonianSkeleton skel;
    skel.n_i = system.n_i;
    skel.n_f = system.n_f;
    skel.diag.resize(system.dim());
    for (int j = 0; j < system.n_i; ++j)
        skel.diag(j) = j * system.de_i;
    for (int k = 0; k < system.n_f; ++k)
        skel.diag(system.n_i + k) = k * system.de_f + system.detuning0;
    return skel;
}

void HamiltonianSkeleton::apply(double omega, const Vector& x, Vector& y) const {
    const Complex sum_g = x.head(n_i).sum();
    const Complex sum_e = x.tail(n_f).sum();
    const double g = -0.5 * omega;
    y.resize(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) y(i) = diag(i) * x(i);
    y.head(n_i).array() += g * sum_e;
    y.tail(n_f).array() += g * sum_g;
}

Matrix HamiltonianSkeleton::dense(double omega) const {
    Matrix h = Matrix::Zero(n_i + n_f, n_i + n_f);
    h.diagonal() = diag.cast<Complex>();
    h.block(0, n_i, n_i, n_f).setConstant(-0.5 * omega);
    h.block(n_i, 0, n_f, n_i).setConstant(-0.5 * omega);
    return h;
}

namespace {

struct Rk4Workspace {
    Vector k1, k2, k3, k4, tmp, hdot;

    explicit Rk4Workspace(int dim)
        : k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim), hdot(dim) {}
};

// dpsi/dt = -i H(t) psi
inline void rhs(const HamiltonianSkeleton& skel, const PulseSpec& pulse,
                double t, const Vector& psi, Vector& dpsi, Vector& hdot) {
    skel.apply(envelope(pulse, t), psi, hdot);
    dpsi = Complex(0.0, -1.0) * hdot;
}

inline void record(PopulationTrace& trace, int row, double t, const Vector& psi,
                   int n_i, int n_f) {
    trace.times[row] = t;
    trace.per_level.row(row) = psi.cwiseAbs2().transpose();
    trace.p_ground(row) = trace.per_level.row(row).head(n_i).sum();
    trace.p_excited(row) = trace.per_level.row(row).tail(n_f).sum();
}

} // namespace

Vector propagate_vector(const SystemSpec& system, const PulseSpec& pulse,
                        const TimeGrid& grid, const Vector& psi0,
                        PopulationTrace* trace) {
    pulse.validate();
    if (psi0.size() != system.dim())
        throw config_error("psi0: dimension " + std::to_string(psi0.size()) +
                           " does not match system dimension " + std::to_string(system.dim()));
    if (grid.t_start > pulse.t_start || grid.t_end < pulse.t_end)
        throw config_error("grid: integration window must span the pulse window");

    const HamiltonianSkeleton skel = HamiltonianSkeleton::build(system);
    const int dim = system.dim();
    const double norm0 = psi0.norm();

    if (trace) {
        trace->times.assign(grid.n_steps + 1, 0.0);
        trace->per_level.resize(grid.n_steps + 1, dim);
        trace->p_ground.resize(grid.n_steps + 1);
        trace->p_excited.resize(grid.n_steps + 1);
        trace->max_norm_deviation = 0.0;
        record(*trace, 0, grid.t_start, psi0, skel.n_i, skel.n_f);
    }

    Vector psi = psi0;
    Rk4Workspace w(dim);
    double max_drift = 0.0;

    for (int i = 0; i < grid.n_steps; ++i) {
        const double t = grid.time(i);
        const double h = grid.step_size(i);

        rhs(skel, pulse, t, psi, w.k1, w.hdot);
        w.tmp = psi + (0.5 * h) * w.k1;
        rhs(skel, pulse, t + 0.5 * h, w.tmp, w.k2, w.hdot);
        w.tmp = psi + (0.5 * h) * w.k2;
        rhs(skel, pulse, t + 0.5 * h, w.tmp, w.k3, w.hdot);
        w.tmp = psi + h * w.k3;
        rhs(skel, pulse, t + h, w.tmp, w.k4, w.hdot);
        psi += (h / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4);

        const double drift = std::abs(psi.norm() - norm0);
        if (drift > max_drift) max_drift = drift;
        if (drift > 1e-8)
            throw accuracy_error("propagate: norm drift " + std::to_string(drift) +
                                 " exceeds 1e-8 at t = " + std::to_string(grid.time(i + 1)) +
                                 "; use a smaller dt");
        if (trace) record(*trace, i + 1, grid.time(i + 1), psi, skel.n_i, skel.n_f);
    }

    if (trace) trace->max_norm_deviation = max_drift;
    return psi;
}

std::pair<StateVector, PopulationTrace> propagate(const SystemSpec& system,
                                                  const PulseSpec& pulse,
                                                  const TimeGrid& grid,
                                                  const StateVector& psi0) {
    PopulationTrace trace;
    Vector final_raw = propagate_vector(system, pulse, grid, psi0.amplitudes(), &trace);
    if (trace.max_norm_deviation > StateVector::norm_tol)
        throw accuracy_error("propagate: norm drift " + std::to_string(trace.max_norm_deviation) +
                             " exceeds the 1e-10 final-state contract; use a smaller dt");
    return {StateVector::from_amplitudes(std::move(final_raw)), std::move(trace)};
}

StateVector propagate_degenerate_oracle(const SystemSpec& system,
                                        const PulseSpec& pulse, double t,
                                        const StateVector& psi0) {
    if (!system.degenerate())
        throw config_error("degenerate oracle: system must have de = de_f = detuning0 = 0");
    const double theta = accumulated_area(pulse, t);

    // H0 = -K/2 with Omega factored out; real symmetric
    Eigen::MatrixXd h0 = Eigen::MatrixXd::Zero(system.dim(), system.dim());
    h0.block(0, system.n_i, system.n_i, system.n_f).setConstant(-0.5);
    h0.block(system.n_i, 0, system.n_f, system.n_i).setConstant(-0.5);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h0);
    const Eigen::MatrixXd& v = es.eigenvectors();
    Vector phases(system.dim());
    for (int i = 0; i < system.dim(); ++i)
        phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * theta));

    Vector psi = v.cast<Complex>() *
                 phases.cwiseProduct(v.transpose().cast<Complex>() * psi0.amplitudes());
    return StateVector::from_amplitudes(std::move(psi));
}

} // namespace bpi
