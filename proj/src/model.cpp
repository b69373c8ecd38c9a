#include "bpi/model.hpp"

#include <cmath>
#include <string>

namespace bpi {

namespace {
const double two_ln2 = 2.0 * std::log(2.0);
// integral of exp(-2 ln2 (t/tau)^2) over the real line is tau * gauss_norm
const double gauss_norm = std::sqrt(pi / two_ln2);
} // namespace

void SystemSpec::validate() const {
    if (n_i < 1) throw config_error("ni: must be >= 1, got " + std::to_string(n_i));
    if (n_f < 1) throw config_error("nf: must be >= 1, got " + std::to_string(n_f));
    if (de_i < 0.0) throw config_error("de: spacing must be >= 0, got " + std::to_string(de_i));
    if (de_f < 0.0) throw config_error("de_f: spacing must be >= 0, got " + std::to_string(de_f));
}

double PulseSpec::peak_rabi() const {
    return area / (tau * gauss_norm);
}

void PulseSpec::validate() const {
    if (area < 0.0) throw config_error("area: must be >= 0, got " + std::to_string(area));
    if (tau <= 0.0) throw config_error("tau: must be > 0, got " + std::to_string(tau));
    if (!(t_start < 0.0 && 0.0 < t_end))
        throw config_error("t_start/t_end: window must satisfy t_start < 0 < t_end and contain the envelope peak");
    if (area > 0.0) {
        // truncated tails must contribute < 1e-8 of the area
        const double captured = accumulated_area(*this, t_end) / area;
        if (captured < 1.0 - 1e-8)
            throw config_error("t_start/t_end: window truncates the pulse; envelope integral recovers only " +
                               std::to_string(captured) + " of the requested area (need 1 - 1e-8)");
    }
}

double envelope(const PulseSpec& pulse, double t) {
    const double x = t / pulse.tau;
    return pulse.peak_rabi() * std::exp(-two_ln2 * x * x);
}

double accumulated_area(const PulseSpec& pulse, double t) {
    if (t < pulse.t_start || t > pulse.t_end)
        throw std::domain_error("accumulated_area: t outside the pulse window");
    const double k = std::sqrt(two_ln2);
    return 0.5 * pulse.area *
           (std::erf(k * t / pulse.tau) - std::erf(k * pulse.t_start / pulse.tau));
}

StateVector StateVector::from_amplitudes(Vector amps) {
    if (amps.size() == 0) throw config_error("state vector: empty amplitude vector");
    const double norm = amps.norm();
    if (std::abs(norm - 1.0) > norm_tol)
        throw config_error("state vector: norm deviates from 1 by " + std::to_string(std::abs(norm - 1.0)));
    return StateVector(std::move(amps));
}

StateVector ground_basis_state(const SystemSpec& system, int j) {
    if (j < 1 || j > system.n_i) throw config_error("ground basis index out of range");
    Vector v = Vector::Zero(system.dim());
    v(j - 1) = 1.0;
    return StateVector::from_amplitudes(std::move(v));
}

StateVector excited_basis_state(const SystemSpec& system, int k) {
    if (k < 1 || k > system.n_f) throw config_error("excited basis index out of range");
    Vector v = Vector::Zero(system.dim());
    v(system.n_i + k - 1) = 1.0;
    return StateVector::from_amplitudes(std::move(v));
}

StateVector uniform_ground_state(const SystemSpec& system) {
    Vector v = Vector::Zero(system.dim());
    v.head(system.n_i).setConstant(1.0 / std::sqrt(double(system.n_i)));
    return StateVector::from_amplitudes(std::move(v));
}

TimeGrid TimeGrid::from_step(double t_start, double t_end, double dt) {
    if (dt <= 0.0) throw config_error("dt: must be > 0, got " + std::to_string(dt));
    if (t_end <= t_start) throw config_error("t_start/t_end: need t_start < t_end");
    const double span = t_end - t_start;
    int n = static_cast<int>(std::ceil(span / dt - 1e-9));
    if (n < 1) n = 1;
    TimeGrid grid;
    grid.t_start = t_start;
    grid.t_end = t_end;
    grid.dt = dt;
    grid.n_steps = n;
    grid.last_step_shortened = grid.step_size(n - 1) < dt * (1.0 - 1e-9);
    return grid;
}

} // namespace bpi
