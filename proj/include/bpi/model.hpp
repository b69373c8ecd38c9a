#ifndef BPI_MODEL_HPP
#define BPI_MODEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "bpi/errors.hpp"

namespace bpi {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Two manifolds of equally spaced sublevels, all ground-excited pairs
// dipole-coupled with equal strength. Energies in units of 1/tau, hbar = 1.
struct SystemSpec {
    int n_i = 1;             // ground-manifold sublevels
    int n_f = 1;             // excited-manifold sublevels
    double de_i = 0.0;       // spacing between adjacent ground sublevels
    double de_f = 0.0;       // spacing between adjacent excited sublevels
    double detuning0 = 0.0;  // carrier detuning from the g1 -> e1 transition

    int dim() const { return n_i + n_f; }
    bool degenerate() const { return de_i == 0.0 && de_f == 0.0 && detuning0 == 0.0; }

    void validate() const;
};

// Gaussian pulse parameterized by its total area. The envelope is
// Omega(t) = Omega0 * exp(-2 ln2 (t/tau)^2), peak at t = 0, so the intensity
// FWHM equals tau. Omega0 is derived from the area, never set directly.
struct PulseSpec {
    double area = 0.0;     // radians, integral of Omega over the window
    double tau = 1.0;      // Gaussian width, the time unit
    double t_start = -4.0;
    double t_end = 4.0;

    double peak_rabi() const;  // Omega0
    void validate() const;
};

// Rabi frequency Omega(t) >= 0.
double envelope(const PulseSpec& pulse, double t);

// Running pulse area theta(t), integrated from t_start. Closed form via erf,
// exact to machine precision; throws std::domain_error outside the window.
double accumulated_area(const PulseSpec& pulse, double t);

// Complex amplitudes over the ordered basis g1..gNi, e1..eNf, unit norm.
class StateVector {
  public:
    static constexpr double norm_tol = 1e-10;

    static StateVector from_amplitudes(Vector amps);

    const Vector& amplitudes() const { return amps_; }
    int dim() const { return static_cast<int>(amps_.size()); }

  private:
    explicit StateVector(Vector amps) : amps_(std::move(amps)) {}
    Vector amps_;
};

// |g,j>, 1-based j.
StateVector ground_basis_state(const SystemSpec& system, int j);
// |e,k>, 1-based k.
StateVector excited_basis_state(const SystemSpec& system, int k);
// Equal in-phase amplitudes 1/sqrt(n_i) on every ground sublevel.
StateVector uniform_ground_state(const SystemSpec& system);

// Fixed-step integration grid over [t_start, t_end]. All steps have width dt
// except possibly the last, shortened so the grid lands exactly on t_end.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    double dt = 0.0;
    int n_steps = 0;
    bool last_step_shortened = false;

    static TimeGrid from_step(double t_start, double t_end, double dt);

    double step_size(int i) const {
        return (i == n_steps - 1) ? t_end - t_start - (n_steps - 1) * dt : dt;
    }
    double time(int i) const {
        return (i >= n_steps) ? t_end : t_start + i * dt;
    }
};

} // namespace bpi

#endif
