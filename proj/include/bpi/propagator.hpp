#ifndef BPI_PROPAGATOR_HPP
#define BPI_PROPAGATOR_HPP

#include <utility>
#include <vector>

#include "bpi/model.hpp"

namespace bpi {

// Rotating-frame Hamiltonian H(t) = diag - (Omega(t)/2) * K, where K couples
// every ground sublevel to every excited sublevel with unit strength and
// there are no intra-manifold couplings. The bipartite block has rank one,
// so H*psi is evaluated in O(n) from the two manifold amplitude sums.
struct HamiltonianSkeleton {
    int n_i = 0;
    int n_f = 0;
    Eigen::VectorXd diag;

    static HamiltonianSkeleton build(const SystemSpec& system);

    // y = H(omega) * x
    void apply(double omega, const Vector& x, Vector& y) const;

    // Full matrix, for tests and small-system diagnostics.
    Matrix dense(double omega) const;
};

// Per-level and per-manifold populations at every recorded time.
struct PopulationTrace {
    std::vector<double> times;
    Eigen::MatrixXd per_level;   // (n_records) x (n_i + n_f)
    Eigen::VectorXd p_ground;
    Eigen::VectorXd p_excited;
    double max_norm_deviation = 0.0;  // max | ||psi(t)|| - ||psi(0)|| |

    int n_records() const { return static_cast<int>(times.size()); }
};

// Classical fixed-step RK4 on i d/dt psi = H(t) psi. The norm is monitored,
// never renormalized; drift beyond 1e-8 raises accuracy_error.
// Linear in psi0; unit input norm is not assumed here.
Vector propagate_vector(const SystemSpec& system, const PulseSpec& pulse,
                        const TimeGrid& grid, const Vector& psi0,
                        PopulationTrace* trace = nullptr);

std::pair<StateVector, PopulationTrace> propagate(const SystemSpec& system,
                                                  const PulseSpec& pulse,
                                                  const TimeGrid& grid,
                                                  const StateVector& psi0);

// Independent oracle for exactly degenerate systems: with diag = 0 the
// Hamiltonians at different times commute, so the propagator is
// exp(-i * H0 * theta(t)) with Omega factored out of H0. Evaluated by
// eigendecomposition of the constant coupling matrix.
StateVector propagate_degenerate_oracle(const SystemSpec& system,
                                        const PulseSpec& pulse, double t,
                                        const StateVector& psi0);

} // namespace bpi

#endif
