#ifndef BPI_OPTIMIZER_HPP
#define BPI_OPTIMIZER_HPP

#include <string>
#include <vector>

#include "bpi/model.hpp"
#include "bpi/propagator.hpp"

namespace bpi {

// Ground sublevels over which the initial state may be engineered.
// Indices are 1-based and strictly increasing.
struct ControlSubspace {
    std::vector<int> indices;

    static ControlSubspace prefix(int n_c);       // 1..n_c
    static ControlSubspace odd_levels(int n_i);   // 1,3,5,...
    static ControlSubspace from_indices(std::vector<int> idx);

    int size() const { return static_cast<int>(indices.size()); }
    void validate(int n_i) const;
    std::string label() const;  // "nc<k>" for a contiguous prefix, else index list
};

// Eigen-decomposition of the yield matrix restricted to a control subspace.
// eigenvalues are the transfer yields chi, sorted descending and clamped to
// [0,1]; the matching eigenvector columns are the optimal initial
// superpositions over the subspace basis.
struct YieldSpectrum {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;
    double area = 0.0;
    double area_extended = 0.0;
};

// chi < transparency_tol counts as a zero-yield (transparent) direction;
// one order above the integrator accuracy.
inline constexpr double transparency_tol = 1e-8;

// Excited-manifold amplitudes at t_end of each propagated subspace basis
// state: column k holds <e,m| U |g, indices(k)>, shape n_f x n_c.
Matrix transfer_matrix(const SystemSpec& system, const PulseSpec& pulse,
                       const TimeGrid& grid, const ControlSubspace& subspace);

// Same, for an arbitrary 1-based ground index list (no subspace checks beyond
// range). Lets callers propagate a union of subspaces once and slice.
Matrix transfer_columns(const SystemSpec& system, const PulseSpec& pulse,
                        const TimeGrid& grid, const std::vector<int>& indices);

// F = M^H M: Hermitian PSD, F_jk sums the transfer amplitudes over the
// excited sublevels. The quadratic form v^H F v is the final excited
// population when starting from the subspace superposition v.
Matrix yield_matrix(const Matrix& m);

// Solves F psi = chi psi. Eigenvectors within a degenerate cluster (spread
// < 1e-9) are re-orthonormalized against the subspace basis order, and every
// eigenvector's first largest-magnitude component is rotated real positive,
// so the output is deterministic.
YieldSpectrum solve_secular(const Matrix& f, double area = 0.0, double area_extended = 0.0);

// transfer_matrix + yield_matrix + solve_secular, with the pulse areas
// stamped into the result.
YieldSpectrum optimal_spectrum(const SystemSpec& system, const PulseSpec& pulse,
                               const TimeGrid& grid, const ControlSubspace& subspace);

// Final excited-manifold population starting from |g,1>.
double bare_yield(const SystemSpec& system, const PulseSpec& pulse, const TimeGrid& grid);

// Zero-yield eigenvectors embedded into the full level basis. When no
// eigenvalue falls below transparency_tol (non-degenerate structures), the
// lowest-chi eigenvector is returned instead with exact = false.
struct TransparencyBasis {
    std::vector<StateVector> states;
    std::vector<double> yields;
    bool exact = false;
};

TransparencyBasis transparency_basis(const SystemSpec& system, const PulseSpec& pulse,
                                     const TimeGrid& grid, const ControlSubspace& subspace);

// Lift a subspace coefficient vector to the full n_i + n_f basis.
Vector embed_subspace_vector(const SystemSpec& system, const ControlSubspace& subspace,
                             const Vector& coeffs);

} // namespace bpi

#endif
