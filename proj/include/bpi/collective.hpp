#ifndef BPI_COLLECTIVE_HPP
#define BPI_COLLECTIVE_HPP

#include <array>

#include "bpi/model.hpp"

namespace bpi {

// Collective three-state reduction of the degenerate sublevel system:
// |I> is the uniform in-phase superposition of the n_p initially populated
// ground sublevels, |E> the uniform excited superposition, |R> the uniform
// superposition of the n_u = n_i - n_p remaining ground sublevels.
struct CollectiveSpec {
    int n_i = 2;
    int n_f = 1;
    int n_p = 1;

    int n_u() const { return n_i - n_p; }
    void validate() const;
};

// Amplitudes on |I>, |E>, |R>.
struct CollectiveState {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
    Complex c{0.0, 0.0};

    void validate() const;  // |a|^2 + |b|^2 + |c|^2 = 1 within 1e-10
};

// The Lambda-system matrix in the (|I>, |E>, |R>) basis:
// -(sqrt(n_f) omega / 2) (sqrt(n_p) |I><E| + sqrt(n_u) |E><R| + h.c.)
Matrix effective_hamiltonian(const CollectiveSpec& spec, double omega);

// {-w, 0, +w} with w = sqrt(n_f n_i) omega / 2, sorted ascending. Depends on
// n_p only through n_i.
std::array<double, 3> dressed_eigenvalues(const CollectiveSpec& spec, double omega);

// Exact degenerate Lambda-model populations starting from psi = |I>, as a
// function of the accumulated area theta. area_extended = sqrt(n_i n_f) theta.
// p_e_alt is the alternative closed form with prefactor
// n_p n_i / (n_p^2 + n_u^2); it disagrees with the exact solution away from
// n_p = n_i and is reported for comparison, never used as ground truth.
struct ClosedFormPopulations {
    double p_i = 1.0;
    double p_e = 0.0;
    double p_r = 0.0;
    double p_e_alt = 0.0;
    double area_extended = 0.0;
};

ClosedFormPopulations closed_form_populations(const CollectiveSpec& spec, double theta);

// Lift collective amplitudes to the full n_i + n_f level basis.
StateVector collective_embed(const CollectiveSpec& spec, const CollectiveState& cs);

} // namespace bpi

#endif
