#include "bpi/collective.hpp"

#include <cmath>
#include <string>

namespace bpi {

void CollectiveSpec::validate() const {
    if (n_i < 1) throw config_error("ni: must be >= 1, got " + std::to_string(n_i));
    if (n_f < 1) throw config_error("nf: must be >= 1, got " + std::to_string(n_f));
    if (n_p < 1 || n_p > n_i)
        throw config_error("np: must satisfy 1 <= np <= ni, got " + std::to_string(n_p));
}

void CollectiveState::validate() const {
    const double n2 = std::norm(a) + std::norm(b) + std::norm(c);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-10)
        throw config_error("collective state: norm deviates from 1 by " +
                           std::to_string(std::abs(std::sqrt(n2) - 1.0)));
}

Matrix effective_hamiltonian(const CollectiveSpec& spec, double omega) {
    spec.validate();
    if (omega < 0.0) throw config_error("omega: must be >= 0");
    const double pref = -0.5 * std::sqrt(double(spec.n_f)) * omega;
    Matrix h = Matrix::Zero(3, 3);
    h(0, 1) = h(1, 0) = pref * std::sqrt(double(spec.n_p));
    h(1, 2) = h(2, 1) = pref * std::sqrt(double(spec.n_u()));
    return h;
}

std::array<double, 3> dressed_eigenvalues(const CollectiveSpec& spec, double omega) {
    spec.validate();
    if (omega < 0.0) throw config_error("omega: must be >= 0");
    const double w = 0.5 * std::sqrt(double(spec.n_f) * double(spec.n_i)) * omega;
    return {-w, 0.0, w};
}

ClosedFormPopulations closed_form_populations(const CollectiveSpec& spec, double theta) {
    spec.validate();
    if (theta < 0.0) throw config_error("theta: must be >= 0");
    const double ni = spec.n_i, nf = spec.n_f, np = spec.n_p, nu = spec.n_u();

    ClosedFormPopulations out;
    out.area_extended = std::sqrt(ni * nf) * theta;
    const double s_half = std::sin(0.5 * out.area_extended);
    const double s_quarter = std::sin(0.25 * out.area_extended);
    out.p_e = (np / ni) * s_half * s_half;
    out.p_r = 4.0 * (np * nu / (ni * ni)) * std::pow(s_quarter, 4);
    out.p_i = 1.0 - out.p_e - out.p_r;
    out.p_e_alt = (np * ni / (np * np + nu * nu)) * s_half * s_half;
    return out;
}

StateVector collective_embed(const CollectiveSpec& spec, const CollectiveState& cs) {
    spec.validate();
    cs.validate();
    if (spec.n_u() == 0 && cs.c != Complex(0.0, 0.0))
        throw std::domain_error("collective_embed: nonzero |R> amplitude but no unpopulated sublevels (np = ni)");

    Vector v = Vector::Zero(spec.n_i + spec.n_f);
    const Complex a_per = cs.a / std::sqrt(double(spec.n_p));
    for (int j = 0; j < spec.n_p; ++j) v(j) = a_per;
    if (spec.n_u() > 0) {
        const Complex c_per = cs.c / std::sqrt(double(spec.n_u()));
        for (int j = spec.n_p; j < spec.n_i; ++j) v(j) = c_per;
    }
    const Complex b_per = cs.b / std::sqrt(double(spec.n_f));
    for (int k = 0; k < spec.n_f; ++k) v(spec.n_i + k) = b_per;
    return StateVector::from_amplitudes(std::move(v));
}

} // namespace bpi
