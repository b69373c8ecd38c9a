#include "bpi/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace bpi {

ControlSubspace ControlSubspace::prefix(int n_c) {
    if (n_c < 1) throw config_error("nc: must be >= 1, got " + std::to_string(n_c));
    std::vector<int> idx(n_c);
    for (int i = 0; i < n_c; ++i) idx[i] = i + 1;
    return ControlSubspace{std::move(idx)};
}

ControlSubspace ControlSubspace::odd_levels(int n_i) {
    std::vector<int> idx;
    for (int i = 1; i <= n_i; i += 2) idx.push_back(i);
    return ControlSubspace{std::move(idx)};
}

ControlSubspace ControlSubspace::from_indices(std::vector<int> idx) {
    return ControlSubspace{std::move(idx)};
}

void ControlSubspace::validate(int n_i) const {
    if (indices.empty()) throw config_error("subspace: must contain at least one index");
    int prev = 0;
    for (int i : indices) {
        if (i <= prev)
            throw config_error("subspace: indices must be strictly increasing, saw " +
                               std::to_string(i) + " after " + std::to_string(prev));
        if (i > n_i)
            throw config_error("subspace: index " + std::to_string(i) +
                               " exceeds the ground manifold size " + std::to_string(n_i));
        prev = i;
    }
}

std::string ControlSubspace::label() const {
    bool is_prefix = true;
    for (int i = 0; i < size(); ++i)
        if (indices[i] != i + 1) { is_prefix = false; break; }
    if (is_prefix) return "nc" + std::to_string(size());
    std::string s = "idx";
    for (int i = 0; i < size(); ++i)
        s += (i == 0 ? "" : "_") + std::to_string(indices[i]);
    return s;
}

Matrix transfer_columns(const SystemSpec& system, const PulseSpec& pulse,
                        const TimeGrid& grid, const std::vector<int>& indices) {
    Matrix m(system.n_f, indices.size());
    for (size_t k = 0; k < indices.size(); ++k) {
        const Vector final_state = propagate_vector(
            system, pulse, grid, ground_basis_state(system, indices[k]).amplitudes());
        m.col(k) = final_state.tail(system.n_f);
    }
    return m;
}

Matrix transfer_matrix(const SystemSpec& system, const PulseSpec& pulse,
                       const TimeGrid& grid, const ControlSubspace& subspace) {
    subspace.validate(system.n_i);
    return transfer_columns(system, pulse, grid, subspace.indices);
}

Matrix yield_matrix(const Matrix& m) {
    return m.adjoint() * m;
}

namespace {

// Deterministic orthonormal basis of a (near-)degenerate eigenspace: project
// the subspace basis vectors e_1, e_2, ... in order onto the eigenspace and
// Gram-Schmidt the sufficiently independent results.
void reorthonormalize_cluster(Matrix& vecs, int begin, int count) {
    const int n = static_cast<int>(vecs.rows());
    const Matrix cluster = vecs.middleCols(begin, count);
    const Matrix projector = cluster * cluster.adjoint();

    Matrix fresh(n, count);
    int filled = 0;
    for (int j = 0; j < n && filled < count; ++j) {
        Vector cand = projector.col(j);  // projector * e_j
        for (int s = 0; s < filled; ++s)
            cand -= fresh.col(s).dot(cand) * fresh.col(s);
        const double norm = cand.norm();
        if (norm > 1e-6) fresh.col(filled++) = cand / norm;
    }
    // the projections span the eigenspace, so this only triggers on
    // pathological rounding; keep the solver's vectors then
    if (filled == count) vecs.middleCols(begin, count) = fresh;
}

void fix_global_phase(Matrix& vecs) {
    for (int c = 0; c < vecs.cols(); ++c) {
        int lead = 0;
        double best = -1.0;
        for (int r = 0; r < vecs.rows(); ++r) {
            const double mag = std::abs(vecs(r, c));
            if (mag > best + 1e-12) { best = mag; lead = r; }
        }
        if (best > 0.0) vecs.col(c) *= std::conj(vecs(lead, c)) / best;
    }
}

} // namespace

YieldSpectrum solve_secular(const Matrix& f, double area, double area_extended) {
    if (f.rows() != f.cols()) throw std::domain_error("solve_secular: matrix must be square");
    const double herm_dev = (f - f.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-10)
        throw std::domain_error("solve_secular: input deviates from Hermitian by " +
                                std::to_string(herm_dev));

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (f + f.adjoint()));
    if (es.info() != Eigen::Success)
        throw accuracy_error("solve_secular: eigen-decomposition failed to converge");

    const int n = static_cast<int>(f.rows());
    YieldSpectrum ys;
    ys.area = area;
    ys.area_extended = area_extended;
    ys.eigenvalues.resize(n);
    ys.eigenvectors.resize(n, n);
    for (int i = 0; i < n; ++i) {  // ascending -> descending
        ys.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
        ys.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }

    for (int i = 0; i < n; ++i) {
        const double chi = ys.eigenvalues(i);
        if (chi < -1e-9 || chi > 1.0 + 1e-9)
            throw accuracy_error("solve_secular: yield " + std::to_string(chi) +
                                 " outside [0,1] beyond tolerance");
        ys.eigenvalues(i) = std::clamp(chi, 0.0, 1.0);
    }

    int begin = 0;
    while (begin < n) {
        int end = begin + 1;
        while (end < n && ys.eigenvalues(begin) - ys.eigenvalues(end) < 1e-9) ++end;
        if (end - begin > 1) reorthonormalize_cluster(ys.eigenvectors, begin, end - begin);
        begin = end;
    }
    fix_global_phase(ys.eigenvectors);
    return ys;
}

YieldSpectrum optimal_spectrum(const SystemSpec& system, const PulseSpec& pulse,
                               const TimeGrid& grid, const ControlSubspace& subspace) {
    const Matrix m = transfer_matrix(system, pulse, grid, subspace);
    const double area_ext = std::sqrt(double(system.n_i) * double(system.n_f)) * pulse.area;
    return solve_secular(yield_matrix(m), pulse.area, area_ext);
}

double bare_yield(const SystemSpec& system, const PulseSpec& pulse, const TimeGrid& grid) {
    const Vector final_state = propagate_vector(
        system, pulse, grid, ground_basis_state(system, 1).amplitudes());
    return final_state.tail(system.n_f).squaredNorm();
}

Vector embed_subspace_vector(const SystemSpec& system, const ControlSubspace& subspace,
                             const Vector& coeffs) {
    if (coeffs.size() != subspace.size())
        throw config_error("embed: coefficient count does not match subspace size");
    Vector v = Vector::Zero(system.dim());
    for (int k = 0; k < subspace.size(); ++k) v(subspace.indices[k] - 1) = coeffs(k);
    return v;
}

TransparencyBasis transparency_basis(const SystemSpec& system, const PulseSpec& pulse,
                                     const TimeGrid& grid, const ControlSubspace& subspace) {
    if (subspace.size() < 2)
        throw config_error("subspace: transparency search needs nc >= 2");
    const YieldSpectrum ys = optimal_spectrum(system, pulse, grid, subspace);

    TransparencyBasis tb;
    const int n = static_cast<int>(ys.eigenvalues.size());
    for (int i = 0; i < n; ++i) {
        if (ys.eigenvalues(i) < transparency_tol) {
            tb.states.push_back(StateVector::from_amplitudes(
                embed_subspace_vector(system, subspace, ys.eigenvectors.col(i))));
            tb.yields.push_back(ys.eigenvalues(i));
        }
    }
    tb.exact = !tb.states.empty();
    if (!tb.exact) {
        tb.states.push_back(StateVector::from_amplitudes(
            embed_subspace_vector(system, subspace, ys.eigenvectors.col(n - 1))));
        tb.yields.push_back(ys.eigenvalues(n - 1));
    }
    return tb;
}

} // namespace bpi
