#include "bpi/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bpi/parallel.hpp"

namespace bpi {

void SweepSpec::validate() const {
    system.validate();
    subspace.validate(system.n_i);
    if (area_step <= 0.0) throw config_error("area_step: must be > 0");
    if (area_min < 0.0) throw config_error("area_min: must be >= 0");
    if (area_min > area_max) throw config_error("area_min/area_max: need area_min <= area_max");
    if (tau <= 0.0) throw config_error("tau: must be > 0");
}

std::vector<double> SweepSpec::scan_values() const {
    const int n = static_cast<int>(std::floor((area_max - area_min) / area_step + 1e-9)) + 1;
    std::vector<double> values(n);
    for (int i = 0; i < n; ++i) values[i] = area_min + i * area_step;
    return values;
}

namespace {

struct UnionColumns {
    std::vector<int> indices;           // sorted union of subspace indices and {1}
    std::vector<int> position;          // position[i] = column of ground index i+1, or -1
};

UnionColumns make_union(const std::vector<ControlSubspace>& subspaces, int n_i) {
    std::set<int> merged{1};  // |g,1> always propagated, for the bare yield
    for (const auto& s : subspaces) merged.insert(s.indices.begin(), s.indices.end());
    UnionColumns u;
    u.indices.assign(merged.begin(), merged.end());
    u.position.assign(n_i, -1);
    for (size_t c = 0; c < u.indices.size(); ++c) u.position[u.indices[c] - 1] = static_cast<int>(c);
    return u;
}

Matrix slice_columns(const Matrix& cols, const UnionColumns& u, const ControlSubspace& subspace) {
    Matrix m(cols.rows(), subspace.size());
    for (int k = 0; k < subspace.size(); ++k)
        m.col(k) = cols.col(u.position[subspace.indices[k] - 1]);
    return m;
}

} // namespace

std::vector<SweepRow> sweep_area(const SweepSpec& spec) {
    spec.validate();
    const double scale = std::sqrt(double(spec.system.n_i) * double(spec.system.n_f));
    const std::vector<double> values = spec.scan_values();
    const UnionColumns u = make_union({spec.subspace}, spec.system.n_i);

    std::vector<SweepRow> rows(values.size());
    parallel_for(static_cast<int>(values.size()), spec.workers, [&](int i) {
        SweepRow& row = rows[i];
        row.area = spec.scan_extended ? values[i] / scale : values[i];
        row.area_extended = scale * row.area;

        PulseSpec pulse{row.area, spec.tau, spec.grid.t_start, spec.grid.t_end};
        const Matrix cols = transfer_columns(spec.system, pulse, spec.grid, u.indices);
        const YieldSpectrum ys = solve_secular(
            yield_matrix(slice_columns(cols, u, spec.subspace)), row.area, row.area_extended);

        row.chi_max = ys.eigenvalues(0);
        row.chi_min = ys.eigenvalues(ys.eigenvalues.size() - 1);
        row.bare = cols.col(u.position[0]).squaredNorm();
        if (spec.record_eigenvalues)
            row.eigenvalues.assign(ys.eigenvalues.data(),
                                   ys.eigenvalues.data() + ys.eigenvalues.size());
    });
    return rows;
}

std::vector<SweepMinimum> sweep_minima(const std::vector<SweepRow>& rows) {
    std::vector<SweepMinimum> minima;
    for (size_t i = 1; i + 1 < rows.size(); ++i) {
        if (rows[i].chi_max < rows[i - 1].chi_max && rows[i].chi_max <= rows[i + 1].chi_max)
            minima.push_back({rows[i].area_extended, rows[i].chi_max});
    }
    return minima;
}

SubspaceSweepTable sweep_subspace(const SweepSpec& spec,
                                  const std::vector<ControlSubspace>& subspaces) {
    SweepSpec checked = spec;
    if (subspaces.empty()) throw config_error("subspaces: need at least one subspace");
    checked.subspace = subspaces.front();
    checked.validate();
    for (const auto& s : subspaces) s.validate(spec.system.n_i);

    const double scale = std::sqrt(double(spec.system.n_i) * double(spec.system.n_f));
    const std::vector<double> values = spec.scan_values();
    const UnionColumns u = make_union(subspaces, spec.system.n_i);

    SubspaceSweepTable table;
    table.subspaces = subspaces;
    table.areas.resize(values.size());
    table.areas_extended.resize(values.size());
    table.chi_max.resize(values.size(), subspaces.size());

    parallel_for(static_cast<int>(values.size()), spec.workers, [&](int i) {
        const double area = spec.scan_extended ? values[i] / scale : values[i];
        table.areas[i] = area;
        table.areas_extended[i] = scale * area;

        PulseSpec pulse{area, spec.tau, spec.grid.t_start, spec.grid.t_end};
        const Matrix cols = transfer_columns(spec.system, pulse, spec.grid, u.indices);
        for (size_t s = 0; s < subspaces.size(); ++s) {
            const YieldSpectrum ys = solve_secular(
                yield_matrix(slice_columns(cols, u, subspaces[s])));
            table.chi_max(i, s) = ys.eigenvalues(0);
        }
    });
    return table;
}

} // namespace bpi
