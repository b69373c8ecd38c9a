#ifndef BPI_SWEEP_HPP
#define BPI_SWEEP_HPP

#include <vector>

#include "bpi/model.hpp"
#include "bpi/optimizer.hpp"

namespace bpi {

// Scan over pulse area. When scan_extended is set the grid values are
// extended areas A_e = sqrt(n_i n_f) A; otherwise plain pulse areas A.
struct SweepSpec {
    double area_min = 0.0;
    double area_max = 0.0;
    double area_step = 0.0;
    bool scan_extended = false;
    SystemSpec system;
    ControlSubspace subspace;
    double tau = 1.0;
    TimeGrid grid;
    bool record_eigenvalues = false;
    int workers = 0;  // 0 = default_workers(), 1 = serial

    void validate() const;
    std::vector<double> scan_values() const;
};

struct SweepRow {
    double area = 0.0;
    double area_extended = 0.0;
    double chi_max = 0.0;
    double chi_min = 0.0;
    double bare = 0.0;
    std::vector<double> eigenvalues;  // full yield list, filled on request
};

// One row per grid point, ordered by area. |g,1> is always propagated along
// with the subspace columns so every row carries the bare yield.
std::vector<SweepRow> sweep_area(const SweepSpec& spec);

struct SweepMinimum {
    double area_extended = 0.0;
    double chi_max = 0.0;
};

// Interior local minima of chi_max by three-point comparison; ties break
// toward smaller area. Needs at least 3 rows to report anything.
std::vector<SweepMinimum> sweep_minima(const std::vector<SweepRow>& rows);

// chi_max per (area, subspace). Each area point propagates the union of all
// subspace columns once and slices the yield matrix per subspace.
struct SubspaceSweepTable {
    std::vector<ControlSubspace> subspaces;
    std::vector<double> areas;
    std::vector<double> areas_extended;
    Eigen::MatrixXd chi_max;  // n_areas x n_subspaces
};

// Uses spec's scan grid, system, tau and time grid; spec.subspace is ignored
// in favor of the explicit list.
SubspaceSweepTable sweep_subspace(const SweepSpec& spec,
                                  const std::vector<ControlSubspace>& subspaces);

} // namespace bpi

#endif
