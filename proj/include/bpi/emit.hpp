#ifndef BPI_EMIT_HPP
#define BPI_EMIT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "bpi/optimizer.hpp"
#include "bpi/propagator.hpp"
#include "bpi/sweep.hpp"

namespace bpi {

// All emitters write byte-identical files for identical inputs; floating
// values are printed with 12 significant digits. An empty path writes to
// stdout; file failures raise io_error naming the path.

// CSV: t,p_g_total,p_e_total,p_g_1..p_g_Ni,p_e_1..p_e_Nf. stride thins the
// rows; the final row is always kept.
void emit_trace(const PopulationTrace& trace, int n_i, int n_f,
                const std::string& path, int stride = 1);

// JSON: area, area_extended, eigenvalues (descending), eigenvectors as
// arrays of [re, im] pairs under the fixed phase convention.
void emit_spectrum(const YieldSpectrum& ys, const std::string& path);

// CSV: area,area_extended,chi_max,chi_min,bare plus one chi_<k> column per
// subspace eigenvalue when the rows carry them.
void emit_sweep(const std::vector<SweepRow>& rows, const std::string& path);

// CSV: area_extended,chi_max of the detected local minima.
void emit_minima(const std::vector<SweepMinimum>& minima, const std::string& path);

// CSV: area,area_extended,chi_<label> per subspace; the index sets are
// spelled out in leading comment lines.
void emit_subspace_table(const SubspaceSweepTable& table, const std::string& path);

// 12-significant-digit formatting used by every CSV column.
std::string fmt_csv(double v);

} // namespace bpi

#endif
