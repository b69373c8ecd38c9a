#include "bpi/emit.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

namespace bpi {

std::string fmt_csv(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

void write_out(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        if (!std::cout) throw io_error("failed writing to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw io_error("failed writing '" + path + "'");
}

} // namespace

void emit_trace(const PopulationTrace& trace, int n_i, int n_f,
                const std::string& path, int stride) {
    if (stride < 1) throw config_error("stride: must be >= 1");
    std::string s = "t,p_g_total,p_e_total";
    for (int j = 1; j <= n_i; ++j) s += ",p_g_" + std::to_string(j);
    for (int k = 1; k <= n_f; ++k) s += ",p_e_" + std::to_string(k);
    s += "\n";

    auto write_row = [&](int row) {
        s += fmt_csv(trace.times[row]);
        s += ',';
        s += fmt_csv(trace.p_ground(row));
        s += ',';
        s += fmt_csv(trace.p_excited(row));
        for (int c = 0; c < n_i + n_f; ++c) {
            s += ',';
            s += fmt_csv(trace.per_level(row, c));
        }
        s += '\n';
    };
    const int n = trace.n_records();
    for (int i = 0; i < n; i += stride) write_row(i);
    if (n > 0 && (n - 1) % stride != 0) write_row(n - 1);
    write_out(s, path);
}

void emit_spectrum(const YieldSpectrum& ys, const std::string& path) {
    nlohmann::json doc;
    doc["area"] = ys.area;
    doc["area_extended"] = ys.area_extended;
    doc["eigenvalues"] = std::vector<double>(
        ys.eigenvalues.data(), ys.eigenvalues.data() + ys.eigenvalues.size());
    nlohmann::json vecs = nlohmann::json::array();
    for (int c = 0; c < ys.eigenvectors.cols(); ++c) {
        nlohmann::json vec = nlohmann::json::array();
        for (int r = 0; r < ys.eigenvectors.rows(); ++r)
            vec.push_back({ys.eigenvectors(r, c).real(), ys.eigenvectors(r, c).imag()});
        vecs.push_back(std::move(vec));
    }
    doc["eigenvectors"] = std::move(vecs);
    write_out(doc.dump(2) + "\n", path);
}

void emit_sweep(const std::vector<SweepRow>& rows, const std::string& path) {
    std::string s = "area,area_extended,chi_max,chi_min,bare";
    const size_t n_eig = rows.empty() ? 0 : rows.front().eigenvalues.size();
    for (size_t k = 1; k <= n_eig; ++k) s += ",chi_" + std::to_string(k);
    s += "\n";
    for (const SweepRow& row : rows) {
        s += fmt_csv(row.area) + ',' + fmt_csv(row.area_extended) + ',' +
             fmt_csv(row.chi_max) + ',' + fmt_csv(row.chi_min) + ',' + fmt_csv(row.bare);
        for (double chi : row.eigenvalues) {
            s += ',';
            s += fmt_csv(chi);
        }
        s += '\n';
    }
    write_out(s, path);
}

void emit_minima(const std::vector<SweepMinimum>& minima, const std::string& path) {
    std::string s = "area_extended,chi_max\n";
    for (const SweepMinimum& m : minima)
        s += fmt_csv(m.area_extended) + ',' + fmt_csv(m.chi_max) + '\n';
    write_out(s, path);
}

void emit_subspace_table(const SubspaceSweepTable& table, const std::string& path) {
    std::string s;
    for (const ControlSubspace& sub : table.subspaces) {
        s += "# " + sub.label() + " =";
        for (int idx : sub.indices) s += ' ' + std::to_string(idx);
        s += '\n';
    }
    s += "area,area_extended";
    for (const ControlSubspace& sub : table.subspaces) s += ",chi_" + sub.label();
    s += '\n';
    for (size_t i = 0; i < table.areas.size(); ++i) {
        s += fmt_csv(table.areas[i]) + ',' + fmt_csv(table.areas_extended[i]);
        for (int c = 0; c < table.chi_max.cols(); ++c) {
            s += ',';
            s += fmt_csv(table.chi_max(static_cast<int>(i), c));
        }
        s += '\n';
    }
    write_out(s, path);
}

} // namespace bpi
