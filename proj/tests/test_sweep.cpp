#include <doctest.h>

#include <cmath>

#include "bpi/sweep.hpp"

using namespace bpi;

namespace {

SweepSpec base_spec(int n, double de, double step_pi = 0.25, double max_pi = 4.0) {
    SweepSpec spec;
    spec.area_min = 0.0;
    spec.area_max = max_pi * pi;
    spec.area_step = step_pi * pi;
    spec.scan_extended = true;
    spec.system = SystemSpec{n, n, de, de, 0.0};
    spec.subspace = ControlSubspace::prefix(n);
    spec.tau = 1.0;
    spec.grid = TimeGrid::from_step(-4.0, 4.0, 1.0 / 2000.0);
    spec.workers = 1;
    return spec;
}

} // namespace

TEST_CASE("sweep validation") {
    SweepSpec bad = base_spec(2, 0.0);
    bad.area_step = 0.0;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = base_spec(2, 0.0);
    bad.area_min = 2.0;
    bad.area_max = 1.0;
    CHECK_THROWS_AS(bad.validate(), config_error);
    CHECK(base_spec(2, 0.0).scan_values().size() == 17);
}

TEST_CASE("degenerate sweep follows sin^2(area_extended/2) and peaks at odd pi") {
    const SweepSpec spec = base_spec(3, 0.0);
    const auto rows = sweep_area(spec);
    REQUIRE(rows.size() == 17);
    for (const SweepRow& row : rows) {
        const double expect = std::pow(std::sin(0.5 * row.area_extended), 2);
        CHECK(std::abs(row.chi_max - expect) < 1e-6);
        CHECK(row.area_extended == doctest::Approx(3.0 * row.area).epsilon(1e-12));
    }
    CHECK(rows[4].chi_max == doctest::Approx(1.0).epsilon(1e-6));   // A_e = pi
    CHECK(rows[12].chi_max == doctest::Approx(1.0).epsilon(1e-6));  // A_e = 3 pi
    CHECK(rows[0].chi_max == doctest::Approx(0.0));
    CHECK(rows[0].chi_min == doctest::Approx(0.0));
    CHECK(rows[0].bare == doctest::Approx(0.0));
}

TEST_CASE("rows keep the bare yield between the extreme yields") {
    const SweepSpec spec = base_spec(4, 0.4);
    for (const SweepRow& row : sweep_area(spec)) {
        CHECK(row.chi_min <= row.bare + 1e-9);
        CHECK(row.bare <= row.chi_max + 1e-9);
    }
}

TEST_CASE("finite spacing keeps the optimized minima above zero") {
    SweepSpec spec = base_spec(5, 0.4, 0.125);
    const auto rows = sweep_area(spec);
    double min_chi = 1.0;
    for (size_t i = 1; i < rows.size(); ++i) min_chi = std::min(min_chi, rows[i].chi_max);
    CHECK(min_chi > 0.0);
    CHECK(min_chi < 1.0);
}

TEST_CASE("eigenvalue recording fills one chi per subspace dimension") {
    SweepSpec spec = base_spec(3, 0.4, 1.0, 2.0);
    spec.record_eigenvalues = true;
    for (const SweepRow& row : sweep_area(spec)) {
        REQUIRE(row.eigenvalues.size() == 3);
        CHECK(row.eigenvalues.front() == doctest::Approx(row.chi_max));
        CHECK(row.eigenvalues.back() == doctest::Approx(row.chi_min));
    }
}

TEST_CASE("sweep minima: monotone rows give nothing, oscillating rows give the dips") {
    std::vector<SweepRow> monotone(5);
    for (int i = 0; i < 5; ++i) {
        monotone[i].area_extended = i;
        monotone[i].chi_max = 0.2 * i;
    }
    CHECK(sweep_minima(monotone).empty());
    CHECK(sweep_minima({monotone[0], monotone[1]}).empty());

    const auto rows = sweep_area(base_spec(2, 0.0, 0.125, 4.5));
    const auto minima = sweep_minima(rows);
    REQUIRE(minima.size() == 2);
    CHECK(minima[0].area_extended == doctest::Approx(2.0 * pi).epsilon(1e-12));
    CHECK(minima[1].area_extended == doctest::Approx(4.0 * pi).epsilon(1e-12));
    CHECK(minima[0].chi_max < 1e-6);
}

TEST_CASE("sweep minima: plateau ties break toward smaller area") {
    std::vector<SweepRow> rows(5);
    const double chi[5] = {3.0, 1.0, 1.0, 2.0, 3.0};
    for (int i = 0; i < 5; ++i) {
        rows[i].area_extended = i;
        rows[i].chi_max = chi[i];
    }
    const auto minima = sweep_minima(rows);
    REQUIRE(minima.size() == 1);
    CHECK(minima[0].area_extended == 1.0);
}

TEST_CASE("sweeps are schedule independent: serial equals parallel bit for bit") {
    SweepSpec serial = base_spec(3, 0.4, 0.5);
    SweepSpec parallel = serial;
    parallel.workers = 4;
    const auto a = sweep_area(serial);
    const auto b = sweep_area(parallel);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].area == b[i].area);
        CHECK(a[i].chi_max == b[i].chi_max);
        CHECK(a[i].chi_min == b[i].chi_min);
        CHECK(a[i].bare == b[i].bare);
    }
    const auto again = sweep_area(serial);
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].chi_max == again[i].chi_max);
}

TEST_CASE("subspace sweep: single-level control equals the bare yield") {
    SweepSpec spec = base_spec(4, 0.4, 0.5, 2.0);
    const auto rows = sweep_area(spec);
    const auto table = sweep_subspace(spec, {ControlSubspace::prefix(1)});
    REQUIRE(table.areas.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        CHECK(table.chi_max(i, 0) == doctest::Approx(rows[i].bare).epsilon(1e-12));
}

TEST_CASE("subspace sweep: nested subspaces are pointwise monotone, masks cost yield") {
    SweepSpec spec = base_spec(4, 0.4, 0.5, 3.0);
    const std::vector<ControlSubspace> subs = {
        ControlSubspace::prefix(1), ControlSubspace::prefix(2), ControlSubspace::prefix(4),
        ControlSubspace::odd_levels(4)};
    const auto table = sweep_subspace(spec, subs);
    for (size_t i = 0; i < table.areas.size(); ++i) {
        CHECK(table.chi_max(i, 0) <= table.chi_max(i, 1) + 1e-9);
        CHECK(table.chi_max(i, 1) <= table.chi_max(i, 2) + 1e-9);
        // the odd mask {1,3} can never beat full control
        CHECK(table.chi_max(i, 3) <= table.chi_max(i, 2) + 1e-9);
    }
}

TEST_CASE("subspace sweep: degenerate closed form reappears for full control") {
    SweepSpec spec = base_spec(3, 0.0, 0.5, 2.0);
    const auto table = sweep_subspace(spec, {ControlSubspace::prefix(3)});
    for (size_t i = 0; i < table.areas.size(); ++i)
        CHECK(std::abs(table.chi_max(i, 0) -
                       std::pow(std::sin(0.5 * table.areas_extended[i]), 2)) < 1e-6);
}
