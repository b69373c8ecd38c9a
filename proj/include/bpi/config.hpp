#ifndef BPI_CONFIG_HPP
#define BPI_CONFIG_HPP

#include <string>
#include <vector>

#include "bpi/model.hpp"
#include "bpi/optimizer.hpp"
#include "bpi/sweep.hpp"

namespace bpi {

enum class Command { propagate, optimize, sweep_area, sweep_subspace, oracle_check };

std::string command_name(Command cmd);
Command command_from_name(const std::string& name);

// Fully resolved run description. Built from a flat key = value config file
// and/or --key value flags (flags win); defaults are filled during parsing,
// so a parsed config echoes back to an equivalent document.
struct RunConfig {
    Command command = Command::propagate;

    int ni = 1;
    int nf = 1;
    double de = 0.4;
    double de_f = 0.4;
    double detuning0 = 0.0;

    double area = pi;
    double tau = 1.0;
    double t_start = -4.0;
    double t_end = 4.0;
    double dt = 1.0 / 2000.0;

    std::string psi0 = "g1";
    std::string subspace = "all";
    std::string subspaces = "all";  // ';'-separated list for sweep-subspace

    double area_min = 0.0;
    double area_max = 6.0 * pi;
    double area_step = 0.02 * pi;
    std::string area_unit = "extended";  // "area" or "extended"
    bool emit_eigenvalues = false;

    int stride = 1;
    bool serial = false;
    int trials = 20;
    unsigned long seed = 42;

    std::string out;         // empty = stdout
    std::string minima_out;  // optional second output for sweep-area

    bool operator==(const RunConfig&) const = default;
};

// args = argv[1..]: an optional leading command word, then --key value /
// --key=value flags. --config <path> loads a file whose entries are applied
// before any flag. Unknown keys, unparsable values and violated invariants
// raise config_error naming the key.
RunConfig parse_config(const std::vector<std::string>& args);

// Same key handling for an in-memory document (used by tests and --config).
RunConfig parse_config_text(const std::string& text);

// Flat key = value document that parses back to an identical RunConfig.
std::string echo_config(const RunConfig& cfg);

// Literal like "0.25", "5pi" or "-0.02pi"; the pi suffix multiplies by pi.
double parse_real(const std::string& key, const std::string& value);

// Derived core objects (each validates its invariants).
SystemSpec make_system(const RunConfig& cfg);
PulseSpec make_pulse(const RunConfig& cfg);
TimeGrid make_grid(const RunConfig& cfg);
ControlSubspace make_subspace(const RunConfig& cfg);
std::vector<ControlSubspace> make_subspace_list(const RunConfig& cfg);
StateVector make_initial_state(const RunConfig& cfg);
SweepSpec make_sweep_spec(const RunConfig& cfg);

// Subspace grammar: "all", "odd", "even", or comma-separated indices and
// a-b ranges ("1,3,5-8"). 1-based, duplicates rejected.
ControlSubspace parse_subspace(const std::string& key, const std::string& text, int n_i);

} // namespace bpi

#endif
