#include "bpi/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace bpi {

std::string command_name(Command cmd) {
    switch (cmd) {
        case Command::propagate: return "propagate";
        case Command::optimize: return "optimize";
        case Command::sweep_area: return "sweep-area";
        case Command::sweep_subspace: return "sweep-subspace";
        case Command::oracle_check: return "oracle-check";
    }
    return "propagate";
}

Command command_from_name(const std::string& name) {
    if (name == "propagate") return Command::propagate;
    if (name == "optimize") return Command::optimize;
    if (name == "sweep-area") return Command::sweep_area;
    if (name == "sweep-subspace") return Command::sweep_subspace;
    if (name == "oracle-check") return Command::oracle_check;
    throw config_error("command: unknown command '" + name +
                       "' (expected propagate, optimize, sweep-area, sweep-subspace or oracle-check)");
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_plain_real(const std::string& key, const std::string& value) {
    std::string s = value;
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw config_error(key + ": cannot parse '" + value + "' as a number");
    return v;
}

long long parse_integer(const std::string& key, const std::string& value) {
    std::string s = value;
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw config_error(key + ": cannot parse '" + value + "' as an integer");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    std::string s = value;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw config_error(key + ": cannot parse '" + value + "' as a boolean");
}

bool has_pi_suffix(const std::string& s) {
    if (s.size() < 2) return false;
    const char a = static_cast<char>(std::tolower(static_cast<unsigned char>(s[s.size() - 2])));
    const char b = static_cast<char>(std::tolower(static_cast<unsigned char>(s[s.size() - 1])));
    return a == 'p' && b == 'i';
}

} // namespace

double parse_real(const std::string& key, const std::string& value) {
    const std::string s = trim(value);
    if (s.empty()) throw config_error(key + ": empty value");
    if (has_pi_suffix(s)) {
        const std::string prefix = trim(s.substr(0, s.size() - 2));
        if (prefix.empty() || prefix == "+") return pi;
        if (prefix == "-") return -pi;
        return parse_plain_real(key, prefix) * pi;
    }
    return parse_plain_real(key, s);
}

namespace {

int parse_bounded_int(const std::string& key, const std::string& value, long long lo, long long hi) {
    const long long v = parse_integer(key, value);
    if (v < lo || v > hi)
        throw config_error(key + ": value " + value + " outside [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    return static_cast<int>(v);
}

struct Builder {
    RunConfig cfg;
    std::set<std::string> seen;

    bool was_set(const std::string& key) const { return seen.count(key) > 0; }

    void apply(const std::string& rawkey, const std::string& rawvalue) {
        const std::string key = trim(rawkey);
        const std::string value = trim(rawvalue);
        if (key == "command") cfg.command = command_from_name(value);
        else if (key == "ni") cfg.ni = parse_bounded_int(key, value, 1, 100000);
        else if (key == "nf") cfg.nf = parse_bounded_int(key, value, 1, 100000);
        else if (key == "de") cfg.de = parse_real(key, value);
        else if (key == "de_f") cfg.de_f = parse_real(key, value);
        else if (key == "detuning0") cfg.detuning0 = parse_real(key, value);
        else if (key == "area") cfg.area = parse_real(key, value);
        else if (key == "tau") cfg.tau = parse_real(key, value);
        else if (key == "t_start") cfg.t_start = parse_real(key, value);
        else if (key == "t_end") cfg.t_end = parse_real(key, value);
        else if (key == "dt") cfg.dt = parse_real(key, value);
        else if (key == "psi0") cfg.psi0 = value;
        else if (key == "subspace") cfg.subspace = value;
        else if (key == "subspaces") cfg.subspaces = value;
        else if (key == "nc") {
            const int nc = parse_bounded_int(key, value, 1, 100000);
            cfg.subspace = "1-" + std::to_string(nc);
        }
        else if (key == "area_min") cfg.area_min = parse_real(key, value);
        else if (key == "area_max") cfg.area_max = parse_real(key, value);
        else if (key == "area_step") cfg.area_step = parse_real(key, value);
        else if (key == "area_unit") {
            if (value != "area" && value != "extended")
                throw config_error("area_unit: expected 'area' or 'extended', got '" + value + "'");
            cfg.area_unit = value;
        }
        else if (key == "emit_eigenvalues") cfg.emit_eigenvalues = parse_bool(key, value);
        else if (key == "stride") cfg.stride = parse_bounded_int(key, value, 1, 1 << 30);
        else if (key == "serial") cfg.serial = parse_bool(key, value);
        else if (key == "trials") cfg.trials = parse_bounded_int(key, value, 1, 1 << 20);
        else if (key == "seed") cfg.seed = static_cast<unsigned long>(parse_integer(key, value));
        else if (key == "out") cfg.out = value;
        else if (key == "minima_out") cfg.minima_out = value;
        else throw config_error("unknown key '" + key + "'");
        seen.insert(key);
    }

    RunConfig finalize() {
        if (!was_set("de_f")) cfg.de_f = cfg.de;
        if (!was_set("t_start")) cfg.t_start = -4.0 * cfg.tau;
        if (!was_set("t_end")) cfg.t_end = 4.0 * cfg.tau;
        if (!was_set("dt")) cfg.dt = cfg.tau / 2000.0;
        validate(cfg);
        return cfg;
    }

    // every numeric field is checked against its core-type invariant before
    // any computation starts
    static void validate(const RunConfig& cfg) {
        make_system(cfg);
        make_pulse(cfg);
        make_grid(cfg);
        switch (cfg.command) {
            case Command::propagate:
                make_initial_state(cfg);
                break;
            case Command::optimize:
                make_subspace(cfg);
                break;
            case Command::sweep_area:
                make_sweep_spec(cfg);
                break;
            case Command::sweep_subspace:
                make_sweep_spec(cfg);
                make_subspace_list(cfg);
                break;
            case Command::oracle_check:
                break;
        }
    }
};

void apply_document(Builder& b, const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw config_error(origin + " line " + std::to_string(lineno) +
                               ": expected 'key = value', got '" + stripped + "'");
        b.apply(stripped.substr(0, eq), stripped.substr(eq + 1));
    }
}

bool is_bool_key(const std::string& key) {
    return key == "serial" || key == "emit_eigenvalues";
}

} // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    std::vector<std::pair<std::string, std::string>> flag_pairs;
    std::vector<std::string> config_paths;

    size_t i = 0;
    if (!args.empty() && args[0].rfind("--", 0) != 0) {
        flag_pairs.emplace_back("command", args[0]);
        i = 1;
    }
    for (; i < args.size(); ++i) {
        const std::string& arg = args[i];
        if (arg.rfind("--", 0) != 0)
            throw config_error("expected --key [value], got '" + arg + "'");
        std::string key = arg.substr(2);
        std::string value;
        const size_t eq = key.find('=');
        if (eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else if (is_bool_key(key)) {
            // bare boolean flag; an explicit true/false may follow
            value = "true";
            if (i + 1 < args.size() && args[i + 1].rfind("--", 0) != 0) {
                try {
                    parse_bool(key, args[i + 1]);
                    value = args[++i];
                } catch (const config_error&) {
                    // next token is not a boolean literal; leave it alone
                }
            }
        } else {
            if (i + 1 >= args.size())
                throw config_error("--" + key + ": missing value");
            value = args[++i];
        }
        if (key == "config") config_paths.push_back(value);
        else flag_pairs.emplace_back(key, value);
    }

    Builder b;
    for (const std::string& path : config_paths) {
        std::ifstream in(path);
        if (!in) throw config_error("config: cannot open file '" + path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        apply_document(b, buf.str(), path);
    }
    for (const auto& [key, value] : flag_pairs) b.apply(key, value);
    return b.finalize();
}

RunConfig parse_config_text(const std::string& text) {
    Builder b;
    apply_document(b, text, "config");
    return b.finalize();
}

namespace {

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string echo_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "command = " << command_name(cfg.command) << "\n"
        << "ni = " << cfg.ni << "\n"
        << "nf = " << cfg.nf << "\n"
        << "de = " << fmt_full(cfg.de) << "\n"
        << "de_f = " << fmt_full(cfg.de_f) << "\n"
        << "detuning0 = " << fmt_full(cfg.detuning0) << "\n"
        << "area = " << fmt_full(cfg.area) << "\n"
        << "tau = " << fmt_full(cfg.tau) << "\n"
        << "t_start = " << fmt_full(cfg.t_start) << "\n"
        << "t_end = " << fmt_full(cfg.t_end) << "\n"
        << "dt = " << fmt_full(cfg.dt) << "\n"
        << "psi0 = " << cfg.psi0 << "\n"
        << "subspace = " << cfg.subspace << "\n"
        << "subspaces = " << cfg.subspaces << "\n"
        << "area_min = " << fmt_full(cfg.area_min) << "\n"
        << "area_max = " << fmt_full(cfg.area_max) << "\n"
        << "area_step = " << fmt_full(cfg.area_step) << "\n"
        << "area_unit = " << cfg.area_unit << "\n"
        << "emit_eigenvalues = " << (cfg.emit_eigenvalues ? "true" : "false") << "\n"
        << "stride = " << cfg.stride << "\n"
        << "serial = " << (cfg.serial ? "true" : "false") << "\n"
        << "trials = " << cfg.trials << "\n"
        << "seed = " << cfg.seed << "\n"
        << "out = " << cfg.out << "\n"
        << "minima_out = " << cfg.minima_out << "\n";
    return out.str();
}

SystemSpec make_system(const RunConfig& cfg) {
    SystemSpec system{cfg.ni, cfg.nf, cfg.de, cfg.de_f, cfg.detuning0};
    system.validate();
    return system;
}

PulseSpec make_pulse(const RunConfig& cfg) {
    PulseSpec pulse{cfg.area, cfg.tau, cfg.t_start, cfg.t_end};
    pulse.validate();
    return pulse;
}

TimeGrid make_grid(const RunConfig& cfg) {
    return TimeGrid::from_step(cfg.t_start, cfg.t_end, cfg.dt);
}

ControlSubspace parse_subspace(const std::string& key, const std::string& text, int n_i) {
    const std::string s = trim(text);
    if (s.empty()) throw config_error(key + ": empty subspace");
    ControlSubspace sub;
    if (s == "all") sub = ControlSubspace::prefix(n_i);
    else if (s == "odd") sub = ControlSubspace::odd_levels(n_i);
    else if (s == "even") {
        std::vector<int> idx;
        for (int i = 2; i <= n_i; i += 2) idx.push_back(i);
        if (idx.empty()) throw config_error(key + ": 'even' selects no sublevel for ni = 1");
        sub = ControlSubspace::from_indices(std::move(idx));
    } else {
        std::vector<int> idx;
        std::istringstream in(s);
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (item.empty()) throw config_error(key + ": empty list entry in '" + s + "'");
            const size_t dash = item.find('-', 1);  // allow plain indices only; no negatives
            if (dash != std::string::npos) {
                const int a = parse_bounded_int(key, trim(item.substr(0, dash)), 1, 100000);
                const int b = parse_bounded_int(key, trim(item.substr(dash + 1)), 1, 100000);
                if (b < a) throw config_error(key + ": descending range '" + item + "'");
                for (int v = a; v <= b; ++v) idx.push_back(v);
            } else {
                idx.push_back(parse_bounded_int(key, item, 1, 100000));
            }
        }
        std::sort(idx.begin(), idx.end());
        if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
            throw config_error(key + ": duplicate index in '" + s + "'");
        sub = ControlSubspace::from_indices(std::move(idx));
    }
    sub.validate(n_i);
    return sub;
}

ControlSubspace make_subspace(const RunConfig& cfg) {
    return parse_subspace("subspace", cfg.subspace, cfg.ni);
}

std::vector<ControlSubspace> make_subspace_list(const RunConfig& cfg) {
    std::vector<ControlSubspace> list;
    std::istringstream in(cfg.subspaces);
    std::string item;
    while (std::getline(in, item, ';')) list.push_back(parse_subspace("subspaces", item, cfg.ni));
    if (list.empty()) throw config_error("subspaces: empty list");
    return list;
}

StateVector make_initial_state(const RunConfig& cfg) {
    const SystemSpec system = make_system(cfg);
    const std::string s = trim(cfg.psi0);
    if (s.empty()) throw config_error("psi0: empty value");

    if (s == "uniform") return uniform_ground_state(system);
    if (s == "alternating") {
        // +1/-1 pattern over the ground manifold; zero-sum when ni is even
        Vector v = Vector::Zero(system.dim());
        for (int j = 0; j < system.n_i; ++j) v(j) = (j % 2 == 0) ? 1.0 : -1.0;
        v /= v.norm();
        return StateVector::from_amplitudes(std::move(v));
    }
    if ((s[0] == 'g' || s[0] == 'e') && s.find(',') == std::string::npos) {
        const int index = parse_bounded_int("psi0", s.substr(1), 1, 100000);
        return s[0] == 'g' ? ground_basis_state(system, index)
                           : excited_basis_state(system, index);
    }

    // comma-separated real amplitudes: ni entries (ground manifold) or
    // ni + nf entries (full basis); normalized
    std::vector<double> amps;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) amps.push_back(parse_real("psi0", trim(item)));
    if (static_cast<int>(amps.size()) != system.n_i &&
        static_cast<int>(amps.size()) != system.dim())
        throw config_error("psi0: amplitude list must have ni = " + std::to_string(system.n_i) +
                           " or ni+nf = " + std::to_string(system.dim()) + " entries, got " +
                           std::to_string(amps.size()));
    Vector v = Vector::Zero(system.dim());
    for (size_t j = 0; j < amps.size(); ++j) v(j) = amps[j];
    const double norm = v.norm();
    if (norm == 0.0) throw config_error("psi0: amplitude list is identically zero");
    v /= norm;
    return StateVector::from_amplitudes(std::move(v));
}

SweepSpec make_sweep_spec(const RunConfig& cfg) {
    SweepSpec spec;
    spec.area_min = cfg.area_min;
    spec.area_max = cfg.area_max;
    spec.area_step = cfg.area_step;
    spec.scan_extended = cfg.area_unit == "extended";
    spec.system = make_system(cfg);
    spec.subspace = make_subspace(cfg);
    spec.tau = cfg.tau;
    spec.grid = make_grid(cfg);
    spec.record_eigenvalues = cfg.emit_eigenvalues;
    spec.workers = cfg.serial ? 1 : 0;
    spec.validate();
    return spec;
}

} // namespace bpi
