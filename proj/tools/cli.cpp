#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "paraqed/dynamics.hpp"
#include "paraqed/errors.hpp"
#include "paraqed/execution.hpp"
#include "paraqed/photon.hpp"
#include "paraqed/sweep.hpp"

#ifndef PARAQED_VERSION
#define PARAQED_VERSION "0.0.0"
#endif

namespace paraqed::cli {

using specfun::pi;
using nlohmann::json;

namespace {

const char* command_name(Command c) {
    switch (c) {
    case Command::quantize: return "quantize";
    case Command::rate: return "rate";
    case Command::decay: return "decay";
    case Command::field: return "field";
    case Command::tdist: return "tdist";
    case Command::selfcheck: return "selfcheck";
    }
    return "?";
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

double to_double(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidParameter(fmt::format("{}: not a number: '{}'", what, s));
    return v;
}

int to_int(const std::string& s, const std::string& what) {
    const double v = to_double(s, what);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidParameter(fmt::format("{}: not an integer: '{}'", what, s));
    return int(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

// "a:b:count" (count >= 2, a < b) or, where allowed, a single value.
Range to_range(const std::string& s, const std::string& what, bool allow_single) {
    const auto parts = split(s, ':');
    if (parts.size() == 1 && allow_single) return {to_double(parts[0], what), 0.0, 0};
    if (parts.size() != 3) throw InvalidParameter(fmt::format("{}: expected start:stop:count, got '{}'", what, s));
    Range r{to_double(parts[0], what), to_double(parts[1], what), to_int(parts[2], what)};
    if (!(r.start < r.stop) || r.count < 2) {
        throw InvalidParameter(fmt::format("{}: need start < stop and count >= 2, got '{}'", what, s));
    }
    return r;
}

std::string range_text(const Range& r) {
    if (r.count == 0) return num(r.start);
    return fmt::format("{}:{}:{}", num(r.start), num(r.stop), r.count);
}

std::vector<double> points(const Range& r) { return r.count == 0 ? std::vector<double>{r.start} : linspace(r.start, r.stop, r.count); }

// Every flag as text, so that flags and --config values go through one path.
struct RawOptions {
    std::map<std::string, std::string> values;
    std::string config;
};

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {"u", "u-sweep", "n", "gamma-s-T", "t", "y", "xi", "eta",
                                                  "method", "branch", "m-max", "n-max", "tol", "threads",
                                                  "format", "out"};
    return keys;
}

const char* describe(const std::string& key) {
    static const std::map<std::string, const char*> text = {
        {"u", "mirror size u = k f"},
        {"u-sweep", "start:stop:count grid of u"},
        {"n", "mode index list (decay/tdist: resonant size u = pi(n + 1/2))"},
        {"gamma-s-T", "free-space rate times round-trip time, comma list"},
        {"t", "t/T, single value or start:stop:count"},
        {"y", "(rho/2f)^2 grid for tdist"},
        {"xi", "xi/2f grid for field"},
        {"eta", "eta/2f grid for field"},
        {"method", "comma list; rate: exact,semiclassical,both; decay: path,oracle,pole"},
        {"branch", "retarded or advanced"},
        {"m-max", "number of kept bounces"},
        {"n-max", "cap on modes per side in the exact rate sum"},
        {"tol", "numerical tolerance"},
        {"threads", "OpenMP threads (default PARAQED_THREADS, then all cores)"},
        {"format", "csv or json"},
        {"out", "output file (default stdout)"},
    };
    return text.at(key);
}

std::string json_to_text(const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return num(v.get<double>());
    if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += json_to_text(v[i], key);
        }
        return out;
    }
    throw InvalidParameter(fmt::format("config: unsupported value for '{}'", key));
}

void apply_config(RawOptions& raw) {
    std::ifstream in(raw.config);
    if (!in) throw InvalidParameter(fmt::format("config: cannot read '{}'", raw.config));
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidParameter(fmt::format("config: {}", e.what()));
    }
    if (!j.is_object()) throw InvalidParameter("config: top level must be an object");
    const auto& keys = known_keys();
    for (const auto& [k, v] : j.items()) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
            throw InvalidParameter(fmt::format("config: unknown key '{}'", k));
        }
        raw.values[k] = json_to_text(v, k);
    }
}

std::vector<std::string> default_methods(Command c) {
    switch (c) {
    case Command::rate: return {"exact", "semiclassical"};
    case Command::decay: return {"path"};
    default: return {};
    }
}

const std::vector<std::string>& allowed_methods(Command c) {
    static const std::vector<std::string> rate = {"exact", "semiclassical", "both"};
    static const std::vector<std::string> decay = {"path", "oracle", "pole"};
    static const std::vector<std::string> none;
    if (c == Command::rate) return rate;
    if (c == Command::decay) return decay;
    return none;
}

RunConfig build(Command command, const RawOptions& raw) {
    RunConfig cfg;
    cfg.command = command;
    auto has = [&](const char* k) { return raw.values.count(k) != 0; };
    auto get = [&](const char* k) { return raw.values.at(k); };

    if (has("u")) {
        cfg.params.u = to_double(get("u"), "--u");
        cfg.u_given = true;
    }
    if (has("u-sweep")) {
        if (cfg.u_given) throw InvalidParameter("--u and --u-sweep are mutually exclusive");
        cfg.sweep = to_range(get("u-sweep"), "--u-sweep", false);
    }
    if (has("n")) {
        for (const auto& s : split(get("n"), ',')) {
            const int n = to_int(s, "--n");
            if (n < 0) throw InvalidParameter("--n: quantum numbers must be nonnegative");
            cfg.ns.push_back(n);
        }
    }
    if (has("gamma-s-T")) {
        for (const auto& s : split(get("gamma-s-T"), ',')) cfg.gammas.push_back(to_double(s, "--gamma-s-T"));
    }
    if (has("t")) {
        cfg.t = to_range(get("t"), "--t", command == Command::field);
        cfg.t_given = true;
    }
    if (has("y")) cfg.y = to_range(get("y"), "--y", false);
    if (has("xi")) cfg.xi = to_range(get("xi"), "--xi", false);
    if (has("eta")) cfg.eta = to_range(get("eta"), "--eta", false);
    if (has("method")) {
        const auto& ok = allowed_methods(command);
        for (const auto& m : split(get("method"), ',')) {
            if (std::find(ok.begin(), ok.end(), m) == ok.end()) {
                throw InvalidParameter(fmt::format("--method: '{}' not valid for {}", m, command_name(command)));
            }
            if (m == "both") {
                cfg.methods.push_back("exact");
                cfg.methods.push_back("semiclassical");
            } else {
                cfg.methods.push_back(m);
            }
        }
    }
    if (cfg.methods.empty()) cfg.methods = default_methods(command);
    if (has("branch")) {
        const auto b = get("branch");
        if (b == "retarded") cfg.branch = Branch::retarded;
        else if (b == "advanced") cfg.branch = Branch::advanced;
        else throw InvalidParameter("--branch: expected retarded or advanced");
    }
    if (has("m-max")) cfg.params.m_max = to_int(get("m-max"), "--m-max");
    if (has("n-max")) cfg.params.n_max = to_int(get("n-max"), "--n-max");
    if (has("tol")) cfg.params.tol = to_double(get("tol"), "--tol");
    if (has("threads")) {
        cfg.threads = to_int(get("threads"), "--threads");
    } else if (const char* env = std::getenv("PARAQED_THREADS"); env && *env) {
        cfg.threads = to_int(env, "PARAQED_THREADS");
    }
    if (cfg.threads < 0) throw InvalidParameter("--threads must be nonnegative");
    if (has("format")) {
        const auto f = get("format");
        if (f == "csv") cfg.format = Format::csv;
        else if (f == "json") cfg.format = Format::json;
        else throw InvalidParameter("--format: expected csv or json");
    }
    if (has("out")) cfg.output_path = get("out");

    // Command-specific requirements.
    switch (command) {
    case Command::quantize:
    case Command::rate:
        if (!cfg.u_given && !cfg.sweep) throw InvalidParameter(fmt::format("{} needs --u or --u-sweep", command_name(command)));
        if (command == Command::quantize && cfg.ns.empty()) cfg.ns = {0};
        break;
    case Command::decay:
    case Command::tdist:
        if (cfg.sweep) throw InvalidParameter(fmt::format("{} takes --u or --n, not --u-sweep", command_name(command)));
        if (cfg.u_given && !cfg.ns.empty()) throw InvalidParameter("--u and --n are mutually exclusive here");
        if (!cfg.u_given && cfg.ns.empty()) cfg.ns = {0};
        if (command == Command::decay && cfg.gammas.empty()) cfg.gammas = {0.01};
        break;
    case Command::field:
        if (cfg.sweep) throw InvalidParameter("field takes a single --u");
        if (cfg.gammas.size() > 1) throw InvalidParameter("field takes a single --gamma-s-T");
        if (cfg.t_given && cfg.t.count != 0) throw InvalidParameter("field takes a single --t");
        break;
    case Command::selfcheck:
        break;
    }
    if (!cfg.gammas.empty() && command != Command::decay) cfg.params.gamma_s_T = cfg.gammas.front();
    cfg.params.validate();
    for (double g : cfg.gammas) {
        CavityParams p = cfg.params;
        p.gamma_s_T = g;
        p.validate();
    }
    return cfg;
}

std::string mode_label(int n) { return fmt::format("n{}", n); }

// (label, u) for commands that run at the resonant sizes u = pi(n + 1/2).
std::vector<std::pair<std::string, double>> cases(const RunConfig& cfg) {
    if (cfg.u_given) return {{"u", cfg.params.u}};
    std::vector<std::pair<std::string, double>> out;
    for (int n : cfg.ns) out.emplace_back(mode_label(n), pi * (n + 0.5));
    return out;
}

std::string params_text(const CavityParams& p) {
    return fmt::format("u={} gamma_s_T={} m_max={} n_max={} tol={}", num(p.u), num(p.gamma_s_T), p.m_max, p.n_max,
                       num(p.tol));
}

std::string params_line(const CavityParams& p) { return "# params: " + params_text(p); }

Table tabulate_quantize(const RunConfig& cfg, Execution exec) {
    Table t;
    t.columns = {"u"};
    for (int n : cfg.ns) {
        t.columns.push_back(fmt::format("alpha_over_k_{}", mode_label(n)));
        t.columns.push_back(fmt::format("eikonal_{}", mode_label(n)));
        t.columns.push_back(fmt::format("residual_{}", mode_label(n)));
    }
    const auto us = cfg.sweep ? points(*cfg.sweep) : std::vector<double>{cfg.params.u};
    const auto pts = alpha_sweep(cfg.params, us, cfg.ns, false, exec);
    for (std::size_t i = 0; i < us.size(); ++i) {
        std::vector<double> row = {us[i]};
        for (std::size_t j = 0; j < cfg.ns.size(); ++j) {
            const auto& a = pts[i * cfg.ns.size() + j];
            row.insert(row.end(), {a.alpha_over_k, a.eikonal, a.residual});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table tabulate_rate(const RunConfig& cfg, Execution exec) {
    const bool ex = std::find(cfg.methods.begin(), cfg.methods.end(), "exact") != cfg.methods.end();
    const bool sc = std::find(cfg.methods.begin(), cfg.methods.end(), "semiclassical") != cfg.methods.end();
    Table t;
    t.columns = {"u"};
    if (ex) t.columns.push_back("exact_ratio");
    if (sc) {
        t.columns.push_back("semiclassical_ratio");
        t.columns.push_back("semiclassical_valid");
    }
    const auto us = cfg.sweep ? points(*cfg.sweep) : std::vector<double>{cfg.params.u};
    for (const auto& p : rate_sweep(cfg.params, us, ex, sc, exec)) {
        std::vector<double> row = {p.u};
        if (ex) row.push_back(*p.exact);
        if (sc) {
            row.push_back(*p.semiclassical);
            row.push_back(p.u >= 0.5 * pi ? 1.0 : 0.0);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table tabulate_decay(const RunConfig& cfg, Execution exec) {
    std::vector<double> grid = points(cfg.t);
    if (cfg.branch == Branch::advanced)
        for (double& x : grid) x = -x;
    Table t;
    t.columns = {"t_over_T"};
    std::vector<std::vector<double>> cols;
    for (const auto& [label, u] : cases(cfg)) {
        for (double g : cfg.gammas) {
            CavityParams p = cfg.params;
            p.u = u;
            p.gamma_s_T = g;
            t.header.push_back(fmt::format("# case {}_g{}: {}", label, g, params_text(p)));
            for (const auto& m : cfg.methods) {
                const TraceMethod tm = m == "path" ? TraceMethod::path_series
                                       : m == "oracle" ? TraceMethod::contour_oracle
                                                       : TraceMethod::pole;
                const auto tr = decay_trace(p, grid, tm, cfg.branch, exec);
                const std::string base = fmt::format("{}_{}_g{}", m, label, g);
                t.columns.push_back(base + "_mod");
                t.columns.push_back(base + "_arg");
                std::vector<double> mod, arg;
                for (const auto& v : tr.values) {
                    mod.push_back(std::abs(v));
                    arg.push_back(std::arg(v));
                }
                cols.push_back(std::move(mod));
                cols.push_back(std::move(arg));
                if (!tr.errors.empty()) {
                    t.columns.push_back(base + "_err");
                    cols.push_back(tr.errors);
                }
            }
        }
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row = {grid[i]};
        for (const auto& c : cols) row.push_back(c[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table tabulate_field(const RunConfig& cfg, Execution exec) {
    const CavityParams& p = cfg.params;
    const double two_f = 2.0 * p.u;
    const auto xs = points(cfg.xi);
    const auto es = points(cfg.eta);
    double t_over_T = cfg.t.start;
    if (!cfg.t_given) {
        // Late enough that every kept bounce has reached every grid point.
        t_over_T = 0.5 * (xs.back() + es.back()) + p.m_max + 1.0;
    }
    Table t;
    t.header.push_back(fmt::format("# t_over_T: {}", num(t_over_T)));
    t.columns = {"xi_over_2f", "eta_over_2f", "full_mod", "full_arg", "simplified_mod", "simplified_arg"};
    t.rows.assign(xs.size() * es.size(), {});
    for_each_index(t.rows.size(), exec, [&](std::size_t k) {
        const double xi = xs[k / es.size()];
        const double eta = es[k % es.size()];
        const ParabolicPoint pt{xi * two_f, eta * two_f, 0.0};
        const auto full = one_photon_amplitude(p, pt, t_over_T, cfg.branch).amplitude;
        const auto simple = simplified_amplitude(p, pt, t_over_T, cfg.branch);
        t.rows[k] = {xi, eta, std::abs(full), std::arg(full), std::abs(simple), std::arg(simple)};
    });
    return t;
}

Table tabulate_tdist(const RunConfig& cfg, Execution exec) {
    const auto ys = points(cfg.y);
    Table t;
    t.columns = {"y"};
    std::vector<std::vector<double>> cols;
    for (const auto& [label, u] : cases(cfg)) {
        CavityParams p = cfg.params;
        p.u = u;
        t.header.push_back(fmt::format("# case {}: {}", label, params_text(p)));
        const auto prof = transverse_distribution(p, ys, exec);
        std::vector<double> corr(ys.size());
        for_each_index(ys.size(), exec, [&](std::size_t i) { corr[i] = transverse_correction(p, ys[i]); });
        t.header.push_back(fmt::format("# plane_integral_{}: {}", label, num(prof.integral)));
        t.columns.push_back("h_" + label);
        t.columns.push_back("correction_" + label);
        cols.push_back(prof.intensity);
        cols.push_back(std::move(corr));
    }
    for (std::size_t i = 0; i < ys.size(); ++i) {
        std::vector<double> row = {ys[i]};
        for (const auto& c : cols) row.push_back(c[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string check_output_writable(const std::string& path) {
    namespace fs = std::filesystem;
    const bool existed = fs::exists(path);
    std::FILE* f = std::fopen(path.c_str(), "a");
    if (!f) throw Error(fmt::format("--out: cannot write '{}'", path));
    std::fclose(f);
    return existed ? std::string() : path;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InvalidParameter*>(&e)) return 2;
    if (dynamic_cast<const Error*>(&e)) return 3;
    return 1;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const InvalidParameter*>(&e)) return "InvalidParameter";
    if (dynamic_cast<const NonConvergence*>(&e)) return "NonConvergence";
    if (dynamic_cast<const RootNotBracketed*>(&e)) return "RootNotBracketed";
    if (dynamic_cast<const QuadratureFailure*>(&e)) return "QuadratureFailure";
    if (dynamic_cast<const TruncationError*>(&e)) return "TruncationError";
    if (dynamic_cast<const Error*>(&e)) return "Error";
    return "InternalError";
}

void write_checks(const std::vector<CheckRow>& rows, const RunConfig& cfg, std::ostream& os) {
    std::vector<std::string> header = {fmt::format("# paraqed {}", PARAQED_VERSION), "# command: selfcheck",
                                       params_line(cfg.params), "# reproduce: paraqed " + reproduce_command(cfg)};
    if (cfg.format == Format::json) {
        json j;
        j["header"] = header;
        j["checks"] = json::array();
        for (const auto& r : rows)
            j["checks"].push_back({{"name", r.name}, {"status", r.status}, {"measured", r.measured}, {"tolerance", r.tolerance}});
        os << j.dump(1) << '\n';
        return;
    }
    for (const auto& h : header) os << h << '\n';
    os << "name,status,measured,tolerance\n";
    for (const auto& r : rows) os << fmt::format("{},{},{},{}\n", r.name, r.status, num(r.measured), num(r.tolerance));
}

} // namespace

RunConfig parse(int argc, const char* const* argv) {
    CLI::App app{"Two-level atom at the focus of a parabolic mirror"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PARAQED_VERSION);
    RawOptions raw;
    std::map<std::string, std::string> stash;
    std::map<CLI::App*, Command> commands;

    auto add = [&](Command c, const char* help) {
        CLI::App* sub = app.add_subcommand(command_name(c), help);
        commands[sub] = c;
        for (const auto& k : known_keys()) sub->add_option("--" + k, stash[k], describe(k));
        sub->add_option("--config", raw.config, "JSON file whose keys override the flags");
        return sub;
    };
    add(Command::quantize, "separation constants alpha_n/k over u");
    add(Command::rate, "spontaneous decay rate over u");
    add(Command::decay, "excited-state amplitude over time");
    add(Command::field, "one-photon field on a (xi, eta) grid");
    add(Command::tdist, "transverse energy distribution in the focal plane");
    add(Command::selfcheck, "run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        throw HelpRequested{subs.empty() ? app.help() : subs.front()->help()};
    } catch (const CLI::CallForVersion&) {
        throw HelpRequested{std::string(PARAQED_VERSION) + "\n"};
    } catch (const CLI::ParseError& e) {
        throw InvalidParameter(fmt::format("{}\n{}", e.what(), app.help()));
    }

    Command command = Command::selfcheck;
    for (auto* sub : app.get_subcommands()) {
        command = commands.at(sub);
        for (const auto& k : known_keys())
            if (sub->count("--" + k)) raw.values[k] = stash[k];
    }
    if (!raw.config.empty()) apply_config(raw);
    return build(command, raw);
}

std::string reproduce_command(const RunConfig& cfg) {
    std::vector<std::string> parts = {command_name(cfg.command)};
    auto flag = [&](const std::string& name, const std::string& value) {
        parts.push_back("--" + name);
        parts.push_back(value);
    };
    auto join = [](const auto& xs, auto&& fmt_one) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + fmt_one(xs[i]);
        return s;
    };
    const Command c = cfg.command;
    if (cfg.u_given || c == Command::field) flag("u", num(cfg.params.u));
    if (cfg.sweep) flag("u-sweep", range_text(*cfg.sweep));
    if (!cfg.ns.empty() && !cfg.u_given) flag("n", join(cfg.ns, [](int n) { return std::to_string(n); }));
    if (c == Command::decay) flag("gamma-s-T", join(cfg.gammas, num));
    if (c == Command::field) flag("gamma-s-T", num(cfg.params.gamma_s_T));
    if (c == Command::decay || (c == Command::field && cfg.t_given)) flag("t", range_text(cfg.t));
    if (c == Command::tdist) flag("y", range_text(cfg.y));
    if (c == Command::field) {
        flag("xi", range_text(cfg.xi));
        flag("eta", range_text(cfg.eta));
    }
    if (!cfg.methods.empty()) flag("method", join(cfg.methods, [](const std::string& s) { return s; }));
    if (c == Command::decay || c == Command::field)
        flag("branch", cfg.branch == Branch::retarded ? "retarded" : "advanced");
    flag("m-max", std::to_string(cfg.params.m_max));
    flag("n-max", std::to_string(cfg.params.n_max));
    flag("tol", num(cfg.params.tol));
    flag("format", cfg.format == Format::csv ? "csv" : "json");
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " " : "") + parts[i];
    return s;
}

Table compute(const RunConfig& cfg) {
    if (cfg.threads > 0) set_thread_count(cfg.threads);
    const Execution exec = Execution::parallel;
    Table t;
    switch (cfg.command) {
    case Command::quantize: t = tabulate_quantize(cfg, exec); break;
    case Command::rate: t = tabulate_rate(cfg, exec); break;
    case Command::decay: t = tabulate_decay(cfg, exec); break;
    case Command::field: t = tabulate_field(cfg, exec); break;
    case Command::tdist: t = tabulate_tdist(cfg, exec); break;
    case Command::selfcheck: throw InvalidParameter("selfcheck does not produce a table");
    }
    const ContourOptions co;
    std::vector<std::string> header = {
        fmt::format("# paraqed {}", PARAQED_VERSION),
        fmt::format("# command: {}", command_name(cfg.command)),
        params_line(cfg.params),
        fmt::format("# tolerances: tol={} contour_s_cut={} contour_delta={} contour_tail_tol={}", num(cfg.params.tol),
                    num(co.s_cut), num(co.delta), num(co.tol)),
    };
    header.insert(header.end(), t.header.begin(), t.header.end());
    header.push_back("# reproduce: paraqed " + reproduce_command(cfg));
    t.header = std::move(header);
    return t;
}

void write(const Table& t, Format f, std::ostream& os) {
    if (f == Format::json) {
        json j;
        j["header"] = t.header;
        j["columns"] = t.columns;
        j["rows"] = t.rows;
        os << j.dump(1) << '\n';
        return;
    }
    for (const auto& h : t.header) os << h << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += ',';
            line += num(row[i]);
        }
        os << line << '\n';
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::string command = "?";
    for (int i = 1; i < argc && command == "?"; ++i) {
        for (Command c : {Command::quantize, Command::rate, Command::decay, Command::field, Command::tdist,
                          Command::selfcheck})
            if (std::string(argv[i]) == command_name(c)) command = command_name(c);
    }
    std::string created;
    try {
        RunConfig cfg;
        try {
            cfg = parse(argc, argv);
        } catch (const HelpRequested& h) {
            out << h.text;
            return 0;
        }
        if (!cfg.output_path.empty()) created = check_output_writable(cfg.output_path);

        std::ostringstream body;
        int status = 0;
        if (cfg.command == Command::selfcheck) {
            if (cfg.threads > 0) set_thread_count(cfg.threads);
            const auto rows = selfcheck(cfg.params);
            write_checks(rows, cfg, body);
            for (const auto& r : rows)
                if (r.status == "FAIL") status = 1;
        } else {
            write(compute(cfg), cfg.format, body);
        }
        if (cfg.output_path.empty()) {
            out << body.str();
        } else {
            std::ofstream f(cfg.output_path, std::ios::binary | std::ios::trunc);
            f << body.str();
            if (!f) throw Error(fmt::format("--out: write to '{}' failed", cfg.output_path));
        }
        return status;
    } catch (const std::exception& e) {
        if (!created.empty()) std::filesystem::remove(created);
        json rec = {{"error", {{"kind", error_kind(e)}, {"message", e.what()}, {"command", command}}}};
        if (const auto* q = dynamic_cast<const QuadratureFailure*>(&e)) rec["error"]["achieved_error"] = q->achieved_error();
        if (const auto* q = dynamic_cast<const TruncationError*>(&e)) rec["error"]["estimate"] = q->estimate();
        err << rec.dump() << '\n';
        return exit_code_for(e);
    }
}

} // namespace paraqed::cli
