#include "mums/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mums/closed_form.hpp"
#include "mums/error.hpp"
#include "mums/io.hpp"
#include "mums/mc_ensemble.hpp"
#include "mums/msv_oracle.hpp"
#include "mums/mums_solver.hpp"
#include "mums/nk_habits.hpp"

namespace mums::cli {

using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
}

int threads_from_env() {
    const char* raw = std::getenv("MUMS_THREADS");
    if (!raw || !*raw) return 0;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (*end != '\0' || v < 0 || v > 4096) throw InputError(std::string("invalid MUMS_THREADS value '") + raw + "'");
    return static_cast<int>(v);
}

ShockImpulse resolve_shock(const io::ModelDocument& doc, const std::optional<double>& flag) {
    ShockImpulse shock{flag ? *flag : doc.shock.value_or(1.0)};
    const auto report = validate(shock);
    if (!report.empty()) throw InputError(format_report(report));
    return shock;
}

int resolve_horizon(const io::ModelDocument& doc, const std::optional<int>& flag, int fallback) {
    const int h = flag ? *flag : doc.horizon.value_or(fallback);
    if (h < 1) throw InputError("horizon must be >= 1");
    return h;
}

ordered_json tool_json() { return {{"name", "mums"}, {"version", kVersion}}; }

std::vector<std::string> solution_warnings(const MarkovSolution& sol) {
    std::vector<std::string> w;
    if (!sol.markov_valid) w.emplace_back("q outside [0, 1): closed forms hold algebraically, no chain interpretation");
    if (sol.q_equals_p) w.emplace_back("q equals p: closed forms use the q = p limit");
    return w;
}

std::vector<VariableSelector> all_variables(const MarkovSolution& sol) {
    std::vector<VariableSelector> v{VariableSelector::exogenous(), VariableSelector::state()};
    for (int i = 0; i < sol.n_controls(); ++i) v.push_back(VariableSelector::control(i));
    return v;
}

struct Options {
    std::string model_path;
    std::string out_path;
    std::optional<double> shock;
    std::optional<int> horizon;
    std::optional<double> beta;
    bool timing = false;
    int runs = 50000;
    std::uint64_t seed = 0;
    std::string variable;
    double tol = 1e-8;
    int mc_runs = 0;
    std::string out_dir;
    nk::NKParams nk;
};

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto doc = io::parse_model(read_file(o.model_path));
    const auto shock = resolve_shock(doc, o.shock);
    const QSolution qs = solve_q(doc.model);
    const MarkovSolution sol = solve_states(doc.model, qs.q, shock);
    const auto t1 = std::chrono::steady_clock::now();

    ordered_json report;
    report["restriction_residuals"] = io::to_json(sol.residuals);
    report["max_restriction_residual"] = sol.residuals.max();
    report["characteristic_residual"] = characteristic_residual(reduce(doc.model), sol.q);
    if (qs.closed_form_discrepancy) report["closed_form_discrepancy"] = *qs.closed_form_discrepancy;
    report["root_selection"] = io::to_json(qs.trace);
    report["warnings"] = solution_warnings(sol);
    if (o.timing) report["timing_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();

    ordered_json j;
    j["tool"] = tool_json();
    j["solution"] = io::to_json(sol);
    j["report"] = report;
    write_output(o.out_path, j.dump(2) + "\n", out);
    for (const auto& w : solution_warnings(sol)) err << "warning: " << w << '\n';
    return ok;
}

int cmd_irf(const Options& o, std::ostream& out, std::ostream& err) {
    const auto doc = io::parse_model(read_file(o.model_path));
    const auto sol = solve_markov(doc.model, resolve_shock(doc, o.shock));
    for (const auto& w : solution_warnings(sol)) err << "warning: " << w << '\n';
    write_output(o.out_path, io::irf_csv(irf(sol, resolve_horizon(doc, o.horizon, 40))), out);
    return ok;
}

int cmd_pdv(const Options& o, std::ostream& out, std::ostream&) {
    const auto doc = io::parse_model(read_file(o.model_path));
    const auto sol = solve_markov(doc.model, resolve_shock(doc, o.shock));
    const double beta = o.beta ? *o.beta : doc.beta.value_or(0.99);
    ordered_json values = ordered_json::object();
    for (auto v : all_variables(sol)) values[variable_name(sol, v)] = pdv(sol, beta, v);
    ordered_json j;
    j["tool"] = tool_json();
    j["beta"] = beta;
    j["shock"] = sol.shock;
    j["q"] = sol.q;
    j["pdv"] = values;
    write_output(o.out_path, j.dump(2) + "\n", out);
    return ok;
}

int cmd_cumsum(const Options& o, std::ostream& out, std::ostream&) {
    const auto doc = io::parse_model(read_file(o.model_path));
    const auto sol = solve_markov(doc.model, resolve_shock(doc, o.shock));
    ordered_json values = ordered_json::object();
    for (auto v : all_variables(sol)) values[variable_name(sol, v)] = cumsum(sol, v);
    ordered_json j;
    j["tool"] = tool_json();
    j["shock"] = sol.shock;
    j["q"] = sol.q;
    j["cumsum"] = values;
    write_output(o.out_path, j.dump(2) + "\n", out);
    return ok;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream&) {
    const auto doc = io::parse_model(read_file(o.model_path));
    const auto sol = solve_markov(doc.model, resolve_shock(doc, o.shock));
    if (!sol.markov_valid) throw SolverError("q is not a probability; the chain cannot be simulated");
    const auto var = o.variable.empty()
                         ? (sol.n_controls() > 0 ? VariableSelector::control(0) : VariableSelector::state())
                         : select_variable(sol, o.variable);
    const auto [impact, medium] = markov_states(sol, var);

    ChainConfig cfg;
    cfg.p = sol.p;
    cfg.q = sol.q;
    cfg.states = {{impact, medium}};
    cfg.runs = o.runs;
    cfg.horizon = resolve_horizon(doc, o.horizon, 40);
    cfg.seed = o.seed;
    cfg.threads = threads_from_env();
    write_output(o.out_path, io::ensemble_csv(ensemble_average(cfg).front()), out);
    return ok;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream&) {
    const auto doc = io::parse_model(read_file(o.model_path));
    const auto shock = resolve_shock(doc, o.shock);
    const int horizon = resolve_horizon(doc, o.horizon, 200);

    const MarkovSolution sol = solve_markov(doc.model, shock);
    const StateSpaceSolution ss = solve_msv(doc.model);
    const IrfPath closed = irf(sol, horizon);
    const IrfPath oracle = iterate_irf(ss, doc.model, horizon, shock);

    IrfPath recursive = IrfPath::zeros(horizon, sol.control_names);
    recursive.exogenous = irf_recurrence(sol.shock, 0.0, sol.p, sol.q, horizon);
    recursive.state = irf_recurrence(sol.k_I, sol.k_M, sol.p, sol.q, horizon);
    for (int i = 0; i < sol.n_controls(); ++i) {
        recursive.controls[i] = irf_recurrence(sol.Y_I(i), sol.Y_M(i), sol.p, sol.q, horizon);
    }

    const double dq = std::abs(sol.q - ss.eta_kk);
    const double d_oracle = max_abs_difference(closed, oracle);
    const double d_rec = max_abs_difference(closed, recursive);
    const double worst = std::max({dq, d_oracle, d_rec});
    bool pass = worst <= o.tol && sol.residuals.max() <= o.tol * std::max(1.0, std::abs(shock.size));

    out << "q (Markov) " << io::format_number(sol.q) << " vs eta_kk (state space) " << io::format_number(ss.eta_kk)
        << ": |diff| " << io::format_number(dq) << '\n';
    out << "closed form vs state-space iteration (" << horizon << " periods): " << io::format_number(d_oracle)
        << '\n';
    out << "closed form vs recurrence: " << io::format_number(d_rec) << '\n';
    out << "max Markov restriction residual: " << io::format_number(sol.residuals.max()) << '\n';

    if (o.mc_runs > 0) {
        if (!sol.markov_valid) {
            out << "Monte Carlo check skipped: q is not a probability\n";
        } else {
            ChainConfig cfg;
            cfg.p = sol.p;
            cfg.q = sol.q;
            cfg.runs = o.mc_runs;
            cfg.horizon = std::min(horizon, 40);
            cfg.seed = o.seed;
            cfg.threads = threads_from_env();
            cfg.states = {{sol.k_I, sol.k_M}};
            for (int i = 0; i < sol.n_controls(); ++i) cfg.states.push_back({sol.Y_I(i), sol.Y_M(i)});
            const auto results = ensemble_average(cfg);
            double worst_z = 0.0;
            bool band_ok = true;
            for (std::size_t v = 0; v < results.size(); ++v) {
                const auto& exact = v == 0 ? closed.state : closed.controls[v - 1];
                for (int n = 0; n <= cfg.horizon; ++n) {
                    const double dev = std::abs(results[v].mean[n] - exact[n]);
                    const double se = results[v].stderr_[n];
                    if (dev > 4.0 * se + 1e-12) band_ok = false;
                    if (se > 0.0) worst_z = std::max(worst_z, dev / se);
                }
            }
            out << "Monte Carlo (J=" << cfg.runs << ", seed=" << cfg.seed << ") max |mean - exact| / stderr: "
                << io::format_number(worst_z) << (band_ok ? " within" : " outside") << " 4 standard errors\n";
            pass = pass && band_ok;
        }
    }

    char tol_buf[32];
    std::snprintf(tol_buf, sizeof tol_buf, "%g", o.tol);
    if (pass) {
        out << "PASS, max discrepancy " << io::format_number(worst) << " <= " << tol_buf << '\n';
        return ok;
    }
    out << "FAIL, max discrepancy " << io::format_number(worst) << " (tolerance " << tol_buf << ")\n";
    return solver_failure;
}

int cmd_nk(const Options& o, std::ostream& out, std::ostream&) {
    const nk::NKParams& c = o.nk;
    const auto report = nk::validate(c);
    if (!report.empty()) throw InputError("invalid NK parameters: " + format_report(report));

    nk::NKParams c0 = c;
    c0.h = 0.0;
    const MarkovSolution sol = nk::solve_markov(c);
    const MarkovSolution sol0 = nk::solve_markov(c0);
    const auto habits = nk::from_markov(sol);
    const auto no_habits = nk::from_markov(sol0);
    const auto stats = nk::derived_stats(c, habits);
    const auto fp = nk::fixed_point_q_check(c, habits.q);
    const auto residuals = nk::restriction_residuals(c, habits);

    ordered_json params = {{"beta", c.beta}, {"kappa", c.kappa}, {"phi_pi", c.phi_pi}, {"h", c.h},
                           {"eta", c.eta},   {"p", c.p},         {"xi_I", c.xi_I}};
    ordered_json solution;
    solution["tool"] = tool_json();
    solution["params"] = params;
    solution["solution"] = io::to_json(habits);
    solution["solution_no_habits"] = io::to_json(no_habits);
    solution["markov"] = io::to_json(sol);
    solution["restriction_residuals"] = residuals;
    solution["fixed_point"] = {{"residual", fp.residual}, {"f", fp.f}, {"f_in_range", fp.f_in_range}};

    ordered_json stats_json;
    stats_json["tool"] = tool_json();
    stats_json["derived_stats"] = io::to_json(stats);

    const int horizon = o.horizon.value_or(40);
    if (horizon < 1) throw InputError("horizon must be >= 1");

    if (!o.out_dir.empty()) {
        std::filesystem::create_directories(o.out_dir);
        const std::filesystem::path dir(o.out_dir);
        std::ostream& sink = out;
        write_output((dir / "nk_solution.json").string(), solution.dump(2) + "\n", sink);
        write_output((dir / "nk_derived_stats.json").string(), stats_json.dump(2) + "\n", sink);
        write_output((dir / "nk_irf.csv").string(), io::irf_csv(irf(sol, horizon)), sink);
        write_output((dir / "nk_loci.csv").string(), io::loci_csv(nk::asad_loci(c, habits, no_habits)), sink);
    }
    ordered_json combined = solution;
    combined["derived_stats"] = stats_json["derived_stats"];
    out << combined.dump(2) << '\n';
    return ok;
}

int cmd_figure1(const Options& o, std::ostream& out, std::ostream&) {
    const int horizon = o.horizon.value_or(40);
    if (horizon < 1) throw InputError("horizon must be >= 1");
    const auto table = figure1_experiment(o.seed, horizon, threads_from_env());
    write_output(o.out_path, io::figure1_csv(table), out);
    return ok;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Markov-state solver for linear rational-expectations models", "mums"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1, 1);

    Options o;
    double shock_value = 0.0;
    int horizon_value = 0;
    double beta_value = 0.0;

    auto add_model = [&](CLI::App* sub) {
        sub->add_option("model", o.model_path, "Model JSON file")->required();
        sub->add_option("--out", o.out_path, "Write output to a file instead of stdout");
    };
    auto add_shock = [&](CLI::App* sub) { return sub->add_option("--shock", shock_value, "Impulse size"); };
    auto add_horizon = [&](CLI::App* sub) { return sub->add_option("--horizon", horizon_value, "Periods after impact"); };

    auto* solve = app.add_subcommand("solve", "Solve for q and the Markov states");
    add_model(solve);
    auto* solve_shock = add_shock(solve);
    solve->add_flag("--timing", o.timing, "Include wall-clock timing in the report");

    auto* irf_cmd = app.add_subcommand("irf", "Closed-form impulse responses (CSV)");
    add_model(irf_cmd);
    auto* irf_shock = add_shock(irf_cmd);
    auto* irf_h = add_horizon(irf_cmd);

    auto* pdv_cmd = app.add_subcommand("pdv", "Present discounted value multipliers");
    add_model(pdv_cmd);
    auto* pdv_shock = add_shock(pdv_cmd);
    auto* pdv_beta = pdv_cmd->add_option("--beta", beta_value, "Discount factor in (0, 1)");

    auto* cum_cmd = app.add_subcommand("cumsum", "Cumulative responses");
    add_model(cum_cmd);
    auto* cum_shock = add_shock(cum_cmd);

    auto* sim = app.add_subcommand("simulate", "Monte Carlo ensemble of the Markov chain (CSV)");
    add_model(sim);
    auto* sim_shock = add_shock(sim);
    auto* sim_h = add_horizon(sim);
    sim->add_option("--runs", o.runs, "Number of chain realizations")->check(CLI::PositiveNumber);
    sim->add_option("--seed", o.seed, "Base seed");
    sim->add_option("--variable", o.variable, "exogenous, state, or a control name (default: first control)");

    auto* val = app.add_subcommand("validate", "Cross-check closed form, recurrence and state-space oracle");
    add_model(val);
    auto* val_shock = add_shock(val);
    auto* val_h = add_horizon(val);
    val->add_option("--tol", o.tol, "Agreement tolerance");
    val->add_option("--mc-runs", o.mc_runs, "Also check a Monte Carlo ensemble of this size");
    val->add_option("--seed", o.seed, "Seed for the Monte Carlo check");

    auto* example = app.add_subcommand("example", "Worked applications");
    example->require_subcommand(1, 1);
    auto* nk_cmd = example->add_subcommand("nk-habits", "New Keynesian model with external habits");
    nk_cmd->set_help_flag("--help", "Print this help message and exit");
    nk_cmd->add_option("--beta", o.nk.beta, "Discount factor");
    nk_cmd->add_option("--kappa", o.nk.kappa, "Phillips-curve slope");
    nk_cmd->add_option("--phi-pi", o.nk.phi_pi, "Taylor-rule inflation coefficient");
    nk_cmd->add_option("--h,--habit", o.nk.h, "Habit parameter");
    nk_cmd->add_option("--eta", o.nk.eta, "Labor-supply curvature");
    nk_cmd->add_option("--p", o.nk.p, "Shock persistence");
    nk_cmd->add_option("--xi", o.nk.xi_I, "Impact value of the preference shock");
    auto* nk_h = add_horizon(nk_cmd);
    nk_cmd->add_option("--out-dir", o.out_dir, "Write solution, stats, IRF and loci files here");

    auto* fig = app.add_subcommand("figure1", "Ensemble averages against the ARMA(2,1) path (CSV)");
    fig->add_option("--seed", o.seed, "Base seed");
    auto* fig_h = add_horizon(fig);
    fig->add_option("--out", o.out_path, "Write output to a file instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << "mums " << kVersion << '\n';
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return input_error;
    }

    for (auto* opt : {solve_shock, irf_shock, pdv_shock, cum_shock, sim_shock, val_shock}) {
        if (opt->count()) o.shock = shock_value;
    }
    for (auto* opt : {irf_h, sim_h, val_h, nk_h, fig_h}) {
        if (opt->count()) o.horizon = horizon_value;
    }
    if (pdv_beta->count()) o.beta = beta_value;

    try {
        if (solve->parsed()) return cmd_solve(o, out, err);
        if (irf_cmd->parsed()) return cmd_irf(o, out, err);
        if (pdv_cmd->parsed()) return cmd_pdv(o, out, err);
        if (cum_cmd->parsed()) return cmd_cumsum(o, out, err);
        if (sim->parsed()) return cmd_simulate(o, out, err);
        if (val->parsed()) return cmd_validate(o, out, err);
        if (nk_cmd->parsed()) return cmd_nk(o, out, err);
        if (fig->parsed()) return cmd_figure1(o, out, err);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return input_error;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        for (const auto& d : e.diagnostics()) err << "  " << d << '\n';
        return solver_failure;
    } catch (const DomainError& e) {
        err << "solver error: " << e.what() << '\n';
        return solver_failure;
    }
    err << app.help();
    return input_error;
}

}  // namespace mums::cli
