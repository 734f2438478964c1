#include "mums/closed_form.hpp"

#include <cmath>
#include <sstream>

#include "mums/error.hpp"

namespace mums {

namespace {

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

void require_horizon(int horizon) {
    if (horizon < 0) throw InputError("horizon must be >= 0");
}

}  // namespace

VariableSelector select_variable(const MarkovSolution& sol, const std::string& name) {
    if (name == "exogenous") return VariableSelector::exogenous();
    if (name == "state") return VariableSelector::state();
    for (std::size_t i = 0; i < sol.control_names.size(); ++i) {
        if (sol.control_names[i] == name) return VariableSelector::control(static_cast<int>(i));
    }
    throw InputError("unknown variable '" + name + "'");
}

std::string variable_name(const MarkovSolution& sol, VariableSelector v) {
    switch (v.kind) {
        case VariableSelector::Kind::exogenous: return "exogenous";
        case VariableSelector::Kind::state: return "state";
        case VariableSelector::Kind::control:
            if (v.index >= 0 && v.index < static_cast<int>(sol.control_names.size())) return sol.control_names[v.index];
            return "control_" + std::to_string(v.index);
    }
    return {};
}

std::pair<double, double> markov_states(const MarkovSolution& sol, VariableSelector v) {
    switch (v.kind) {
        case VariableSelector::Kind::exogenous: return {sol.shock, 0.0};
        case VariableSelector::Kind::state: return {sol.k_I, sol.k_M};
        case VariableSelector::Kind::control:
            if (v.index < 0 || v.index >= sol.n_controls()) throw InputError("control index out of range");
            return {sol.Y_I(v.index), sol.Y_M(v.index)};
    }
    throw InputError("bad selector");
}

double transition_kernel(double p, double q, int n) {
    if (n <= 0) return 0.0;
    if (q == p) return n * std::pow(p, n - 1);
    const double gap = q - p;
    if (p > 0.0 && std::abs(gap) <= 0.5 * p) {
        // p^(n-1) ((1 + d)^n - 1) / d with d = (q - p) / p, evaluated without
        // cancellation as q approaches p.
        const double d = gap / p;
        const double x = n * std::log1p(d);
        if (std::abs(x) < 1.0) return std::pow(p, n - 1) * std::expm1(x) / d;
    }
    return (std::pow(q, n) - std::pow(p, n)) / gap;
}

IrfPath irf(const MarkovSolution& sol, int horizon) {
    require_horizon(horizon);
    IrfPath path = IrfPath::zeros(horizon, sol.control_names);
    path.controls.resize(static_cast<std::size_t>(sol.n_controls()),
                         std::vector<double>(static_cast<std::size_t>(horizon) + 1));
    const double p = sol.p;
    const double q = sol.q;
    for (int n = 0; n <= horizon; ++n) {
        const double pn = std::pow(p, n);
        const double w = (1.0 - p) * transition_kernel(p, q, n);
        path.exogenous[n] = pn * sol.shock;
        path.state[n] = transition_kernel(p, q, n + 1) * sol.k_I;
        for (int i = 0; i < sol.n_controls(); ++i) path.controls[i][n] = pn * sol.Y_I(i) + w * sol.Y_M(i);
    }
    return path;
}

std::vector<double> irf_recurrence(double y_impact, double y_medium, double p, double q, int horizon) {
    require_horizon(horizon);
    std::vector<double> path(static_cast<std::size_t>(horizon) + 1);
    path[0] = y_impact;
    if (horizon >= 1) path[1] = p * y_impact + (1.0 - p) * y_medium;
    for (int n = 2; n <= horizon; ++n) path[n] = (p + q) * path[n - 1] - p * q * path[n - 2];
    return path;
}

double pdv(const MarkovSolution& sol, double beta, VariableSelector v) {
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("beta must lie in (0, 1)");
    if (!(std::abs(beta * sol.q) < 1.0)) throw DomainError("pdv requires |beta q| < 1, got beta q = " + fmt(beta * sol.q));
    const auto [impact, medium] = markov_states(sol, v);
    return impact + beta * (1.0 - sol.p) / (1.0 - beta * sol.q) * medium;
}

double cumsum(const MarkovSolution& sol, VariableSelector v) {
    if (!(std::abs(sol.q) < 1.0)) throw DomainError("cumulative sum diverges for |q| >= 1, got q = " + fmt(sol.q));
    const auto [impact, medium] = markov_states(sol, v);
    return impact / (1.0 - sol.p) + medium / (1.0 - sol.q);
}

OccupancyPath occupancy(double p, double q, int horizon) {
    require_horizon(horizon);
    if (!(p >= 0.0 && p < 1.0 && q >= 0.0 && q < 1.0)) throw InputError("occupancy requires 0 <= p, q < 1");
    OccupancyPath out;
    out.impact.resize(static_cast<std::size_t>(horizon) + 1);
    out.medium.resize(static_cast<std::size_t>(horizon) + 1);
    Eigen::Vector2d dist(1.0, 0.0);
    Eigen::Matrix2d qt;
    qt << p, 0.0, 1.0 - p, q;  // Q transposed
    for (int n = 0; n <= horizon; ++n) {
        if (n > 0) dist = qt * dist;
        out.impact[n] = dist(0);
        out.medium[n] = dist(1);
    }
    return out;
}

Eigen::Matrix2d q_matrix_power(double p, double q, int n) {
    if (n < 0) throw InputError("matrix power requires n >= 0");
    Eigen::Matrix2d out;
    out << std::pow(p, n), (1.0 - p) * transition_kernel(p, q, n), 0.0, std::pow(q, n);
    return out;
}

HumpReport hump_diagnosis(const MarkovSolution& sol, VariableSelector v, int horizon) {
    if (horizon < 1) throw InputError("hump diagnosis needs horizon >= 1");
    const auto [impact, medium] = markov_states(sol, v);
    if (impact == 0.0) throw DomainError("impact response is zero; ratio undefined");
    const auto path = irf_recurrence(impact, medium, sol.p, sol.q, horizon);
    HumpReport r;
    r.ratio = path[1] / path[0];
    r.has_hump = std::abs(path[1]) > std::abs(path[0]);
    for (int n = 1; n <= horizon; ++n) {
        if (std::abs(path[n]) > std::abs(path[r.peak_index])) r.peak_index = n;
    }
    return r;
}

}  // namespace mums
