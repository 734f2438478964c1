#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mums/irf_path.hpp"
#include "mums/mums_solver.hpp"

namespace mums {

// Picks one series out of a Markov solution.
struct VariableSelector {
    enum class Kind { exogenous, state, control };
    Kind kind = Kind::state;
    int index = 0;  // control index when kind == control

    static VariableSelector exogenous() { return {Kind::exogenous, 0}; }
    static VariableSelector state() { return {Kind::state, 0}; }
    static VariableSelector control(int i) { return {Kind::control, i}; }
};

// Resolves "exogenous", "state" or a control name.
VariableSelector select_variable(const MarkovSolution& sol, const std::string& name);
std::string variable_name(const MarkovSolution& sol, VariableSelector v);

// Impact and medium-run Markov states of the selected series.
std::pair<double, double> markov_states(const MarkovSolution& sol, VariableSelector v);

// (q^n - p^n) / (q - p), continuous through q = p where it equals n p^(n-1).
double transition_kernel(double p, double q, int n);

IrfPath irf(const MarkovSolution& sol, int horizon);

std::vector<double> irf_recurrence(double y_impact, double y_medium, double p, double q, int horizon);

// Present discounted value of the response relative to the discounted path of
// a unit shock: y_I + beta (1-p) / (1 - beta q) y_M.
double pdv(const MarkovSolution& sol, double beta, VariableSelector v);

// Undiscounted sum of the expected path: y_I / (1-p) + y_M / (1-q).
double cumsum(const MarkovSolution& sol, VariableSelector v);

struct OccupancyPath {
    std::vector<double> impact;  // probability of the impact state at n
    std::vector<double> medium;  // probability of the medium-run state at n
};

// Iterates the master equation [p_I, p_M]' <- Q' [p_I, p_M]' from (1, 0).
OccupancyPath occupancy(double p, double q, int horizon);

// n-th power of the substochastic block Q = [[p, 1-p], [0, q]] in closed form.
Eigen::Matrix2d q_matrix_power(double p, double q, int n);

struct HumpReport {
    bool has_hump = false;
    int peak_index = 0;
    double ratio = 0.0;  // E_I[next] / impact = irf(1) / irf(0)
};

HumpReport hump_diagnosis(const MarkovSolution& sol, VariableSelector v, int horizon = 200);

}  // namespace mums
