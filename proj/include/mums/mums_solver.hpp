#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mums/model.hpp"
#include "mums/msv_oracle.hpp"

namespace mums {

struct QSolution {
    double q = 0.0;
    bool markov_valid = false;
    // Univariate models only: |q - closed-form minus root|.
    std::optional<double> closed_form_discrepancy;
    numerics::TrackingTrace trace;
};

// Residuals of the five Markov restrictions, infinity norm each.
struct RestrictionReport {
    double forward_impact = 0.0;   // A0 Y_I = A (p Y_I + (1-p) Y_M) + B k_I + C shock
    double forward_medium = 0.0;   // A0 Y_M = q A Y_M + B k_M
    double backward_impact = 0.0;  // k_I = D0 Y_I + e shock
    double backward_medium = 0.0;  // k_M = rho k_I / (1-p) + D0 Y_M
    double ar2_link = 0.0;         // k_M = q k_I / (1-p)

    double max() const;
};

/*
 * Three-state Markov representation of the model after an impulse: the chain
 * starts in the impact state (z = shock, k_I, Y_I), moves to the medium-run
 * state (z = 0, k_M, Y_M) with probability 1-p, and from there to the
 * absorbing steady state with probability 1-q.
 */
struct MarkovSolution {
    double q = 0.0;
    double k_I = 0.0;
    double k_M = 0.0;
    Vector Y_I;
    Vector Y_M;
    double p = 0.0;
    double shock = 1.0;
    bool markov_valid = false;  // 0 <= q < 1
    bool q_equals_p = false;    // closed forms use the q = p limit
    std::vector<std::string> control_names;
    RestrictionReport residuals;

    int n_controls() const { return static_cast<int>(Y_I.size()); }
};

// Scaled bordered determinant whose zeros are the admissible q:
//     det [[A0 - qA, -sB], [-s q D0, q - s rho]]
// rows normalized by fixed scales. Zero set equals that of the
// characteristic residual wherever A0 - qA is invertible.
double markov_determinant(const ReducedModel& reduced, double s, double q);

QSolution solve_q(const ModelSpec& model, const SolverOptions& opts = {});

MarkovSolution solve_states(const ModelSpec& model, double q, ShockImpulse shock = {},
                            const SolverOptions& opts = {});

// solve_q followed by solve_states.
MarkovSolution solve_markov(const ModelSpec& model, ShockImpulse shock = {}, const SolverOptions& opts = {});

RestrictionReport verify_restrictions(const MarkovSolution& sol, const ModelSpec& model);

struct ConditionalExpectations {
    // Next-period expectations given the chain sits in the impact state...
    Vector controls_impact;
    double state_impact = 0.0;
    double exogenous_impact = 0.0;
    // ...and given it sits in the medium-run state.
    Vector controls_medium;
    double state_medium = 0.0;
    double exogenous_medium = 0.0;
};

ConditionalExpectations conditional_expectations(const MarkovSolution& sol);

}  // namespace mums
