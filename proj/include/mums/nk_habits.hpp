#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mums/model.hpp"
#include "mums/mums_solver.hpp"

namespace mums::nk {

// Log-linear New Keynesian model with external habits:
//     lambda_t = E lambda_{t+1} + (r_t - E pi_{t+1} - xi_t)
//     pi_t     = beta E pi_{t+1} + kappa (eta y_t - lambda_t)
//     y_t      = h y_{t-1} - (1 - h) lambda_t
//     r_t      = phi_pi pi_t
// driven by an AR(1) preference shock xi with persistence p.
struct NKParams {
    double beta = 0.99;
    double kappa = 0.05;
    double phi_pi = 1.5;
    double h = 0.9;
    double eta = 1.0;
    double p = 0.7;
    double xi_I = -0.01;
};

ValidationReport validate(const NKParams& params);

// Controls (lambda, pi), endogenous state y, exogenous state xi.
ModelSpec build_model(const NKParams& params);

struct NKSolution {
    double q = 0.0;
    double lambda_I = 0.0;
    double lambda_M = 0.0;
    double pi_I = 0.0;
    double pi_M = 0.0;
    double y_I = 0.0;
    double y_M = 0.0;
};

// Solves build_model(params) with the general Markov solver, shock xi_I.
MarkovSolution solve_markov(const NKParams& params, const SolverOptions& opts = {});
NKSolution from_markov(const MarkovSolution& sol);

// Solves the seven model-specific Markov restrictions directly: q from the
// scalar fixed-point condition, then the six states from a linear system.
NKSolution solve_direct(const NKParams& params);

// Residuals of the seven restrictions in the order: Euler (I, M), Phillips
// curve (I, M), marginal-utility law of motion (I, M), AR(2) link.
std::array<double, 7> restriction_residuals(const NKParams& params, const NKSolution& sol);

// f(q) = kappa (phi_pi - q) / ((1 - q)(1 - beta q) + kappa (phi_pi - q)).
double f_weight(const NKParams& params, double q);

struct FixedPointCheck {
    double residual = 0.0;  // q - h + eta q (1 - h) f(q)
    double f = 0.0;
    bool f_in_range = false;  // 0 < f <= 1
};

FixedPointCheck fixed_point_q_check(const NKParams& params, double q);

struct NKDerivedStats {
    double q = 0.0;
    double psi = 0.0;
    double euler_slope_I = 0.0;  // dy_I / d[(phi_pi - p) pi_I - xi_I]
    double pc_slope_I = 0.0;     // dpi_I / dy_I on the short-run Phillips curve
    double pdv_coefficient = 0.0;  // beta q / (1 - beta q)
    double pdv_scaling = 0.0;      // 1 + pdv_coefficient
    double drag = 0.0;             // h y_I / (1 - p)
    // Displacement of the medium-run loci caused by the drag, measured along
    // the output axis at zero inflation...
    double sigma_EE = 0.0;
    double sigma_PC = 0.0;
    // ...and along the inflation axis at zero output.
    double sigma_EE_inflation = 0.0;
    double sigma_PC_inflation = 0.0;
    std::optional<double> shift_ratio;  // sigma_EE / sigma_PC
    double shift_ratio_reference = 0.0;  // 1 + eta (1 - h)
    double q_lower_bound = 0.0;          // 2h - 1
    bool hump = false;                   // p + q > 1
    std::vector<std::string> warnings;
};

NKDerivedStats derived_stats(const NKParams& params, const NKSolution& sol);

struct LociGrid {
    int points = 201;
    double span = 2.0;  // multiple of the equilibrium output displacement
};

struct LociPoint {
    std::string panel;  // short_run | medium_run
    std::string locus;
    double y = 0.0;
    double pi = 0.0;
};

// Short- and medium-run Euler / Phillips loci for the habit model and its
// h = 0 counterpart, plus equilibrium markers.
std::vector<LociPoint> asad_loci(const NKParams& params, const NKSolution& habits, const NKSolution& no_habits,
                                 const LociGrid& grid = {});

// Output-axis slope of each locus family, exposed for tests.
double short_run_pc_slope(const NKParams& params, double q);
double short_run_euler_slope(const NKParams& params, double q);
double psi(const NKParams& params, double q);

}  // namespace mums::nk
