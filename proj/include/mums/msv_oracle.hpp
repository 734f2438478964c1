#pragma once

#include <optional>

#include "mums/irf_path.hpp"
#include "mums/model.hpp"
#include "mums/numerics.hpp"

namespace mums {

struct SolverOptions {
    int homotopy_steps = 64;
    double homotopy_window = 0.2;
    double root_tol = 1e-12;
    // Relative residual above which a dense solve is rejected.
    double linear_residual_guard = 1e-8;
    // Identification residuals (state-space route).
    double identification_tol = 1e-10;
    // Markov restriction residuals, relative to max(1, |shock|).
    double restriction_tol = 1e-8;
};

// Minimum-state-variable solution in state-space form:
//     k_t = eta_kk k_{t-1} + eta_kz z_t
//     Y_t = eta_yk k_{t-1} + eta_yz z_t
struct StateSpaceSolution {
    double eta_kk = 0.0;
    double eta_kz = 0.0;
    Vector eta_yk;
    Vector eta_yz;

    bool stationary = false;    // |eta_kk| < 1
    bool markov_valid = false;  // 0 <= eta_kk < 1

    double root_residual = 0.0;
    double uc_k_residual = 0.0;  // A0 M_k - eta_k A M_k - B eta_k and eta_k - rho - D0 M_k
    double uc_z_residual = 0.0;  // the z-coefficient system
    numerics::TrackingTrace trace;
};

// f(x) = x - rho - x D0 (A0 - x A)^{-1} B. Throws DomainError if A0 - x A is singular.
double characteristic_residual(const ReducedModel& reduced, double x);

// Same as above but for the homotopy member with (B, D0, rho) scaled by s;
// nullopt where A0 - x A is singular.
std::optional<double> scaled_characteristic_residual(const ReducedModel& reduced, double s, double x);

// Real roots of a x^2 - (1 + a rho - b d) x + rho = 0 for a univariate model
// normalized by A0. Returns the root that vanishes with b = d = rho = 0.
// Throws SolverError for a negative discriminant.
double univariate_msv_root(const ReducedModel& reduced);

StateSpaceSolution solve_msv(const ModelSpec& model, const SolverOptions& opts = {});

// Forward iteration of the state-space law of motion from k_{-1} = 0 with
// z_n = p^n shock.
IrfPath iterate_irf(const StateSpaceSolution& sol, const ModelSpec& model, int horizon,
                    ShockImpulse shock = {});

}  // namespace mums
