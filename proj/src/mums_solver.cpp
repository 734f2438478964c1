#include "mums/mums_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mums/error.hpp"
#include "mums/numerics.hpp"

namespace mums {

namespace {

// |q - p| below which the two are treated as coinciding.
constexpr double kCoincidence = 1e-9;

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

std::vector<std::string> residual_lines(const RestrictionReport& r) {
    return {"forward_impact " + fmt(r.forward_impact), "forward_medium " + fmt(r.forward_medium),
            "backward_impact " + fmt(r.backward_impact), "backward_medium " + fmt(r.backward_medium),
            "ar2_link " + fmt(r.ar2_link)};
}

}  // namespace

double RestrictionReport::max() const {
    return std::max({forward_impact, forward_medium, backward_impact, backward_medium, ar2_link});
}

double markov_determinant(const ReducedModel& red, double s, double q) {
    const int n = red.n_controls();
    Matrix bordered(n + 1, n + 1);
    bordered.topLeftCorner(n, n) = red.A0 - q * red.A;
    bordered.topRightCorner(n, 1) = -s * red.B;
    bordered.bottomLeftCorner(1, n) = -s * q * red.D0;
    bordered(n, n) = q - s * red.rho;

    // Row scales bound each row over q in [-1, 1], s in [0, 1]; they do not
    // depend on (s, q), so sign changes are preserved.
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        const double r = red.A0.row(i).lpNorm<1>() + red.A.row(i).lpNorm<1>() + std::abs(red.B(i));
        scale *= r > 0.0 ? r : 1.0;
    }
    scale *= red.D0.lpNorm<1>() + 1.0 + std::abs(red.rho);
    return numerics::determinant(bordered) / scale;
}

QSolution solve_q(const ModelSpec& model, const SolverOptions& opts) {
    const ReducedModel red = reduce(model);
    std::optional<double> closed_form;
    if (red.n_controls() == 1) closed_form = univariate_msv_root(red);

    numerics::TrackingOptions track;
    track.steps = opts.homotopy_steps;
    track.window = opts.homotopy_window;
    track.residual_tol = opts.root_tol;

    QSolution out;
    out.trace = numerics::track_root(
        [&red](double s, double q) -> std::optional<double> { return markov_determinant(red, s, q); }, track);
    out.q = out.trace.root();
    out.markov_valid = out.q >= 0.0 && out.q < 1.0;
    if (closed_form) {
        out.closed_form_discrepancy = std::abs(out.q - *closed_form);
        if (*out.closed_form_discrepancy > 1e-8 * std::max(1.0, std::abs(*closed_form))) {
            throw SolverError("tracked root disagrees with the closed-form MSV root",
                              {"tracked q " + fmt(out.q), "closed form " + fmt(*closed_form)});
        }
    }
    return out;
}

MarkovSolution solve_states(const ModelSpec& model, double q, ShockImpulse shock, const SolverOptions& opts) {
    const ReducedModel red = reduce(model);
    if (!std::isfinite(shock.size)) throw InputError("shock must be finite");
    if (!std::isfinite(q)) throw InputError("q must be finite");

    // Medium-run controls per unit of k_M.
    const Matrix m = red.A0 - q * red.A;
    const Vector per_km = numerics::solve_dense(m, red.B, opts.linear_residual_guard, "A0 - q A");

    // Impact system with Y_M and k_M substituted out.
    const Vector g = q * (red.A * per_km) + red.B;
    const Matrix impact = red.A0 - red.p * red.A - g * red.D0;
    const Vector rhs = (g * red.e + red.C) * shock.size;

    MarkovSolution sol;
    sol.Y_I = numerics::solve_dense(impact, rhs, opts.linear_residual_guard, "impact system");
    sol.k_I = (red.D0 * sol.Y_I)(0) + red.e * shock.size;
    sol.k_M = q * sol.k_I / (1.0 - red.p);
    sol.Y_M = per_km * sol.k_M;
    sol.q = q;
    sol.p = red.p;
    sol.shock = shock.size;
    sol.markov_valid = q >= 0.0 && q < 1.0;
    sol.q_equals_p = std::abs(q - red.p) < kCoincidence;
    sol.control_names = model.control_names;

    sol.residuals = verify_restrictions(sol, model);
    const double tol = opts.restriction_tol * std::max(1.0, std::abs(shock.size));
    if (!(sol.residuals.max() <= tol)) {
        throw SolverError("Markov restriction residuals above tolerance " + fmt(tol),
                          residual_lines(sol.residuals));
    }
    return sol;
}

MarkovSolution solve_markov(const ModelSpec& model, ShockImpulse shock, const SolverOptions& opts) {
    const QSolution qs = solve_q(model, opts);
    return solve_states(model, qs.q, shock, opts);
}

RestrictionReport verify_restrictions(const MarkovSolution& sol, const ModelSpec& model) {
    const ReducedModel red = reduce(model);
    const double p = red.p;
    const double q = sol.q;
    RestrictionReport r;
    r.forward_impact = (red.A0 * sol.Y_I - red.A * (p * sol.Y_I + (1.0 - p) * sol.Y_M) - red.B * sol.k_I -
                        red.C * sol.shock)
                           .lpNorm<Eigen::Infinity>();
    r.forward_medium = (red.A0 * sol.Y_M - q * (red.A * sol.Y_M) - red.B * sol.k_M).lpNorm<Eigen::Infinity>();
    r.backward_impact = std::abs(sol.k_I - (red.D0 * sol.Y_I)(0) - red.e * sol.shock);
    r.backward_medium = std::abs(sol.k_M - red.rho * sol.k_I / (1.0 - p) - (red.D0 * sol.Y_M)(0));
    r.ar2_link = std::abs(sol.k_M - q * sol.k_I / (1.0 - p));
    return r;
}

ConditionalExpectations conditional_expectations(const MarkovSolution& sol) {
    ConditionalExpectations ce;
    const double p = sol.p;
    ce.controls_impact = p * sol.Y_I + (1.0 - p) * sol.Y_M;
    ce.state_impact = p * sol.k_I + (1.0 - p) * sol.k_M;
    ce.exogenous_impact = p * sol.shock;
    ce.controls_medium = sol.q * sol.Y_M;
    ce.state_medium = sol.q * sol.k_M;
    ce.exogenous_medium = 0.0;
    return ce;
}

}  // namespace mums
