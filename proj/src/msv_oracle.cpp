#include "mums/msv_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
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

double inf_norm(const Eigen::Ref<const Matrix>& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

double max_abs_difference(const IrfPath& a, const IrfPath& b) {
    auto diff = [](const std::vector<double>& x, const std::vector<double>& y) {
        if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
        double m = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
        return m;
    };
    if (a.controls.size() != b.controls.size()) return std::numeric_limits<double>::infinity();
    double m = std::max(diff(a.exogenous, b.exogenous), diff(a.state, b.state));
    for (std::size_t i = 0; i < a.controls.size(); ++i) m = std::max(m, diff(a.controls[i], b.controls[i]));
    return m;
}

std::optional<double> scaled_characteristic_residual(const ReducedModel& reduced, double s, double x) {
    const Matrix m = reduced.A0 - x * reduced.A;
    Eigen::PartialPivLU<Matrix> lu(m);
    if (!(lu.rcond() > std::numeric_limits<double>::epsilon() * static_cast<double>(m.rows()))) {
        return std::nullopt;
    }
    const Vector v = lu.solve(reduced.B);
    const double coupling = (reduced.D0 * v)(0);
    return x - s * reduced.rho - x * s * s * coupling;
}

double characteristic_residual(const ReducedModel& reduced, double x) {
    const auto f = scaled_characteristic_residual(reduced, 1.0, x);
    if (!f) throw DomainError("A0 - x A is singular at x = " + fmt(x));
    return *f;
}

double univariate_msv_root(const ReducedModel& reduced) {
    if (reduced.n_controls() != 1) throw InputError("univariate_msv_root requires a single control");
    const double a0 = reduced.A0(0, 0);
    if (a0 == 0.0) throw DomainError("A0 - x A is singular at x = 0");
    const double a = reduced.A(0, 0) / a0;
    const double bd = reduced.B(0) * reduced.D0(0) / a0;
    const double rho = reduced.rho;
    const double k = 1.0 + a * rho - bd;
    const double disc = k * k - 4.0 * a * rho;
    if (disc < 0.0) {
        throw SolverError("complex characteristic roots: no unique real MSV equilibrium",
                          {"discriminant " + fmt(disc)});
    }
    const double sq = std::sqrt(disc);
    // (k - sq) / (2a) rewritten to avoid cancellation; equal whenever a != 0.
    if (k + sq != 0.0) return 2.0 * rho / (k + sq);
    return (k - sq) / (2.0 * a);
}

StateSpaceSolution solve_msv(const ModelSpec& model, const SolverOptions& opts) {
    const ReducedModel red = reduce(model);
    if (red.n_controls() == 1) (void)univariate_msv_root(red);  // rejects complex roots

    numerics::TrackingOptions track;
    track.steps = opts.homotopy_steps;
    track.window = opts.homotopy_window;
    track.residual_tol = opts.root_tol;

    StateSpaceSolution sol;
    sol.trace = numerics::track_root(
        [&red](double s, double x) { return scaled_characteristic_residual(red, s, x); }, track);
    const double eta = sol.trace.root();
    sol.eta_kk = eta;
    sol.root_residual = std::abs(characteristic_residual(red, eta));
    sol.stationary = std::abs(eta) < 1.0;
    sol.markov_valid = eta >= 0.0 && eta < 1.0;

    const Matrix m = red.A0 - eta * red.A;
    const Vector mk = numerics::solve_dense(m, red.B * eta, opts.linear_residual_guard, "A0 - eta_kk A");
    const Vector g = red.A * mk + red.B;
    const Matrix lz = red.A0 - red.p * red.A - g * red.D0;
    const Vector mz = numerics::solve_dense(lz, g * red.e + red.C, opts.linear_residual_guard,
                                            "z-coefficient identification system");
    const double eta_z = (red.D0 * mz)(0) + red.e;

    sol.eta_yk = mk;
    sol.eta_yz = mz;
    sol.eta_kz = eta_z;

    const double uc1 = (red.A0 * mk - eta * red.A * mk - red.B * eta).lpNorm<Eigen::Infinity>();
    const double uc2 = std::abs(eta - red.rho - (red.D0 * mk)(0));
    sol.uc_k_residual = std::max(uc1, uc2);
    const double z1 =
        (red.A0 * mz - eta_z * red.A * mk - red.p * red.A * mz - red.B * eta_z - red.C).lpNorm<Eigen::Infinity>();
    const double z2 = std::abs(eta_z - (red.D0 * mz)(0) - red.e);
    sol.uc_z_residual = std::max(z1, z2);

    const double scale_k = std::max({1.0, inf_norm(red.A0) * mk.lpNorm<Eigen::Infinity>(),
                                     red.B.lpNorm<Eigen::Infinity>() * std::abs(eta), std::abs(red.rho)});
    const double scale_z = std::max({1.0, inf_norm(red.A0) * mz.lpNorm<Eigen::Infinity>(),
                                     red.C.lpNorm<Eigen::Infinity>(), std::abs(eta_z)});
    if (sol.uc_k_residual > opts.identification_tol * scale_k ||
        sol.uc_z_residual > opts.identification_tol * scale_z) {
        throw SolverError("identification residuals above tolerance",
                          {"k-system residual " + fmt(sol.uc_k_residual),
                           "z-system residual " + fmt(sol.uc_z_residual)});
    }
    return sol;
}

IrfPath iterate_irf(const StateSpaceSolution& sol, const ModelSpec& model, int horizon, ShockImpulse shock) {
    if (horizon < 1) throw InputError("horizon must be >= 1");
    const int n = static_cast<int>(sol.eta_yk.size());
    IrfPath path = IrfPath::zeros(horizon, model.control_names);
    path.controls.resize(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(horizon) + 1));
    double z = shock.size;
    double k_prev = 0.0;
    for (int t = 0; t <= horizon; ++t) {
        if (t > 0) z *= model.p;
        const double k = sol.eta_kk * k_prev + sol.eta_kz * z;
        for (int i = 0; i < n; ++i) path.controls[i][t] = sol.eta_yk(i) * k_prev + sol.eta_yz(i) * z;
        path.exogenous[t] = z;
        path.state[t] = k;
        k_prev = k;
    }
    return path;
}

}  // namespace mums
