#include "mums/nk_habits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mums/error.hpp"
#include "mums/numerics.hpp"

namespace mums::nk {

namespace {

void require_valid(const NKParams& params) {
    const auto report = validate(params);
    if (!report.empty()) throw InputError("invalid NK parameters: " + format_report(report));
}

// Medium-run loci in the (y_M, pi_M) plane with drag d = h y_I / (1 - p).
double medium_euler(const NKParams& c, double q, double d, double y) {
    return (1.0 - q) * (d - y) / ((1.0 - c.h) * (c.phi_pi - q));
}

double medium_pc(const NKParams& c, double q, double d, double y) {
    return c.kappa / (1.0 - c.beta * q) * ((c.eta + 1.0 / (1.0 - c.h)) * y - d / (1.0 - c.h));
}

// Short-run loci in the (y_I, pi_I) plane.
double short_euler(const NKParams& c, double q, double y) {
    const double slope = short_run_euler_slope(c, q);
    return (y / slope + c.xi_I) / (c.phi_pi - c.p);
}

double short_pc(const NKParams& c, double q, double y) { return short_run_pc_slope(c, q) * y; }

// Output at which a linear locus crosses a given inflation level, from two
// evaluations of the locus.
template <class Locus>
double output_at(Locus locus, double pi_level) {
    const double y0 = 0.0;
    const double y1 = 1.0;
    const double p0 = locus(y0);
    const double p1 = locus(y1);
    return y0 + (pi_level - p0) * (y1 - y0) / (p1 - p0);
}

}  // namespace

ValidationReport validate(const NKParams& c) {
    ValidationReport r;
    const std::pair<const char*, double> fields[] = {{"beta", c.beta}, {"kappa", c.kappa}, {"phi_pi", c.phi_pi},
                                                     {"h", c.h},       {"eta", c.eta},     {"p", c.p},
                                                     {"xi_I", c.xi_I}};
    for (const auto& [name, v] : fields) {
        if (!std::isfinite(v)) r.push_back({name, "must be finite"});
    }
    if (!(c.beta > 0.0 && c.beta < 1.0)) r.push_back({"beta", "must satisfy 0 < beta < 1"});
    if (!(c.kappa > 0.0)) r.push_back({"kappa", "must be > 0"});
    if (!(c.phi_pi > 1.0)) r.push_back({"phi_pi", "must be > 1"});
    if (!(c.h >= 0.0 && c.h < 1.0)) r.push_back({"h", "must satisfy 0 <= h < 1"});
    if (!(c.p >= 0.0 && c.p < 1.0)) r.push_back({"p", "must satisfy 0 <= p < 1"});
    return r;
}

ModelSpec build_model(const NKParams& c) {
    require_valid(c);
    ModelSpec m;
    m.n_controls = 2;
    m.control_names = {"lambda", "pi"};
    m.A0.resize(2, 2);
    m.A1.resize(2, 2);
    // Euler: lambda - phi_pi pi = E lambda' - E pi' - xi
    // NKPC:  kappa lambda + pi  = beta E pi' + kappa eta y
    m.A0 << 1.0, -c.phi_pi, c.kappa, 1.0;
    m.A1 << 1.0, -1.0, 0.0, c.beta;
    m.B0 = Vector::Zero(2);
    m.B0(1) = c.kappa * c.eta;
    m.B1 = Vector::Zero(2);
    m.C0 = Vector::Zero(2);
    m.C0(0) = -1.0;
    m.D0 = RowVector::Zero(2);
    m.D0(0) = -(1.0 - c.h);
    m.rho = c.h;
    m.e = 0.0;
    m.p = c.p;
    return m;
}

MarkovSolution solve_markov(const NKParams& params, const SolverOptions& opts) {
    return mums::solve_markov(build_model(params), ShockImpulse{params.xi_I}, opts);
}

NKSolution from_markov(const MarkovSolution& sol) {
    if (sol.n_controls() != 2) throw InputError("not an NK habits solution");
    NKSolution s;
    s.q = sol.q;
    s.lambda_I = sol.Y_I(0);
    s.pi_I = sol.Y_I(1);
    s.lambda_M = sol.Y_M(0);
    s.pi_M = sol.Y_M(1);
    s.y_I = sol.k_I;
    s.y_M = sol.k_M;
    return s;
}

double f_weight(const NKParams& c, double q) {
    const double num = c.kappa * (c.phi_pi - q);
    return num / ((1.0 - q) * (1.0 - c.beta * q) + num);
}

FixedPointCheck fixed_point_q_check(const NKParams& c, double q) {
    FixedPointCheck out;
    out.f = f_weight(c, q);
    out.residual = q - c.h + c.eta * q * (1.0 - c.h) * out.f;
    out.f_in_range = out.f > 0.0 && out.f <= 1.0;
    return out;
}

NKSolution solve_direct(const NKParams& c) {
    require_valid(c);
    double q = 0.0;
    if (c.h > 0.0) {
        // residual(0) = -h < 0 and residual(h) >= 0: the root is bracketed.
        auto g = [&c](double x) { return fixed_point_q_check(c, x).residual; };
        const auto root = numerics::refine_root(g, 0.0, c.h, g(0.0), g(c.h));
        if (!root) throw SolverError("no fixed point for q in [0, h]");
        q = *root;
    }

    const double p = c.p;
    const double b = c.beta;
    const double k = c.kappa;
    const double phi = c.phi_pi;
    // Unknowns: lambda_I, lambda_M, pi_I, pi_M, y_I, y_M.
    Matrix a = Matrix::Zero(6, 6);
    Vector rhs = Vector::Zero(6);
    a.row(0) << 1.0 - p, -(1.0 - p), -(phi - p), 1.0 - p, 0.0, 0.0;
    rhs(0) = -c.xi_I;
    a.row(1) << 0.0, 1.0 - q, 0.0, -(phi - q), 0.0, 0.0;
    a.row(2) << k, 0.0, 1.0 - b * p, -b * (1.0 - p), -k * c.eta, 0.0;
    a.row(3) << 0.0, k, 0.0, 1.0 - b * q, 0.0, -k * c.eta;
    a.row(4) << 1.0 - c.h, 0.0, 0.0, 0.0, 1.0, 0.0;
    a.row(5) << 0.0, 0.0, 0.0, 0.0, -q / (1.0 - p), 1.0;
    const Vector x = numerics::solve_dense(a, rhs, 1e-8, "NK Markov restrictions");

    NKSolution s;
    s.q = q;
    s.lambda_I = x(0);
    s.lambda_M = x(1);
    s.pi_I = x(2);
    s.pi_M = x(3);
    s.y_I = x(4);
    s.y_M = x(5);
    return s;
}

std::array<double, 7> restriction_residuals(const NKParams& c, const NKSolution& s) {
    const double p = c.p;
    const double q = s.q;
    return {
        std::abs(s.lambda_I - (p * s.lambda_I + (1 - p) * s.lambda_M + (c.phi_pi - p) * s.pi_I - (1 - p) * s.pi_M -
                               c.xi_I)),
        std::abs(s.lambda_M - (q * s.lambda_M + (c.phi_pi - q) * s.pi_M)),
        std::abs(s.pi_I - (c.beta * (p * s.pi_I + (1 - p) * s.pi_M) + c.kappa * (c.eta * s.y_I - s.lambda_I))),
        std::abs(s.pi_M - (c.beta * q * s.pi_M + c.kappa * (c.eta * s.y_M - s.lambda_M))),
        std::abs(s.y_I + (1 - c.h) * s.lambda_I),
        std::abs(s.y_M - (c.h / (1 - p) * s.y_I - (1 - c.h) * s.lambda_M)),
        std::abs(s.y_M - q / (1 - p) * s.y_I),
    };
}

double psi(const NKParams& c, double q) {
    return c.kappa / (1.0 - c.beta * q) * (c.eta * q + (q - c.h) / (1.0 - c.h));
}

double short_run_euler_slope(const NKParams& c, double q) {
    const double den = 1.0 - c.p + c.h - q - (1.0 - c.h) * psi(c, q);
    if (den == 0.0) throw DomainError("short-run Euler slope denominator vanishes");
    return -(1.0 - c.h) / den;
}

double short_run_pc_slope(const NKParams& c, double q) {
    return (c.beta * psi(c, q) + c.kappa * (c.eta + 1.0 / (1.0 - c.h))) / (1.0 - c.beta * c.p);
}

NKDerivedStats derived_stats(const NKParams& c, const NKSolution& s) {
    require_valid(c);
    NKDerivedStats d;
    const double q = s.q;
    d.q = q;
    d.psi = psi(c, q);
    try {
        d.euler_slope_I = short_run_euler_slope(c, q);
    } catch (const DomainError& e) {
        d.euler_slope_I = std::numeric_limits<double>::quiet_NaN();
        d.warnings.emplace_back(e.what());
    }
    d.pc_slope_I = short_run_pc_slope(c, q);
    if (c.beta * q >= 1.0) {
        d.pdv_coefficient = std::numeric_limits<double>::quiet_NaN();
        d.warnings.emplace_back("beta q >= 1: PDV scaling undefined");
    } else {
        d.pdv_coefficient = c.beta * q / (1.0 - c.beta * q);
    }
    d.pdv_scaling = 1.0 + d.pdv_coefficient;
    d.drag = c.h * s.y_I / (1.0 - c.p);

    auto ee = [&](double drag) { return [&c, q, drag](double y) { return medium_euler(c, q, drag, y); }; };
    auto pc = [&](double drag) { return [&c, q, drag](double y) { return medium_pc(c, q, drag, y); }; };
    d.sigma_EE = std::abs(output_at(ee(d.drag), 0.0) - output_at(ee(0.0), 0.0));
    d.sigma_PC = std::abs(output_at(pc(d.drag), 0.0) - output_at(pc(0.0), 0.0));
    d.sigma_EE_inflation = std::abs(ee(d.drag)(0.0) - ee(0.0)(0.0));
    d.sigma_PC_inflation = std::abs(pc(d.drag)(0.0) - pc(0.0)(0.0));
    if (d.sigma_PC > 0.0) {
        d.shift_ratio = d.sigma_EE / d.sigma_PC;
    } else {
        d.warnings.emplace_back("medium-run Phillips curve does not shift: shift ratio undefined");
    }
    d.shift_ratio_reference = 1.0 + c.eta * (1.0 - c.h);
    d.q_lower_bound = 2.0 * c.h - 1.0;
    d.hump = c.p + q > 1.0;
    return d;
}

std::vector<LociPoint> asad_loci(const NKParams& c, const NKSolution& habits, const NKSolution& no_habits,
                                 const LociGrid& grid) {
    if (grid.points < 2) throw InputError("loci grid needs at least two points");
    if (!(grid.span > 0.0)) throw InputError("loci grid span must be > 0");
    NKParams c0 = c;
    c0.h = 0.0;

    std::vector<LociPoint> out;
    auto sweep = [&](const std::string& panel, const std::string& locus, double half_width, auto&& fn) {
        for (int i = 0; i < grid.points; ++i) {
            const double y = -half_width + 2.0 * half_width * i / (grid.points - 1);
            out.push_back({panel, locus, y, fn(y)});
        }
    };

    double sr = grid.span * std::max(std::abs(habits.y_I), std::abs(no_habits.y_I));
    if (sr == 0.0) sr = grid.span;
    double mr = grid.span * std::abs(habits.y_M);
    if (mr == 0.0) mr = sr;

    const double d_h = c.h * habits.y_I / (1.0 - c.p);
    sweep("short_run", "EE_habits", sr, [&](double y) { return short_euler(c, habits.q, y); });
    sweep("short_run", "PC_habits", sr, [&](double y) { return short_pc(c, habits.q, y); });
    sweep("short_run", "EE_no_habits", sr, [&](double y) { return short_euler(c0, no_habits.q, y); });
    sweep("short_run", "PC_no_habits", sr, [&](double y) { return short_pc(c0, no_habits.q, y); });
    out.push_back({"short_run", "equilibrium_habits", habits.y_I, habits.pi_I});
    out.push_back({"short_run", "equilibrium_no_habits", no_habits.y_I, no_habits.pi_I});

    sweep("medium_run", "EE_habits", mr, [&](double y) { return medium_euler(c, habits.q, d_h, y); });
    sweep("medium_run", "PC_habits", mr, [&](double y) { return medium_pc(c, habits.q, d_h, y); });
    sweep("medium_run", "EE_no_habits", mr, [&](double y) { return medium_euler(c0, no_habits.q, 0.0, y); });
    sweep("medium_run", "PC_no_habits", mr, [&](double y) { return medium_pc(c0, no_habits.q, 0.0, y); });
    out.push_back({"medium_run", "equilibrium_habits", habits.y_M, habits.pi_M});
    out.push_back({"medium_run", "equilibrium_no_habits", no_habits.y_M, no_habits.pi_M});
    return out;
}

}  // namespace mums::nk
