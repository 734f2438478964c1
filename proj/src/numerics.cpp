#include "mums/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "mums/error.hpp"

namespace mums::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

}  // namespace

bool is_singular(const Matrix& m) {
    if (m.rows() == 0) return false;
    Eigen::PartialPivLU<Matrix> lu(m);
    const double rc = lu.rcond();
    return !(rc > kEps * static_cast<double>(m.rows()));
}

Vector solve_dense(const Matrix& m, const Vector& rhs, double max_relative_residual,
                   const std::string& what) {
    Eigen::PartialPivLU<Matrix> lu(m);
    const double rc = lu.rcond();
    if (!(rc > kEps * static_cast<double>(m.rows()))) {
        throw SolverError("singular linear system: " + what,
                          {"reciprocal condition estimate " + fmt(rc)});
    }
    Vector x = lu.solve(rhs);
    const double scale = m.lpNorm<Eigen::Infinity>() * x.lpNorm<Eigen::Infinity>() +
                         rhs.lpNorm<Eigen::Infinity>();
    const double res = (m * x - rhs).lpNorm<Eigen::Infinity>();
    const double rel = scale > 0.0 ? res / scale : res;
    if (!(rel <= max_relative_residual)) {
        throw SolverError("ill-conditioned linear system: " + what,
                          {"relative residual " + fmt(rel), "reciprocal condition estimate " + fmt(rc)});
    }
    return x;
}

double determinant(const Matrix& m) { return Eigen::PartialPivLU<Matrix>(m).determinant(); }

std::optional<double> refine_root(const std::function<double(double)>& f, double a, double b,
                                  double fa, double fb) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::isnan(fa) || std::isnan(fb) || (fa > 0) == (fb > 0)) return std::nullopt;

    auto tol = [](double lo, double hi) {
        return std::abs(hi - lo) <= 4.0 * kEps * std::max({std::abs(lo), std::abs(hi), 1e-3});
    };
    std::uintmax_t max_iter = 300;
    try {
        const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, max_iter);
        const double flo = f(lo);
        const double fhi = f(hi);
        if (std::isnan(flo) || std::isnan(fhi)) return std::nullopt;
        return std::abs(flo) <= std::abs(fhi) ? lo : hi;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

TrackingTrace track_root(const Homotopy& f, const TrackingOptions& opts) {
    TrackingTrace trace;
    const auto at0 = f(0.0, 0.0);
    if (!at0 || std::abs(*at0) > opts.residual_tol) {
        throw SolverError("homotopy start is not a root",
                          {"f(0, 0) = " + (at0 ? fmt(*at0) : std::string("undefined"))});
    }
    trace.points.push_back({0.0, 0.0, std::abs(*at0), opts.window});

    // Keep samples strictly inside the open search interval.
    const double lo_bound = opts.lower + 64 * kEps * std::max(1.0, std::abs(opts.lower));
    const double hi_bound = opts.upper - 64 * kEps * std::max(1.0, std::abs(opts.upper));
    const int half = std::max(opts.samples / 2, 1);

    double prev = 0.0;
    for (int k = 1; k <= opts.steps; ++k) {
        const double s = static_cast<double>(k) / opts.steps;
        auto g = [&](double x) {
            const auto v = f(s, x);
            return v ? *v : std::numeric_limits<double>::quiet_NaN();
        };

        double w = opts.window;
        std::optional<double> best;
        double best_res = 0.0;
        for (int attempt = 0; attempt <= opts.max_expansions && !best; ++attempt) {
            if (attempt > 0) {
                w *= 2.0;
                ++trace.expansions;
            }
            std::vector<double> xs;
            for (int j = -half; j <= half; ++j) {
                const double x = prev + w * static_cast<double>(j) / half;
                if (x > lo_bound && x < hi_bound) xs.push_back(x);
            }
            if (prev - w <= lo_bound) xs.insert(xs.begin(), lo_bound);
            if (prev + w >= hi_bound) xs.push_back(hi_bound);

            std::vector<double> fs(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = g(xs[i]);

            auto consider = [&](double x) {
                const double r = std::abs(g(x));
                if (!(r <= opts.residual_tol)) return;
                if (!best || std::abs(x - prev) < std::abs(*best - prev)) {
                    best = x;
                    best_res = r;
                }
            };
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (fs[i] == 0.0) consider(xs[i]);
                if (i + 1 < xs.size()) {
                    const double fa = fs[i];
                    const double fb = fs[i + 1];
                    if (std::isnan(fa) || std::isnan(fb) || fa == 0.0 || fb == 0.0) continue;
                    if ((fa > 0) != (fb > 0)) {
                        if (auto r = refine_root(g, xs[i], xs[i + 1], fa, fb)) consider(*r);
                    }
                }
            }
            if (prev - w <= lo_bound && prev + w >= hi_bound) break;  // whole interval searched
        }
        if (!best) {
            std::vector<std::string> diag;
            diag.push_back("continuation parameter s = " + fmt(s));
            diag.push_back("last root " + fmt(prev) + " at s = " + fmt(trace.points.back().s));
            diag.push_back("search interval (" + fmt(opts.lower) + ", " + fmt(opts.upper) + ")");
            throw SolverError("homotopy path lost: no admissible root near the tracked branch", diag);
        }
        trace.points.push_back({s, *best, best_res, w});
        prev = *best;
    }
    return trace;
}

}  // namespace mums::numerics
