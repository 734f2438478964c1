#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mums/model.hpp"

// Dense solves and scalar root tracking shared by the two solution routes.
namespace mums::numerics {

// True when the LU reciprocal condition estimate is at machine precision.
bool is_singular(const Matrix& m);

// Solves m x = rhs with partial pivoting. Throws SolverError naming `what`
// when m is numerically singular or when the relative residual
// ||m x - rhs|| / (||m|| ||x|| + ||rhs||) exceeds max_relative_residual.
Vector solve_dense(const Matrix& m, const Vector& rhs, double max_relative_residual,
                   const std::string& what);

double determinant(const Matrix& m);

// Bracketed refinement on [a, b] where f(a) and f(b) differ in sign.
// Returns nullopt if f is undefined (NaN) inside the bracket.
std::optional<double> refine_root(const std::function<double(double)>& f, double a, double b,
                                  double fa, double fb);

struct TrackingOptions {
    int steps = 64;
    double window = 0.2;
    double lower = -1.0;  // open search interval
    double upper = 1.0;
    int samples = 16;
    int max_expansions = 6;
    double residual_tol = 1e-12;
};

struct TrackingPoint {
    double s = 0.0;
    double root = 0.0;
    double residual = 0.0;
    double window = 0.0;
};

struct TrackingTrace {
    std::vector<TrackingPoint> points;
    int expansions = 0;

    double root() const { return points.back().root; }
    double residual() const { return points.back().residual; }
};

// f(s, x) returns nullopt where it is undefined (e.g. a pole).
using Homotopy = std::function<std::optional<double>(double s, double x)>;

// Follows the root of f(s, .) that sits at x = 0 for s = 0 as s goes to 1 in
// uniform steps. At every step the root nearest the previous one is taken from
// a window around it, widened by doubling when no admissible root is found.
// Throws SolverError when the path is lost or leaves (lower, upper).
TrackingTrace track_root(const Homotopy& f, const TrackingOptions& opts = {});

}  // namespace mums::numerics
