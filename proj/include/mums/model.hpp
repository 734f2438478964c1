#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mums {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

/*
 * Linear rational-expectations model with N controls Y, one endogenous
 * state k and one exogenous AR(1) state z:
 *
 *     A0 Y_t = A1 E_t Y_{t+1} + B0 k_t + B1 E_t k_{t+1} + C0 z_t
 *     k_t    = rho k_{t-1} + D0 Y_t + e z_t
 *     z_t    = p z_{t-1} + eps_t
 */
struct ModelSpec {
    int n_controls = 0;
    std::vector<std::string> control_names;
    Matrix A0;
    Matrix A1;
    Vector B0;
    Vector B1;
    Vector C0;
    RowVector D0;
    double rho = 0.0;
    double e = 0.0;
    double p = 0.0;
};

// Expectation of k_{t+1} substituted out of the forward equation:
//     A0 Y_t = A E_t Y_{t+1} + B k_t + C z_t
// with A = A1 + B1 D0, B = B0 + rho B1, C = C0 + e p B1.
// A0 is carried along since every downstream system needs it.
struct ReducedModel {
    Matrix A0;
    Matrix A;
    Vector B;
    Vector C;
    RowVector D0;
    double rho = 0.0;
    double e = 0.0;
    double p = 0.0;

    int n_controls() const { return static_cast<int>(A.rows()); }
};

// Innovation eps_t hitting z at the impulse date.
struct ShockImpulse {
    double size = 1.0;
};

struct Violation {
    std::string field;
    std::string rule;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate(const ModelSpec& model);

// Empty report unless size is non-finite or zero.
ValidationReport validate(const ShockImpulse& shock);

std::string format_report(const ValidationReport& report);

// Throws InputError carrying the formatted report when validation fails.
void require_valid(const ModelSpec& model);

ReducedModel reduce(const ModelSpec& model);

}  // namespace mums
