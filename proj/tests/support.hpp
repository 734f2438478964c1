#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "mums/model.hpp"

#ifndef MUMS_TEST_DATA
#define MUMS_TEST_DATA "."
#endif

namespace testing {

// a y_t = ... normalized form: y = a E y' + b k + c z, k = rho k_- + d y + e z.
inline mums::ModelSpec univariate(double a, double b, double c, double d, double rho, double p, double e = 0.0) {
    mums::ModelSpec m;
    m.n_controls = 1;
    m.control_names = {"y"};
    m.A0 = mums::Matrix::Ones(1, 1);
    m.A1 = mums::Matrix::Constant(1, 1, a);
    m.B0 = mums::Vector::Constant(1, b);
    m.B1 = mums::Vector::Zero(1);
    m.C0 = mums::Vector::Constant(1, c);
    m.D0 = mums::RowVector::Constant(1, d);
    m.rho = rho;
    m.e = e;
    m.p = p;
    return m;
}

inline mums::ModelSpec generic() { return univariate(0.5, 0.2, 1.0, 0.3, 0.8, 0.7); }

// Minus root of a x^2 - (1 + a rho - b d) x + rho = 0.
inline double quadratic_minus_root(double a, double b, double d, double rho) {
    const double k = 1.0 + a * rho - b * d;
    return (k - std::sqrt(k * k - 4.0 * a * rho)) / (2.0 * a);
}

inline std::string data_path(const std::string& name) { return std::string(MUMS_TEST_DATA) + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace testing
