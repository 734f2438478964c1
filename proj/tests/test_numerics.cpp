#include <cmath>

#include "doctest.h"
#include "mums/error.hpp"
#include "mums/numerics.hpp"

using namespace mums;
using namespace mums::numerics;

TEST_CASE("solve_dense solves and rejects singular systems") {
    Matrix m(2, 2);
    m << 2, 1, 1, 3;
    Vector rhs(2);
    rhs << 3, 5;
    const Vector x = solve_dense(m, rhs, 1e-8, "test");
    CHECK(x(0) == doctest::Approx(0.8));
    CHECK(x(1) == doctest::Approx(1.4));

    Matrix s(2, 2);
    s << 1, 2, 2, 4;
    CHECK(is_singular(s));
    CHECK_THROWS_AS(solve_dense(s, rhs, 1e-8, "test"), SolverError);
}

TEST_CASE("refine_root finds a bracketed root") {
    auto f = [](double x) { return x * x - 2.0; };
    const auto r = refine_root(f, 0.0, 2.0, f(0.0), f(2.0));
    REQUIRE(r);
    CHECK(std::abs(*r - std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("track_root follows a moving root from zero") {
    Homotopy f = [](double s, double x) -> std::optional<double> { return x - 0.6 * s; };
    const auto trace = track_root(f);
    CHECK(trace.points.size() == 65);
    CHECK(trace.points.front().root == 0.0);
    CHECK(std::abs(trace.root() - 0.6) < 1e-14);
}

TEST_CASE("track_root picks the branch continuous with zero") {
    // roots 0.5 s and 0.9; the tracked one ends at 0.5
    Homotopy f = [](double s, double x) -> std::optional<double> { return (x - 0.5 * s) * (x - 0.9); };
    CHECK(std::abs(track_root(f).root() - 0.5) < 1e-13);
}

TEST_CASE("track_root reports a path leaving the interval") {
    Homotopy f = [](double s, double x) -> std::optional<double> { return x - 1.5 * s; };
    CHECK_THROWS_AS(track_root(f), SolverError);
}
