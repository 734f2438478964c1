#include <cmath>
#include <map>

#include "doctest.h"
#include "mums/closed_form.hpp"
#include "mums/error.hpp"
#include "mums/msv_oracle.hpp"
#include "mums/nk_habits.hpp"

using namespace mums;

namespace {

nk::NKParams with_h(double h) {
    nk::NKParams c;
    c.h = h;
    return c;
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK(nk::validate(nk::NKParams{}).empty());
    nk::NKParams bad;
    bad.phi_pi = 1.0;
    CHECK(nk::validate(bad).size() == 1);
    bad = {};
    bad.h = 1.0;
    CHECK(nk::validate(bad).size() == 1);
    CHECK_THROWS_AS(nk::build_model(bad), InputError);
}

TEST_CASE("no habits: q = 0 and lambda_I = -y_I") {
    const auto s = nk::from_markov(nk::solve_markov(with_h(0.0)));
    CHECK(s.q == 0.0);
    CHECK(s.lambda_I == doctest::Approx(-s.y_I).epsilon(1e-14));
    CHECK(nk::fixed_point_q_check(with_h(0.0), 0.0).residual == 0.0);
}

TEST_CASE("calibration solves with a Markov-valid q") {
    const nk::NKParams c;
    const auto m = nk::solve_markov(c);
    CHECK(m.markov_valid);
    CHECK(m.residuals.max() <= 1e-8);
    const auto s = nk::from_markov(m);
    for (double r : nk::restriction_residuals(c, s)) CHECK(std::abs(r) <= 1e-8);
    const auto fp = nk::fixed_point_q_check(c, s.q);
    CHECK(std::abs(fp.residual) <= 1e-10);
    CHECK(fp.f_in_range);
    CHECK(std::abs(s.q - 0.8507) <= 5e-4);
}

TEST_CASE("class-A route and direct seven-equation route agree") {
    for (double h : {0.0, 0.3, 0.6, 0.9}) {
        for (double p : {0.0, 0.5, 0.7, 0.9}) {
            nk::NKParams c = with_h(h);
            c.p = p;
            const auto a = nk::from_markov(nk::solve_markov(c));
            const auto b = nk::solve_direct(c);
            CHECK(std::abs(a.q - b.q) <= 1e-8);
            CHECK(std::abs(a.lambda_I - b.lambda_I) <= 1e-8);
            CHECK(std::abs(a.lambda_M - b.lambda_M) <= 1e-8);
            CHECK(std::abs(a.pi_I - b.pi_I) <= 1e-8);
            CHECK(std::abs(a.pi_M - b.pi_M) <= 1e-8);
            CHECK(std::abs(a.y_I - b.y_I) <= 1e-8);
            CHECK(std::abs(a.y_M - b.y_M) <= 1e-8);
        }
    }
}

TEST_CASE("bound sweep: q >= 2h - 1 and 0 < f(q) <= 1") {
    for (int i = 1; i <= 19; ++i) {
        const nk::NKParams c = with_h(0.05 * i);
        const double q = nk::solve_markov(c).q;
        CHECK(q >= 2.0 * c.h - 1.0);
        const auto fp = nk::fixed_point_q_check(c, q);
        CHECK(fp.f_in_range);
        CHECK(std::abs(fp.residual) <= 1e-10);
    }
}

TEST_CASE("derived stats at the calibration") {
    const nk::NKParams c;
    const auto s = nk::from_markov(nk::solve_markov(c));
    const auto d = nk::derived_stats(c, s);
    CHECK(std::abs(d.pdv_coefficient - 5.34) <= 0.01);
    CHECK(d.pdv_scaling == 1.0 + d.pdv_coefficient);
    CHECK(d.shift_ratio_reference == 1.1);
    CHECK(d.psi == doctest::Approx(0.05 / (1 - 0.99 * s.q) * (s.q + (s.q - 0.9) / 0.1)).epsilon(1e-14));
    CHECK(d.q_lower_bound == doctest::Approx(0.8));
    CHECK(d.hump);
    REQUIRE(d.shift_ratio);
    CHECK(*d.shift_ratio == doctest::Approx(d.shift_ratio_reference).epsilon(1e-12));
    CHECK(d.warnings.empty());
}

TEST_CASE("derived stats without habits") {
    const auto c = with_h(0.0);
    const auto d = nk::derived_stats(c, nk::from_markov(nk::solve_markov(c)));
    CHECK(d.pdv_scaling == 1.0);
    CHECK(d.psi == 0.0);
    CHECK(d.sigma_EE == 0.0);
    CHECK(d.sigma_PC == 0.0);
    CHECK_FALSE(d.shift_ratio);
}

TEST_CASE("PDV identity for output") {
    for (double h : {0.2, 0.5, 0.9}) {
        const auto c = with_h(h);
        const auto m = nk::solve_markov(c);
        const auto d = nk::derived_stats(c, nk::from_markov(m));
        CHECK(pdv(m, c.beta, VariableSelector::state()) == doctest::Approx(d.pdv_scaling * m.k_I).epsilon(1e-12));
    }
}

TEST_CASE("hump equivalence on a coarse grid") {
    for (double h : {0.0, 0.25, 0.5, 0.75, 0.9}) {
        for (double p : {0.0, 0.2, 0.4, 0.6, 0.8}) {
            nk::NKParams c = with_h(h);
            c.p = p;
            const auto m = nk::solve_markov(c);
            if (std::abs(p + m.q - 1.0) <= 1e-10) continue;
            const auto path = irf(m, 1);
            CHECK((std::abs(path.state[1]) > std::abs(path.state[0])) == (p + m.q > 1.0));
        }
    }
}

TEST_CASE("loci: intersections reproduce the equilibria") {
    const nk::NKParams c;
    const auto habits = nk::from_markov(nk::solve_markov(c));
    const auto no_habits = nk::from_markov(nk::solve_markov(with_h(0.0)));
    const auto loci = nk::asad_loci(c, habits, no_habits);

    std::map<std::string, std::vector<nk::LociPoint>> by;
    for (const auto& pt : loci) by[pt.panel + "/" + pt.locus].push_back(pt);
    CHECK(by["short_run/EE_habits"].size() == 201);

    // Both loci are lines; intersect them from their endpoints.
    auto intersect = [](const std::vector<nk::LociPoint>& a, const std::vector<nk::LociPoint>& b) {
        const auto line = [](const std::vector<nk::LociPoint>& v) {
            const double slope = (v.back().pi - v.front().pi) / (v.back().y - v.front().y);
            return std::pair{slope, v.front().pi - slope * v.front().y};
        };
        const auto [sa, ia] = line(a);
        const auto [sb, ib] = line(b);
        const double y = (ib - ia) / (sa - sb);
        return std::pair{y, sa * y + ia};
    };
    for (const auto& [tag, sol] : {std::pair{"habits", habits}, std::pair{"no_habits", no_habits}}) {
        const std::string t = tag;
        const auto sr = intersect(by["short_run/EE_" + t], by["short_run/PC_" + t]);
        CHECK(std::abs(sr.first - sol.y_I) <= 1e-8);
        CHECK(std::abs(sr.second - sol.pi_I) <= 1e-8);
        const auto mr = intersect(by["medium_run/EE_" + t], by["medium_run/PC_" + t]);
        CHECK(std::abs(mr.first - sol.y_M) <= 1e-8);
        CHECK(std::abs(mr.second - sol.pi_M) <= 1e-8);
        const auto& eq = by["short_run/equilibrium_" + t];
        REQUIRE(eq.size() == 1);
        CHECK(eq[0].y == sol.y_I);
    }
    CHECK_THROWS_AS(nk::asad_loci(c, habits, no_habits, nk::LociGrid{0, 2.0}), InputError);
}

TEST_CASE("loci: no-habit Phillips slope and sign pattern") {
    const auto c0 = with_h(0.0);
    const double slope0 = nk::short_run_pc_slope(c0, 0.0);
    CHECK(slope0 == doctest::Approx(c0.kappa * (c0.eta + 1.0) / (1.0 - c0.beta * c0.p)).epsilon(1e-14));

    const auto habits = nk::from_markov(nk::solve_markov(nk::NKParams{}));
    const auto no_habits = nk::from_markov(nk::solve_markov(c0));
    CHECK(habits.y_I < 0.0);
    CHECK(habits.pi_I < 0.0);
    CHECK(std::abs(no_habits.y_I) > std::abs(habits.y_I));
}

TEST_CASE("fixed point with eta != 1") {
    for (double eta : {0.5, 2.0, 4.0}) {
        for (double h : {0.3, 0.9}) {
            nk::NKParams c = with_h(h);
            c.eta = eta;
            const auto s = nk::from_markov(nk::solve_markov(c));
            CHECK(std::abs(nk::fixed_point_q_check(c, s.q).residual) <= 1e-10);
            CHECK(std::abs(nk::solve_direct(c).q - s.q) <= 1e-8);
        }
    }
}
