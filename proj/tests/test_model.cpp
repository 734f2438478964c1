#include "doctest.h"
#include "mums/error.hpp"
#include "mums/model.hpp"
#include "support.hpp"

using namespace mums;

TEST_CASE("valid univariate model has an empty report") {
    CHECK(validate(testing::univariate(0.5, 0.2, 1.0, 0.3, 0.8, 0.7)).empty());
}

TEST_CASE("p = 1 is rejected on p only") {
    const auto r = validate(testing::univariate(0.5, 0.2, 1.0, 0.3, 0.8, 1.0));
    REQUIRE(r.size() == 1);
    CHECK(r[0].field == "p");
}

TEST_CASE("p = 0 is allowed, negative p is not") {
    CHECK(validate(testing::univariate(0.5, 0.2, 1.0, 0.3, 0.8, 0.0)).empty());
    CHECK(validate(testing::univariate(0.5, 0.2, 1.0, 0.3, 0.8, -0.1)).size() == 1);
}

TEST_CASE("nonconforming A1 gives one dimension violation") {
    auto m = testing::generic();
    m.A1 = Matrix::Constant(2, 1, 0.5);
    const auto r = validate(m);
    REQUIRE(r.size() == 1);
    CHECK(r[0].field == "A1");
}

TEST_CASE("non-finite entries and bad names are reported") {
    auto m = testing::generic();
    m.B0(0) = std::nan("");
    CHECK(validate(m).size() == 1);

    auto dup = testing::univariate(0.5, 0.2, 1.0, 0.3, 0.8, 0.7);
    dup.n_controls = 2;
    dup.control_names = {"y", "y"};
    dup.A0 = Matrix::Identity(2, 2);
    dup.A1 = Matrix::Zero(2, 2);
    dup.B0 = dup.B1 = dup.C0 = Vector::Zero(2);
    dup.D0 = RowVector::Zero(2);
    CHECK(validate(dup).size() == 1);

    auto inf_rho = testing::generic();
    inf_rho.rho = INFINITY;
    CHECK_FALSE(validate(inf_rho).empty());
}

TEST_CASE("shock validation") {
    CHECK(validate(ShockImpulse{1.0}).empty());
    CHECK(validate(ShockImpulse{-0.01}).empty());
    CHECK(validate(ShockImpulse{0.0}).size() == 1);
    CHECK(validate(ShockImpulse{NAN}).size() == 1);
}

TEST_CASE("reduce with B1 = 0 copies the structural blocks") {
    const auto m = testing::generic();
    const auto r = reduce(m);
    CHECK(r.A == m.A1);
    CHECK(r.B == m.B0);
    CHECK(r.C == m.C0);
    CHECK(r.A0 == m.A0);
}

TEST_CASE("reduce arithmetic") {
    auto m = testing::univariate(0.5, 0.2, 1.0, 0.3, 0.8, 0.7);
    m.B1(0) = 0.4;
    const auto r = reduce(m);
    CHECK(r.A(0, 0) == doctest::Approx(0.62).epsilon(1e-15));
    CHECK(r.B(0) == doctest::Approx(0.52).epsilon(1e-15));
    CHECK(r.C(0) == 1.0);

    m.e = 0.5;
    CHECK(reduce(m).C(0) == doctest::Approx(1.14).epsilon(1e-15));
}

TEST_CASE("reduce is repeatable bit for bit and rejects invalid input") {
    auto m = testing::generic();
    m.B1(0) = 0.37;
    m.e = -0.21;
    const auto r1 = reduce(m);
    const auto r2 = reduce(m);
    CHECK(r1.A == r2.A);
    CHECK(r1.B == r2.B);
    CHECK(r1.C == r2.C);
    CHECK(r1.A(0, 0) == m.A1(0, 0) + m.B1(0) * m.D0(0));
    CHECK(r1.B(0) == m.B0(0) + m.rho * m.B1(0));
    CHECK(r1.C(0) == m.C0(0) + m.e * m.p * m.B1(0));

    m.p = 1.0;
    CHECK_THROWS_AS(reduce(m), InputError);
}
