#include "oracles.hpp"

#include <doctest.h>

using namespace qrep;

TEST_CASE("HalfInt parses, prints and compares exactly")
{
    CHECK(HalfInt::parse("3/2").twice() == 3);
    CHECK(HalfInt::parse("-1/2").twice() == -1);
    CHECK(HalfInt::parse("4").twice() == 8);
    CHECK(HalfInt::parse("-7").str() == "-7");
    CHECK(HalfInt::from_twice(5).str() == "5/2");
    CHECK(HalfInt::from_twice(-5).str() == "-5/2");
    CHECK_THROWS_AS(HalfInt::parse("1/3"), Error);
    CHECK_THROWS_AS(HalfInt::parse("0.5"), Error);
    CHECK_THROWS_AS(HalfInt::parse(""), Error);
    CHECK_THROWS_AS(HalfInt::parse("2/2"), Error);

    const HalfInt a = HalfInt::from_twice(3);
    CHECK((a + HalfInt::half()) == HalfInt(2));
    CHECK((a - 1) == HalfInt::half());
    CHECK(-a < a);
    CHECK(abs(-a) == a);
    CHECK(a.is_half_odd());
    CHECK(HalfInt(3).is_integral());
    CHECK(a.to_double() == 1.5);
}

TEST_CASE("QParam rejects nonpositive q and q too close to 1")
{
    CHECK_THROWS_AS(QParam(0.0), Error);
    CHECK_THROWS_AS(QParam(-2.0), Error);
    CHECK_THROWS_AS(QParam(1.0), Error);
    CHECK_THROWS_AS(QParam(1.0 + 1e-7), Error);
    CHECK_NOTHROW(QParam(1.0 + 2e-6));
    CHECK(QParam(2.0).value() == 2.0);
}

TEST_CASE("q-bracket examples")
{
    const QParam q2(2.0);
    CHECK(q_bracket(HalfInt(0), q2) == 0.0);
    for (double q : {0.3, 0.7, 1.3, 2.5, 9.0})
        CHECK(q_bracket(HalfInt(1), QParam(q)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q_bracket(HalfInt(2), q2) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("plus-type q-bracket examples")
{
    CHECK(q_bracket_plus(HalfInt::half(), QParam(4.0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(q_bracket_plus(HalfInt(0), QParam(2.0)) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    for (double q : {0.4, 1.3, 3.0})
        CHECK(q_bracket_plus(HalfInt(-1), QParam(q)) == q_bracket_plus(HalfInt(1), QParam(q)));
}

TEST_CASE("bracket parity, q <-> 1/q symmetry and the doubling identity")
{
    for (double qv : {0.1, 0.35, 0.8, 1.2, 2.5, 10.0}) {
        const QParam q(qv);
        const QParam qi(1.0 / qv);
        for (int t = -100; t <= 100; ++t) {
            const HalfInt a = HalfInt::from_twice(t);
            const double b = q_bracket(a, q);
            const double bp = q_bracket_plus(a, q);
            CHECK(q_bracket(-a, q) == doctest::Approx(-b).epsilon(1e-14));
            CHECK(q_bracket_plus(-a, q) == doctest::Approx(bp).epsilon(1e-14));
            CHECK(q_bracket(a, qi) == doctest::Approx(b).epsilon(1e-12));
            CHECK(b == doctest::Approx(oracle::bracket(a.to_double(), qv)).epsilon(1e-12));
            CHECK((bp > 0) == (qv > 1.0));
            const double lhs = q_bracket(a + a, q);
            const double rhs = (qv - 1.0 / qv) * b * bp;
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("complex brackets agree with the real ones on real arguments")
{
    const QParam q(1.7);
    for (int t = -9; t <= 9; ++t) {
        const HalfInt a = HalfInt::from_twice(t);
        const cplx z(a.to_double(), 0.0);
        CHECK(std::abs(q_bracket(z, q) - q_bracket(a, q)) <= 1e-13);
        CHECK(std::abs(q_bracket_plus(z, q) - q_bracket_plus(a, q)) <= 1e-13);
    }
    const cplx z(0.3, 0.4);
    const cplx expected = (std::pow(cplx(1.7), z) - std::pow(cplx(1.7), -z)) / (1.7 - 1.0 / 1.7);
    CHECK(std::abs(q_bracket(z, q) - expected) <= 1e-13);
}

TEST_CASE("q_power and the argument range guard")
{
    const QParam q(4.0);
    CHECK(q_power(HalfInt::half(), q) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(q_power(HalfInt(-1), q) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(q_bracket(HalfInt(20001), QParam(1.001)), Error);
}
