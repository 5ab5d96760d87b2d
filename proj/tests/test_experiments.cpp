#include "mcrp/distribution.hpp"
#include "mcrp/experiments.hpp"

#include <doctest.h>

#include <cmath>

using namespace mcrp;
using namespace mcrp::experiments;

TEST_CASE("profile generators")
{
    CHECK(ProfileGenerator::parse("const:3").profile(4) == Profile({3, 3, 3, 3}));
    CHECK(ProfileGenerator::parse("ones").profile(3) == Profile({1, 1, 1}));
    CHECK(ProfileGenerator::parse("poly:1,1").profile(5) == Profile({1, 2, 3, 4, 5}));
    CHECK(ProfileGenerator::parse("poly:0.5,1").profile(4) == Profile({1, 1, 1, 2}));
    CHECK(ProfileGenerator::parse("poly:1,0.5").profile(5) == Profile({1, 1, 1, 2, 2}));
    CHECK(ProfileGenerator::parse("list:3,2,1").profile(2) == Profile({3, 2}));
    CHECK_THROWS(ProfileGenerator::parse("list:3,2,1").profile(4));
    CHECK_THROWS(ProfileGenerator::parse("const:0"));
    CHECK_THROWS(ProfileGenerator::parse("poly:1"));
    CHECK_THROWS(ProfileGenerator::parse("wave:1"));
    CHECK(ProfileGenerator::parse("poly:2,1.5").growth_exponent() == 1.5);
    CHECK(ProfileGenerator::parse("poly:2,1.5").to_string() == "poly:2,1.5");
}

TEST_CASE("law check")
{
    const auto uniform = run_law_check(Profile({1, 2}), Theta(), 30000, 1);
    REQUIRE(uniform.categories.size() == 3);
    for (const auto& c : uniform.categories) {
        CHECK(c.expected == doctest::Approx(10000.0));
    }
    CHECK(uniform.chi_square.dof == 2);
    CHECK(uniform.chi_square.p_value > 0.001);

    const auto weighted = run_law_check(Profile({1, 2}), Theta(2, 1), 70000, 2);
    CHECK(weighted.categories.at(0).expected == doctest::Approx(40000.0));
    CHECK(weighted.categories.at(1).expected == doctest::Approx(20000.0));
    CHECK(weighted.categories.at(2).expected == doctest::Approx(10000.0));
    CHECK(weighted.chi_square.p_value > 0.001);

    const auto single = run_law_check(Profile({2}), Theta(3, 1), 100, 3);
    CHECK(single.categories.size() == 1);
    CHECK(single.chi_square.p_value == 1.0);
}

TEST_CASE("law check does not depend on the thread count")
{
    const auto a = run_law_check(Profile({2, 1, 2}), Theta(3, 2), 3000, 9, 1);
    const auto b = run_law_check(Profile({2, 1, 2}), Theta(3, 2), 3000, 9, 3);
    REQUIRE(a.categories.size() == b.categories.size());
    for (std::size_t i = 0; i < a.categories.size(); ++i) {
        CHECK(a.categories[i].observed == b.categories[i].observed);
    }
    CHECK(a.chi_square.statistic == b.chi_square.statistic);
}

TEST_CASE("clt small runs")
{
    const auto degenerate = run_clt(ProfileGenerator::constant(4), 1, Theta(), 100, 1);
    CHECK(degenerate.degenerate);

    const auto a = run_clt(ProfileGenerator::constant(2), 200, Theta(2, 1), 2000, 4, 1, true);
    const auto b = run_clt(ProfileGenerator::constant(2), 200, Theta(2, 1), 2000, 4, 4, true);
    CHECK(a.values == b.values);
    CHECK(a.ks.statistic == b.ks.statistic);
    CHECK_FALSE(a.degenerate);

    const auto exact = k_moments(Profile({2, 2, 2}), Theta(2, 1));
    const auto tiny = run_clt(ProfileGenerator::constant(2), 3, Theta(2, 1), 10, 1);
    CHECK(tiny.theory_mean == doctest::Approx(to_double(exact.mean)));
    CHECK(tiny.theory_variance == doctest::Approx(to_double(exact.variance)));
}

TEST_CASE("sample moments agree with theory within five standard errors")
{
    const auto r = run_clt(ProfileGenerator::constant(3), 300, Theta(), 4000, 12);
    const double se = std::sqrt(r.theory_variance / 4000.0);
    CHECK(std::abs(r.sample.mean - r.theory_mean) < 5.0 * se);

    const auto g = run_clt(ProfileGenerator::polynomial(1.0, 1.0), 100, Theta(1, 2), 4000, 13);
    CHECK(std::abs(g.sample.mean - g.theory_mean) < 5.0 * std::sqrt(g.theory_variance / 4000.0));
}

TEST_CASE("growth")
{
    const auto rows = run_growth(ProfileGenerator::all_ones(), {1, 10, 1000});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].mean == 1.0);
    CHECK(rows[0].variance == 0.0);
    CHECK(std::isnan(rows[0].mean_over_log));
    double harmonic = 0.0;
    for (int s = 1; s <= 1000; ++s) {
        harmonic += 1.0 / s;
    }
    CHECK(rows[2].mean == doctest::Approx(harmonic).epsilon(1e-12));

    const auto first = run_growth(ProfileGenerator::constant(5), {1});
    CHECK(first[0].mean == 5.0);
    CHECK(first[0].variance == 0.0);
}

TEST_CASE("trajectory")
{
    const auto forced = run_trajectory(ProfileGenerator::constant(3), Theta(), 1, {1});
    REQUIRE(forced.size() == 1);
    CHECK(forced[0].ratio == 1.0);

    const auto path = run_trajectory(ProfileGenerator::constant(3), Theta(), 2, {10, 100, 10000});
    REQUIRE(path.size() == 3);
    CHECK(path.back().ratio > 0.7);
    CHECK(path.back().ratio < 1.3);

    const auto classical = run_trajectory(ProfileGenerator::all_ones(), Theta(), 3, {10000});
    CHECK(classical.back().cycles_over_log > 0.6);
    CHECK(classical.back().cycles_over_log < 1.5);
}

TEST_CASE("tv curve")
{
    const auto rows = run_tv_curve(8);
    REQUIRE(rows.size() == 7);
    CHECK(rows.front().n == 4);
    CHECK(rows.front().tv > 0.0);
    CHECK(rows.front().tv < 1.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].tv < rows[i - 1].tv);
    }
}
