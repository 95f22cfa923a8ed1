#include <oddwheel/errors.hh>
#include <oddwheel/fractional.hh>
#include <oddwheel/lp.hh>
#include <oddwheel/orbits.hh>
#include <oddwheel/rational.hh>

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace oddwheel;

namespace
{
    auto profiles(std::initializer_list<std::vector<int>> list) -> std::vector<Profile>
    {
        std::vector<Profile> r;
        for (auto & p : list)
            r.push_back(Profile{p});
        return r;
    }

    auto contains(const std::vector<Profile> & list, const Profile & p) -> bool
    {
        return std::find(list.begin(), list.end(), p) != list.end();
    }
}

TEST_CASE("rational arithmetic")
{
    Rational a(BigInt(6), BigInt(-4));
    CHECK(a.to_string() == "-3/2");
    CHECK(Rational::parse("41/11").reciprocal() == Rational(BigInt(11), BigInt(41)));
    CHECK(Rational(1) / Rational(3) + Rational(1) / Rational(6) == Rational::parse("1/2"));
    CHECK(Rational::parse("1/3") < Rational::parse("1/2"));
    CHECK(Rational::parse("2/3").to_decimal(3) == "0.667");
    CHECK(Rational::parse("-1/8").to_decimal(2) == "-0.13");
    CHECK(Rational::parse("5").to_string() == "5");
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), InvalidArgument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), InvalidArgument);
    CHECK_THROWS_AS(Rational::parse("1/x"), ParseError);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        Rational x(BigInt(static_cast<long>(rng() % 200) - 100), BigInt(1 + static_cast<long>(rng() % 50)));
        Rational y(BigInt(static_cast<long>(rng() % 200) - 100), BigInt(1 + static_cast<long>(rng() % 50)));
        CHECK((x + y) - y == x);
        CHECK(x * y == y * x);
        if (! y.is_zero())
            CHECK((x / y) * y == x);
        CHECK(gcd(x.numerator(), x.denominator()) == 1);
    }
}

TEST_CASE("wheel square orbits")
{
    for (int t = 2; t <= 5; ++t) {
        auto o = wheel_square_orbits(t);
        int n = 2 * t + 1;
        CHECK(o.sizes() == std::vector<int>{1, 2 * n, n * n});
        CHECK(o.names == std::vector<std::string>{"T1", "T2", "T3"});
        CHECK(o.orbits[0].test(o.graph.vertex_count() - 1));
    }
}

TEST_CASE("profile of a known set")
{
    auto o = wheel_square_orbits(2);
    auto best = alpha(o.graph);
    CHECK(profile_of(o, best.witness) == Profile{{1, 0, 10}});
    Bitset bad(o.graph.vertex_count());
    bad.set(0);
    bad.set(1);
    CHECK_THROWS_AS(profile_of(o, bad), InvalidArgument);
    CHECK(parse_profile("(0,2,8)") == Profile{{0, 2, 8}});
    CHECK(parse_profile(" ( 1 , 0 , 10 ) ").total() == 11);
    CHECK_THROWS_AS(parse_profile("0,2,8"), ParseError);
}

TEST_CASE("dominance")
{
    CHECK(dominates(Profile{{0, 2, 18}}, Profile{{0, 1, 18}}));
    CHECK_FALSE(dominates(Profile{{0, 2, 18}}, Profile{{0, 2, 18}}));
    CHECK_FALSE(dominates(Profile{{0, 2, 18}}, Profile{{0, 3, 15}}));
    auto filtered = maximal_filter(profiles({{0, 1, 18}, {0, 2, 18}, {1, 0, 21}, {0, 2, 18}, {0, 6, 10}}));
    CHECK(filtered == profiles({{1, 0, 21}, {0, 2, 18}, {0, 6, 10}}));
    CHECK(maximal_filter(filtered) == filtered);
}

TEST_CASE("maximal profiles by slicing")
{
    auto two = maximal_profiles_by_slicing(2);
    CHECK(two.complete);
    CHECK(two.profiles == profiles({{1, 0, 10}, {0, 2, 8}, {0, 3, 6}, {0, 4, 5}}));

    auto three = maximal_profiles_by_slicing(3);
    CHECK(three.profiles == profiles({{1, 0, 21}, {0, 2, 18}, {0, 3, 15}, {0, 4, 13}, {0, 5, 11}, {0, 6, 10}}));
    CHECK(contains(three.candidates, Profile{{0, 1, 18}}));

    auto four = maximal_profiles_by_slicing(4);
    CHECK(four.profiles ==
        profiles({{1, 0, 36}, {0, 2, 32}, {0, 3, 28}, {0, 4, 25}, {0, 5, 22}, {0, 6, 20}, {0, 7, 18}, {0, 8, 17}}));
    CHECK(contains(four.candidates, Profile{{0, 1, 32}}));

    int t = 2;
    for (auto * set : {&two, &three, &four}) {
        auto graph = wheel_square_orbits(t++).graph;
        REQUIRE(set->witnesses.size() == set->profiles.size());
        for (auto & w : set->witnesses)
            CHECK(verify_independent(graph, w).independent);
    }
}

TEST_CASE("enumeration route agrees")
{
    for (int t = 2; t <= 3; ++t) {
        auto e = maximal_profiles_by_enumeration(t);
        CHECK(e.complete);
        CHECK(e.profiles == maximal_profiles_by_slicing(t).profiles);
        for (auto & p : e.profiles)
            CHECK(p.p[1] <= 2 * t);
    }
}

TEST_CASE("reduced LP for W5 squared")
{
    auto lp = reduced_lp({1, 10, 25}, profiles({{1, 0, 10}, {0, 2, 8}, {0, 3, 6}, {0, 4, 5}}));
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == Rational::parse("11/41"));
    CHECK_FALSE(first_violation(lp, sol.values).has_value());
    CHECK_FALSE(sol.tight.empty());

    std::stringstream ss;
    write_lp(ss, lp);
    auto back = read_lp(ss);
    CHECK(solve_lp(back).objective == sol.objective);
    CHECK(back.variables == lp.variables);
}

TEST_CASE("simplex edge cases")
{
    LinearProgram unbounded;
    unbounded.minimize = false;
    unbounded.add_variable("x");
    unbounded.objective = {Rational(1)};
    CHECK(solve_lp(unbounded).status == LpStatus::Unbounded);

    LinearProgram infeasible;
    infeasible.add_variable("x");
    infeasible.objective = {Rational(1)};
    infeasible.constraints.push_back({"neg", {Rational(1)}, Sense::Le, Rational(-1)});
    CHECK(solve_lp(infeasible).status == LpStatus::Infeasible);

    LinearProgram free_var;
    free_var.add_variable("z", true);
    free_var.objective = {Rational(1)};
    free_var.constraints.push_back({"low", {Rational(1)}, Sense::Ge, Rational(-5)});
    auto s = solve_lp(free_var);
    CHECK(s.objective == Rational(-5));

    // Degenerate vertex: Bland's rule must not cycle.
    LinearProgram beale;
    for (auto name : {"x1", "x2", "x3", "x4"})
        beale.add_variable(name);
    beale.objective = {Rational::parse("-3/4"), Rational(150), Rational::parse("-1/50"), Rational(6)};
    beale.constraints.push_back({"r1", {Rational::parse("1/4"), Rational(-60), Rational::parse("-1/25"), Rational(9)}, Sense::Le, Rational(0)});
    beale.constraints.push_back({"r2", {Rational::parse("1/2"), Rational(-90), Rational::parse("-1/50"), Rational(3)}, Sense::Le, Rational(0)});
    beale.constraints.push_back({"r3", {Rational(0), Rational(0), Rational(1), Rational(0)}, Sense::Le, Rational(1)});
    auto b = solve_lp(beale);
    REQUIRE(b.status == LpStatus::Optimal);
    CHECK(b.objective == Rational::parse("-1/20"));
    CHECK_FALSE(first_violation(beale, b.values).has_value());

    std::istringstream bad("var x\nrow r x <= 1\n");
    CHECK_THROWS(read_lp(bad));
}

TEST_CASE("chi_f for small wheels")
{
    CHECK(chi_f_wheel_square(2, ProfileRoute::Slicing).chi_f == Rational::parse("41/11"));
    CHECK(chi_f_wheel_square(3, ProfileRoute::Slicing).chi_f == Rational::parse("39/11"));
    CHECK(chi_f_wheel_square(2, ProfileRoute::Enumeration).chi_f == Rational::parse("41/11"));
    CHECK(chi_f_wheel_square(3, ProfileRoute::Enumeration).chi_f == Rational::parse("39/11"));
    CHECK(conjectured_chi_f_closed_form(2) == Rational::parse("41/11"));
    CHECK(conjectured_chi_f_closed_form(7) == Rational::parse("173/53"));
    CHECK(parse_route("enumeration") == ProfileRoute::Enumeration);
    CHECK_THROWS_AS(parse_route("lp"), InvalidArgument);
}
