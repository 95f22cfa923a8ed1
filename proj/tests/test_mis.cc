#include "oracles.hh"

#include <oddwheel/automorphism.hh>
#include <oddwheel/errors.hh>
#include <oddwheel/local_search.hh>
#include <oddwheel/maximal.hh>
#include <oddwheel/mis.hh>

#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

using namespace oddwheel;

namespace
{
    auto options(bool block, bool symmetry, int threads) -> SolverOptions
    {
        SolverOptions o;
        o.block_bounds = block;
        o.use_symmetry = symmetry;
        o.threads = threads;
        return o;
    }

    auto random_spec(std::mt19937_64 & rng, const Graph & g) -> ConstraintSpec
    {
        ConstraintSpec spec;
        int n = g.vertex_count();
        int clauses = static_cast<int>(rng() % 3);
        for (int i = 0; i < clauses; ++i) {
            Bitset members(n);
            for (int v = 0; v < n; ++v)
                if (rng() % 3 == 0)
                    members.set(v);
            auto rel = static_cast<Relation>(rng() % 3);
            int count = static_cast<int>(rng() % 4);
            spec.clauses.push_back(slice_clause(members, rel, count, "r" + std::to_string(i)));
        }
        if (rng() % 4 == 0) {
            spec.forced_out = Bitset(n);
            spec.forced_out.set(static_cast<int>(rng() % n));
        }
        if (rng() % 4 == 0) {
            spec.forced_in = Bitset(n);
            int v = static_cast<int>(rng() % n);
            if (! spec.forced_out.size() || ! spec.forced_out.test(v))
                spec.forced_in.set(v);
        }
        return spec;
    }

    auto check_witness(const Graph & g, const ConstraintSpec & spec, const SolveOutcome & out) -> void
    {
        REQUIRE(out.witness.size() == g.vertex_count());
        CHECK(out.witness.count() == out.value);
        CHECK(verify_independent(g, out.witness).independent);
        CHECK_FALSE(first_violated_clause(spec, out.witness).has_value());
    }
}

TEST_CASE("known alpha values")
{
    CHECK(alpha(evaluate("W5^2")).value == 11);
    CHECK(alpha(evaluate("W5 x K3")).value == 5);
    CHECK(alpha(evaluate("C5^2")).value == 10);
    CHECK(alpha(evaluate("K3 x K3")).value == 3);
    CHECK(alpha(evaluate("W5^2 x K3")).value == 29);
    CHECK(alpha(evaluate("W7^2")).value == 22);
    CHECK(alpha(evaluate("W7 x K3")).value == 7);
    auto out = alpha(evaluate("W5^2"));
    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.root_bound >= 11);
}

TEST_CASE("C5 squared by exhaustive mask enumeration")
{
    auto g = evaluate("C5^2");
    REQUIRE(g.vertex_count() == 25);
    auto adj = oracle::masks(g);
    int best = 0;
    for (std::uint32_t s = 0; s < (1u << 25); ++s) {
        int k = __builtin_popcount(s);
        if (k <= best)
            continue;
        bool ok = true;
        for (std::uint32_t rest = s; rest && ok; rest &= rest - 1)
            ok = ! (adj[__builtin_ctz(rest)] & s);
        if (ok)
            best = k;
    }
    CHECK(best == 10);
    CHECK(alpha(g).value == best);
}

TEST_CASE("constrained examples")
{
    auto g = evaluate("W5^2");
    ConstraintSpec spec;
    spec.clauses.push_back(layer_clause(g, 1, AtomVertex::hub(), Relation::Eq, 2));
    auto out = alpha_constrained(g, spec);
    CHECK(out.status == SolveStatus::Optimal);
    CHECK(out.value == oracle::alpha(g, spec));
    spec.clauses[0].count = 3;
    CHECK(alpha_constrained(g, spec).status == SolveStatus::Infeasible);

    auto k = evaluate("W5 x K3");
    ConstraintSpec layers;
    for (int i = 0; i < 3; ++i)
        layers.clauses.push_back(layer_clause(k, 1, AtomVertex::indexed(i), Relation::Eq, 2));
    auto none = alpha_constrained(k, layers);
    CHECK(none.status == SolveStatus::Infeasible);
    CHECK(oracle::alpha(k, layers) == -1);

    auto f = feasible(g, {}, 11);
    CHECK(f.status == SolveStatus::Feasible);
    CHECK(f.value >= 11);
    CHECK(feasible(g, {}, 12).status == SolveStatus::Infeasible);
}

TEST_CASE("solver against brute force on random products")
{
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 200; ++round) {
        auto expr = oracle::random_product(rng, 20);
        CAPTURE(expr);
        auto g = evaluate(expr);
        auto opts = options(rng() % 2, rng() % 2, 1 + static_cast<int>(rng() % 2));
        auto expected = oracle::alpha(g);
        auto out = alpha(g, opts);
        CHECK(out.status == SolveStatus::Optimal);
        CHECK(out.value == expected);
        check_witness(g, {}, out);

        auto spec = random_spec(rng, g);
        auto constrained_expected = oracle::alpha(g, spec);
        auto c = alpha_constrained(g, spec, opts);
        if (constrained_expected < 0)
            CHECK(c.status == SolveStatus::Infeasible);
        else {
            CHECK(c.status == SolveStatus::Optimal);
            CHECK(c.value == constrained_expected);
            check_witness(g, spec, c);
        }

        int target = constrained_expected < 0 ? 1 : constrained_expected;
        auto f = feasible(g, spec, target, opts);
        CHECK(f.status == (constrained_expected < 0 ? SolveStatus::Infeasible : SolveStatus::Feasible));
        auto f2 = feasible(g, spec, constrained_expected + 1 + (constrained_expected < 0), opts);
        CHECK(f2.status == SolveStatus::Infeasible);
    }
}

TEST_CASE("layer clauses on products")
{
    std::mt19937_64 rng(99);
    for (auto expr : {"W5 x K3", "W4 x P3", "C5 x K3", "W3 x C4"}) {
        auto g = evaluate(expr);
        auto atoms = g.factor_shape();
        for (int round = 0; round < 10; ++round) {
            ConstraintSpec spec;
            int coord = static_cast<int>(rng() % atoms.size());
            int internal = static_cast<int>(rng() % atoms[coord].order());
            auto value = AtomVertex::from_internal(atoms[coord], internal);
            spec.clauses.push_back(layer_clause(g, coord, value, static_cast<Relation>(rng() % 3), static_cast<int>(rng() % 3)));
            auto expected = oracle::alpha(g, spec);
            auto out = alpha_constrained(g, spec);
            CHECK(out.value == (expected < 0 ? out.value : expected));
            CHECK(out.status == (expected < 0 ? SolveStatus::Infeasible : SolveStatus::Optimal));
        }
    }
}

TEST_CASE("bad constraints")
{
    auto g = evaluate("K3");
    ConstraintSpec spec;
    spec.forced_in = bitset_of(3, std::vector<int>{0, 1});
    CHECK_THROWS_AS(alpha_constrained(g, spec), InvalidArgument);
    ConstraintSpec clash;
    clash.forced_in = bitset_of(3, std::vector<int>{0});
    clash.forced_out = bitset_of(3, std::vector<int>{0});
    CHECK_THROWS_AS(alpha_constrained(g, clash), InvalidArgument);
    CHECK_THROWS_AS(verify_independent(g, Bitset(4)), InvalidArgument);
    CHECK_THROWS_AS(parse_relation("lt"), InvalidArgument);
    CHECK(parse_relation("le") == Relation::Le);
}

TEST_CASE("budgets abort")
{
    auto g = evaluate("W7^2 x K3");
    SolverOptions o;
    o.budget.max_nodes = 5;
    o.seed_with_local_search = false;
    o.block_bounds = false;
    auto out = alpha(g, o);
    CHECK(out.status == SolveStatus::Aborted);
    CHECK_FALSE(out.decided());
}

TEST_CASE("verify_independent names an edge")
{
    auto g = evaluate("C5");
    auto s = bitset_of(5, std::vector<int>{0, 1, 3});
    auto check = verify_independent(g, s);
    CHECK_FALSE(check.independent);
    REQUIRE(check.violation);
    CHECK(g.adjacent(check.violation->first, check.violation->second));
}

TEST_CASE("solve report round trip")
{
    auto g = evaluate("W5^2");
    auto out = alpha(g);
    std::stringstream ss;
    write_solve_report(ss, g, out, {{"case", "demo"}});
    auto kv = read_report(ss);
    CHECK(kv["case"] == "demo");
    CHECK(kv["status"] == "optimal");
    CHECK(kv["value"] == "11");
    CHECK(format_vertex_set(g, out.witness).find("*,*") != std::string::npos);
}

TEST_CASE("local search finds valid sets")
{
    for (auto expr : {"W5^2", "W7^2", "C5^2 x K2"}) {
        auto g = evaluate(expr);
        LocalSearchOptions o;
        o.max_iterations = 20000;
        auto s = local_search_mis(g, o);
        CHECK(verify_independent(g, s).independent);
        CHECK(s.count() <= alpha(g).value);
    }
    auto g = evaluate("W5^2");
    LocalSearchOptions o;
    o.forbidden = layer_slice(g, 1, AtomVertex::hub());
    auto s = local_search_mis(g, o);
    CHECK_FALSE(s.intersects(o.forbidden));
}

TEST_CASE("maximal enumeration against brute force")
{
    std::mt19937_64 rng(5);
    for (int round = 0; round < 60; ++round) {
        auto expr = oracle::random_product(rng, 15);
        CAPTURE(expr);
        auto g = evaluate(expr);
        std::set<std::vector<int>> seen;
        bool all_maximal = true;
        auto result = enumerate_maximal(g, [&](const Bitset & s) {
            seen.insert(s.to_vector());
            if (! verify_independent(g, s).independent)
                all_maximal = false;
            for (int v = 0; v < g.vertex_count(); ++v)
                if (! s.test(v) && ! g.neighbours(v).intersects(s))
                    all_maximal = false;
        });
        CHECK(result.complete);
        CHECK(all_maximal);
        CHECK(result.count == static_cast<long>(seen.size()));
        CHECK(result.count == oracle::maximal_count(g));
    }
    auto w = evaluate("W5");
    CHECK(enumerate_maximal(w, [](const Bitset &) {}).count == 6);
    auto partial = enumerate_maximal(evaluate("C7 x K3"), [](const Bitset &) {}, Budget{3, 0});
    CHECK_FALSE(partial.complete);
}

TEST_CASE("automorphisms")
{
    CHECK(atom_automorphisms(AtomGraph::wheel(5)).size() == 10);
    CHECK(atom_automorphisms(AtomGraph::clique(3)).size() == 6);
    CHECK(atom_automorphisms(AtomGraph::path(4)).size() == 2);
    for (auto expr : {"W5^2", "W5 x K3", "C5 x P3 x K2"}) {
        auto g = evaluate(expr);
        for (auto & p : product_generators(g))
            CHECK(is_automorphism(g, p));
    }
    auto g = evaluate("W5^2");
    auto group = product_group(g, 1 << 20);
    REQUIRE(group);
    CHECK(group->order == 200);
    auto orbits = orbits_of(g.vertex_count(), product_generators(g));
    CHECK(std::set<int>(orbits.begin(), orbits.end()).size() == 3);
    Permutation not_auto(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        not_auto[v] = v;
    std::swap(not_auto[0], not_auto[35]);
    CHECK_FALSE(is_automorphism(g, not_auto));
}
