#include "oracles.hh"

#include <oddwheel/automorphism.hh>
#include <oddwheel/bounds.hh>
#include <oddwheel/orbits.hh>

#include <doctest.h>

#include <random>

using namespace oddwheel;

namespace
{
    auto random_clause(std::mt19937_64 & rng, const Graph & g) -> Clause
    {
        Bitset members(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v)
            if (rng() % 2)
                members.set(v);
        return slice_clause(members, static_cast<Relation>(rng() % 3), static_cast<int>(rng() % 4), "c");
    }

    auto permute(const Permutation & p, const Bitset & s) -> Bitset
    {
        Bitset r(s.size());
        s.for_each([&](int v) { r.set(p[v]); });
        return r;
    }

    auto random_automorphism(std::mt19937_64 & rng, const Graph & g) -> Permutation
    {
        auto gens = product_generators(g);
        Permutation p(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v)
            p[v] = v;
        if (gens.empty())
            return p;
        for (int i = 0; i < 6; ++i) {
            auto & gen = gens[rng() % gens.size()];
            Permutation q(p.size());
            for (std::size_t v = 0; v < p.size(); ++v)
                q[v] = gen[p[v]];
            p = q;
        }
        return p;
    }
}

TEST_CASE("witness validity")
{
    std::mt19937_64 rng(41);
    for (int round = 0; round < 60; ++round) {
        auto g = evaluate(oracle::random_product(rng, 40));
        ConstraintSpec spec;
        if (rng() % 2)
            spec.clauses.push_back(random_clause(rng, g));
        auto out = alpha_constrained(g, spec);
        REQUIRE(out.decided());
        if (out.status == SolveStatus::Infeasible)
            continue;
        CHECK(out.witness.count() == out.value);
        CHECK(verify_independent(g, out.witness).independent);
        CHECK_FALSE(first_violated_clause(spec, out.witness));
        auto f = feasible(g, spec, out.value);
        CHECK(f.status == SolveStatus::Feasible);
        CHECK(verify_independent(g, f.witness).independent);
        CHECK_FALSE(first_violated_clause(spec, f.witness));
    }
}

TEST_CASE("constraint monotonicity")
{
    std::mt19937_64 rng(43);
    for (int round = 0; round < 60; ++round) {
        auto g = evaluate(oracle::random_product(rng, 40));
        auto free_value = alpha(g).value;
        ConstraintSpec spec;
        spec.clauses.push_back(random_clause(rng, g));
        auto one = alpha_constrained(g, spec);
        spec.clauses.push_back(random_clause(rng, g));
        auto two = alpha_constrained(g, spec);
        CHECK(one.value <= free_value);
        if (two.status != SolveStatus::Infeasible) {
            CHECK(one.status != SolveStatus::Infeasible);
            CHECK(two.value <= one.value);
        }

        // Raising an upper limit never lowers the optimum.
        Bitset members = spec.clauses[0].members;
        int previous = -1;
        for (int count = 0; count <= 4; ++count) {
            ConstraintSpec le;
            le.clauses.push_back(slice_clause(members, Relation::Le, count, "le"));
            auto out = alpha_constrained(g, le);
            CHECK(out.value >= previous);
            previous = out.value;
        }
        CHECK(previous <= free_value);
    }
}

TEST_CASE("automorphism invariance")
{
    std::mt19937_64 rng(47);
    for (int round = 0; round < 40; ++round) {
        auto g = evaluate(oracle::random_product(rng, 40));
        auto p = random_automorphism(rng, g);
        REQUIRE(is_automorphism(g, p));
        ConstraintSpec spec, moved;
        auto c = random_clause(rng, g);
        spec.clauses.push_back(c);
        c.members = permute(p, c.members);
        moved.clauses.push_back(c);
        auto a = alpha_constrained(g, spec);
        auto b = alpha_constrained(g, moved);
        CHECK(a.status == b.status);
        CHECK(a.value == b.value);
        if (a.status == SolveStatus::Optimal) {
            auto image = permute(p, a.witness);
            CHECK(verify_independent(g, image).independent);
            CHECK_FALSE(first_violated_clause(moved, image));
        }
    }
}

TEST_CASE("recurrence bounds the next power")
{
    for (auto atom : {AtomGraph::wheel(5), AtomGraph::wheel(7), AtomGraph::wheel(4), AtomGraph::cycle(5),
             AtomGraph::cycle(7), AtomGraph::path(4), AtomGraph::clique(3)}) {
        CAPTURE(atom.name());
        int k = atom.clique_number();
        auto base = atom.name();
        auto with_clique = alpha(evaluate(base + " x K" + std::to_string(k))).value;
        auto power = alpha(evaluate(base)).value;
        auto next = alpha(evaluate(base + "^2")).value;
        CHECK(next <= product_recurrence(with_clique, power, atom.order(), k));
    }
    auto w5 = AtomGraph::wheel(5);
    auto square_k3 = alpha(evaluate("W5^2 x K3")).value;
    auto square = alpha(evaluate("W5^2")).value;
    CHECK(58 <= product_recurrence(square_k3, square, w5.order(), 3));
}

TEST_CASE("dominance idempotence")
{
    std::mt19937_64 rng(53);
    for (int round = 0; round < 300; ++round) {
        std::vector<Profile> list;
        int n = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < n; ++i)
            list.push_back(Profile{{static_cast<int>(rng() % 2), static_cast<int>(rng() % 5), static_cast<int>(rng() % 8)}});
        auto once = maximal_filter(list);
        CHECK(maximal_filter(once) == once);
        for (auto & a : once)
            for (auto & b : once)
                CHECK_FALSE(dominates(a, b));
        for (auto & p : list) {
            bool covered = false;
            for (auto & q : once)
                covered = covered || q == p || dominates(q, p);
            CHECK(covered);
        }
    }
}
