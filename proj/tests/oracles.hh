#ifndef ODDWHEEL_TESTS_ORACLES_HH
#define ODDWHEEL_TESTS_ORACLES_HH

#include <oddwheel/bitset.hh>
#include <oddwheel/expr.hh>
#include <oddwheel/graph.hh>
#include <oddwheel/mis.hh>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

// Slow reference implementations that share no code with the library beyond
// the graph container.
namespace oracle
{
    using namespace oddwheel;

    inline auto masks(const Graph & g) -> std::vector<std::uint64_t>
    {
        std::vector<std::uint64_t> adj(g.vertex_count());
        for (int u = 0; u < g.vertex_count(); ++u)
            for (int v = 0; v < g.vertex_count(); ++v)
                if (g.adjacent(u, v))
                    adj[u] |= std::uint64_t{1} << v;
        return adj;
    }

    inline auto to_mask(const Bitset & s) -> std::uint64_t
    {
        std::uint64_t m = 0;
        s.for_each([&](int v) { m |= std::uint64_t{1} << v; });
        return m;
    }

    /// Visits every independent set (as a mask) of a graph on at most 63
    /// vertices, by include/exclude recursion.
    inline auto each_independent(const Graph & g, const std::function<void(std::uint64_t)> & visit) -> void
    {
        auto adj = masks(g);
        int n = g.vertex_count();
        std::function<void(int, std::uint64_t, std::uint64_t)> rec = [&](int v, std::uint64_t set, std::uint64_t banned) {
            if (v == n) {
                visit(set);
                return;
            }
            rec(v + 1, set, banned);
            if (! ((banned >> v) & 1))
                rec(v + 1, set | (std::uint64_t{1} << v), banned | adj[v]);
        };
        rec(0, 0, 0);
    }

    inline auto popcount(std::uint64_t m) -> int
    {
        return __builtin_popcountll(m);
    }

    /// Largest independent set satisfying the clauses, or -1.
    inline auto alpha(const Graph & g, const ConstraintSpec & spec = {}) -> int
    {
        std::vector<std::uint64_t> members;
        for (auto & c : spec.clauses)
            members.push_back(to_mask(c.members));
        std::uint64_t in = spec.forced_in.size() ? to_mask(spec.forced_in) : 0;
        std::uint64_t out = spec.forced_out.size() ? to_mask(spec.forced_out) : 0;
        int best = -1;
        each_independent(g, [&](std::uint64_t s) {
            if ((s & in) != in || (s & out))
                return;
            for (std::size_t i = 0; i < members.size(); ++i) {
                int k = popcount(s & members[i]);
                auto & c = spec.clauses[i];
                if ((c.relation == Relation::Eq && k != c.count) || (c.relation == Relation::Le && k > c.count) ||
                    (c.relation == Relation::Ge && k < c.count))
                    return;
            }
            best = std::max(best, popcount(s));
        });
        return best;
    }

    /// Maximal independent sets: no outside vertex can be added.
    inline auto maximal_count(const Graph & g) -> long
    {
        auto adj = masks(g);
        int n = g.vertex_count();
        long count = 0;
        each_independent(g, [&](std::uint64_t s) {
            for (int v = 0; v < n; ++v)
                if (! ((s >> v) & 1) && ! (adj[v] & s))
                    return;
            ++count;
        });
        return count;
    }

    /// Product expressions over small atoms whose order stays within max_order.
    inline auto random_product(std::mt19937_64 & rng, int max_order) -> std::string
    {
        struct Atom
        {
            std::string name;
            int order;
        };
        std::vector<Atom> atoms{{"K1", 1}, {"K2", 2}, {"K3", 3}, {"K4", 4}, {"P2", 2}, {"P3", 3}, {"P4", 4}, {"P5", 5},
            {"C3", 3}, {"C4", 4}, {"C5", 5}, {"C6", 6}, {"C7", 7}, {"W3", 4}, {"W4", 5}, {"W5", 6}, {"W6", 7}};
        while (true) {
            int factors = 1 + static_cast<int>(rng() % 3);
            std::string expr;
            int order = 1;
            for (int f = 0; f < factors; ++f) {
                auto & a = atoms[rng() % atoms.size()];
                int power = (rng() % 4 == 0) ? 2 : 1;
                int o = power == 2 ? a.order * a.order : a.order;
                order *= o;
                if (! expr.empty())
                    expr += " x ";
                expr += a.name + (power == 2 ? "^2" : "");
            }
            if (order <= max_order && order >= 2)
                return expr;
        }
    }
}

#endif
