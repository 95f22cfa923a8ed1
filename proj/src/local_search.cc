#include <oddwheel/errors.hh>
#include <oddwheel/local_search.hh>

#include <algorithm>
#include <chrono>
#include <random>
#include <vector>

namespace oddwheel
{
    namespace
    {
        class State
        {
        public:
            const Graph & g;
            std::vector<std::vector<int>> nbrs;
            std::vector<int> tight;
            Bitset in;
            Bitset one_tight;
            Bitset allowed;
            int size = 0;

            State(const Graph & graph, const Bitset & forbidden) :
                g(graph),
                nbrs(graph.vertex_count()),
                tight(graph.vertex_count(), 0),
                in(graph.vertex_count()),
                one_tight(graph.vertex_count()),
                allowed(graph.all_vertices())
            {
                for (int v = 0; v < g.vertex_count(); ++v)
                    nbrs[v] = g.neighbours(v).to_vector();
                if (forbidden.size() == g.vertex_count())
                    allowed.subtract(forbidden);
            }

            auto is_free(int v) const -> bool { return ! in.test(v) && tight[v] == 0 && allowed.test(v); }

            auto bump(int u, int delta) -> void
            {
                tight[u] += delta;
                if (tight[u] == 1 && allowed.test(u))
                    one_tight.set(u);
                else
                    one_tight.reset(u);
            }

            auto add(int v) -> void
            {
                in.set(v);
                ++size;
                for (int u : nbrs[v])
                    bump(u, 1);
            }

            auto remove(int v) -> void
            {
                in.reset(v);
                --size;
                for (int u : nbrs[v])
                    bump(u, -1);
            }

            /// Inserts v, evicting its neighbours in the solution.
            auto force(int v) -> void
            {
                for (int u : nbrs[v])
                    if (in.test(u))
                        remove(u);
                add(v);
            }

            auto load(const Bitset & s) -> void
            {
                auto current = in.to_vector();
                for (int v : current)
                    remove(v);
                s.for_each([&](int v) { add(v); });
            }

            auto add_free(std::mt19937_64 & rng) -> bool
            {
                std::vector<int> free;
                for (int v = 0; v < g.vertex_count(); ++v)
                    if (is_free(v))
                        free.push_back(v);
                if (free.empty())
                    return false;
                std::shuffle(free.begin(), free.end(), rng);
                for (int v : free)
                    if (is_free(v))
                        add(v);
                return true;
            }

            /// One (1,2)-swap: remove x, insert two non-adjacent 1-tight
            /// neighbours of x.
            auto two_improvement(std::mt19937_64 & rng) -> bool
            {
                auto solution = in.to_vector();
                std::shuffle(solution.begin(), solution.end(), rng);
                for (int x : solution) {
                    auto candidates = g.neighbours(x) & one_tight;
                    if (candidates.count() < 2)
                        continue;
                    int found_u = -1, found_w = -1;
                    candidates.for_each([&](int u) {
                        if (found_u >= 0)
                            return;
                        auto rest = candidates;
                        rest.subtract(g.neighbours(u));
                        rest.reset(u);
                        int w = rest.first();
                        if (w >= 0) {
                            found_u = u;
                            found_w = w;
                        }
                    });
                    if (found_u >= 0) {
                        remove(x);
                        add(found_u);
                        add(found_w);
                        return true;
                    }
                }
                return false;
            }

            auto improve(std::mt19937_64 & rng) -> void
            {
                add_free(rng);
                while (two_improvement(rng))
                    add_free(rng);
            }
        };
    }

    auto local_search_mis(const Graph & g, const LocalSearchOptions & options) -> Bitset
    {
        int n = g.vertex_count();
        if (n == 0)
            return Bitset(0);
        if (options.start.size() == n)
            for (int v = 0; v < n; ++v)
                if (options.start.test(v) && g.neighbours(v).intersects(options.start))
                    throw InvalidArgument("local search start set is not independent");

        std::mt19937_64 rng(options.seed);
        State s(g, options.forbidden);
        if (options.start.size() == n) {
            auto start = options.start;
            start &= s.allowed;
            s.load(start);
        }
        s.improve(rng);

        Bitset best = s.in;
        int best_size = s.size;
        std::vector<long> age(n, 0);
        auto t0 = std::chrono::steady_clock::now();

        for (long it = 0; it < options.max_iterations; ++it) {
            if (options.target > 0 && best_size >= options.target)
                break;
            if (options.max_seconds > 0 && (it & 63) == 0) {
                std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
                if (dt.count() > options.max_seconds)
                    break;
            }

            // Perturb: force in one (rarely more) outside vertex, favouring
            // ones untouched for long.
            int k = 1;
            if (std::uniform_int_distribution<int>(0, 2 * std::max(1, s.size))(rng) == 0)
                k = 1 + std::uniform_int_distribution<int>(1, 3)(rng);
            for (int j = 0; j < k; ++j) {
                int pick = -1;
                for (int tries = 0; tries < 4; ++tries) {
                    int v = std::uniform_int_distribution<int>(0, n - 1)(rng);
                    if (s.in.test(v) || ! s.allowed.test(v))
                        continue;
                    if (pick < 0 || age[v] < age[pick])
                        pick = v;
                }
                if (pick < 0)
                    continue;
                s.force(pick);
                age[pick] = it + 1;
            }
            s.improve(rng);

            if (s.size > best_size) {
                best = s.in;
                best_size = s.size;
            }
            else if (s.size < best_size) {
                int gap = best_size - s.size;
                if (std::uniform_int_distribution<int>(0, 1 + gap * gap)(rng) > 0)
                    s.load(best);
            }
        }
        return best;
    }
}
