#include <oddwheel/maximal.hh>

#include <chrono>

namespace oddwheel
{
    namespace
    {
        class Enumerator
        {
        private:
            const Graph & _g;
            const std::function<void(const Bitset &)> & _visit;
            Budget _budget;
            std::vector<Bitset> _compatible;
            Bitset _current;
            long _calls = 0;
            std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();

        public:
            EnumerationResult result;

            Enumerator(const Graph & g, const std::function<void(const Bitset &)> & visit, const Budget & budget) :
                _g(g), _visit(visit), _budget(budget), _current(g.vertex_count())
            {
                // Non-neighbours play the role of neighbours in clique search.
                for (int v = 0; v < g.vertex_count(); ++v) {
                    auto c = g.neighbours(v).complemented();
                    c.reset(v);
                    _compatible.push_back(std::move(c));
                }
            }

            auto over_budget() -> bool
            {
                ++_calls;
                if (_budget.max_nodes > 0 && _calls > _budget.max_nodes)
                    return true;
                if (_budget.max_seconds > 0 && (_calls & 4095) == 0) {
                    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - _start;
                    if (dt.count() > _budget.max_seconds)
                        return true;
                }
                return false;
            }

            auto expand(Bitset P, Bitset X) -> void
            {
                if (! result.complete)
                    return;
                if (over_budget()) {
                    result.complete = false;
                    return;
                }
                if (P.empty()) {
                    if (X.empty()) {
                        ++result.count;
                        _visit(_current);
                    }
                    return;
                }

                // Pivot maximises |P ∩ compatible(u)| over P ∪ X.
                int pivot = -1, best = -1;
                auto consider = [&](int u) {
                    int c = (P & _compatible[u]).count();
                    if (c > best) {
                        best = c;
                        pivot = u;
                    }
                };
                P.for_each(consider);
                X.for_each(consider);

                auto candidates = P;
                candidates.subtract(_compatible[pivot]);
                for (int v : candidates.to_vector()) {
                    _current.set(v);
                    expand(P & _compatible[v], X & _compatible[v]);
                    _current.reset(v);
                    if (! result.complete)
                        return;
                    P.reset(v);
                    X.set(v);
                }
            }
        };
    }

    auto enumerate_maximal(const Graph & g, const std::function<void(const Bitset &)> & visit, const Budget & budget)
        -> EnumerationResult
    {
        Enumerator e(g, visit, budget);
        e.expand(g.all_vertices(), Bitset(g.vertex_count()));
        return e.result;
    }
}
