#include <oddwheel/automorphism.hh>
#include <oddwheel/errors.hh>
#include <oddwheel/local_search.hh>
#include <oddwheel/mis.hh>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

namespace oddwheel
{
    auto relation_name(Relation r) -> std::string
    {
        switch (r) {
        case Relation::Eq: return "eq";
        case Relation::Ge: return "ge";
        case Relation::Le: return "le";
        }
        return "?";
    }

    auto parse_relation(std::string_view text) -> Relation
    {
        std::string t;
        for (char c : text)
            t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (t == "eq" || t == "=" || t == "==")
            return Relation::Eq;
        if (t == "ge" || t == ">=")
            return Relation::Ge;
        if (t == "le" || t == "<=")
            return Relation::Le;
        throw InvalidArgument("unknown relation '" + std::string(text) + "'");
    }

    auto status_name(SolveStatus s) -> std::string
    {
        switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Aborted: return "aborted";
        }
        return "?";
    }

    auto layer_clause(const Graph & g, int coord, const AtomVertex & value, Relation relation, int count) -> Clause
    {
        if (count < 0)
            throw InvalidArgument("clause count must be non-negative");
        Clause c;
        c.members = layer_slice(g, coord, value);
        c.relation = relation;
        c.count = count;
        c.name = "coord" + std::to_string(coord) + "=" + value.to_string();
        return c;
    }

    auto slice_clause(Bitset members, Relation relation, int count, std::string name) -> Clause
    {
        if (count < 0)
            throw InvalidArgument("clause count must be non-negative");
        return Clause{std::move(members), relation, count, std::move(name)};
    }

    auto ConstraintSpec::empty() const -> bool
    {
        return clauses.empty() && forced_in.empty() && forced_out.empty();
    }

    namespace
    {
        using Clock = std::chrono::steady_clock;

        using Wide = unsigned __int128;

        inline auto popcount(std::uint64_t x) -> int { return std::popcount(x); }
        inline auto popcount(Wide x) -> int
        {
            return std::popcount(static_cast<std::uint64_t>(x)) + std::popcount(static_cast<std::uint64_t>(x >> 64));
        }
        inline auto lowest(std::uint64_t x) -> int { return std::countr_zero(x); }
        inline auto lowest(Wide x) -> int
        {
            auto lo = static_cast<std::uint64_t>(x);
            return lo ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(x >> 64));
        }
        inline auto mix(std::uint64_t x) -> std::uint64_t { return x * 0x9E3779B97F4A7C15ull; }
        inline auto mix(Wide x) -> std::uint64_t
        {
            return (static_cast<std::uint64_t>(x) ^ (static_cast<std::uint64_t>(x >> 64) * 0xC2B2AE3D27D4EB4Full)) *
                0x9E3779B97F4A7C15ull;
        }

        /// Exact independence number of graphs on at most 64 (or 128)
        /// vertices, memoised on the vertex mask.
        template <typename Mask>
        class SmallAlpha
        {
        private:
            struct Entry
            {
                Mask key = 0;
                int value = 0;
            };

            const std::vector<Mask> * _adj;
            std::vector<Entry> _table;
            std::size_t _used = 0;
            int _shift = 0;

            static constexpr int min_bits = 12;
            static constexpr int max_bits = 21;

            auto slot(Mask key) const -> std::size_t { return static_cast<std::size_t>(mix(key) >> _shift); }

            auto lookup(Mask key) const -> int
            {
                std::size_t mask = _table.size() - 1;
                for (std::size_t i = slot(key);; i = (i + 1) & mask) {
                    if (_table[i].key == key)
                        return _table[i].value;
                    if (_table[i].key == 0)
                        return -1;
                }
            }

            auto insert(Mask key, int value) -> void
            {
                if (2 * (_used + 1) > _table.size()) {
                    int bits = std::countr_zero(_table.size());
                    if (bits >= max_bits) {
                        std::fill(_table.begin(), _table.end(), Entry{});
                        _used = 0;
                    }
                    else {
                        auto old = std::move(_table);
                        _table.assign(old.size() * 2, Entry{});
                        _shift = 64 - (bits + 1);
                        _used = 0;
                        for (auto & e : old)
                            if (e.key)
                                insert(e.key, e.value);
                    }
                }
                std::size_t mask = _table.size() - 1;
                std::size_t i = slot(key);
                while (_table[i].key != 0 && _table[i].key != key)
                    i = (i + 1) & mask;
                if (_table[i].key == 0)
                    ++_used;
                _table[i] = Entry{key, value};
            }

            auto component(Mask m) const -> Mask
            {
                const auto & adj = *_adj;
                Mask comp = m & (~m + 1);
                Mask frontier = comp;
                while (frontier) {
                    Mask next = 0;
                    for (Mask f = frontier; f; f &= f - 1)
                        next |= adj[lowest(f)];
                    next &= m & ~comp;
                    comp |= next;
                    frontier = next;
                }
                return comp;
            }

        public:
            explicit SmallAlpha(const std::vector<Mask> & adj) :
                _adj(&adj), _table(std::size_t{1} << min_bits), _shift(64 - min_bits)
            {
            }

            auto solve(Mask m) -> int
            {
                const auto & adj = *_adj;
                int base = 0;
                bool changed = true;
                while (changed && m) {
                    changed = false;
                    for (Mask w = m; w; w &= w - 1) {
                        int v = lowest(w);
                        Mask bit = Mask{1} << v;
                        if (! (m & bit))
                            continue;
                        int d = popcount(adj[v] & m);
                        if (d <= 1) {
                            ++base;
                            m &= ~(bit | adj[v]);
                            changed = true;
                        }
                    }
                }
                if (! m)
                    return base;

                int cached = lookup(m);
                if (cached >= 0)
                    return base + cached;

                int result;
                Mask comp = component(m);
                if (comp != m)
                    result = solve(comp) + solve(m & ~comp);
                else {
                    int best_v = -1, best_d = -1;
                    for (Mask w = m; w; w &= w - 1) {
                        int v = lowest(w);
                        int d = popcount(adj[v] & m);
                        if (d > best_d) {
                            best_d = d;
                            best_v = v;
                        }
                    }
                    Mask bit = Mask{1} << best_v;
                    int with = 1 + solve(m & ~(bit | adj[best_v]));
                    int without = solve(m & ~bit);
                    result = std::max(with, without);
                }
                insert(m, result);
                return base + result;
            }
        };

        struct Partition
        {
            int shape = 0;
            int block_count = 0;
            int local_size = 0;
            unsigned coords = 0;
            std::vector<int> block_of;
            std::vector<std::uint64_t> bit_of;
        };

        /// Blocks of a partition merged along cliques of one outside factor;
        /// the fibres of a group are pairwise joined by a perfect matching.
        struct Grouping
        {
            int base = 0;
            int shape = 0;
            /// For each group, its (block, rank) members.
            std::vector<std::vector<std::pair<int, int>>> groups;
            /// Fractional covers count group g with weight weights[g] / denominator.
            std::vector<int> weights;
            int denominator = 1;
        };

        struct ClauseData
        {
            std::vector<Word> mask;
            int count = 0;
            bool cap = false;
            bool need = false;
        };

        /// Immutable per-solve data shared by all workers.
        class Problem
        {
        public:
            int n = 0;
            int words = 0;
            std::vector<Word> adj;
            std::vector<ClauseData> clauses;
            std::vector<std::vector<int>> clauses_of;
            std::vector<int> cap_regions;
            std::vector<int> needs;
            std::vector<std::vector<std::uint64_t>> shapes;
            std::vector<Partition> partitions;
            std::vector<std::vector<Wide>> wide_shapes;
            std::vector<Grouping> groupings;
            /// Disjoint need clauses joined by at least one edge.
            std::vector<std::pair<int, int>> linked_needs;
            std::optional<PermutationGroup> group;
            /// Group elements that also preserve every clause and forced set.
            std::vector<int> root_elements;

            auto row(int v) const -> const Word * { return adj.data() + static_cast<std::size_t>(v) * words; }

            Problem(const Graph & g, const ConstraintSpec & spec, const SolverOptions & options)
            {
                n = g.vertex_count();
                words = words_for(n);
                adj.assign(static_cast<std::size_t>(n) * words, 0);
                for (int v = 0; v < n; ++v) {
                    auto w = g.neighbours(v).words();
                    std::copy(w.begin(), w.end(), adj.begin() + static_cast<std::ptrdiff_t>(v) * words);
                }

                clauses_of.assign(n, {});
                for (auto & c : spec.clauses) {
                    ClauseData d;
                    auto w = c.members.words();
                    d.mask.assign(w.begin(), w.end());
                    d.count = c.count;
                    d.cap = c.relation != Relation::Ge;
                    d.need = c.relation != Relation::Le;
                    int id = static_cast<int>(clauses.size());
                    c.members.for_each([&](int v) { clauses_of[v].push_back(id); });
                    clauses.push_back(std::move(d));
                    if (clauses.back().need)
                        needs.push_back(id);
                }

                std::vector<Word> used(words, 0);
                for (int id = 0; id < static_cast<int>(clauses.size()); ++id) {
                    auto & c = clauses[id];
                    if (! c.cap)
                        continue;
                    bool disjoint = true;
                    for (int i = 0; i < words; ++i)
                        if (used[i] & c.mask[i])
                            disjoint = false;
                    if (! disjoint)
                        continue;
                    for (int i = 0; i < words; ++i)
                        used[i] |= c.mask[i];
                    cap_regions.push_back(id);
                }

                for (std::size_t a = 0; a < needs.size(); ++a)
                    for (std::size_t b = a + 1; b < needs.size(); ++b)
                        if (linked(spec.clauses[needs[a]].members, spec.clauses[needs[b]].members, g))
                            linked_needs.emplace_back(needs[a], needs[b]);

                if (options.block_bounds) {
                    build_partitions(g);
                    build_groupings(g);
                }
                if (options.use_symmetry)
                    build_group(g, spec);
            }

        private:
            static auto linked(const Bitset & a, const Bitset & b, const Graph & g) -> bool
            {
                if (a.intersects(b))
                    return false;
                bool found = false;
                a.for_each([&](int v) {
                    if (! found && g.neighbours(v).intersects(b))
                        found = true;
                });
                return found;
            }

            struct Cover
            {
                std::vector<std::vector<int>> cliques;
                std::vector<int> weights;
                int denominator = 1;

                Cover(std::vector<std::vector<int>> c) : cliques(std::move(c)), weights(cliques.size(), 1) {}
                Cover(std::vector<std::vector<int>> c, std::vector<int> w, int d) :
                    cliques(std::move(c)), weights(std::move(w)), denominator(d)
                {
                }
            };

            /// Clique covers of an atom's vertex set, as lists of internal
            /// indices; rotations give several covers, odd cycles and wheels
            /// also get the half-weighted cover by all rim edges.
            static auto clique_covers(const AtomGraph & a) -> std::vector<Cover>
            {
                std::vector<Cover> covers;
                auto half_rim = [&](bool hub) {
                    int n = a.n();
                    std::vector<std::vector<int>> cliques;
                    std::vector<int> weights;
                    for (int i = 0; i < n; ++i) {
                        cliques.push_back({i, (i + 1) % n});
                        weights.push_back(1);
                    }
                    if (hub) {
                        cliques.push_back({a.hub_index()});
                        weights.push_back(2);
                    }
                    covers.emplace_back(std::move(cliques), std::move(weights), 2);
                };
                int n = a.n();
                auto pair_up = [](std::vector<int> path) {
                    std::vector<std::vector<int>> cliques;
                    for (std::size_t i = 0; i < path.size(); i += 2) {
                        if (i + 1 < path.size())
                            cliques.push_back({path[i], path[i + 1]});
                        else
                            cliques.push_back({path[i]});
                    }
                    return cliques;
                };
                auto everything = [&] {
                    std::vector<int> all(a.order());
                    for (int i = 0; i < a.order(); ++i)
                        all[i] = i;
                    covers.emplace_back(std::vector<std::vector<int>>{all});
                };
                switch (a.kind()) {
                case AtomKind::Clique:
                    everything();
                    break;
                case AtomKind::Path:
                    if (n >= 2)
                        for (int r = 0; r < 2 && r < n - 1; ++r) {
                            std::vector<std::vector<int>> cover;
                            if (r)
                                cover.push_back({0});
                            std::vector<int> path;
                            for (int i = r; i < n; ++i)
                                path.push_back(i);
                            for (auto & c : pair_up(path))
                                cover.push_back(c);
                            covers.emplace_back(cover);
                        }
                    break;
                case AtomKind::Cycle:
                    if (n == 3) {
                        everything();
                        break;
                    }
                    for (int r = 0; r < (n % 2 ? n : 2); ++r) {
                        std::vector<int> path;
                        for (int i = 0; i < n; ++i)
                            path.push_back((r + i) % n);
                        covers.emplace_back(pair_up(path));
                    }
                    break;
                case AtomKind::Wheel:
                    if (n == 3) {
                        everything();
                        break;
                    }
                    for (int r = 0; r < n; ++r) {
                        std::vector<std::vector<int>> cover{{a.hub_index(), r, (r + 1) % n}};
                        std::vector<int> path;
                        for (int i = 2; i < n; ++i)
                            path.push_back((r + i) % n);
                        for (auto & c : pair_up(path))
                            cover.push_back(c);
                        covers.emplace_back(cover);
                    }
                    break;
                }
                if (covers.size() > 12)
                    covers.erase(covers.begin() + 12, covers.end());
                if ((a.kind() == AtomKind::Cycle || a.kind() == AtomKind::Wheel) && n > 3 && n % 2)
                    half_rim(a.kind() == AtomKind::Wheel);
                return covers;
            }

            auto build_groupings(const Graph & g) -> void
            {
                auto factors = g.factor_shape();
                int k = static_cast<int>(factors.size());
                int base_count = static_cast<int>(partitions.size());
                for (int pi = 0; pi < base_count; ++pi) {
                    const auto & part = partitions[pi];
                    if (part.coords == 0)
                        continue;
                    std::vector<int> outer_stride(k, 0);
                    int stride = 1;
                    for (int c = 0; c < k; ++c)
                        if (! (part.coords & (1u << c))) {
                            outer_stride[c] = stride;
                            stride *= factors[c].order();
                        }
                    for (int c = 0; c < k; ++c) {
                        if (part.coords & (1u << c))
                            continue;
                        for (auto & cover : clique_covers(factors[c])) {
                            std::size_t widest = 0;
                            for (auto & q : cover.cliques)
                                widest = std::max(widest, q.size());
                            if (widest < 2 || static_cast<int>(widest) * part.local_size > 128)
                                continue;
                            Grouping gr;
                            gr.base = pi;
                            gr.shape = wide_shape(part.shape, static_cast<int>(widest), part.local_size);
                            gr.denominator = cover.denominator;
                            std::map<std::pair<int, int>, int> ids;
                            for (int b = 0; b < part.block_count; ++b) {
                                int x = (b / outer_stride[c]) % factors[c].order();
                                for (std::size_t q = 0; q < cover.cliques.size(); ++q) {
                                    auto & clique = cover.cliques[q];
                                    auto at = std::find(clique.begin(), clique.end(), x);
                                    if (at == clique.end())
                                        continue;
                                    std::pair<int, int> key{b - x * outer_stride[c], static_cast<int>(q)};
                                    auto [it, fresh] = ids.try_emplace(key, static_cast<int>(gr.groups.size()));
                                    if (fresh) {
                                        gr.groups.emplace_back();
                                        gr.weights.push_back(cover.weights[q]);
                                    }
                                    gr.groups[it->second].emplace_back(b, static_cast<int>(at - clique.begin()));
                                }
                            }
                            groupings.push_back(std::move(gr));
                        }
                    }
                }
            }

            /// m copies of a base shape, copy r at offset r * size, with
            /// matching positions joined.
            auto wide_shape(int base, int m, int size) -> int
            {
                std::vector<Wide> adj(128, 0);
                const auto & local = shapes[base];
                for (int r = 0; r < m; ++r)
                    for (int l = 0; l < size; ++l) {
                        Wide row = static_cast<Wide>(local[l]) << (r * size);
                        for (int q = 0; q < m; ++q)
                            if (q != r)
                                row |= Wide{1} << (q * size + l);
                        adj[r * size + l] = row;
                    }
                auto it = std::find(wide_shapes.begin(), wide_shapes.end(), adj);
                if (it != wide_shapes.end())
                    return static_cast<int>(it - wide_shapes.begin());
                wide_shapes.push_back(std::move(adj));
                return static_cast<int>(wide_shapes.size()) - 1;
            }

            auto build_group(const Graph & g, const ConstraintSpec & spec) -> void
            {
                group = product_group(g, std::size_t{32} << 20);
                if (! group || group->order < 2)
                    return;
                std::vector<const Bitset *> fixed;
                for (auto & c : spec.clauses)
                    fixed.push_back(&c.members);
                if (spec.forced_in.size() == n)
                    fixed.push_back(&spec.forced_in);
                if (spec.forced_out.size() == n)
                    fixed.push_back(&spec.forced_out);
                for (std::size_t e = 0; e < group->order; ++e) {
                    bool ok = true;
                    for (auto * b : fixed) {
                        b->for_each([&](int v) {
                            if (ok && ! b->test(group->image(e, v)))
                                ok = false;
                        });
                        if (! ok)
                            break;
                    }
                    if (ok)
                        root_elements.push_back(static_cast<int>(e));
                }
            }

            auto build_partitions(const Graph & g) -> void
            {
                auto factors = g.factor_shape();
                int k = static_cast<int>(factors.size());
                if (k == 0) {
                    if (n > 0 && n <= 64)
                        add_partition(g, true);
                    return;
                }
                if (k > 20)
                    return;

                std::vector<unsigned> candidates;
                for (unsigned s = 1; s < (1u << k); ++s) {
                    long order = 1;
                    for (int c = 0; c < k && order <= 64; ++c)
                        if (s & (1u << c))
                            order *= factors[c].order();
                    if (order <= 64 && order > 1)
                        candidates.push_back(s);
                }
                std::vector<unsigned> maximal;
                for (unsigned s : candidates) {
                    bool dominated = false;
                    for (unsigned t : candidates)
                        if (t != s && (t & s) == s)
                            dominated = true;
                    if (! dominated)
                        maximal.push_back(s);
                }
                std::sort(maximal.begin(), maximal.end());
                if (maximal.size() > 12)
                    maximal.resize(12);
                for (unsigned s : maximal)
                    add_partition(g, false, s);
            }

            /// Blocks are the classes of "equal outside coordinate set s"; a
            /// block's local index is the mixed-radix number over s.
            auto add_partition(const Graph & g, bool whole, unsigned s = 0) -> void
            {
                Partition p;
                p.block_of.assign(n, 0);
                p.bit_of.assign(n, 0);
                p.coords = whole ? 0 : s;
                if (whole) {
                    p.block_count = 1;
                    p.local_size = n;
                    for (int v = 0; v < n; ++v)
                        p.bit_of[v] = std::uint64_t{1} << v;
                }
                else {
                    auto factors = g.factor_shape();
                    int k = static_cast<int>(factors.size());
                    std::vector<int> local_stride(k, 0), outer_stride(k, 0);
                    int local_size = 1, outer_size = 1;
                    for (int c = 0; c < k; ++c) {
                        if (s & (1u << c)) {
                            local_stride[c] = local_size;
                            local_size *= factors[c].order();
                        }
                        else {
                            outer_stride[c] = outer_size;
                            outer_size *= factors[c].order();
                        }
                    }
                    p.block_count = outer_size;
                    p.local_size = local_size;
                    for (int v = 0; v < n; ++v) {
                        int rest = v, local = 0, outer = 0;
                        for (int c = 0; c < k; ++c) {
                            int x = rest % factors[c].order();
                            rest /= factors[c].order();
                            if (s & (1u << c))
                                local += x * local_stride[c];
                            else
                                outer += x * outer_stride[c];
                        }
                        p.block_of[v] = outer;
                        p.bit_of[v] = std::uint64_t{1} << local;
                    }
                }

                // Local adjacency from block 0, shared by identical shapes.
                std::vector<std::uint64_t> local_adj(64, 0);
                for (int v = 0; v < n; ++v) {
                    if (p.block_of[v] != 0)
                        continue;
                    int lv = std::countr_zero(p.bit_of[v]);
                    g.neighbours(v).for_each([&](int u) {
                        if (p.block_of[u] == 0)
                            local_adj[lv] |= p.bit_of[u];
                    });
                }
                auto it = std::find(shapes.begin(), shapes.end(), local_adj);
                p.shape = static_cast<int>(it - shapes.begin());
                if (it == shapes.end())
                    shapes.push_back(std::move(local_adj));
                partitions.push_back(std::move(p));
            }
        };

        struct Shared
        {
            std::atomic<int> best{-1};
            std::atomic<long> nodes{0};
            std::atomic<bool> stop{false};
            std::atomic<bool> aborted{false};
            std::mutex lock;
            std::vector<int> best_set;
            bool have_best = false;
            int seen = -1;
            std::vector<int> seen_set;
            long node_limit = 0;
            double second_limit = 0;
            Clock::time_point start;
            bool feasibility = false;
            bool found = false;
        };

        struct Task
        {
            std::vector<int> chosen;
            std::vector<Word> remaining;
            std::vector<int> elements;
        };

        class Worker
        {
        private:
            const Problem & _p;
            Shared & _sh;
            std::vector<Word> _pool;
            std::vector<Word> _scratch;
            std::vector<int> _chosen;
            std::vector<int> _counts;
            std::vector<SmallAlpha<std::uint64_t>> _small;
            std::vector<SmallAlpha<Wide>> _wide;
            /// Per partition: block masks and exact block values of the last
            /// bound evaluation.
            std::vector<std::vector<std::uint64_t>> _local;
            std::vector<std::vector<int>> _values;
            std::vector<bool> _grouped;
            std::vector<int> _region_ub;
            int _focus = -1;
            std::vector<std::vector<int>> _elements;
            std::vector<Word> _chosen_mask;
            int _split_depth = -1;
            std::vector<Task> * _tasks = nullptr;

            auto W() const -> int { return _p.words; }
            auto level(int depth) -> Word * { return _pool.data() + static_cast<std::size_t>(depth) * W(); }

            auto push(int v) -> void
            {
                _chosen.push_back(v);
                for (int c : _p.clauses_of[v])
                    ++_counts[c];
            }

            auto unwind(std::size_t mark) -> void
            {
                while (_chosen.size() > mark) {
                    int v = _chosen.back();
                    _chosen.pop_back();
                    for (int c : _p.clauses_of[v])
                        --_counts[c];
                }
            }

            auto popcount_and(const Word * a, const Word * b) const -> int
            {
                int r = 0;
                for (int i = 0; i < W(); ++i)
                    r += std::popcount(a[i] & b[i]);
                return r;
            }

            auto any(const Word * a) const -> bool
            {
                for (int i = 0; i < W(); ++i)
                    if (a[i])
                        return true;
                return false;
            }

            auto take(Word * P, int v) -> void
            {
                push(v);
                const Word * r = _p.row(v);
                for (int i = 0; i < W(); ++i)
                    P[i] &= ~r[i];
                P[v / bits_per_word] &= ~(Word{1} << (v % bits_per_word));
            }

            auto propagate(Word * P) -> bool
            {
                if (_p.clauses.empty())
                    return true;
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (int id = 0; id < static_cast<int>(_p.clauses.size()); ++id) {
                        auto & c = _p.clauses[id];
                        const Word * m = c.mask.data();
                        int s = _counts[id];
                        if (c.cap) {
                            if (s > c.count)
                                return false;
                            if (s == c.count)
                                for (int i = 0; i < W(); ++i)
                                    if (P[i] & m[i]) {
                                        P[i] &= ~m[i];
                                        changed = true;
                                    }
                        }
                        if (c.need && s < c.count) {
                            int d = c.count - s;
                            int r = popcount_and(P, m);
                            if (r < d)
                                return false;
                            if (r == d) {
                                Word * f = _scratch.data();
                                for (int i = 0; i < W(); ++i)
                                    f[i] = P[i] & m[i];
                                for (int i = 0; i < W(); ++i)
                                    for (Word w = f[i]; w; w &= w - 1) {
                                        int v = i * bits_per_word + std::countr_zero(w);
                                        if (popcount_and(_p.row(v), f))
                                            return false;
                                    }
                                for (int i = 0; i < W(); ++i)
                                    for (Word w = f[i]; w; w &= w - 1)
                                        take(P, i * bits_per_word + std::countr_zero(w));
                                changed = true;
                            }
                        }
                    }
                }
                return true;
            }

            auto needs_met() const -> bool
            {
                for (int id : _p.needs)
                    if (_counts[id] < _p.clauses[id].count)
                        return false;
                return true;
            }

            auto cover_bound(const Word * X, int limit) -> int
            {
                Word * U = _scratch.data() + W();
                Word * Q = _scratch.data() + 2 * W();
                std::copy(X, X + W(), U);
                int k = 0;
                for (int i = 0; i < W();) {
                    if (! U[i]) {
                        ++i;
                        continue;
                    }
                    if (++k >= limit)
                        return k;
                    std::copy(U, U + W(), Q);
                    int j = i;
                    while (j < W()) {
                        if (! Q[j]) {
                            ++j;
                            continue;
                        }
                        int v = j * bits_per_word + std::countr_zero(Q[j]);
                        U[j] &= ~(Word{1} << (v % bits_per_word));
                        const Word * r = _p.row(v);
                        for (int x = j; x < W(); ++x)
                            Q[x] &= r[x];
                    }
                }
                return k;
            }

            auto block_bound(int pi, const Word * X, int limit) -> int
            {
                const auto & part = _p.partitions[pi];
                auto & local = _local[pi];
                auto & values = _values[pi];
                std::fill(local.begin(), local.end(), 0);
                for (int i = 0; i < W(); ++i)
                    for (Word w = X[i]; w; w &= w - 1) {
                        int v = i * bits_per_word + std::countr_zero(w);
                        local[part.block_of[v]] |= part.bit_of[v];
                    }
                auto & solver = _small[part.shape];
                int sum = 0;
                for (int b = 0; b < part.block_count; ++b) {
                    values[b] = local[b] ? solver.solve(local[b]) : 0;
                    sum += values[b];
                    if (sum >= limit && ! _grouped[pi])
                        return sum;
                }
                return sum;
            }

            /// Groups whose residue is small are solved exactly; larger ones
            /// fall back on the sum of their blocks.
            auto grouped_bound(const Grouping & gr, int limit) -> int
            {
                static constexpr int exact_limit = 64;
                const auto & part = _p.partitions[gr.base];
                const auto & local = _local[gr.base];
                const auto & values = _values[gr.base];
                auto & solver = _wide[gr.shape];
                long cut = static_cast<long>(limit) * gr.denominator;
                long sum = 0;
                for (std::size_t g = 0; g < gr.groups.size(); ++g) {
                    auto & members = gr.groups[g];
                    Wide m = 0;
                    int fallback = 0;
                    for (auto [b, r] : members) {
                        m |= static_cast<Wide>(local[b]) << (r * part.local_size);
                        fallback += values[b];
                    }
                    int value = fallback;
                    if (fallback > 0 && members.size() > 1 && popcount(m) <= exact_limit)
                        value = solver.solve(m);
                    sum += static_cast<long>(gr.weights[g]) * value;
                    if (sum >= cut)
                        return limit;
                }
                return static_cast<int>(sum / gr.denominator);
            }

            auto set_bound(const Word * X) -> int
            {
                if (! any(X))
                    return 0;
                int best = cover_bound(X, _p.n + 1);
                for (int pi = 0; pi < static_cast<int>(_p.partitions.size()); ++pi)
                    best = std::min(best, block_bound(pi, X, best));
                for (auto & gr : _p.groupings)
                    best = std::min(best, grouped_bound(gr, best));
                return best;
            }

            /// Upper bound on how many more vertices can be added from P; -1
            /// when some clause can no longer be met.
            auto bound(const Word * P) -> int
            {
                _focus = -1;
                int plain = set_bound(P);
                if (_p.clauses.empty())
                    return plain;

                Word * X = _scratch.data() + 3 * W();
                Word * rest = _scratch.data() + 4 * W();
                std::copy(P, P + W(), rest);
                int sum = 0;
                std::fill(_region_ub.begin(), _region_ub.end(), -1);
                for (int id : _p.cap_regions) {
                    auto & c = _p.clauses[id];
                    for (int i = 0; i < W(); ++i) {
                        X[i] = P[i] & c.mask[i];
                        rest[i] &= ~c.mask[i];
                    }
                    int u = set_bound(X);
                    _region_ub[id] = u;
                    sum += std::min(u, c.count - _counts[id]);
                }
                sum += set_bound(rest);

                _focus = -1;
                int focus_slack = 0;
                for (int id : _p.needs) {
                    auto & c = _p.clauses[id];
                    int d = c.count - _counts[id];
                    if (d <= 0)
                        continue;
                    int u = _region_ub[id];
                    if (u < 0) {
                        for (int i = 0; i < W(); ++i)
                            X[i] = P[i] & c.mask[i];
                        u = set_bound(X);
                    }
                    if (u < d)
                        return -1;
                    if (_focus < 0 || u - d < focus_slack) {
                        _focus = id;
                        focus_slack = u - d;
                    }
                }

                for (auto [a, b] : _p.linked_needs) {
                    int d = _p.clauses[a].count - _counts[a] + _p.clauses[b].count - _counts[b];
                    if (_counts[a] >= _p.clauses[a].count || _counts[b] >= _p.clauses[b].count)
                        continue;
                    auto & ma = _p.clauses[a].mask;
                    auto & mb = _p.clauses[b].mask;
                    for (int i = 0; i < W(); ++i)
                        X[i] = P[i] & (ma[i] | mb[i]);
                    if (set_bound(X) < d)
                        return -1;
                }
                return std::min(plain, sum);
            }

            /// Highest residual degree, restricted to the unmet need clause
            /// with least slack when there is one.
            auto choose(const Word * P) const -> int
            {
                const Word * within = _focus >= 0 ? _p.clauses[_focus].mask.data() : nullptr;
                int best_v = -1, best_d = -1;
                for (int i = 0; i < W(); ++i)
                    for (Word w = within ? P[i] & within[i] : P[i]; w; w &= w - 1) {
                        int v = i * bits_per_word + std::countr_zero(w);
                        int d = popcount_and(_p.row(v), P);
                        if (d > best_d) {
                            best_d = d;
                            best_v = v;
                        }
                    }
                return best_v;
            }

            auto record() -> void
            {
                int size = static_cast<int>(_chosen.size());
                if (size > _sh.best.load(std::memory_order_relaxed)) {
                    std::lock_guard guard(_sh.lock);
                    if (size > _sh.best.load()) {
                        _sh.best = size;
                        _sh.best_set = _chosen;
                        _sh.have_best = true;
                        if (_sh.feasibility) {
                            _sh.found = true;
                            _sh.stop = true;
                        }
                    }
                }
                if (_sh.feasibility && size > _sh.seen) {
                    std::lock_guard guard(_sh.lock);
                    if (size > _sh.seen) {
                        _sh.seen = size;
                        _sh.seen_set = _chosen;
                    }
                }
            }

            auto tick() -> bool
            {
                long k = _sh.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
                if (_sh.node_limit > 0 && k > _sh.node_limit) {
                    _sh.aborted = true;
                    _sh.stop = true;
                    return false;
                }
                if (_sh.second_limit > 0 && (k & 1023) == 0) {
                    std::chrono::duration<double> dt = Clock::now() - _sh.start;
                    if (dt.count() > _sh.second_limit) {
                        _sh.aborted = true;
                        _sh.stop = true;
                        return false;
                    }
                }
                return true;
            }

            auto node(int depth) -> void
            {
                if (_sh.stop.load(std::memory_order_relaxed) || ! tick())
                    return;
                Word * P = level(depth);
                std::size_t mark = _chosen.size();
                if (propagate(P)) {
                    if (needs_met())
                        record();
                    if (! _sh.stop.load(std::memory_order_relaxed) && any(P)) {
                        int ub = bound(P);
                        int have = static_cast<int>(_chosen.size());
                        int best = _sh.best.load(std::memory_order_relaxed);
                        if (ub >= 0 && have + ub > best) {
                            restrict_group(depth, P);
                            if (depth == _split_depth)
                                _tasks->push_back(Task{_chosen, std::vector<Word>(P, P + W()), _elements[depth]});
                            else
                                branch(depth, P, have + ub == best + 1);
                        }
                    }
                }
                unwind(mark);
            }

            /// Keeps the elements of the inherited group that fix the chosen
            /// set and the candidate set.
            auto restrict_group(int depth, const Word * P) -> void
            {
                auto & ids = _elements[depth];
                if (ids.size() < 2)
                    return;
                std::fill(_chosen_mask.begin(), _chosen_mask.end(), 0);
                for (int v : _chosen)
                    _chosen_mask[v / bits_per_word] |= Word{1} << (v % bits_per_word);
                auto & grp = *_p.group;
                auto has = [](const Word * m, int v) { return (m[v / bits_per_word] >> (v % bits_per_word)) & 1; };
                std::size_t kept = 0;
                for (int e : ids) {
                    bool ok = true;
                    for (int v : _chosen)
                        if (! has(_chosen_mask.data(), grp.image(e, v))) {
                            ok = false;
                            break;
                        }
                    for (int i = 0; ok && i < W(); ++i)
                        for (Word w = P[i]; w; w &= w - 1)
                            if (! has(P, grp.image(e, i * bits_per_word + std::countr_zero(w)))) {
                                ok = false;
                                break;
                            }
                    if (ok)
                        ids[kept++] = e;
                }
                ids.resize(kept);
            }

            /// Orbital branching: either v is in, or its whole orbit under the
            /// node's symmetry group is out.
            auto branch(int depth, const Word * P, bool tight) -> void
            {
                int v = choose(P);
                Word * C = level(depth + 1);
                const auto & ids = _elements[depth];
                auto & child = _elements[depth + 1];
                auto inherit = [&] {
                    if (ids.size() > 1)
                        child = ids;
                    else
                        child.clear();
                };
                auto include = [&] {
                    std::copy(P, P + W(), C);
                    std::size_t mark = _chosen.size();
                    take(C, v);
                    inherit();
                    node(depth + 1);
                    unwind(mark);
                };
                auto exclude = [&] {
                    std::copy(P, P + W(), C);
                    C[v / bits_per_word] &= ~(Word{1} << (v % bits_per_word));
                    if (ids.size() > 1)
                        for (int e : ids) {
                            int u = _p.group->image(e, v);
                            C[u / bits_per_word] &= ~(Word{1} << (u % bits_per_word));
                        }
                    inherit();
                    node(depth + 1);
                };
                if (tight) {
                    exclude();
                    include();
                }
                else {
                    include();
                    exclude();
                }
            }

        public:
            Worker(const Problem & p, Shared & sh) :
                _p(p),
                _sh(sh),
                _pool(static_cast<std::size_t>(p.n + 2) * p.words, 0),
                _scratch(static_cast<std::size_t>(5) * p.words, 0),
                _counts(p.clauses.size(), 0),
                _region_ub(p.clauses.size(), -1),
                _elements(p.n + 2),
                _chosen_mask(p.words, 0)
            {
                _grouped.assign(p.partitions.size(), false);
                for (auto & gr : p.groupings)
                    _grouped[gr.base] = true;
                for (auto & part : p.partitions) {
                    _local.emplace_back(part.block_count, 0);
                    _values.emplace_back(part.block_count, 0);
                }
                for (auto & s : p.shapes)
                    _small.emplace_back(s);
                for (auto & s : p.wide_shapes)
                    _wide.emplace_back(s);
            }

            auto load(const std::vector<int> & chosen, const std::vector<Word> & remaining,
                const std::vector<int> & elements) -> void
            {
                unwind(0);
                for (int v : chosen)
                    push(v);
                std::copy(remaining.begin(), remaining.end(), level(0));
                _elements[0] = elements;
            }

            auto run() -> void { node(0); }

            auto split(int depth, std::vector<Task> & out) -> void
            {
                _split_depth = depth;
                _tasks = &out;
                node(0);
                _split_depth = -1;
                _tasks = nullptr;
            }

            /// Root propagation and bound without searching.
            auto root_bound() -> int
            {
                Word * P = level(0);
                std::vector<Word> saved(P, P + W());
                std::size_t mark = _chosen.size();
                int result = -1;
                if (propagate(P)) {
                    int ub = bound(P);
                    if (ub >= 0)
                        result = static_cast<int>(_chosen.size()) + ub;
                }
                unwind(mark);
                std::copy(saved.begin(), saved.end(), P);
                return result;
            }
        };

        auto to_bitset(int n, const std::vector<int> & vs) -> Bitset
        {
            Bitset b(n);
            for (int v : vs)
                b.set(v);
            return b;
        }

        auto check_spec(const Graph & g, const ConstraintSpec & c) -> void
        {
            int n = g.vertex_count();
            for (auto & cl : c.clauses) {
                if (cl.members.size() != n)
                    throw InvalidArgument("clause '" + cl.name + "' is not sized to the graph");
                if (cl.count < 0)
                    throw InvalidArgument("clause '" + cl.name + "' has a negative count");
            }
            if (c.forced_in.size() != 0 && c.forced_in.size() != n)
                throw InvalidArgument("forced_in is not sized to the graph");
            if (c.forced_out.size() != 0 && c.forced_out.size() != n)
                throw InvalidArgument("forced_out is not sized to the graph");
            if (c.forced_in.size() == n) {
                auto check = verify_independent(g, c.forced_in);
                if (! check.independent)
                    throw InvalidArgument("forced_in is not independent: " + g.label_string(check.violation->first) +
                        " ~ " + g.label_string(check.violation->second));
                if (c.forced_out.size() == n && c.forced_in.intersects(c.forced_out))
                    throw InvalidArgument("forced_in and forced_out overlap");
            }
        }

        auto solve(const Graph & g, const ConstraintSpec & spec, int target, const SolverOptions & options)
            -> SolveOutcome
        {
            check_spec(g, spec);
            auto t0 = Clock::now();
            int n = g.vertex_count();

            Problem problem(g, spec, options);
            Shared shared;
            shared.node_limit = options.budget.max_nodes;
            shared.second_limit = options.budget.max_seconds;
            shared.start = t0;
            shared.feasibility = target >= 0;
            if (shared.feasibility)
                shared.best = target - 1;

            Bitset root = g.all_vertices();
            std::vector<int> chosen;
            if (spec.forced_out.size() == n)
                root.subtract(spec.forced_out);
            if (spec.forced_in.size() == n)
                spec.forced_in.for_each([&](int v) {
                    chosen.push_back(v);
                    root.subtract(g.neighbours(v));
                    root.reset(v);
                });
            std::vector<Word> root_words(root.words().begin(), root.words().end());

            if (! shared.feasibility && spec.empty() && options.seed_with_local_search && n > 0) {
                LocalSearchOptions ls;
                ls.max_iterations = 2000 + 20L * n;
                ls.max_seconds = 1.0;
                ls.seed = options.seed;
                auto s = local_search_mis(g, ls);
                shared.best = s.count();
                shared.best_set = s.to_vector();
                shared.have_best = true;
            }
            else if (shared.feasibility && spec.empty() && options.seed_with_local_search && n > 0 && target > 0) {
                LocalSearchOptions ls;
                ls.max_iterations = 2000 + 200L * n;
                ls.max_seconds = 2.0;
                ls.target = target;
                ls.seed = options.seed;
                auto s = local_search_mis(g, ls);
                if (s.count() >= target) {
                    SolveOutcome out;
                    out.status = SolveStatus::Feasible;
                    out.value = s.count();
                    out.witness = std::move(s);
                    out.elapsed = Clock::now() - t0;
                    return out;
                }
            }

            SolveOutcome out;
            {
                Worker w(problem, shared);
                w.load(chosen, root_words, problem.root_elements);
                out.root_bound = w.root_bound();

                int threads = std::max(1, options.threads);
                if (threads == 1)
                    w.run();
                else {
                    std::vector<Task> tasks;
                    w.split(std::min(12, n), tasks);
                    std::atomic<std::size_t> next{0};
                    auto work = [&] {
                        Worker local(problem, shared);
                        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
                            if (shared.stop)
                                break;
                            local.load(tasks[i].chosen, tasks[i].remaining, tasks[i].elements);
                            local.run();
                        }
                    };
                    std::vector<std::jthread> pool;
                    for (int i = 0; i < threads; ++i)
                        pool.emplace_back(work);
                }
            }

            out.nodes_explored = shared.nodes.load();
            out.elapsed = Clock::now() - t0;
            if (shared.found) {
                out.status = SolveStatus::Feasible;
                out.witness = to_bitset(n, shared.best_set);
                out.value = static_cast<int>(shared.best_set.size());
            }
            else if (shared.aborted) {
                out.status = SolveStatus::Aborted;
                auto & set = shared.feasibility ? shared.seen_set : shared.best_set;
                bool have = shared.feasibility ? shared.seen >= 0 : shared.have_best;
                out.value = have ? static_cast<int>(set.size()) : -1;
                out.witness = have ? to_bitset(n, set) : Bitset(n);
            }
            else if (! shared.feasibility && shared.have_best) {
                out.status = SolveStatus::Optimal;
                out.witness = to_bitset(n, shared.best_set);
                out.value = static_cast<int>(shared.best_set.size());
            }
            else {
                out.status = SolveStatus::Infeasible;
                out.witness = Bitset(n);
            }
            return out;
        }
    }

    auto alpha(const Graph & g, const SolverOptions & options) -> SolveOutcome
    {
        return solve(g, ConstraintSpec{}, -1, options);
    }

    auto alpha_constrained(const Graph & g, const ConstraintSpec & c, const SolverOptions & options) -> SolveOutcome
    {
        return solve(g, c, -1, options);
    }

    auto feasible(const Graph & g, const ConstraintSpec & c, int target, const SolverOptions & options) -> SolveOutcome
    {
        return solve(g, c, std::max(0, target), options);
    }

    auto verify_independent(const Graph & g, const Bitset & s) -> IndependenceCheck
    {
        if (s.size() != g.vertex_count())
            throw InvalidArgument("vertex set of width " + std::to_string(s.size()) + " for a graph on " +
                std::to_string(g.vertex_count()) + " vertices");
        IndependenceCheck r;
        s.for_each([&](int v) {
            if (! r.independent)
                return;
            auto hit = g.neighbours(v) & s;
            int u = hit.first();
            if (u >= 0) {
                r.independent = false;
                r.violation = std::pair{std::min(u, v), std::max(u, v)};
            }
        });
        return r;
    }

    auto first_violated_clause(const ConstraintSpec & c, const Bitset & s) -> std::optional<int>
    {
        for (int i = 0; i < static_cast<int>(c.clauses.size()); ++i) {
            auto & cl = c.clauses[i];
            int k = (cl.members & s).count();
            bool ok = cl.relation == Relation::Eq ? k == cl.count
                : cl.relation == Relation::Ge     ? k >= cl.count
                                                  : k <= cl.count;
            if (! ok)
                return i;
        }
        if (c.forced_in.size() == s.size() && ! c.forced_in.is_subset_of(s))
            return static_cast<int>(c.clauses.size());
        if (c.forced_out.size() == s.size() && c.forced_out.intersects(s))
            return static_cast<int>(c.clauses.size()) + 1;
        return std::nullopt;
    }

    auto format_vertex_set(const Graph & g, const Bitset & s) -> std::string
    {
        std::string r;
        s.for_each([&](int v) {
            if (! r.empty())
                r += ';';
            r += g.has_labels() ? g.label_string(v) : std::to_string(v);
        });
        return r;
    }

    auto write_solve_report(std::ostream & out, const Graph & g, const SolveOutcome & outcome,
        const std::vector<std::pair<std::string, std::string>> & extra) -> void
    {
        for (auto & [k, v] : extra)
            out << k << '=' << v << '\n';
        out << "status=" << status_name(outcome.status) << '\n';
        out << "value=" << outcome.value << '\n';
        out << "root_bound=" << outcome.root_bound << '\n';
        out << "nodes=" << outcome.nodes_explored << '\n';
        out << "elapsed_ms=" << static_cast<long>(outcome.elapsed.count() * 1000) << '\n';
        out << "witness=" << (outcome.witness.size() == g.vertex_count() ? format_vertex_set(g, outcome.witness) : "")
            << '\n';
    }

    auto read_report(std::istream & in) -> std::map<std::string, std::string>
    {
        std::map<std::string, std::string> r;
        std::string line;
        while (std::getline(in, line)) {
            auto eq = line.find('=');
            if (eq == std::string::npos)
                continue;
            r[line.substr(0, eq)] = line.substr(eq + 1);
        }
        return r;
    }
}
