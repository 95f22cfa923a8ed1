#include <oddwheel/automorphism.hh>
#include <oddwheel/errors.hh>

#include <algorithm>
#include <numeric>

namespace oddwheel
{
    namespace
    {
        auto identity(int n) -> Permutation
        {
            Permutation p(n);
            std::iota(p.begin(), p.end(), 0);
            return p;
        }

        auto atom_generators(const AtomGraph & atom) -> std::vector<Permutation>
        {
            int m = atom.order();
            std::vector<Permutation> gens;
            switch (atom.kind()) {
            case AtomKind::Wheel:
            case AtomKind::Cycle: {
                int n = atom.n();
                auto rot = identity(m), ref = identity(m);
                for (int i = 0; i < n; ++i) {
                    rot[i] = (i + 1) % n;
                    ref[i] = (n - i) % n;
                }
                gens = {rot, ref};
                break;
            }
            case AtomKind::Clique:
                if (m >= 2) {
                    auto swap = identity(m), cyc = identity(m);
                    std::swap(swap[0], swap[1]);
                    for (int i = 0; i < m; ++i)
                        cyc[i] = (i + 1) % m;
                    gens = {swap, cyc};
                }
                break;
            case AtomKind::Path:
                if (m >= 2) {
                    auto rev = identity(m);
                    for (int i = 0; i < m; ++i)
                        rev[i] = m - 1 - i;
                    gens = {rev};
                }
                break;
            }
            return gens;
        }

        /// Coordinate tuple of v (internal indices).
        auto digits(std::span<const AtomGraph> f, int v) -> std::vector<int>
        {
            std::vector<int> d(f.size());
            for (std::size_t c = 0; c < f.size(); ++c) {
                d[c] = v % f[c].order();
                v /= f[c].order();
            }
            return d;
        }

        auto undigits(std::span<const AtomGraph> f, const std::vector<int> & d) -> int
        {
            int v = 0;
            for (int c = static_cast<int>(f.size()) - 1; c >= 0; --c)
                v = v * f[c].order() + d[c];
            return v;
        }
    }

    auto atom_automorphisms(const AtomGraph & atom) -> std::vector<Permutation>
    {
        int m = atom.order();
        auto gens = atom_generators(atom);
        std::vector<Permutation> group{identity(m)};
        for (std::size_t i = 0; i < group.size(); ++i)
            for (auto & s : gens) {
                Permutation p(m);
                for (int v = 0; v < m; ++v)
                    p[v] = s[group[i][v]];
                if (std::find(group.begin(), group.end(), p) == group.end())
                    group.push_back(std::move(p));
            }
        std::sort(group.begin(), group.end());
        return group;
    }

    auto product_generators(const Graph & g) -> std::vector<Permutation>
    {
        auto f = g.factor_shape();
        int n = g.vertex_count();
        std::vector<Permutation> gens;
        for (std::size_t c = 0; c < f.size(); ++c)
            for (auto & s : atom_generators(f[c])) {
                Permutation p(n);
                for (int v = 0; v < n; ++v) {
                    auto d = digits(f, v);
                    d[c] = s[d[c]];
                    p[v] = undigits(f, d);
                }
                gens.push_back(std::move(p));
            }
        for (std::size_t a = 0; a < f.size(); ++a)
            for (std::size_t b = a + 1; b < f.size(); ++b)
                if (f[a] == f[b]) {
                    Permutation p(n);
                    for (int v = 0; v < n; ++v) {
                        auto d = digits(f, v);
                        std::swap(d[a], d[b]);
                        p[v] = undigits(f, d);
                    }
                    gens.push_back(std::move(p));
                }
        return gens;
    }

    auto is_automorphism(const Graph & g, std::span<const int> p) -> bool
    {
        int n = g.vertex_count();
        if (static_cast<int>(p.size()) != n)
            return false;
        std::vector<char> seen(n, 0);
        for (int v : p) {
            if (v < 0 || v >= n || seen[v])
                return false;
            seen[v] = 1;
        }
        for (int u = 0; u < n; ++u) {
            if (g.degree(u) != g.degree(p[u]))
                return false;
            bool ok = true;
            g.neighbours(u).for_each([&](int v) {
                if (! g.adjacent(p[u], p[v]))
                    ok = false;
            });
            if (! ok)
                return false;
        }
        return true;
    }

    auto product_group(const Graph & g, std::size_t max_entries) -> std::optional<PermutationGroup>
    {
        auto f = g.factor_shape();
        if (f.empty())
            return std::nullopt;
        int n = g.vertex_count();
        int k = static_cast<int>(f.size());

        std::vector<std::vector<Permutation>> local(k);
        std::size_t order = 1;
        for (int c = 0; c < k; ++c) {
            local[c] = atom_automorphisms(f[c]);
            order *= local[c].size();
            if (order * static_cast<std::size_t>(n) > max_entries)
                return std::nullopt;
        }

        // Coordinate permutations that only exchange equal factors.
        std::vector<std::vector<int>> arrangements;
        std::vector<int> pi(k);
        std::iota(pi.begin(), pi.end(), 0);
        do {
            bool ok = true;
            for (int c = 0; c < k; ++c)
                if (! (f[c] == f[pi[c]]))
                    ok = false;
            if (ok)
                arrangements.push_back(pi);
        } while (std::next_permutation(pi.begin(), pi.end()));
        order *= arrangements.size();
        if (order * static_cast<std::size_t>(n) > max_entries)
            return std::nullopt;

        PermutationGroup group;
        group.degree = n;
        group.order = order;
        group.images.reserve(order * n);

        std::vector<std::vector<int>> coords(n);
        for (int v = 0; v < n; ++v)
            coords[v] = digits(f, v);

        std::vector<std::size_t> choice(k, 0);
        std::vector<int> d(k);
        for (auto & arr : arrangements) {
            std::fill(choice.begin(), choice.end(), 0);
            while (true) {
                for (int v = 0; v < n; ++v) {
                    for (int c = 0; c < k; ++c)
                        d[arr[c]] = local[c][choice[c]][coords[v][c]];
                    group.images.push_back(static_cast<std::uint16_t>(undigits(f, d)));
                }
                int c = 0;
                while (c < k && ++choice[c] == local[c].size())
                    choice[c++] = 0;
                if (c == k)
                    break;
            }
        }
        return group;
    }

    auto orbits_of(int n, const std::vector<Permutation> & gens) -> std::vector<int>
    {
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        for (auto & p : gens) {
            if (static_cast<int>(p.size()) != n)
                throw InvalidArgument("permutation degree mismatch");
            for (int v = 0; v < n; ++v) {
                int a = find(v), b = find(p[v]);
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }
        }
        std::vector<int> id(n);
        for (int v = 0; v < n; ++v)
            id[v] = find(v);
        return id;
    }
}
