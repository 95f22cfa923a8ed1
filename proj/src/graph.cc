#include <oddwheel/errors.hh>
#include <oddwheel/graph.hh>

#include <charconv>
#include <ostream>
#include <sstream>

namespace oddwheel
{
    auto AtomGraph::make(AtomKind kind, int n) -> AtomGraph
    {
        int minimum = (kind == AtomKind::Wheel || kind == AtomKind::Cycle) ? 3 : 1;
        if (n < minimum)
            throw InvalidArgument(AtomGraph(kind, n).name() + ": parameter must be at least " + std::to_string(minimum));
        if (n >= max_vertex_count)
            throw CapacityError(AtomGraph(kind, n).name() + ": too many vertices");
        return AtomGraph(kind, n);
    }

    auto AtomGraph::adjacent(int a, int b) const -> bool
    {
        if (a == b)
            return false;
        switch (_kind) {
        case AtomKind::Clique:
            return true;
        case AtomKind::Path:
            return a - b == 1 || b - a == 1;
        case AtomKind::Cycle:
            return (a + 1) % _n == b || (b + 1) % _n == a;
        case AtomKind::Wheel:
            if (a == _n || b == _n)
                return true;
            return (a + 1) % _n == b || (b + 1) % _n == a;
        }
        return false;
    }

    auto AtomGraph::clique_number() const -> int
    {
        switch (_kind) {
        case AtomKind::Clique:
            return _n;
        case AtomKind::Path:
            return _n >= 2 ? 2 : 1;
        case AtomKind::Cycle:
            return _n == 3 ? 3 : 2;
        case AtomKind::Wheel:
            return _n == 3 ? 4 : 3;
        }
        return 1;
    }

    auto AtomGraph::name() const -> std::string
    {
        const char * letter = "W";
        switch (_kind) {
        case AtomKind::Wheel: letter = "W"; break;
        case AtomKind::Cycle: letter = "C"; break;
        case AtomKind::Clique: letter = "K"; break;
        case AtomKind::Path: letter = "P"; break;
        }
        return letter + std::to_string(_n);
    }

    auto AtomVertex::parse(std::string_view text) -> AtomVertex
    {
        if (text == "*")
            return hub();
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || value < 0)
            throw InvalidArgument("bad atom vertex name '" + std::string(text) + "'");
        return indexed(value);
    }

    auto AtomVertex::from_internal(const AtomGraph & atom, int internal) -> AtomVertex
    {
        if (atom.has_hub() && internal == atom.hub_index())
            return hub();
        return indexed(internal);
    }

    auto AtomVertex::valid_for(const AtomGraph & atom) const -> bool
    {
        if (_hub)
            return atom.has_hub();
        return _index >= 0 && _index < atom.n();
    }

    auto AtomVertex::to_internal(const AtomGraph & atom) const -> int
    {
        return _hub ? atom.hub_index() : _index;
    }

    auto AtomVertex::to_string() const -> std::string
    {
        return _hub ? std::string("*") : std::to_string(_index);
    }

    auto VertexLabel::to_string() const -> std::string
    {
        std::string r;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i)
                r += ',';
            r += coords[i].to_string();
        }
        return r;
    }

    auto Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) -> Graph
    {
        if (n < 0 || n > max_vertex_count)
            throw CapacityError("vertex count " + std::to_string(n) + " outside supported range");
        Graph g;
        g._n = n;
        g._adj.assign(n, Bitset(n));
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw InvalidArgument("edge endpoint out of range");
            if (u == v)
                throw InvalidArgument("self-loop on vertex " + std::to_string(u));
            g._adj[u].set(v);
            g._adj[v].set(u);
        }
        return g;
    }

    auto Graph::edge_count() const -> long
    {
        long total = 0;
        for (auto & row : _adj)
            total += row.count();
        return total / 2;
    }

    auto Graph::all_vertices() const -> Bitset
    {
        Bitset b(_n);
        b.set_all();
        return b;
    }

    auto Graph::coordinate(int v, int c) const -> int
    {
        for (int i = 0; i < c; ++i)
            v /= _factors[i].order();
        return v % _factors[c].order();
    }

    auto Graph::label(int v) const -> VertexLabel
    {
        VertexLabel l;
        l.coords.reserve(_factors.size());
        for (auto & f : _factors) {
            l.coords.push_back(AtomVertex::from_internal(f, v % f.order()));
            v /= f.order();
        }
        return l;
    }

    auto Graph::index_of_internal(std::span<const int> coords) const -> int
    {
        if (coords.size() != _factors.size())
            throw InvalidArgument("label has wrong number of coordinates");
        int index = 0;
        for (int c = static_cast<int>(_factors.size()) - 1; c >= 0; --c) {
            if (coords[c] < 0 || coords[c] >= _factors[c].order())
                throw InvalidArgument("coordinate out of range");
            index = index * _factors[c].order() + coords[c];
        }
        return index;
    }

    auto Graph::index_of(const VertexLabel & label) const -> int
    {
        if (label.coords.size() != _factors.size())
            throw InvalidArgument("label '" + label.to_string() + "' has " + std::to_string(label.coords.size()) +
                " coordinates, expected " + std::to_string(_factors.size()));
        std::vector<int> internal;
        for (std::size_t c = 0; c < _factors.size(); ++c) {
            if (! label.coords[c].valid_for(_factors[c]))
                throw InvalidArgument("label '" + label.to_string() + "' invalid for factor " + _factors[c].name());
            internal.push_back(label.coords[c].to_internal(_factors[c]));
        }
        return index_of_internal(internal);
    }

    auto build_atom(const AtomGraph & atom) -> Graph
    {
        Graph g;
        g._n = atom.order();
        g._adj.assign(g._n, Bitset(g._n));
        for (int a = 0; a < g._n; ++a)
            for (int b = 0; b < g._n; ++b)
                if (atom.adjacent(a, b))
                    g._adj[a].set(b);
        g._factors = {atom};
        g._product = true;
        return g;
    }

    auto box_product(const Graph & g, const Graph & h) -> Graph
    {
        long n = static_cast<long>(g._n) * h._n;
        if (n > max_vertex_count)
            throw CapacityError("product has " + std::to_string(n) + " vertices, cap is " + std::to_string(max_vertex_count));

        Graph r;
        r._n = static_cast<int>(n);
        r._adj.assign(r._n, Bitset(r._n));
        for (int x = 0; x < h._n; ++x)
            for (int u = 0; u < g._n; ++u) {
                auto & row = r._adj[u + g._n * x];
                g._adj[u].for_each([&](int v) { row.set(v + g._n * x); });
                h._adj[x].for_each([&](int y) { row.set(u + g._n * y); });
            }

        // Labels survive only if both sides are labelled.
        if (g.has_labels() && h.has_labels()) {
            r._factors = g._factors;
            r._factors.insert(r._factors.end(), h._factors.begin(), h._factors.end());
            r._product = g._product && h._product;
        }
        return r;
    }

    auto complement(const Graph & g) -> Graph
    {
        Graph r = g;
        for (int v = 0; v < g._n; ++v) {
            r._adj[v] = g._adj[v].complemented();
            r._adj[v].reset(v);
        }
        r._product = false;
        return r;
    }

    auto induced_subgraph(const Graph & g, const Bitset & keep) -> Graph
    {
        auto vertices = keep.to_vector();
        std::vector<int> position(g._n, -1);
        for (std::size_t i = 0; i < vertices.size(); ++i)
            position[vertices[i]] = static_cast<int>(i);

        Graph r;
        r._n = static_cast<int>(vertices.size());
        r._adj.assign(r._n, Bitset(r._n));
        for (int i = 0; i < r._n; ++i)
            (g._adj[vertices[i]] & keep).for_each([&](int w) { r._adj[i].set(position[w]); });
        return r;
    }

    auto layer_slice(const Graph & g, int coord, const AtomVertex & value) -> Bitset
    {
        if (! g.has_labels())
            throw InvalidArgument("layer_slice needs a labelled graph");
        auto factors = g.label_factors();
        if (coord < 0 || coord >= static_cast<int>(factors.size()))
            throw InvalidArgument("coordinate " + std::to_string(coord) + " out of range");
        if (! value.valid_for(factors[coord]))
            throw InvalidArgument("value " + value.to_string() + " invalid for factor " + factors[coord].name());

        int stride = 1;
        for (int c = 0; c < coord; ++c)
            stride *= factors[c].order();
        int order = factors[coord].order();
        int target = value.to_internal(factors[coord]);

        Bitset b(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v)
            if ((v / stride) % order == target)
                b.set(v);
        return b;
    }

    auto write_dimacs(const Graph & g, std::ostream & out) -> void
    {
        out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
        for (int u = 0; u < g.vertex_count(); ++u)
            g.neighbours(u).for_each([&](int v) {
                if (u < v)
                    out << "e " << u + 1 << ' ' << v + 1 << '\n';
            });
    }

    auto write_label_map(const Graph & g, std::ostream & out) -> void
    {
        if (! g.has_labels())
            throw InvalidArgument("graph has no labels");
        for (int v = 0; v < g.vertex_count(); ++v)
            out << v + 1 << '\t' << g.label_string(v) << '\n';
    }

    auto dimacs_string(const Graph & g) -> std::string
    {
        std::ostringstream s;
        write_dimacs(g, s);
        return s.str();
    }
}
