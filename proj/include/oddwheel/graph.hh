#ifndef ODDWHEEL_GRAPH_HH
#define ODDWHEEL_GRAPH_HH

#include <oddwheel/bitset.hh>

#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oddwheel
{
    /// Products larger than this are rejected; adjacency is a dense bit matrix.
    inline constexpr int max_vertex_count = 1 << 15;

    enum class AtomKind
    {
        Wheel,
        Cycle,
        Clique,
        Path
    };

    /// One of the four atom families. For a wheel, n is the rim length, so
    /// W(n) has n + 1 vertices; internally the rim is 0..n-1 and the hub is n.
    class AtomGraph
    {
    private:
        AtomKind _kind;
        int _n;

        AtomGraph(AtomKind kind, int n) : _kind(kind), _n(n) {}

    public:
        static auto make(AtomKind kind, int n) -> AtomGraph;
        static auto wheel(int n) -> AtomGraph { return make(AtomKind::Wheel, n); }
        static auto cycle(int n) -> AtomGraph { return make(AtomKind::Cycle, n); }
        static auto clique(int n) -> AtomGraph { return make(AtomKind::Clique, n); }
        static auto path(int n) -> AtomGraph { return make(AtomKind::Path, n); }

        auto kind() const -> AtomKind { return _kind; }
        auto n() const -> int { return _n; }
        auto order() const -> int { return _kind == AtomKind::Wheel ? _n + 1 : _n; }
        auto has_hub() const -> bool { return _kind == AtomKind::Wheel; }
        auto hub_index() const -> int { return _n; }

        /// Adjacency on internal vertex indices.
        auto adjacent(int a, int b) const -> bool;
        auto clique_number() const -> int;
        auto name() const -> std::string;

        friend auto operator<=>(const AtomGraph &, const AtomGraph &) = default;
    };

    /// Name of a vertex within one atom factor: the hub, or a rim/path/clique
    /// position.
    class AtomVertex
    {
    private:
        bool _hub = false;
        int _index = 0;

    public:
        static auto hub() -> AtomVertex
        {
            AtomVertex v;
            v._hub = true;
            return v;
        }

        static auto indexed(int i) -> AtomVertex
        {
            AtomVertex v;
            v._index = i;
            return v;
        }

        /// Parses "*" or a non-negative decimal.
        static auto parse(std::string_view text) -> AtomVertex;
        static auto from_internal(const AtomGraph & atom, int internal) -> AtomVertex;

        auto is_hub() const -> bool { return _hub; }
        auto index() const -> int { return _index; }
        auto valid_for(const AtomGraph & atom) const -> bool;
        /// Precondition: valid_for(atom).
        auto to_internal(const AtomGraph & atom) const -> int;
        auto to_string() const -> std::string;

        friend auto operator==(const AtomVertex &, const AtomVertex &) -> bool = default;
    };

    struct VertexLabel
    {
        std::vector<AtomVertex> coords;

        auto to_string() const -> std::string;
        friend auto operator==(const VertexLabel &, const VertexLabel &) -> bool = default;
    };

    /// Immutable simple graph. Product graphs carry their factor list; vertex
    /// v has coordinates given by the mixed-radix digits of v with coordinate 0
    /// varying fastest, so the last coordinate indexes the outermost layer.
    class Graph
    {
    private:
        int _n = 0;
        std::vector<Bitset> _adj;
        std::vector<AtomGraph> _factors;
        bool _product = false;

    public:
        Graph() = default;

        /// Raw graph from an edge list; rejects loops and out-of-range ends.
        static auto from_edges(int n, std::span<const std::pair<int, int>> edges) -> Graph;

        auto vertex_count() const -> int { return _n; }
        auto edge_count() const -> long;
        auto adjacent(int u, int v) const -> bool { return _adj[u].test(v); }
        auto neighbours(int v) const -> const Bitset & { return _adj[v]; }
        auto degree(int v) const -> int { return _adj[v].count(); }
        auto all_vertices() const -> Bitset;

        /// Non-empty only when adjacency is the Cartesian product of these atoms.
        auto factor_shape() const -> std::span<const AtomGraph>
        {
            return _product ? std::span<const AtomGraph>(_factors) : std::span<const AtomGraph>();
        }

        auto has_labels() const -> bool { return ! _factors.empty(); }
        auto label_factors() const -> std::span<const AtomGraph> { return _factors; }
        /// Internal index of coordinate c of vertex v.
        auto coordinate(int v, int c) const -> int;
        auto label(int v) const -> VertexLabel;
        auto label_string(int v) const -> std::string { return label(v).to_string(); }
        /// Inverse of label(); throws InvalidArgument for malformed labels.
        auto index_of(const VertexLabel & label) const -> int;
        auto index_of_internal(std::span<const int> coords) const -> int;

        friend auto build_atom(const AtomGraph & atom) -> Graph;
        friend auto box_product(const Graph & g, const Graph & h) -> Graph;
        friend auto complement(const Graph & g) -> Graph;
        friend auto induced_subgraph(const Graph & g, const Bitset & keep) -> Graph;
    };

    auto build_atom(const AtomGraph & atom) -> Graph;
    auto box_product(const Graph & g, const Graph & h) -> Graph;
    auto complement(const Graph & g) -> Graph;
    /// Unlabelled induced subgraph, vertices renumbered in increasing order.
    auto induced_subgraph(const Graph & g, const Bitset & keep) -> Graph;

    /// Vertices whose coordinate `coord` equals `value`.
    auto layer_slice(const Graph & g, int coord, const AtomVertex & value) -> Bitset;

    /// DIMACS `p edge` text, 1-indexed, LF line endings.
    auto write_dimacs(const Graph & g, std::ostream & out) -> void;
    /// One line per vertex: 1-based index, TAB, comma-separated coordinates.
    auto write_label_map(const Graph & g, std::ostream & out) -> void;
    auto dimacs_string(const Graph & g) -> std::string;
}

#endif
