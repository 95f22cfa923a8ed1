#ifndef ODDWHEEL_EXPR_HH
#define ODDWHEEL_EXPR_HH

#include <oddwheel/graph.hh>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace oddwheel
{
    /// Expression tree over atoms with box product and power. Immutable;
    /// subtrees are shared.
    class ProductExpr
    {
    public:
        enum class Kind
        {
            Atom,
            Box,
            Power
        };

    private:
        struct Node;
        std::shared_ptr<const Node> _node;

        explicit ProductExpr(std::shared_ptr<const Node> n) : _node(std::move(n)) {}

    public:
        static auto atom(const AtomGraph & a) -> ProductExpr;
        static auto box(const ProductExpr & left, const ProductExpr & right) -> ProductExpr;
        /// power(base, 1) returns base; exponent 0 is rejected.
        static auto power(const ProductExpr & base, int exponent) -> ProductExpr;

        auto kind() const -> Kind;
        auto atom_graph() const -> const AtomGraph &;
        auto left() const -> const ProductExpr &;
        auto right() const -> const ProductExpr &;
        auto base() const -> const ProductExpr &;
        auto exponent() const -> int;

        /// Atoms in evaluation order, powers unrolled.
        auto flattened() const -> std::vector<AtomGraph>;
        /// Vertex count without building the graph; saturates above the cap.
        auto vertex_count() const -> long;
        /// Canonical text: `x` separated, `^` for powers, minimal parentheses.
        auto to_string() const -> std::string;

        friend auto operator==(const ProductExpr & a, const ProductExpr & b) -> bool;
    };

    /// Grammar: expr := term ('x' term)*; term := primary ('^' int)*;
    /// primary := atom | '(' expr ')'; atom := [WCKPwckp] int.
    auto parse_expr(std::string_view text) -> ProductExpr;

    auto evaluate(const ProductExpr & expr) -> Graph;
    auto evaluate(std::string_view text) -> Graph;

    /// to_string(parse_expr(text)); used as a cache key.
    auto canonical_expr(std::string_view text) -> std::string;
}

#endif
