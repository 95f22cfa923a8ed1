#include <oddwheel/errors.hh>
#include <oddwheel/expr.hh>

#include <cctype>
#include <variant>

namespace oddwheel
{
    namespace expr_detail
    {
        struct AtomNode
        {
            AtomGraph atom;
        };

        struct BoxNode
        {
            ProductExpr left, right;
        };

        struct PowerNode
        {
            ProductExpr base;
            int exponent;
        };
    }

    using expr_detail::AtomNode;
    using expr_detail::BoxNode;
    using expr_detail::PowerNode;

    struct ProductExpr::Node
    {
        std::variant<AtomNode, BoxNode, PowerNode> value;
    };

    auto ProductExpr::atom(const AtomGraph & a) -> ProductExpr
    {
        return ProductExpr(std::make_shared<const Node>(Node{AtomNode{a}}));
    }

    auto ProductExpr::box(const ProductExpr & left, const ProductExpr & right) -> ProductExpr
    {
        return ProductExpr(std::make_shared<const Node>(Node{BoxNode{left, right}}));
    }

    auto ProductExpr::power(const ProductExpr & base, int exponent) -> ProductExpr
    {
        if (exponent < 1)
            throw InvalidArgument("exponent must be at least 1");
        if (exponent == 1)
            return base;
        return ProductExpr(std::make_shared<const Node>(Node{PowerNode{base, exponent}}));
    }

    auto ProductExpr::kind() const -> Kind
    {
        return static_cast<Kind>(_node->value.index());
    }

    auto ProductExpr::atom_graph() const -> const AtomGraph &
    {
        return std::get<AtomNode>(_node->value).atom;
    }

    auto ProductExpr::left() const -> const ProductExpr &
    {
        return std::get<BoxNode>(_node->value).left;
    }

    auto ProductExpr::right() const -> const ProductExpr &
    {
        return std::get<BoxNode>(_node->value).right;
    }

    auto ProductExpr::base() const -> const ProductExpr &
    {
        return std::get<PowerNode>(_node->value).base;
    }

    auto ProductExpr::exponent() const -> int
    {
        return std::get<PowerNode>(_node->value).exponent;
    }

    auto ProductExpr::flattened() const -> std::vector<AtomGraph>
    {
        switch (kind()) {
        case Kind::Atom:
            return {atom_graph()};
        case Kind::Box: {
            auto r = left().flattened();
            auto s = right().flattened();
            r.insert(r.end(), s.begin(), s.end());
            return r;
        }
        case Kind::Power: {
            auto b = base().flattened();
            std::vector<AtomGraph> r;
            for (int i = 0; i < exponent(); ++i)
                r.insert(r.end(), b.begin(), b.end());
            return r;
        }
        }
        return {};
    }

    auto ProductExpr::vertex_count() const -> long
    {
        long n = 1;
        auto saturate = static_cast<long>(max_vertex_count) + 1;
        switch (kind()) {
        case Kind::Atom:
            return atom_graph().order();
        case Kind::Box:
            n = left().vertex_count() * right().vertex_count();
            return n > saturate ? saturate : n;
        case Kind::Power: {
            long b = base().vertex_count();
            for (int i = 0; i < exponent(); ++i) {
                n *= b;
                if (n > saturate)
                    return saturate;
            }
            return n;
        }
        }
        return n;
    }

    auto ProductExpr::to_string() const -> std::string
    {
        switch (kind()) {
        case Kind::Atom:
            return atom_graph().name();
        case Kind::Box: {
            auto r = right().to_string();
            if (right().kind() == Kind::Box)
                r = "(" + r + ")";
            return left().to_string() + " x " + r;
        }
        case Kind::Power: {
            auto b = base().to_string();
            if (base().kind() == Kind::Box)
                b = "(" + b + ")";
            return b + "^" + std::to_string(exponent());
        }
        }
        return {};
    }

    auto operator==(const ProductExpr & a, const ProductExpr & b) -> bool
    {
        if (a.kind() != b.kind())
            return false;
        switch (a.kind()) {
        case ProductExpr::Kind::Atom:
            return a.atom_graph() == b.atom_graph();
        case ProductExpr::Kind::Box:
            return a.left() == b.left() && a.right() == b.right();
        case ProductExpr::Kind::Power:
            return a.exponent() == b.exponent() && a.base() == b.base();
        }
        return false;
    }

    namespace
    {
        class Parser
        {
        private:
            std::string_view _text;
            std::size_t _pos = 0;

            auto skip_space() -> void
            {
                while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
                    ++_pos;
            }

            auto peek() -> int
            {
                skip_space();
                return _pos < _text.size() ? static_cast<unsigned char>(_text[_pos]) : -1;
            }

            auto integer() -> int
            {
                skip_space();
                auto start = _pos;
                long value = 0;
                while (_pos < _text.size() && std::isdigit(static_cast<unsigned char>(_text[_pos]))) {
                    value = value * 10 + (_text[_pos] - '0');
                    if (value > max_vertex_count)
                        throw ParseError("integer too large", start);
                    ++_pos;
                }
                if (_pos == start)
                    throw ParseError("expected integer", start);
                return static_cast<int>(value);
            }

            auto primary() -> ProductExpr
            {
                int c = peek();
                auto start = _pos;
                if (c == '(') {
                    ++_pos;
                    auto e = expr();
                    if (peek() != ')')
                        throw ParseError("expected ')'", _pos);
                    ++_pos;
                    return e;
                }

                AtomKind kind;
                switch (std::toupper(c)) {
                case 'W': kind = AtomKind::Wheel; break;
                case 'C': kind = AtomKind::Cycle; break;
                case 'K': kind = AtomKind::Clique; break;
                case 'P': kind = AtomKind::Path; break;
                default:
                    throw ParseError(c < 0 ? "unexpected end of expression" : "expected atom or '('", start);
                }
                ++_pos;
                // The parameter must follow the letter directly.
                if (_pos >= _text.size() || ! std::isdigit(static_cast<unsigned char>(_text[_pos])))
                    throw ParseError("expected atom parameter", _pos);
                int n = integer();
                try {
                    return ProductExpr::atom(AtomGraph::make(kind, n));
                }
                catch (const Error & e) {
                    throw ParseError(e.what(), start);
                }
            }

            auto term() -> ProductExpr
            {
                auto e = primary();
                while (peek() == '^') {
                    ++_pos;
                    auto at = _pos;
                    int k = integer();
                    if (k < 1)
                        throw ParseError("exponent must be at least 1", at);
                    e = ProductExpr::power(e, k);
                }
                return e;
            }

            auto expr() -> ProductExpr
            {
                auto e = term();
                while (peek() == 'x' || peek() == 'X') {
                    ++_pos;
                    e = ProductExpr::box(e, term());
                }
                return e;
            }

        public:
            explicit Parser(std::string_view text) : _text(text) {}

            auto parse() -> ProductExpr
            {
                if (peek() < 0)
                    throw ParseError("empty expression", 0);
                auto e = expr();
                if (peek() >= 0)
                    throw ParseError("unexpected character '" + std::string(1, _text[_pos]) + "'", _pos);
                return e;
            }
        };

        auto build(const ProductExpr & e) -> Graph
        {
            switch (e.kind()) {
            case ProductExpr::Kind::Atom:
                return build_atom(e.atom_graph());
            case ProductExpr::Kind::Box:
                return box_product(build(e.left()), build(e.right()));
            case ProductExpr::Kind::Power: {
                auto g = build(e.base());
                auto r = g;
                for (int i = 1; i < e.exponent(); ++i)
                    r = box_product(r, g);
                return r;
            }
            }
            return {};
        }
    }

    auto parse_expr(std::string_view text) -> ProductExpr
    {
        return Parser(text).parse();
    }

    auto evaluate(const ProductExpr & expr) -> Graph
    {
        auto n = expr.vertex_count();
        if (n > max_vertex_count)
            throw CapacityError("'" + expr.to_string() + "' exceeds the vertex cap of " + std::to_string(max_vertex_count));
        return build(expr);
    }

    auto evaluate(std::string_view text) -> Graph
    {
        return evaluate(parse_expr(text));
    }

    auto canonical_expr(std::string_view text) -> std::string
    {
        return parse_expr(text).to_string();
    }
}
