#include "oracles.hh"

#include <oddwheel/errors.hh>
#include <oddwheel/expr.hh>
#include <oddwheel/graph.hh>

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

using namespace oddwheel;

namespace
{
    auto degree_sequence(const Graph & g) -> std::vector<int>
    {
        std::vector<int> d;
        for (int v = 0; v < g.vertex_count(); ++v)
            d.push_back(g.degree(v));
        std::sort(d.begin(), d.end());
        return d;
    }

    auto symmetric_and_loopless(const Graph & g) -> bool
    {
        for (int u = 0; u < g.vertex_count(); ++u) {
            if (g.adjacent(u, u))
                return false;
            for (int v = 0; v < g.vertex_count(); ++v)
                if (g.adjacent(u, v) != g.adjacent(v, u))
                    return false;
        }
        return true;
    }

    auto brute_edge_count(const Graph & g) -> long
    {
        long m = 0;
        for (int u = 0; u < g.vertex_count(); ++u)
            for (int v = u + 1; v < g.vertex_count(); ++v)
                m += g.adjacent(u, v);
        return m;
    }
}

TEST_CASE("atom graphs")
{
    auto w5 = build_atom(AtomGraph::wheel(5));
    CHECK(w5.vertex_count() == 6);
    CHECK(w5.edge_count() == 10);
    auto k3 = build_atom(AtomGraph::clique(3));
    CHECK(k3.vertex_count() == 3);
    CHECK(k3.edge_count() == 3);
    auto c7 = build_atom(AtomGraph::cycle(7));
    CHECK(c7.vertex_count() == 7);
    CHECK(c7.edge_count() == 7);

    int dominating = 0;
    for (int v = 0; v < w5.vertex_count(); ++v)
        dominating += w5.degree(v) == 5;
    CHECK(dominating == 1);
    CHECK(w5.label(5).to_string() == "*");
    CHECK(w5.adjacent(0, 1));
    CHECK(w5.adjacent(4, 0));
    CHECK_FALSE(w5.adjacent(0, 2));

    CHECK_THROWS_AS(AtomGraph::wheel(2), InvalidArgument);
    CHECK_THROWS_AS(AtomGraph::cycle(2), InvalidArgument);
    CHECK_THROWS_AS(AtomGraph::clique(0), InvalidArgument);
    CHECK_THROWS_AS(AtomGraph::path(0), InvalidArgument);
    CHECK(AtomGraph::wheel(5).clique_number() == 3);
    CHECK(AtomGraph::wheel(3).clique_number() == 4);
    CHECK(AtomGraph::cycle(5).clique_number() == 2);
}

TEST_CASE("box products")
{
    auto k3 = build_atom(AtomGraph::clique(3));
    auto rook = box_product(k3, k3);
    CHECK(rook.vertex_count() == 9);
    for (int v = 0; v < 9; ++v)
        CHECK(rook.degree(v) == 4);

    auto w5 = build_atom(AtomGraph::wheel(5));
    CHECK(box_product(w5, w5).vertex_count() == 36);

    auto c5k2 = box_product(build_atom(AtomGraph::cycle(5)), build_atom(AtomGraph::clique(2)));
    CHECK(c5k2.vertex_count() == 10);
    CHECK(brute_edge_count(c5k2) == 15);
    CHECK(c5k2.edge_count() == 15);
}

TEST_CASE("product adjacency follows labels")
{
    auto g = evaluate("W5 x C4 x K3");
    auto atoms = g.factor_shape();
    REQUIRE(atoms.size() == 3);
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v = 0; v < g.vertex_count(); ++v) {
            int differing = 0;
            bool edge = false;
            for (std::size_t c = 0; c < atoms.size(); ++c) {
                int a = g.coordinate(u, c), b = g.coordinate(v, c);
                if (a != b) {
                    ++differing;
                    edge = atoms[c].adjacent(a, b);
                }
            }
            CHECK(g.adjacent(u, v) == (differing == 1 && edge));
        }
    CHECK(symmetric_and_loopless(g));
}

TEST_CASE("last coordinate varies slowest")
{
    auto g = evaluate("W5^2");
    CHECK(g.label(0).to_string() == "0,0");
    CHECK(g.label(1).to_string() == "1,0");
    CHECK(g.label(6).to_string() == "0,1");
    CHECK(g.label(35).to_string() == "*,*");
    for (int v = 0; v < g.vertex_count(); ++v)
        CHECK(g.index_of(g.label(v)) == v);
    auto hub_layer = layer_slice(g, 1, AtomVertex::hub());
    CHECK(hub_layer.first() == 30);
}

TEST_CASE("layer slices")
{
    auto g = evaluate("W5^2");
    auto hub = layer_slice(g, 1, AtomVertex::hub());
    CHECK(hub.count() == 6);
    auto big = evaluate("W5^3xK3");
    CHECK(layer_slice(big, 3, AtomVertex::indexed(0)).count() == 216);

    auto slice = layer_slice(g, 0, AtomVertex::indexed(2));
    CHECK(slice.count() == 6);
    auto induced = induced_subgraph(g, slice);
    CHECK(degree_sequence(induced) == degree_sequence(build_atom(AtomGraph::wheel(5))));

    Bitset all(g.vertex_count());
    int total = 0;
    for (auto value : {AtomVertex::hub(), AtomVertex::indexed(0), AtomVertex::indexed(1), AtomVertex::indexed(2),
             AtomVertex::indexed(3), AtomVertex::indexed(4)}) {
        auto s = layer_slice(g, 1, value);
        CHECK_FALSE(s.intersects(all));
        all |= s;
        total += s.count();
    }
    CHECK(total == g.vertex_count());

    CHECK_THROWS_AS(layer_slice(g, 2, AtomVertex::hub()), InvalidArgument);
    CHECK_THROWS_AS(layer_slice(g, 0, AtomVertex::indexed(5)), InvalidArgument);
    CHECK_THROWS_AS(layer_slice(evaluate("K3"), 0, AtomVertex::hub()), InvalidArgument);
}

TEST_CASE("complement")
{
    auto k3 = build_atom(AtomGraph::clique(3));
    CHECK(complement(k3).edge_count() == 0);
    auto g = evaluate("W5^2");
    auto cc = complement(complement(g));
    for (int u = 0; u < g.vertex_count(); ++u)
        CHECK(cc.neighbours(u) == g.neighbours(u));
    auto c5 = build_atom(AtomGraph::cycle(5));
    CHECK(degree_sequence(complement(c5)) == degree_sequence(c5));
    CHECK(complement(c5).edge_count() == 5);
    CHECK(complement(g).label(7) == g.label(7));
}

TEST_CASE("product associativity and degrees")
{
    std::mt19937_64 rng(7);
    for (int round = 0; round < 20; ++round) {
        auto a = oracle::random_product(rng, 6), b = oracle::random_product(rng, 6), c = oracle::random_product(rng, 6);
        auto left = evaluate("(" + a + " x " + b + ") x " + c);
        auto right = evaluate(a + " x (" + b + " x " + c + ")");
        CHECK(left.vertex_count() == right.vertex_count());
        CHECK(degree_sequence(left) == degree_sequence(right));
        CHECK(symmetric_and_loopless(left));

        auto ga = evaluate(a), gb = evaluate(b);
        auto ab = evaluate(a + " x " + b);
        for (int v = 0; v < ab.vertex_count(); ++v)
            CHECK(ab.degree(v) == ga.degree(v % ga.vertex_count()) + gb.degree(v / ga.vertex_count()));
    }
}

TEST_CASE("dimacs and label map")
{
    auto g = evaluate("W3 x K2");
    std::ostringstream d, l;
    write_dimacs(g, d);
    write_label_map(g, l);
    auto text = d.str();
    CHECK(text.rfind("p edge 8 16\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 17);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(l.str().rfind("1\t0,0\n", 0) == 0);
    CHECK(l.str().find("4\t*,0\n") != std::string::npos);
}

TEST_CASE("vertex cap")
{
    CHECK_THROWS_AS(evaluate("W5^6"), CapacityError);
    CHECK(evaluate("W5^4xK3").vertex_count() == 3888);
}

TEST_CASE("expression parsing")
{
    auto e = parse_expr("W5^2 x K3");
    REQUIRE(e.kind() == ProductExpr::Kind::Box);
    CHECK(e.left().kind() == ProductExpr::Kind::Power);
    CHECK(e.left().exponent() == 2);
    CHECK(e.left().base().atom_graph() == AtomGraph::wheel(5));
    CHECK(e.right().atom_graph() == AtomGraph::clique(3));

    CHECK(evaluate("W5^3xK3").vertex_count() == 648);
    CHECK(evaluate("W7^2").vertex_count() == 64);
    CHECK(evaluate("C5^2").vertex_count() == 25);
    CHECK(evaluate("w5 X k3").vertex_count() == 18);
    CHECK(parse_expr("W5^1") == parse_expr("W5"));

    CHECK_THROWS_AS(parse_expr("K0"), ParseError);
    CHECK_THROWS_AS(parse_expr("W5^0"), ParseError);
    CHECK_THROWS_AS(parse_expr(""), ParseError);
    try {
        parse_expr("W5 x ?");
        FAIL("no error");
    }
    catch (const ParseError & err) {
        CHECK(err.offset() == 5);
    }
    CHECK_THROWS_AS(parse_expr("(W5 x K3"), ParseError);
}

TEST_CASE("parse and print round trip")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        auto text = oracle::random_product(rng, 400);
        auto e = parse_expr(text);
        CHECK(parse_expr(e.to_string()) == e);
    }
    for (auto text : {"(W5 x K3)^2", "W5^2^2", "(C5 x (K2 x P3))"}) {
        auto e = parse_expr(text);
        CHECK(parse_expr(e.to_string()) == e);
    }
}

TEST_CASE("powers equal repeated products")
{
    for (auto atom : {"W5", "C5", "K3", "P3"}) {
        auto power = evaluate(std::string(atom) + "^3");
        auto base = evaluate(atom);
        auto repeated = box_product(box_product(base, base), base);
        REQUIRE(power.vertex_count() == repeated.vertex_count());
        for (int v = 0; v < power.vertex_count(); ++v) {
            CHECK(power.label(v) == repeated.label(v));
            CHECK(power.neighbours(v) == repeated.neighbours(v));
        }
    }
}
