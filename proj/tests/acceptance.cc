// One line per acceptance criterion. Long-tier criteria run only when the
// tier is long (ODDWHEEL_TIER=long or a build with ODDWHEEL_LONG_TESTS);
// otherwise they are reported as skipped. Exit status is non-zero when any
// criterion fails.

#include "oracles.hh"

#include <oddwheel/automorphism.hh>
#include <oddwheel/bounds.hh>
#include <oddwheel/certstore.hh>
#include <oddwheel/fractional.hh>
#include <oddwheel/ledger.hh>
#include <oddwheel/maximal.hh>
#include <oddwheel/orbits.hh>
#include <oddwheel/tier.hh>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <unistd.h>

using namespace oddwheel;

namespace
{
    struct Check
    {
        std::ostringstream failures;
        bool ok = true;

        auto expect(bool condition, const std::string & what) -> void
        {
            if (! condition) {
                ok = false;
                failures << (failures.tellp() > 0 ? "; " : "") << what;
            }
        }

        template <typename A, typename B>
        auto equal(const A & got, const B & want, const std::string & what) -> void
        {
            if (! (got == want)) {
                std::ostringstream s;
                s << what << ": got " << got << ", want " << want;
                expect(false, s.str());
            }
        }
    };

    bool long_tier = false;
    int failed = 0;

    auto run(int number, bool is_long, const std::string & title, const std::function<void(Check &)> & body) -> void
    {
        std::cout << "criterion " << number << " [" << (is_long ? "long" : "quick") << "] " << title << ": "
                  << std::flush;
        if (is_long && ! long_tier) {
            std::cout << "SKIP (long tier)" << std::endl;
            return;
        }
        auto start = std::chrono::steady_clock::now();
        Check c;
        try {
            body(c);
        }
        catch (const std::exception & e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.ok)
            std::cout << "PASS (" << secs << " s)" << std::endl;
        else {
            ++failed;
            std::cout << "FAIL (" << secs << " s) " << c.failures.str() << std::endl;
        }
    }

    auto solve(const std::string & expr) -> SolveOutcome
    {
        return alpha(evaluate(expr));
    }

    auto wheel(int t) -> std::string { return "W" + std::to_string(2 * t + 1); }

    auto profiles(std::initializer_list<std::vector<int>> list) -> std::vector<Profile>
    {
        std::vector<Profile> r;
        for (auto & p : list)
            r.push_back(Profile{p});
        return r;
    }

    auto join(const std::vector<Profile> & list) -> std::string
    {
        std::string r;
        for (auto & p : list)
            r += p.to_string();
        return r;
    }
}

int main()
{
#ifdef ODDWHEEL_LONG_TESTS
    long_tier = true;
#endif
    if (tier_from_environment() == Tier::Long)
        long_tier = true;
    std::cout << "tier " << (long_tier ? "long" : "quick") << std::endl;

    run(1, false, "alpha of wheels and wheel x K3", [](Check & c) {
        for (int t = 2; t <= 6; ++t) {
            c.equal(solve(wheel(t)).value, t, "alpha(" + wheel(t) + ")");
            c.equal(solve(wheel(t) + "xK3").value, 2 * t + 1, "alpha(" + wheel(t) + "xK3)");
        }
    });

    run(2, false, "alpha of wheel squares", [](Check & c) {
        for (int t = 2; t <= 4; ++t) {
            auto out = solve(wheel(t) + "^2");
            c.expect(out.status == SolveStatus::Optimal, wheel(t) + "^2 not decided");
            c.equal(out.value, t * (2 * t + 1) + 1, "alpha(" + wheel(t) + "^2)");
        }
    });

    run(3, false, "alpha(W5^2xK3) = 29", [](Check & c) {
        auto out = solve("W5^2xK3");
        c.expect(out.status == SolveStatus::Optimal, "not decided");
        c.equal(out.value, 29, "alpha");
    });

    run(4, true, "alpha(W7^2xK3) = 54, alpha(W9^2xK3) = 87, alpha(W5^3) = 58", [](Check & c) {
        c.equal(solve("W7^2xK3").value, 54, "alpha(W7^2xK3)");
        c.equal(solve("W9^2xK3").value, 87, "alpha(W9^2xK3)");
        SolverOptions o;
        o.budget = table_budget(Tier::Long);
        auto cube = alpha(evaluate("W5^3"), o);
        if (cube.decided())
            c.equal(cube.value, 58, "alpha(W5^3)");
        else {
            c.expect(cube.value >= 58, "no 58-set found for W5^3");
            std::cout << "[W5^3 unresolved, lower bound " << cube.value << "] ";
        }
    });

    run(5, false, "chi_f of wheel squares, t = 2..7", [](Check & c) {
        const char * want[] = {"41/11", "39/11", "127/37", "47/14", "261/79", "173/53"};
        for (int t = 2; t <= 7; ++t) {
            auto r = chi_f_wheel_square(t, ProfileRoute::Slicing);
            c.expect(r.complete, "slicing incomplete at t=" + std::to_string(t));
            c.equal(r.chi_f.to_string(), want[t - 2], "chi_f slicing t=" + std::to_string(t));
        }
        for (int t = 2; t <= 3; ++t) {
            auto r = chi_f_wheel_square(t, ProfileRoute::Enumeration);
            c.expect(r.complete, "enumeration incomplete at t=" + std::to_string(t));
            c.equal(r.chi_f.to_string(), want[t - 2], "chi_f enumeration t=" + std::to_string(t));
        }
    });

    run(6, false, "maximal independent sets of W5^2", [](Check & c) {
        auto r = enumerate_maximal(evaluate("W5^2"), [](const Bitset &) {});
        c.expect(r.complete, "incomplete");
        c.equal(r.count, 2770L, "count");
    });

    run(6, true, "maximal independent sets of W7^2", [](Check & c) {
        auto r = enumerate_maximal(evaluate("W7^2"), [](const Bitset &) {});
        c.expect(r.complete, "incomplete");
        c.equal(r.count, 909874L, "count");
    });

    run(7, false, "maximal profile lists", [](Check & c) {
        auto two = maximal_profiles_by_slicing(2);
        c.equal(join(two.profiles), join(profiles({{1, 0, 10}, {0, 2, 8}, {0, 3, 6}, {0, 4, 5}})), "t=2");
        auto three = maximal_profiles_by_slicing(3);
        c.equal(join(three.profiles),
            join(profiles({{1, 0, 21}, {0, 2, 18}, {0, 3, 15}, {0, 4, 13}, {0, 5, 11}, {0, 6, 10}})), "t=3");
        c.expect(std::find(three.candidates.begin(), three.candidates.end(), Profile{{0, 1, 18}}) !=
                three.candidates.end(),
            "(0,1,18) never produced");
        auto four = maximal_profiles_by_slicing(4);
        c.equal(join(four.profiles),
            join(profiles({{1, 0, 36}, {0, 2, 32}, {0, 3, 28}, {0, 4, 25}, {0, 5, 22}, {0, 6, 20}, {0, 7, 18},
                {0, 8, 17}})),
            "t=4");
        c.expect(std::find(four.candidates.begin(), four.candidates.end(), Profile{{0, 1, 32}}) !=
                four.candidates.end(),
            "(0,1,32) never produced");
        for (int t = 2; t <= 3; ++t)
            c.equal(join(maximal_profiles_by_enumeration(t).profiles), join(maximal_profiles_by_slicing(t).profiles),
                "routes disagree at t=" + std::to_string(t));
    });

    run(8, false, "bound evaluators", [](Check & c) {
        c.equal(bound_one_layer(2).to_string(), "5/18", "one layer t=2");
        const char * table[] = {"9/32", "29/100", "8/27", "59/196", "39/128"};
        for (int t = 3; t <= 7; ++t) {
            auto atom = AtomGraph::wheel(2 * t + 1);
            auto v = bound_product_clique(atom, 2, 3, BigInt(4 * t * t + 5 * t + 3));
            c.equal(v.to_string(), table[t - 3], "table bound t=" + std::to_string(t));
            c.expect(bound_square_closed_form(t) >= v, "closed form below the table bound at t=" + std::to_string(t));
        }
        auto w5 = AtomGraph::wheel(5);
        c.equal(bound_product_clique(w5, 2, 3, 29).to_string(), "29/108", "W5 l=2");
        c.equal(bound_product_clique(w5, 3, 3, 170).to_string(), "85/324", "W5 l=3");
        c.equal(bound_product_clique(w5, 4, 3, 1019).to_string(), "1019/3888", "W5 l=4");
    });

    auto hub_caps = [](int t) {
        return [t](Check & c) {
            for (auto & row : verify_hub_layer_cap(t)) {
                c.expect(row.outcome.decided(), "k=" + std::to_string(row.k) + " not decided");
                c.expect(row.verified, "k=" + std::to_string(row.k) + " exceeds cap " + std::to_string(row.cap));
            }
        };
    };
    run(9, false, "hub layer caps in W5^2", hub_caps(2));
    run(9, true, "hub layer caps in W7^2", hub_caps(3));

    run(10, false, "bundled certificates", [](Check & c) {
        std::map<std::string, int> sizes;
        for (auto & b : bundled_certificates()) {
            sizes[b.entry.name] = b.verified.set.count();
            if (b.entry.name == "w5_cube_k3_170") {
                auto & g = b.verified.graph;
                std::vector<int> layers;
                for (int i = 0; i < 3; ++i)
                    layers.push_back((layer_slice(g, 3, AtomVertex::indexed(i)) & b.verified.set).count());
                std::sort(layers.rbegin(), layers.rend());
                c.expect(layers == std::vector<int>{58, 58, 54} || layers == std::vector<int>{57, 57, 56},
                    "170-set layer profile");
            }
        }
        const std::map<std::string, int> want{{"w5_k3", 5}, {"w7_k3", 7}, {"w9_k3", 9}, {"w11_k3", 11},
            {"w5_sq", 11}, {"w7_sq", 22}, {"w9_sq", 37}, {"w11_sq", 56}, {"w5_sq_k3", 29}, {"w7_sq_k3", 54},
            {"w9_sq_k3", 87}, {"w11_sq_k3", 128}, {"w5_cube_k3_170", 170}};
        c.expect(sizes == want, "bundle contents differ");
    });

    run(11, true, "layer-vector ledger studies", [](Check & c) {
        auto dir = std::filesystem::temp_directory_path() / ("oddwheel-acceptance-" + std::to_string(::getpid()));
        std::filesystem::remove_all(dir);
        for (auto name : {"hub-caps", "size-58", "size-57", "triangle"}) {
            LedgerWriter writer(dir / name);
            LedgerRun r;
            r.budget = std::string(name) == "triangle" ? table_budget(Tier::Long) : ledger_budget(Tier::Long);
            auto cases = study_cases(name);
            auto entries = run_ledger(cases, writer, r);
            for (auto & e : entries) {
                c.expect(e.agrees(), std::string(name) + " " + e.ledger_case.label + " " + e.ledger_case.sub_case +
                        " contradicts the stated status");
                if (std::string(name) != "triangle")
                    c.expect(e.status != EntryStatus::Unresolved, std::string(name) + " " + e.ledger_case.label +
                            " unresolved");
            }
            if (std::string(name) == "size-57") {
                auto status = [&](const char * v) {
                    auto label = canonical_rim(LayerVector::parse(v)).to_string();
                    for (auto & e : entries)
                        if (e.ledger_case.label == label)
                            return e.status;
                    return EntryStatus::Unresolved;
                };
                c.expect(status("9,9,9,10,10,10") == EntryStatus::InfeasibleProven, "(9,9,9,10,10,10) not infeasible");
                c.expect(status("9,9,10,9,10,10") == EntryStatus::FeasibleWitness, "(9,9,10,9,10,10) has no witness");
            }
        }
        std::filesystem::remove_all(dir);
    });

    run(12, false, "oracle equivalence", [](Check & c) {
        std::mt19937_64 rng(12);
        for (int i = 0; i < 200; ++i) {
            auto expr = oracle::random_product(rng, 20);
            auto g = evaluate(expr);
            c.equal(alpha(g).value, oracle::alpha(g), "alpha(" + expr + ")");
        }
        for (int i = 0; i < 100; ++i) {
            auto expr = oracle::random_product(rng, 15);
            auto g = evaluate(expr);
            c.equal(enumerate_maximal(g, [](const Bitset &) {}).count, oracle::maximal_count(g),
                "maximal(" + expr + ")");
        }
    });

    run(13, false, "property suites", [](Check & c) {
        std::mt19937_64 rng(13);
        for (int i = 0; i < 40; ++i) {
            auto expr = oracle::random_product(rng, 36);
            auto g = evaluate(expr);
            ConstraintSpec spec;
            Bitset members(g.vertex_count());
            for (int v = 0; v < g.vertex_count(); ++v)
                if (rng() % 2)
                    members.set(v);
            spec.clauses.push_back(slice_clause(members, static_cast<Relation>(rng() % 3), static_cast<int>(rng() % 4), "r"));
            auto free_out = alpha(g);
            auto out = alpha_constrained(g, spec);
            if (out.status == SolveStatus::Optimal) {
                c.expect(verify_independent(g, out.witness).independent && ! first_violated_clause(spec, out.witness) &&
                        out.witness.count() == out.value,
                    "witness " + expr);
                c.expect(out.value <= free_out.value, "monotonicity " + expr);
            }
            for (auto & p : product_generators(g)) {
                ConstraintSpec moved = spec;
                Bitset image(g.vertex_count());
                members.for_each([&](int v) { image.set(p[v]); });
                moved.clauses[0].members = image;
                auto other = alpha_constrained(g, moved);
                c.expect(other.status == out.status && other.value == out.value, "invariance " + expr);
                break;
            }
        }
        for (auto atom : {AtomGraph::wheel(5), AtomGraph::wheel(7), AtomGraph::cycle(5), AtomGraph::cycle(7)}) {
            int k = atom.clique_number();
            auto bound = product_recurrence(alpha(evaluate(atom.name() + "xK" + std::to_string(k))).value,
                alpha(evaluate(atom.name())).value, atom.order(), k);
            c.expect(alpha(evaluate(atom.name() + "^2")).value <= bound, "recurrence " + atom.name());
        }
        for (int i = 0; i < 100; ++i) {
            std::vector<Profile> list;
            for (int j = 0; j < 8; ++j)
                list.push_back(Profile{{static_cast<int>(rng() % 2), static_cast<int>(rng() % 4), static_cast<int>(rng() % 6)}});
            auto once = maximal_filter(list);
            c.expect(maximal_filter(once) == once, "dominance idempotence");
        }
    });

    run(14, false, "rational LP and the pattern profiles", [](Check & c) {
        for (int t = 2; t <= 7; ++t) {
            auto r = chi_f_wheel_square(t, ProfileRoute::Slicing);
            auto ts = std::to_string(t);
            c.expect(r.solution.status == LpStatus::Optimal, "LP not optimal at t=" + ts);
            c.expect(! first_violation(r.lp, r.solution.values), "LP solution infeasible at t=" + ts);
            auto tight = r.tight_profiles();
            for (auto & p : {Profile{{1, 0, t * (2 * t + 1)}}, Profile{{0, 2, 2 * t * t}}, Profile{{0, 2 * t, t * t + 1}}})
                c.expect(std::find(tight.begin(), tight.end(), p) != tight.end(),
                    p.to_string() + " not tight at t=" + ts);
            c.equal(r.chi_f.to_string(), conjectured_chi_f_closed_form(t).to_string(), "closed form t=" + ts);
        }
    });

    std::cout << (failed ? "FAILED " + std::to_string(failed) + " criteria" : "all criteria passed") << std::endl;
    return failed ? 1 : 0;
}
