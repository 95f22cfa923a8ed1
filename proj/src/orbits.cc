#include <oddwheel/errors.hh>
#include <oddwheel/expr.hh>
#include <oddwheel/maximal.hh>
#include <oddwheel/orbits.hh>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <ostream>

namespace oddwheel
{
    auto OrbitPartition::sizes() const -> std::vector<int>
    {
        std::vector<int> r;
        for (auto & o : orbits)
            r.push_back(o.count());
        return r;
    }

    auto OrbitPartition::orbit_of(int v) const -> int
    {
        for (std::size_t i = 0; i < orbits.size(); ++i)
            if (orbits[i].test(v))
                return static_cast<int>(i);
        throw InvalidArgument("vertex " + std::to_string(v) + " is in no orbit");
    }

    auto orbit_partition(const Graph & g, std::vector<Permutation> generators) -> OrbitPartition
    {
        for (auto & p : generators)
            if (! is_automorphism(g, p))
                throw InvalidArgument("generator is not an automorphism");
        int n = g.vertex_count();
        auto id = orbits_of(n, generators);

        std::map<int, Bitset> by_root;
        for (int v = 0; v < n; ++v) {
            auto [it, fresh] = by_root.try_emplace(id[v], n);
            it->second.set(v);
        }
        OrbitPartition r;
        r.graph = g;
        r.generators = std::move(generators);
        for (auto & [root, b] : by_root)
            r.orbits.push_back(b);
        std::stable_sort(r.orbits.begin(), r.orbits.end(),
            [](const Bitset & a, const Bitset & b) { return a.count() < b.count(); });
        for (std::size_t i = 0; i < r.orbits.size(); ++i)
            r.names.push_back("T" + std::to_string(i + 1));
        return r;
    }

    auto wheel_square_orbits(int t) -> OrbitPartition
    {
        if (t < 2)
            throw InvalidArgument("wheel_square_orbits needs t >= 2");
        auto g = evaluate(ProductExpr::power(ProductExpr::atom(AtomGraph::wheel(2 * t + 1)), 2));
        auto r = orbit_partition(g, product_generators(g));
        if (r.orbits.size() != 3)
            throw Error("unexpected orbit count for W" + std::to_string(2 * t + 1) + "^2");
        return r;
    }

    auto Profile::total() const -> int
    {
        int s = 0;
        for (int x : p)
            s += x;
        return s;
    }

    auto Profile::to_string() const -> std::string
    {
        std::string r = "(";
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i)
                r += ',';
            r += std::to_string(p[i]);
        }
        return r + ")";
    }

    auto parse_profile(std::string_view text) -> Profile
    {
        auto trim = [](std::string_view s) {
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (! s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        };
        text = trim(text);
        if (text.size() < 2 || text.front() != '(' || text.back() != ')')
            throw ParseError("profile must be parenthesised", 0);
        text = text.substr(1, text.size() - 2);
        Profile r;
        std::size_t offset = 1;
        while (true) {
            auto comma = text.find(',');
            auto part = trim(text.substr(0, comma));
            int value = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
            if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || value < 0)
                throw ParseError("bad profile entry", offset);
            r.p.push_back(value);
            if (comma == std::string_view::npos)
                break;
            offset += comma + 1;
            text.remove_prefix(comma + 1);
        }
        return r;
    }

    auto profile_of(const OrbitPartition & orbits, const Bitset & s) -> Profile
    {
        auto check = verify_independent(orbits.graph, s);
        if (! check.independent)
            throw InvalidArgument("profile of a non-independent set: " +
                orbits.graph.label_string(check.violation->first) + " ~ " +
                orbits.graph.label_string(check.violation->second));
        Profile r;
        for (auto & o : orbits.orbits)
            r.p.push_back((o & s).count());
        return r;
    }

    auto dominates(const Profile & q, const Profile & p) -> bool
    {
        if (q.p.size() != p.p.size() || q == p)
            return false;
        for (std::size_t i = 0; i < p.p.size(); ++i)
            if (q.p[i] < p.p[i])
                return false;
        return q.total() >= p.total();
    }

    auto sort_profiles(std::vector<Profile> & profiles) -> void
    {
        std::sort(profiles.begin(), profiles.end(), [](const Profile & a, const Profile & b) {
            if (a.p.empty() || b.p.empty())
                return a.p.size() < b.p.size();
            if (a.p[0] != b.p[0])
                return a.p[0] > b.p[0];
            return std::lexicographical_compare(a.p.begin() + 1, a.p.end(), b.p.begin() + 1, b.p.end());
        });
    }

    auto maximal_filter(std::vector<Profile> profiles) -> std::vector<Profile>
    {
        std::sort(profiles.begin(), profiles.end());
        profiles.erase(std::unique(profiles.begin(), profiles.end()), profiles.end());
        std::vector<Profile> kept;
        for (auto & p : profiles) {
            bool dominated = false;
            for (auto & q : profiles)
                if (dominates(q, p)) {
                    dominated = true;
                    break;
                }
            if (! dominated)
                kept.push_back(p);
        }
        sort_profiles(kept);
        return kept;
    }

    namespace
    {
        auto attach_witnesses(ProfileSet & set, const std::map<Profile, Bitset> & seen) -> void
        {
            set.profiles = maximal_filter(set.candidates);
            set.witnesses.clear();
            for (auto & p : set.profiles)
                set.witnesses.push_back(seen.at(p));
        }
    }

    auto maximal_profiles_by_slicing(int t, const SolverOptions & options) -> ProfileSet
    {
        auto orbits = wheel_square_orbits(t);
        const auto & g = orbits.graph;
        ProfileSet set;
        std::map<Profile, Bitset> seen;

        auto run = [&](int t1, int t2) {
            ConstraintSpec spec;
            spec.clauses.push_back(slice_clause(orbits.orbits[0], Relation::Eq, t1, "T1"));
            if (t2 >= 0)
                spec.clauses.push_back(slice_clause(orbits.orbits[1], Relation::Eq, t2, "T2"));
            auto out = alpha_constrained(g, spec, options);
            set.work += out.nodes_explored;
            if (out.status == SolveStatus::Aborted)
                set.complete = false;
            if (out.status != SolveStatus::Optimal)
                return;
            auto p = profile_of(orbits, out.witness);
            set.candidates.push_back(p);
            seen.emplace(p, out.witness);
        };

        run(1, -1);
        for (int k = 1; k <= 2 * t; ++k)
            run(0, k);
        attach_witnesses(set, seen);
        return set;
    }

    auto maximal_profiles_by_enumeration(const OrbitPartition & orbits, const Budget & budget) -> ProfileSet
    {
        ProfileSet set;
        std::map<Profile, Bitset> seen;
        auto result = enumerate_maximal(
            orbits.graph,
            [&](const Bitset & s) {
                Profile p;
                for (auto & o : orbits.orbits)
                    p.p.push_back((o & s).count());
                seen.try_emplace(p, s);
            },
            budget);
        set.complete = result.complete;
        set.work = result.count;
        for (auto & [p, s] : seen)
            set.candidates.push_back(p);
        attach_witnesses(set, seen);
        return set;
    }

    auto maximal_profiles_by_enumeration(int t, const Budget & budget) -> ProfileSet
    {
        return maximal_profiles_by_enumeration(wheel_square_orbits(t), budget);
    }

    auto write_profiles(std::ostream & out, const std::vector<Profile> & profiles) -> void
    {
        for (auto & p : profiles)
            out << p.to_string() << '\n';
    }
}
