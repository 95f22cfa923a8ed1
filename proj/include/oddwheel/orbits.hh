#ifndef ODDWHEEL_ORBITS_HH
#define ODDWHEEL_ORBITS_HH

#include <oddwheel/automorphism.hh>
#include <oddwheel/bitset.hh>
#include <oddwheel/graph.hh>
#include <oddwheel/mis.hh>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace oddwheel
{
    /// Orbits of a vertex set under a group given by generators, ordered by
    /// size and then by smallest vertex; named T1, T2, ...
    struct OrbitPartition
    {
        Graph graph;
        std::vector<Bitset> orbits;
        std::vector<std::string> names;
        std::vector<Permutation> generators;

        auto sizes() const -> std::vector<int>;
        auto orbit_of(int v) const -> int;
    };

    auto orbit_partition(const Graph & g, std::vector<Permutation> generators) -> OrbitPartition;

    /// T1 = {(*,*)}, T2 = hub row and column, T3 = rim x rim, in W_{2t+1}^2,
    /// generated by rim rotation and reflection in each coordinate and the
    /// coordinate swap.
    auto wheel_square_orbits(int t) -> OrbitPartition;

    struct Profile
    {
        std::vector<int> p;

        auto total() const -> int;
        auto to_string() const -> std::string;
        friend auto operator<=>(const Profile &, const Profile &) = default;
    };

    /// Parses "(a,b,c)".
    auto parse_profile(std::string_view text) -> Profile;

    /// Throws InvalidArgument when s is not independent.
    auto profile_of(const OrbitPartition & orbits, const Bitset & s) -> Profile;

    /// q dominates p when q != p, q >= p componentwise and q's total is at
    /// least p's.
    auto dominates(const Profile & q, const Profile & p) -> bool;

    /// First component descending, then the rest ascending: the order the
    /// profile lists are usually written in.
    auto sort_profiles(std::vector<Profile> & profiles) -> void;

    /// Deduplicates, drops dominated profiles, sorts.
    auto maximal_filter(std::vector<Profile> profiles) -> std::vector<Profile>;

    struct ProfileSet
    {
        std::vector<Profile> profiles;
        /// One witness per surviving profile.
        std::vector<Bitset> witnesses;
        /// Raw candidates before filtering (slicing route: one per solve).
        std::vector<Profile> candidates;
        bool complete = true;
        long work = 0;
    };

    /// One constrained solve per T2 count k = 1..2t with T1 excluded, plus one
    /// with T1 included; each witness is re-profiled.
    auto maximal_profiles_by_slicing(int t, const SolverOptions & options = {}) -> ProfileSet;

    /// Profiles of every maximal independent set, filtered.
    auto maximal_profiles_by_enumeration(const OrbitPartition & orbits, const Budget & budget = {}) -> ProfileSet;
    auto maximal_profiles_by_enumeration(int t, const Budget & budget = {}) -> ProfileSet;

    /// One "(p1,p2,p3)" tuple per line.
    auto write_profiles(std::ostream & out, const std::vector<Profile> & profiles) -> void;
}

#endif
