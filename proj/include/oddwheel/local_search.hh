#ifndef ODDWHEEL_LOCAL_SEARCH_HH
#define ODDWHEEL_LOCAL_SEARCH_HH

#include <oddwheel/bitset.hh>
#include <oddwheel/graph.hh>

#include <cstdint>

namespace oddwheel
{
    struct LocalSearchOptions
    {
        long max_iterations = 100000;
        double max_seconds = 0;
        /// Stop as soon as a set of this size is found; 0 disables.
        int target = 0;
        std::uint64_t seed = 1;
        /// Vertices that may never be chosen; empty means none.
        Bitset forbidden;
        /// Initial solution; must be independent. Empty means start empty.
        Bitset start;
    };

    /// Iterated local search with (1,2)-swaps and random forced insertions.
    /// Returns the largest independent set seen. Never claims optimality.
    auto local_search_mis(const Graph & g, const LocalSearchOptions & options = {}) -> Bitset;
}

#endif
