#ifndef ODDWHEEL_MAXIMAL_HH
#define ODDWHEEL_MAXIMAL_HH

#include <oddwheel/bitset.hh>
#include <oddwheel/graph.hh>
#include <oddwheel/mis.hh>

#include <functional>

namespace oddwheel
{
    struct EnumerationResult
    {
        long count = 0;
        /// False when the budget stopped the enumeration early.
        bool complete = true;
    };

    /// Visits every maximal independent set of g exactly once, in a single
    /// sequence (Bron-Kerbosch with Tomita pivoting on non-adjacency). The
    /// node budget counts recursive calls.
    auto enumerate_maximal(const Graph & g, const std::function<void(const Bitset &)> & visit, const Budget & budget = {})
        -> EnumerationResult;
}

#endif
