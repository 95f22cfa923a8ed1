#ifndef ODDWHEEL_MIS_HH
#define ODDWHEEL_MIS_HH

#include <oddwheel/bitset.hh>
#include <oddwheel/graph.hh>

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oddwheel
{
    enum class Relation
    {
        Eq,
        Ge,
        Le
    };

    auto relation_name(Relation r) -> std::string;
    auto parse_relation(std::string_view text) -> Relation;

    /// A cardinality side constraint: |I ∩ members| rel count.
    struct Clause
    {
        Bitset members;
        Relation relation = Relation::Eq;
        int count = 0;
        std::string name;
    };

    /// Clause over the vertices whose coordinate `coord` (0-based) equals `value`.
    auto layer_clause(const Graph & g, int coord, const AtomVertex & value, Relation relation, int count) -> Clause;
    auto slice_clause(Bitset members, Relation relation, int count, std::string name) -> Clause;

    struct ConstraintSpec
    {
        std::vector<Clause> clauses;
        /// Empty bitsets mean "none".
        Bitset forced_in;
        Bitset forced_out;

        auto empty() const -> bool;
    };

    /// Node limit 0 and seconds 0 both mean unlimited.
    struct Budget
    {
        long max_nodes = 0;
        double max_seconds = 0;

        auto unlimited() const -> bool { return max_nodes <= 0 && max_seconds <= 0; }
    };

    struct SolverOptions
    {
        Budget budget;
        int threads = 1;
        /// Seed the incumbent with a short local search when there are no
        /// side constraints.
        bool seed_with_local_search = true;
        /// Exact sub-block bounds over small coordinate subsets of products.
        bool block_bounds = true;
        /// Orbital branching over the product symmetry group.
        bool use_symmetry = true;
        std::uint64_t seed = 1;
    };

    /// Feasible is used by feasible() when a witness meeting the target was
    /// found; the value is then the witness size, not necessarily the maximum.
    enum class SolveStatus
    {
        Optimal,
        Feasible,
        Infeasible,
        Aborted
    };

    auto status_name(SolveStatus s) -> std::string;

    struct SolveOutcome
    {
        SolveStatus status = SolveStatus::Aborted;
        /// Optimal/Feasible: witness size. Aborted: best lower bound found, or
        /// -1 when no constraint-satisfying set was seen.
        int value = -1;
        Bitset witness;
        long nodes_explored = 0;
        std::chrono::duration<double> elapsed{0};
        /// Upper bound at the root of the search.
        int root_bound = 0;

        auto decided() const -> bool { return status != SolveStatus::Aborted; }
    };

    auto alpha(const Graph & g, const SolverOptions & options = {}) -> SolveOutcome;

    /// Maximum independent set subject to the clauses. Throws InvalidArgument
    /// when forced_in is not independent or meets forced_out.
    auto alpha_constrained(const Graph & g, const ConstraintSpec & c, const SolverOptions & options = {}) -> SolveOutcome;

    /// Decides whether an independent set of size >= target satisfying c
    /// exists; stops at the first witness.
    auto feasible(const Graph & g, const ConstraintSpec & c, int target, const SolverOptions & options = {})
        -> SolveOutcome;

    struct IndependenceCheck
    {
        bool independent = true;
        std::optional<std::pair<int, int>> violation;
    };

    /// Throws InvalidArgument when s is not sized to g.
    auto verify_independent(const Graph & g, const Bitset & s) -> IndependenceCheck;

    /// Index of the first clause s violates, if any; also checks forced sets.
    auto first_violated_clause(const ConstraintSpec & c, const Bitset & s) -> std::optional<int>;

    /// Line-oriented key=value report. `extra` keys are written first.
    auto write_solve_report(std::ostream & out, const Graph & g, const SolveOutcome & outcome,
        const std::vector<std::pair<std::string, std::string>> & extra = {}) -> void;

    /// Parses a report back into key/value pairs (later keys overwrite earlier).
    auto read_report(std::istream & in) -> std::map<std::string, std::string>;

    /// Witness as `;`-separated labels (or indices for unlabelled graphs).
    auto format_vertex_set(const Graph & g, const Bitset & s) -> std::string;
}

#endif
