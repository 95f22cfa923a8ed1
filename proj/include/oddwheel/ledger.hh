#ifndef ODDWHEEL_LEDGER_HH
#define ODDWHEEL_LEDGER_HH

#include <oddwheel/graph.hh>
#include <oddwheel/mis.hh>
#include <oddwheel/tier.hh>

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oddwheel
{
    /// Layer sizes along one wheel coordinate: hub layer first, then the rim
    /// layers in cyclic order. -1 marks an unconstrained layer (printed `-`).
    struct LayerVector
    {
        std::vector<int> sizes;

        static auto parse(std::string_view text) -> LayerVector;
        auto to_string() const -> std::string;
        auto total() const -> int;

        friend auto operator<=>(const LayerVector &, const LayerVector &) = default;
    };

    /// Lexicographically greatest image of the rim under rotations and
    /// reflections of the cycle. The first `fixed_prefix` entries (the hub)
    /// are left alone.
    auto canonical_rim(const LayerVector & v, int fixed_prefix = 1) -> LayerVector;

    /// Every rotation and reflection of the rim, without duplicates.
    auto rim_arrangements(const LayerVector & v, int fixed_prefix = 1) -> std::vector<LayerVector>;

    struct HubTotalCap
    {
        int hub = 0;
        /// Applies to every hub size <= hub when true, only to hub otherwise.
        bool at_most = false;
        int total_cap = 0;
    };

    struct HubRimCap
    {
        int hub = 0;
        int rim = 0;
        int total_cap = 0;
    };

    /// Rule ids: "a" per-layer cap, "b" adjacent-pair cap, "c" no two
    /// adjacent rim layers at the rim cap, "d" hub-rim total cap, "h" hub
    /// total cap.
    struct PruningRules
    {
        bool has_hub = true;
        int rim_count = 5;
        int rim_cap = 0;
        int hub_min = 0;
        int hub_max = 0;
        /// alpha of a hub layer and two adjacent rim layers together;
        /// rule b caps adjacent rim pairs at this minus the hub size.
        std::optional<int> triple_cap;
        bool distinct_maxima = false;
        std::vector<HubRimCap> hub_rim_caps;
        std::vector<HubTotalCap> hub_total_caps;
        /// Output one representative per rim arrangement class rather than
        /// one per multiset. Forced on by rules b and c.
        bool arrangements = false;

        auto arrangement_sensitive() const -> bool;
        auto validate() const -> void;
    };

    struct PrunedCase
    {
        LayerVector vector;
        std::string rule;
    };

    struct Enumeration
    {
        std::vector<LayerVector> cases;
        std::vector<PrunedCase> pruned;
    };

    /// The first rule that rejects v, or nothing. Rule a counts every layer
    /// against rim_cap (and the hub against hub_min..hub_max).
    auto violated_rule(const LayerVector & v, int total, const PruningRules & rules) -> std::optional<std::string>;

    /// All layer vectors of the given total within the caps. Rim layers are
    /// reported in canonical form: sorted descending when no rule depends on
    /// the arrangement, the canonical_rim representative otherwise. Throws
    /// InvalidArgument on inconsistent caps.
    auto enumerate_cases(int total, const PruningRules & rules) -> Enumeration;

    /// Sorted parts (descending), each at most cap, summing to total.
    auto partitions_with_cap(int total, int parts, int cap) -> std::vector<std::vector<int>>;

    /// |S ∩ {v : v[coord] = value for each fixed pair}| rel count.
    struct SliceCount
    {
        std::vector<std::pair<int, AtomVertex>> fixed;
        Relation relation = Relation::Eq;
        int count = 0;

        auto to_string() const -> std::string;
    };

    auto slice_members(const Graph & g, const SliceCount & s) -> Bitset;

    enum class Expectation
    {
        Feasible,
        Infeasible,
        /// Not decided by the published argument.
        Unstated
    };

    auto expectation_name(Expectation e) -> std::string;

    struct LedgerCase
    {
        std::string label;
        std::string sub_case;
        std::string graph_expr;
        /// Applied along layer_coord when non-empty.
        LayerVector layers;
        int layer_coord = 0;
        std::vector<SliceCount> extra;
        int target = 0;
        Expectation expected = Expectation::Unstated;
        /// Pruned entries are recorded without a solve.
        std::optional<std::string> pruned_by;
    };

    auto case_constraints(const Graph & g, const LedgerCase & c) -> ConstraintSpec;

    enum class EntryStatus
    {
        FeasibleWitness,
        InfeasibleProven,
        PrunedByRule,
        Unresolved
    };

    auto entry_status_name(EntryStatus s) -> std::string;

    struct LedgerEntry
    {
        LedgerCase ledger_case;
        EntryStatus status = EntryStatus::Unresolved;
        std::string rule;
        /// Relative to the ledger directory; empty for pruned entries.
        std::string evidence;
        std::string evidence_sha256;
        long nodes = 0;
        double elapsed = 0;

        /// False only when a decided status contradicts a stated expectation.
        auto agrees() const -> bool;
    };

    /// Append-only TSV ledger with content-addressed evidence files under
    /// `evidence/`. Appends are serialized.
    class LedgerWriter
    {
    private:
        std::filesystem::path _dir;
        std::filesystem::path _file;
        std::mutex _mutex;

    public:
        explicit LedgerWriter(std::filesystem::path dir, std::string_view name = "ledger.tsv");
        LedgerWriter(const LedgerWriter &) = delete;
        auto operator=(const LedgerWriter &) -> LedgerWriter & = delete;

        auto directory() const -> const std::filesystem::path & { return _dir; }
        auto file() const -> const std::filesystem::path & { return _file; }

        /// Writes the evidence text, returning its relative path and hash.
        auto store_evidence(std::string_view text, std::string_view extension) -> std::pair<std::string, std::string>;
        auto append(const LedgerEntry & e) -> void;
    };

    inline constexpr const char * ledger_header =
        "case\tsub_case\tstatus\trule\tevidence\tsha256\tnodes\telapsed_s\texpected\tgraph\ttarget";

    struct LedgerRun
    {
        Budget budget;
        int workers = 1;
        /// Called after each entry is appended.
        std::function<void(const LedgerEntry &)> progress;
    };

    /// Solves every case, workers at a time, appending each entry as it
    /// completes. Entries are returned in input order.
    auto run_ledger(const std::vector<LedgerCase> & cases, LedgerWriter & writer, const LedgerRun & run)
        -> std::vector<LedgerEntry>;

    /// Solves a single case without writing anything. A feasible outcome is
    /// checked against the clauses before it is trusted.
    auto solve_case(const LedgerCase & c, const Budget & budget) -> std::pair<SolveOutcome, Graph>;

    /// Rows of an existing ledger file, keyed by column name.
    auto read_ledger(const std::filesystem::path & file) -> std::vector<std::map<std::string, std::string>>;

    /// Named reproductions over powers of W5.
    ///
    ///  hub-caps:  hub layer caps in W5^3 (hub 11, hub 10, hub 9 with a rim
    ///             layer of 10, hub at most 7).
    ///  size-58:   layer vectors of 58-sets in W5^3.
    ///  size-57:   layer vectors of 57-sets in W5^3 with hub layer 9.
    ///  triangle:  excluded layer splits in W5^3 x K3 at sizes 170 and 171.
    ///  size-171:  the three K3 layer triples of a 171-set in W5^3 x K3.
    auto study_names() -> std::vector<std::string>;

    /// Rules used by the size-58 and size-57 studies, built from computed
    /// alpha(W5^2) and alpha(W5^2 x K3).
    auto w5_cube_rules(int total, int rim_cap, int triple_cap) -> PruningRules;

    auto study_cases(std::string_view name, int rim_cap = 11, int triple_cap = 29) -> std::vector<LedgerCase>;

    /// Sorted triples (|S_0|,|S_1|,|S_2|) with parts at most 58.
    auto triangle_triples(int total) -> std::vector<std::vector<int>>;
}

#endif
