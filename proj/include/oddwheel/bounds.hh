#ifndef ODDWHEEL_BOUNDS_HH
#define ODDWHEEL_BOUNDS_HH

#include <oddwheel/expr.hh>
#include <oddwheel/mis.hh>
#include <oddwheel/rational.hh>
#include <oddwheel/tier.hh>

#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace oddwheel
{
    enum class Provenance
    {
        ClosedForm,
        Solver,
        Table
    };

    auto provenance_name(Provenance p) -> std::string;

    /// An upper bound on the ultimate independence ratio together with the
    /// quantities it was computed from.
    struct BoundReport
    {
        std::string graph_expr;
        /// product_clique(l,k), one_layer, square_closed_form or chi_f_reciprocal.
        std::string method;
        Rational value;
        std::vector<std::pair<std::string, std::string>> inputs;
        Provenance provenance = Provenance::ClosedForm;
    };

    /// alpha(G^l x K_k) / (k |V(G)|^l). Rejects k above the clique number of
    /// the atom and non-positive l.
    auto bound_product_clique(const AtomGraph & atom, int l, int k, const BigInt & alpha_value) -> Rational;
    auto product_clique_report(const AtomGraph & atom, int l, int k, const BigInt & alpha_value, Provenance provenance)
        -> BoundReport;

    /// (2t+1) / (6t+6), the l = 1 case for W_{2t+1}.
    auto bound_one_layer(int t) -> Rational;

    /// (4t^2 + 6t) / (3 (2t+2)^2); t >= 3.
    auto bound_square_closed_form(int t) -> Rational;

    /// t / (3t+1), the older bound for odd wheels.
    auto previous_wheel_bound(int t) -> Rational;

    /// 1 / chi_f(G^k), which also bounds the ratio of G from above.
    auto chi_f_reciprocal_report(const std::string & graph_expr, const Rational & chi_f) -> BoundReport;

    /// alpha(G^p x K_k) + (n - k) alpha(G^p), an upper bound on alpha(G^(p+1)).
    auto product_recurrence(const BigInt & alpha_with_clique, const BigInt & alpha_power, int n, int k) -> BigInt;

    /// t(2t+1) + 1 + (1-t)k: the largest independent set in W_{2t+1}^2 with
    /// exactly k non-hub vertices in the hub layer. Needs t >= 2, 0 <= k <= t.
    auto hub_layer_cap(int t, int k) -> int;

    struct HubLayerRow
    {
        int k = 0;
        int cap = 0;
        SolveOutcome outcome;
        /// Solver finished and its optimum does not exceed the cap.
        bool verified = false;
    };

    /// For each k in 0..t, maximises over W_{2t+1}^2 with the hub layer
    /// (second coordinate the hub) minus the hub-hub vertex holding exactly k
    /// vertices, and compares against hub_layer_cap.
    auto verify_hub_layer_cap(int t, const SolverOptions & options = {}) -> std::vector<HubLayerRow>;

    /// Thread-safe memo of solved independence numbers keyed by canonical
    /// expression. Only decided outcomes are stored.
    class AlphaCache
    {
    private:
        mutable std::mutex _mutex;
        std::map<std::string, SolveOutcome> _solved;

    public:
        auto alpha(std::string_view expr, const SolverOptions & options = {}) -> SolveOutcome;
        auto lookup(std::string_view expr) const -> std::optional<SolveOutcome>;
        auto size() const -> std::size_t;
    };

    /// Checks on alpha(W^2 x K3) for W = W_{2t+1}. The displayed identity
    /// multiplies alpha(W); the variant multiplies alpha(W x K3). Both are
    /// reported together with the claimed value 4t^2 + 5t + 3.
    struct SquaresCheck
    {
        int t = 0;
        SolveOutcome alpha_wheel;
        SolveOutcome alpha_wheel_k3;
        SolveOutcome alpha_square_k3;
        int expected = 0;
        bool complete = false;
        bool matches_expected = false;
        long displayed_lhs = 0;
        bool displayed_holds = false;
        long variant_lhs = 0;
        bool variant_holds = false;
    };

    auto squares_check(int t, AlphaCache & cache, const SolverOptions & options = {}) -> SquaresCheck;

    /// One cell of the comparison table. An empty text means `?`.
    struct TableCell
    {
        std::string text;
        Provenance provenance = Provenance::Solver;
        std::string note;

        auto known() const -> bool { return ! text.empty(); }
    };

    struct TableRow
    {
        int t = 0;
        TableCell alpha_cube;
        TableCell chi_f;
        TableCell alpha_square_k3;
        TableCell bound;
    };

    auto table_row(int t, Tier tier, AlphaCache & cache, int threads = 1) -> TableRow;
    auto comparison_table(int t_max, Tier tier, AlphaCache & cache, int threads = 1) -> std::vector<TableRow>;

    /// TSV with a header row and a provenance column after each value.
    /// Rationals are exact unless decimal_places > 0.
    auto write_table(std::ostream & out, const std::vector<TableRow> & rows, int decimal_places = 0) -> void;
}

#endif
