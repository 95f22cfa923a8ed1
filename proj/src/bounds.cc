#include <oddwheel/bounds.hh>
#include <oddwheel/errors.hh>
#include <oddwheel/fractional.hh>

#include <algorithm>
#include <ostream>

namespace oddwheel
{
    auto provenance_name(Provenance p) -> std::string
    {
        switch (p) {
        case Provenance::ClosedForm: return "closed_form";
        case Provenance::Solver: return "solver";
        case Provenance::Table: return "table";
        }
        return "?";
    }

    auto bound_product_clique(const AtomGraph & atom, int l, int k, const BigInt & alpha_value) -> Rational
    {
        if (l < 1)
            throw InvalidArgument("power must be at least 1");
        if (k < 1 || k > atom.clique_number())
            throw InvalidArgument(atom.name() + " has no clique of order " + std::to_string(k));
        if (alpha_value < 0)
            throw InvalidArgument("independence number must be non-negative");
        BigInt denominator = k;
        for (int i = 0; i < l; ++i)
            denominator *= atom.order();
        return Rational(alpha_value, denominator);
    }

    namespace
    {
        auto power_expr(const AtomGraph & atom, int l) -> std::string
        {
            return l == 1 ? atom.name() : atom.name() + "^" + std::to_string(l);
        }

        auto wheel_name(int t) -> std::string
        {
            return "W" + std::to_string(2 * t + 1);
        }

        auto require_t(int t, int minimum) -> void
        {
            if (t < minimum)
                throw InvalidArgument("t must be at least " + std::to_string(minimum));
        }
    }

    auto product_clique_report(const AtomGraph & atom, int l, int k, const BigInt & alpha_value, Provenance provenance)
        -> BoundReport
    {
        BoundReport r;
        r.graph_expr = atom.name();
        r.method = "product_clique(" + std::to_string(l) + "," + std::to_string(k) + ")";
        r.value = bound_product_clique(atom, l, k, alpha_value);
        r.inputs = {
            {"alpha(" + power_expr(atom, l) + "xK" + std::to_string(k) + ")", alpha_value.str()},
            {"n", std::to_string(atom.order())},
        };
        r.provenance = provenance;
        return r;
    }

    auto bound_one_layer(int t) -> Rational
    {
        require_t(t, 2);
        return Rational(BigInt(2 * t + 1), BigInt(6 * t + 6));
    }

    auto bound_square_closed_form(int t) -> Rational
    {
        require_t(t, 3);
        BigInt T = t;
        return Rational(4 * T * T + 6 * T, 3 * (2 * T + 2) * (2 * T + 2));
    }

    auto previous_wheel_bound(int t) -> Rational
    {
        require_t(t, 2);
        return Rational(BigInt(t), BigInt(3 * t + 1));
    }

    auto chi_f_reciprocal_report(const std::string & graph_expr, const Rational & chi_f) -> BoundReport
    {
        if (chi_f.sign() <= 0)
            throw InvalidArgument("fractional chromatic number must be positive");
        BoundReport r;
        r.graph_expr = graph_expr;
        r.method = "chi_f_reciprocal";
        r.value = chi_f.reciprocal();
        r.inputs = {{"chi_f(" + graph_expr + ")", chi_f.to_string()}};
        r.provenance = Provenance::Solver;
        return r;
    }

    auto product_recurrence(const BigInt & alpha_with_clique, const BigInt & alpha_power, int n, int k) -> BigInt
    {
        if (k < 1 || k > n)
            throw InvalidArgument("clique order out of range");
        return alpha_with_clique + BigInt(n - k) * alpha_power;
    }

    auto hub_layer_cap(int t, int k) -> int
    {
        require_t(t, 2);
        if (k < 0 || k > t)
            throw InvalidArgument("k must lie in 0..t");
        return t * (2 * t + 1) + 1 + (1 - t) * k;
    }

    auto verify_hub_layer_cap(int t, const SolverOptions & options) -> std::vector<HubLayerRow>
    {
        require_t(t, 2);
        auto atom = AtomGraph::wheel(2 * t + 1);
        auto g = evaluate(ProductExpr::power(ProductExpr::atom(atom), 2));
        auto layer = layer_slice(g, 1, AtomVertex::hub());
        int hub_hub = g.index_of_internal(std::vector<int>{atom.hub_index(), atom.hub_index()});
        layer.reset(hub_hub);

        std::vector<HubLayerRow> rows;
        for (int k = 0; k <= t; ++k) {
            HubLayerRow row;
            row.k = k;
            row.cap = hub_layer_cap(t, k);
            ConstraintSpec spec;
            spec.clauses.push_back(slice_clause(layer, Relation::Eq, k, "hub layer"));
            row.outcome = alpha_constrained(g, spec, options);
            row.verified = row.outcome.status == SolveStatus::Optimal && row.outcome.value <= row.cap;
            rows.push_back(std::move(row));
        }
        return rows;
    }

    auto AlphaCache::alpha(std::string_view expr, const SolverOptions & options) -> SolveOutcome
    {
        auto key = canonical_expr(expr);
        if (auto hit = lookup(key))
            return *hit;
        auto out = oddwheel::alpha(evaluate(parse_expr(key)), options);
        if (out.decided()) {
            std::lock_guard lock(_mutex);
            _solved.emplace(key, out);
        }
        return out;
    }

    auto AlphaCache::lookup(std::string_view expr) const -> std::optional<SolveOutcome>
    {
        auto key = canonical_expr(expr);
        std::lock_guard lock(_mutex);
        auto it = _solved.find(key);
        if (it == _solved.end())
            return std::nullopt;
        return it->second;
    }

    auto AlphaCache::size() const -> std::size_t
    {
        std::lock_guard lock(_mutex);
        return _solved.size();
    }

    auto squares_check(int t, AlphaCache & cache, const SolverOptions & options) -> SquaresCheck
    {
        require_t(t, 2);
        SquaresCheck r;
        r.t = t;
        auto w = wheel_name(t);
        r.alpha_wheel = cache.alpha(w, options);
        r.alpha_wheel_k3 = cache.alpha(w + "xK3", options);
        r.alpha_square_k3 = cache.alpha(w + "^2xK3", options);
        r.expected = 4 * t * t + 5 * t + 3;
        r.complete = r.alpha_wheel.decided() && r.alpha_wheel_k3.decided() && r.alpha_square_k3.decided();
        if (! r.complete)
            return r;
        long a = r.alpha_square_k3.value;
        r.matches_expected = a == r.expected;
        r.displayed_lhs = (2L * t + 2) * r.alpha_wheel.value - a;
        r.displayed_holds = r.displayed_lhs == t - 1;
        r.variant_lhs = (2L * t + 2) * r.alpha_wheel_k3.value - a;
        r.variant_holds = r.variant_lhs == t - 1;
        return r;
    }

    namespace
    {
        auto solver_cell(const SolveOutcome & out) -> TableCell
        {
            TableCell c;
            c.provenance = Provenance::Solver;
            if (out.decided())
                c.text = std::to_string(out.value);
            else if (out.value >= 0)
                c.note = "budget exhausted, found " + std::to_string(out.value);
            else
                c.note = "budget exhausted";
            return c;
        }
    }

    auto table_row(int t, Tier tier, AlphaCache & cache, int threads) -> TableRow
    {
        require_t(t, 2);
        SolverOptions options;
        options.budget = table_budget(tier);
        options.threads = threads;
        auto atom = AtomGraph::wheel(2 * t + 1);
        auto w = wheel_name(t);

        TableRow row;
        row.t = t;
        row.alpha_cube = solver_cell(cache.alpha(w + "^3", options));
        auto square_k3 = cache.alpha(w + "^2xK3", options);
        row.alpha_square_k3 = solver_cell(square_k3);

        std::vector<BoundReport> bounds;
        auto chi = chi_f_wheel_square(t, ProfileRoute::Slicing, options);
        if (chi.complete) {
            row.chi_f.text = chi.chi_f.to_string();
            bounds.push_back(chi_f_reciprocal_report(w + "^2", chi.chi_f));
        }
        else
            row.chi_f.note = "budget exhausted";

        BoundReport one;
        one.graph_expr = w;
        one.method = "one_layer";
        one.value = bound_one_layer(t);
        bounds.push_back(one);
        if (t >= 3) {
            BoundReport closed;
            closed.graph_expr = w;
            closed.method = "square_closed_form";
            closed.value = bound_square_closed_form(t);
            bounds.push_back(closed);
        }
        if (square_k3.decided())
            bounds.push_back(product_clique_report(atom, 2, 3, square_k3.value, Provenance::Solver));
        if (t == 2) {
            // Inputs proved elsewhere and not recomputed here.
            bounds.push_back(product_clique_report(atom, 3, 3, 170, Provenance::Table));
            bounds.push_back(product_clique_report(atom, 4, 3, 1019, Provenance::Table));
        }

        auto best = std::min_element(bounds.begin(), bounds.end(),
            [](const BoundReport & a, const BoundReport & b) { return a.value < b.value; });
        row.bound.text = best->value.to_string();
        row.bound.provenance = best->provenance;
        row.bound.note = best->method;
        return row;
    }

    auto comparison_table(int t_max, Tier tier, AlphaCache & cache, int threads) -> std::vector<TableRow>
    {
        std::vector<TableRow> rows;
        for (int t = 2; t <= t_max; ++t)
            rows.push_back(table_row(t, tier, cache, threads));
        return rows;
    }

    auto write_table(std::ostream & out, const std::vector<TableRow> & rows, int decimal_places) -> void
    {
        auto render = [&](const TableCell & c, bool rational) -> std::string {
            if (! c.known())
                return "?";
            if (rational && decimal_places > 0)
                return Rational::parse(c.text).to_decimal(decimal_places);
            return c.text;
        };
        auto source = [](const TableCell & c) {
            auto s = provenance_name(c.provenance);
            return c.note.empty() ? s : s + " (" + c.note + ")";
        };
        out << "wheel\talpha(W^3)\tsource\tchi_f(W^2)\tsource\talpha(W^2xK3)\tsource\tratio_bound\tsource\n";
        for (auto & r : rows) {
            out << 2 * r.t + 1 << '\t'
                << render(r.alpha_cube, false) << '\t' << source(r.alpha_cube) << '\t'
                << render(r.chi_f, true) << '\t' << source(r.chi_f) << '\t'
                << render(r.alpha_square_k3, false) << '\t' << source(r.alpha_square_k3) << '\t'
                << render(r.bound, true) << '\t' << source(r.bound) << '\n';
        }
    }
}
