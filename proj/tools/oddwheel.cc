#include <oddwheel/bounds.hh>
#include <oddwheel/certstore.hh>
#include <oddwheel/errors.hh>
#include <oddwheel/expr.hh>
#include <oddwheel/fractional.hh>
#include <oddwheel/ledger.hh>
#include <oddwheel/maximal.hh>
#include <oddwheel/mis.hh>
#include <oddwheel/orbits.hh>
#include <oddwheel/tier.hh>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

using namespace oddwheel;

namespace
{
    enum Exit
    {
        exit_ok = 0,
        exit_usage = 1,
        exit_aborted = 2,
        exit_verification = 3
    };

    struct Common
    {
        std::string tier_text;
        long nodes = -1;
        double seconds = -1;
        int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        int decimal = 0;

        auto tier() const -> Tier { return tier_text.empty() ? tier_from_environment() : parse_tier(tier_text); }

        /// Flags override the tier default field by field.
        auto budget(Budget base) const -> Budget
        {
            if (nodes >= 0)
                base.max_nodes = nodes;
            if (seconds >= 0)
                base.max_seconds = seconds;
            return base;
        }
    };

    auto add_common(CLI::App * app, Common & c, bool decimal = false) -> void
    {
        app->add_option("--tier", c.tier_text, "Budget tier: quick or long (default from ODDWHEEL_TIER)")
            ->check(CLI::IsMember({"quick", "long"}));
        app->add_option("--nodes", c.nodes, "Node budget, 0 for unlimited")->check(CLI::NonNegativeNumber);
        app->add_option("--seconds", c.seconds, "Time budget, 0 for unlimited")->check(CLI::NonNegativeNumber);
        app->add_option("--threads", c.threads, "Worker threads; 1 gives fully deterministic output")
            ->check(CLI::PositiveNumber);
        if (decimal)
            app->add_option("--decimal", c.decimal, "Also print rationals to this many decimal places")
                ->check(CLI::NonNegativeNumber);
    }

    auto budget_text(const Budget & b) -> std::string
    {
        if (b.unlimited())
            return "unlimited";
        std::string r;
        if (b.max_nodes > 0)
            r += std::to_string(b.max_nodes) + " nodes";
        if (b.max_seconds > 0)
            r += (r.empty() ? "" : ", ") + std::to_string(b.max_seconds) + " s";
        return r;
    }

    auto graph_hash(const Graph & g) -> std::string
    {
        std::ostringstream dimacs;
        write_dimacs(g, dimacs);
        return sha256_hex(dimacs.str());
    }

    class RunLog
    {
    private:
        std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();

    public:
        RunLog(std::string_view command, std::string_view expr, const Graph * g, const Budget & budget, Tier tier)
        {
            std::clog << "[oddwheel] " << command << " expr=" << (expr.empty() ? "-" : expr);
            if (g)
                std::clog << " graph_sha256=" << graph_hash(*g);
            std::clog << " budget=" << budget_text(budget) << " tier=" << tier_name(tier) << '\n';
        }

        ~RunLog()
        {
            std::chrono::duration<double> d = std::chrono::steady_clock::now() - _start;
            std::clog << "[oddwheel] elapsed=" << d.count() << " s\n";
        }
    };

    auto decimal_suffix(const Rational & r, int places) -> std::string
    {
        return places > 0 ? " (" + r.to_decimal(places) + ")" : "";
    }

    /// coord=3,value=*,rel=eq,count=9 with 1-based coordinates; coord and
    /// value may repeat to fix several coordinates.
    auto parse_constraint(const Graph & g, std::string_view text) -> Clause
    {
        std::vector<int> coords;
        std::vector<AtomVertex> values;
        std::optional<Relation> rel;
        std::optional<int> count;
        std::string_view rest = text;
        while (! rest.empty()) {
            auto comma = rest.find(',');
            auto item = rest.substr(0, comma);
            rest.remove_prefix(comma == std::string_view::npos ? rest.size() : comma + 1);
            auto eq = item.find('=');
            if (eq == std::string_view::npos)
                throw ParseError("constraint item '" + std::string(item) + "' is not key=value", 0);
            auto key = item.substr(0, eq);
            auto value = std::string(item.substr(eq + 1));
            try {
                if (key == "coord")
                    coords.push_back(std::stoi(value) - 1);
                else if (key == "value")
                    values.push_back(AtomVertex::parse(value));
                else if (key == "rel")
                    rel = parse_relation(value);
                else if (key == "count")
                    count = std::stoi(value);
                else
                    throw ParseError("unknown constraint key '" + std::string(key) + "'", 0);
            }
            catch (const std::logic_error &) {
                throw ParseError("bad constraint value '" + value + "'", 0);
            }
        }
        if (coords.empty() || coords.size() != values.size() || ! count)
            throw ParseError("constraint needs coord=,value= pairs and count= in '" + std::string(text) + "'", 0);
        if (*count < 0)
            throw ParseError("negative count in '" + std::string(text) + "'", 0);
        Bitset members(g.vertex_count());
        members.set_all();
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] < 0 || coords[i] >= static_cast<int>(g.factor_shape().size()))
                throw InvalidArgument("coordinate " + std::to_string(coords[i] + 1) + " out of range");
            members &= layer_slice(g, coords[i], values[i]);
        }
        return slice_clause(members, rel.value_or(Relation::Eq), *count, std::string(text));
    }

    auto print_report(const Graph & g, const SolveOutcome & out, const std::string & expr) -> void
    {
        write_solve_report(std::cout, g, out, {{"graph", canonical_expr(expr)}, {"vertices", std::to_string(g.vertex_count())}});
    }

    auto exit_for(const SolveOutcome & out) -> int
    {
        return out.decided() ? exit_ok : exit_aborted;
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"Independence numbers, fractional chromatic numbers and ratio bounds for products of odd wheels"};
    app.set_config("--config", "", "Read flags from a TOML or INI file; command-line flags win");
    app.require_subcommand(1);
    Common common;

    auto alpha_cmd = app.add_subcommand("alpha", "Exact or constrained independence number");
    std::string graph_expr;
    std::vector<std::string> constraints;
    std::optional<int> target;
    std::string cert_out;
    bool no_symmetry = false, no_blocks = false;
    alpha_cmd->add_option("--graph", graph_expr, "Product expression, e.g. W5^2xK3")->required();
    alpha_cmd->add_option("--constraint", constraints, "coord=..,value=..,rel=eq|le|ge,count=.. (1-based coord)");
    alpha_cmd->add_option("--target", target, "Stop at the first set of this size")->check(CLI::NonNegativeNumber);
    alpha_cmd->add_option("--cert-out", cert_out, "Save a verified certificate of the witness");
    alpha_cmd->add_flag("--no-symmetry", no_symmetry, "Disable orbital branching");
    alpha_cmd->add_flag("--no-block-bounds", no_blocks, "Disable sub-block bounds");
    add_common(alpha_cmd, common);

    auto chif_cmd = app.add_subcommand("chif", "Fractional chromatic number of W_{2t+1}^2");
    int t = 2;
    std::string route = "slicing";
    bool show_profiles = false;
    chif_cmd->add_option("--t", t, "Wheel parameter, W_{2t+1}")->check(CLI::Range(2, 40));
    chif_cmd->add_option("--route", route, "slicing or enumeration")->check(CLI::IsMember({"slicing", "enumeration"}));
    chif_cmd->add_flag("--profiles", show_profiles, "Also list maximal and tight profiles");
    add_common(chif_cmd, common, true);

    auto table_cmd = app.add_subcommand("table", "Comparison table of wheels W_5 .. W_{2t+1}");
    int t_max = 3;
    table_cmd->add_option("--t-max", t_max, "Largest t")->check(CLI::Range(2, 40));
    add_common(table_cmd, common, true);

    auto bounds_cmd = app.add_subcommand("bounds", "Closed-form ratio bounds for W_{2t+1}");
    bounds_cmd->add_option("--t", t, "Wheel parameter")->check(CLI::Range(2, 1000));
    add_common(bounds_cmd, common, true);

    auto ledger_cmd = app.add_subcommand("ledger", "Run a named case study and append it to a ledger");
    std::string study;
    std::string ledger_dir = "ledger";
    bool list_only = false;
    ledger_cmd->add_option("--study", study, "hub-caps, size-58, size-57, triangle or size-171")
        ->required()
        ->check(CLI::IsMember(study_names()));
    ledger_cmd->add_option("--dir", ledger_dir, "Ledger directory");
    ledger_cmd->add_flag("--list", list_only, "Print the cases without solving");
    add_common(ledger_cmd, common);

    auto verify_cmd = app.add_subcommand("verify", "Verify a certificate file or the bundled certificates");
    std::string cert_path, checksum;
    bool bundled = false;
    verify_cmd->add_option("--cert", cert_path, "Certificate file");
    verify_cmd->add_option("--sha256", checksum, "Expected checksum of the file");
    verify_cmd->add_flag("--bundled", bundled, "Verify every certificate in the bundled manifest");

    auto manifest_cmd = app.add_subcommand("manifest", "Verify every certificate in a directory and write its MANIFEST");
    std::string manifest_dir;
    manifest_cmd->add_option("--dir", manifest_dir, "Certificate directory")->required();

    auto maximal_cmd = app.add_subcommand("maximal", "Count maximal independent sets");
    maximal_cmd->add_option("--graph", graph_expr, "Product expression")->required();
    add_common(maximal_cmd, common);

    auto hubcap_cmd = app.add_subcommand("hub-cap", "Check the hub-layer caps of W_{2t+1}^2");
    hubcap_cmd->add_option("--t", t, "Wheel parameter")->check(CLI::Range(2, 10));
    add_common(hubcap_cmd, common);

    auto squares_cmd = app.add_subcommand("squares", "Check alpha(W^2 x K3) = 4t^2+5t+3 and the related identities");
    squares_cmd->add_option("--t", t, "Wheel parameter")->check(CLI::Range(2, 10));
    add_common(squares_cmd, common);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        auto tier = common.tier();
        SolverOptions options;
        options.threads = common.threads;

        if (alpha_cmd->parsed()) {
            auto g = evaluate(graph_expr);
            options.budget = common.budget({});
            options.use_symmetry = ! no_symmetry;
            options.block_bounds = ! no_blocks;
            RunLog log("alpha", canonical_expr(graph_expr), &g, options.budget, tier);
            ConstraintSpec spec;
            for (auto & c : constraints)
                spec.clauses.push_back(parse_constraint(g, c));
            SolveOutcome out;
            if (target)
                out = feasible(g, spec, *target, options);
            else if (spec.empty())
                out = alpha(g, options);
            else
                out = alpha_constrained(g, spec, options);
            print_report(g, out, graph_expr);
            if (! cert_out.empty() && (out.status == SolveStatus::Optimal || out.status == SolveStatus::Feasible)) {
                auto cert = make_certificate(graph_expr, g, out.witness, "alpha " + status_name(out.status));
                std::cout << "certificate=" << cert_out << "\nsha256=" << save_certificate(cert, cert_out) << '\n';
            }
            return exit_for(out);
        }

        if (chif_cmd->parsed()) {
            options.budget = common.budget({});
            RunLog log("chif", "W" + std::to_string(2 * t + 1) + "^2", nullptr, options.budget, tier);
            auto r = chi_f_wheel_square(t, parse_route(route), options);
            if (! r.complete) {
                std::cout << "status=aborted\n";
                return exit_aborted;
            }
            std::cout << "chi_f=" << r.chi_f << decimal_suffix(r.chi_f, common.decimal) << '\n';
            std::cout << "ratio_bound=" << r.z << decimal_suffix(r.z, common.decimal) << '\n';
            if (show_profiles) {
                std::cout << "maximal_profiles:\n";
                write_profiles(std::cout, r.profiles.profiles);
                std::cout << "tight_profiles:\n";
                write_profiles(std::cout, r.tight_profiles());
            }
            return exit_ok;
        }

        if (table_cmd->parsed()) {
            RunLog log("table", "W5..W" + std::to_string(2 * t_max + 1), nullptr, common.budget(table_budget(tier)), tier);
            AlphaCache cache;
            auto rows = comparison_table(t_max, tier, cache, common.threads);
            write_table(std::cout, rows, common.decimal);
            for (auto & r : rows)
                if (! r.alpha_cube.known() || ! r.alpha_square_k3.known() || ! r.chi_f.known())
                    return exit_aborted;
            return exit_ok;
        }

        if (bounds_cmd->parsed()) {
            auto show = [&](const std::string & name, const Rational & v) {
                std::cout << name << '=' << v << decimal_suffix(v, common.decimal) << '\n';
            };
            show("one_layer", bound_one_layer(t));
            if (t >= 3)
                show("square_closed_form", bound_square_closed_form(t));
            show("previous", previous_wheel_bound(t));
            show("chi_f_closed_form", conjectured_chi_f_closed_form(t));
            return exit_ok;
        }

        if (ledger_cmd->parsed()) {
            auto cases = study_cases(study);
            if (list_only) {
                for (auto & c : cases)
                    std::cout << c.label << '\t' << (c.sub_case.empty() ? "-" : c.sub_case) << '\t'
                              << (c.pruned_by ? "pruned:" + *c.pruned_by : "solve") << '\t'
                              << expectation_name(c.expected) << '\n';
                return exit_ok;
            }
            LedgerRun run;
            run.budget = common.budget(ledger_budget(tier));
            run.workers = common.threads;
            run.progress = [](const LedgerEntry & e) {
                std::clog << "[oddwheel] " << e.ledger_case.label << ' ' << e.ledger_case.sub_case << " -> "
                          << entry_status_name(e.status) << (e.rule.empty() ? "" : "(" + e.rule + ")") << " nodes=" << e.nodes
                          << " elapsed=" << e.elapsed << '\n';
            };
            RunLog log("ledger " + study, cases.empty() ? "" : cases.front().graph_expr, nullptr, run.budget, tier);
            LedgerWriter writer(ledger_dir);
            auto entries = run_ledger(cases, writer, run);
            bool unresolved = false, disagree = false;
            std::map<std::string, int> counts;
            for (auto & e : entries) {
                ++counts[entry_status_name(e.status)];
                unresolved = unresolved || e.status == EntryStatus::Unresolved;
                if (! e.agrees()) {
                    disagree = true;
                    std::cout << "DISAGREES " << e.ledger_case.label << ' ' << e.ledger_case.sub_case << ": "
                              << entry_status_name(e.status) << " but expected " << expectation_name(e.ledger_case.expected)
                              << '\n';
                }
            }
            if (study == "size-171")
                for (auto & s : triangle_triples(170))
                    std::cout << "triple_170=" << LayerVector{s}.to_string() << '\n';
            std::cout << "study=" << study << "\nledger=" << writer.file().string() << '\n';
            for (auto & [k, v] : counts)
                std::cout << k << '=' << v << '\n';
            return disagree ? exit_verification : unresolved ? exit_aborted : exit_ok;
        }

        if (verify_cmd->parsed()) {
            if (bundled) {
                auto dir = certificate_dir();
                auto certs = bundled_certificates(dir);
                for (auto & b : certs)
                    std::cout << "OK " << b.entry.name << " graph=" << b.verified.certificate.graph_expr
                              << " size=" << b.verified.certificate.claimed_size << '\n';
                return exit_ok;
            }
            if (cert_path.empty())
                throw InvalidArgument("verify needs --cert or --bundled");
            auto v = load_certificate(cert_path, checksum);
            std::cout << "OK size=" << v.certificate.claimed_size << " graph=" << v.certificate.graph_expr
                      << " sha256=" << v.certificate.checksum << '\n';
            return exit_ok;
        }

        if (manifest_cmd->parsed()) {
            std::vector<std::filesystem::path> files;
            for (auto & f : std::filesystem::directory_iterator(manifest_dir))
                if (f.path().extension() == ".cert")
                    files.push_back(f.path());
            std::sort(files.begin(), files.end());
            std::vector<ManifestEntry> entries;
            for (auto & f : files) {
                auto v = load_certificate(f);
                entries.push_back({f.stem().string(), f.filename().string(), v.certificate.checksum});
                std::cout << "OK " << f.filename().string() << " size=" << v.certificate.claimed_size << '\n';
            }
            write_manifest(std::filesystem::path(manifest_dir) / "MANIFEST", entries);
            return exit_ok;
        }

        if (maximal_cmd->parsed()) {
            auto g = evaluate(graph_expr);
            auto budget = common.budget({});
            RunLog log("maximal", canonical_expr(graph_expr), &g, budget, tier);
            auto r = enumerate_maximal(g, [](const Bitset &) {}, budget);
            std::cout << "maximal_sets=" << r.count << "\ncomplete=" << (r.complete ? "true" : "false") << '\n';
            return r.complete ? exit_ok : exit_aborted;
        }

        if (hubcap_cmd->parsed()) {
            options.budget = common.budget(ledger_budget(tier));
            RunLog log("hub-cap", "W" + std::to_string(2 * t + 1) + "^2", nullptr, options.budget, tier);
            bool all = true, aborted = false;
            for (auto & row : verify_hub_layer_cap(t, options)) {
                std::cout << "k=" << row.k << " cap=" << row.cap << " status=" << status_name(row.outcome.status)
                          << " value=" << row.outcome.value << " verified=" << (row.verified ? "yes" : "no") << '\n';
                aborted = aborted || ! row.outcome.decided();
                all = all && row.verified;
            }
            return all ? exit_ok : aborted ? exit_aborted : exit_verification;
        }

        if (squares_cmd->parsed()) {
            options.budget = common.budget(table_budget(tier));
            RunLog log("squares", "W" + std::to_string(2 * t + 1), nullptr, options.budget, tier);
            AlphaCache cache;
            auto r = squares_check(t, cache, options);
            if (! r.complete) {
                std::cout << "status=aborted\n";
                return exit_aborted;
            }
            std::cout << "alpha(W)=" << r.alpha_wheel.value << "\nalpha(WxK3)=" << r.alpha_wheel_k3.value
                      << "\nalpha(W^2xK3)=" << r.alpha_square_k3.value << "\nexpected=" << r.expected
                      << "\nmatches_expected=" << r.matches_expected << "\ndisplayed_identity_lhs=" << r.displayed_lhs
                      << "\ndisplayed_identity_holds=" << r.displayed_holds << "\nvariant_identity_lhs=" << r.variant_lhs
                      << "\nvariant_identity_holds=" << r.variant_holds << "\nt_minus_1=" << t - 1 << '\n';
            return r.matches_expected ? exit_ok : exit_verification;
        }
    }
    catch (const CertificateError & e) {
        std::cout << "FAILED " << e.what() << '\n';
        return exit_verification;
    }
    catch (const ParseError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const InvalidArgument & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_aborted;
    }
    return exit_usage;
}
