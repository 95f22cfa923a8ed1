#include <oddwheel/certstore.hh>
#include <oddwheel/errors.hh>
#include <oddwheel/expr.hh>
#include <oddwheel/ledger.hh>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace oddwheel
{
    auto LayerVector::parse(std::string_view text) -> LayerVector
    {
        if (text.size() >= 2 && text.front() == '(' && text.back() == ')')
            text = text.substr(1, text.size() - 2);
        LayerVector v;
        if (text.empty())
            return v;
        while (true) {
            auto comma = text.find(',');
            auto part = text.substr(0, comma);
            while (! part.empty() && part.front() == ' ')
                part.remove_prefix(1);
            while (! part.empty() && part.back() == ' ')
                part.remove_suffix(1);
            if (part == "-")
                v.sizes.push_back(-1);
            else {
                int x = 0;
                auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), x);
                if (ec != std::errc{} || end != part.data() + part.size() || x < 0 || part.empty())
                    throw ParseError("bad layer size '" + std::string(part) + "'", 0);
                v.sizes.push_back(x);
            }
            if (comma == std::string_view::npos)
                break;
            text.remove_prefix(comma + 1);
        }
        return v;
    }

    auto LayerVector::to_string() const -> std::string
    {
        std::string r = "(";
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            if (i)
                r += ',';
            r += sizes[i] < 0 ? "-" : std::to_string(sizes[i]);
        }
        return r + ")";
    }

    auto LayerVector::total() const -> int
    {
        int t = 0;
        for (int s : sizes)
            if (s > 0)
                t += s;
        return t;
    }

    auto rim_arrangements(const LayerVector & v, int fixed_prefix) -> std::vector<LayerVector>
    {
        int n = static_cast<int>(v.sizes.size()) - fixed_prefix;
        if (n < 0)
            throw InvalidArgument("layer vector shorter than its fixed prefix");
        std::set<LayerVector> seen;
        for (int flip = 0; flip < 2; ++flip)
            for (int shift = 0; shift < std::max(n, 1); ++shift) {
                LayerVector w = v;
                for (int i = 0; i < n; ++i) {
                    int j = flip ? (shift - i + n) % n : (shift + i) % n;
                    w.sizes[fixed_prefix + i] = v.sizes[fixed_prefix + j];
                }
                seen.insert(std::move(w));
            }
        return {seen.rbegin(), seen.rend()};
    }

    auto canonical_rim(const LayerVector & v, int fixed_prefix) -> LayerVector
    {
        return rim_arrangements(v, fixed_prefix).front();
    }

    auto PruningRules::arrangement_sensitive() const -> bool
    {
        return arrangements || triple_cap.has_value() || distinct_maxima;
    }

    auto PruningRules::validate() const -> void
    {
        if (rim_count < 1)
            throw InvalidArgument("need at least one rim layer");
        if (rim_cap < 0)
            throw InvalidArgument("negative layer cap");
        if (has_hub) {
            if (hub_min < 0 || hub_min > hub_max)
                throw InvalidArgument("hub range is empty");
            if (triple_cap && *triple_cap < 0)
                throw InvalidArgument("negative triple cap");
            if (triple_cap && *triple_cap < rim_cap)
                throw InvalidArgument("triple cap below the layer cap");
        }
        else if (triple_cap || ! hub_rim_caps.empty() || ! hub_total_caps.empty())
            throw InvalidArgument("hub rules given without a hub layer");
        if (triple_cap && rim_count < 2)
            throw InvalidArgument("adjacent-pair rule needs two rim layers");
    }

    auto violated_rule(const LayerVector & v, int total, const PruningRules & rules) -> std::optional<std::string>
    {
        int prefix = rules.has_hub ? 1 : 0;
        if (static_cast<int>(v.sizes.size()) != prefix + rules.rim_count)
            throw InvalidArgument("layer vector " + v.to_string() + " has the wrong length");
        int hub = rules.has_hub ? v.sizes[0] : 0;
        int sum = 0;
        for (int s : v.sizes)
            sum += s;
        if (sum != total)
            return "total";
        if (rules.has_hub && (hub < rules.hub_min || hub > rules.hub_max))
            return "a";
        for (int i = prefix; i < static_cast<int>(v.sizes.size()); ++i)
            if (v.sizes[i] < 0 || v.sizes[i] > rules.rim_cap)
                return "a";
        if (rules.has_hub) {
            for (auto & c : rules.hub_total_caps)
                if ((c.at_most ? hub <= c.hub : hub == c.hub) && total > c.total_cap)
                    return "h";
            for (auto & c : rules.hub_rim_caps)
                if (hub == c.hub && total > c.total_cap &&
                    std::find(v.sizes.begin() + 1, v.sizes.end(), c.rim) != v.sizes.end())
                    return "d";
        }
        int n = rules.rim_count;
        auto rim = [&](int i) { return v.sizes[prefix + (i % n)]; };
        if (rules.distinct_maxima && n >= 2)
            for (int i = 0; i < (n == 2 ? 1 : n); ++i)
                if (rim(i) == rules.rim_cap && rim(i + 1) == rules.rim_cap)
                    return "c";
        if (rules.triple_cap)
            for (int i = 0; i < (n == 2 ? 1 : n); ++i)
                if (rim(i) + rim(i + 1) > *rules.triple_cap - hub)
                    return "b";
        return std::nullopt;
    }

    auto partitions_with_cap(int total, int parts, int cap) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        std::vector<int> current;
        auto rec = [&](auto & self, int remaining, int left, int max_part) -> void {
            if (left == 0) {
                if (remaining == 0)
                    out.push_back(current);
                return;
            }
            if (remaining > left * max_part)
                return;
            for (int x = std::min(max_part, remaining); x >= 0; --x) {
                current.push_back(x);
                self(self, remaining - x, left - 1, x);
                current.pop_back();
            }
        };
        if (total >= 0 && parts >= 0 && cap >= 0)
            rec(rec, total, parts, cap);
        return out;
    }

    auto enumerate_cases(int total, const PruningRules & rules) -> Enumeration
    {
        rules.validate();
        if (total < 0)
            throw InvalidArgument("negative total");
        Enumeration r;
        int hub_lo = rules.has_hub ? rules.hub_min : 0, hub_hi = rules.has_hub ? rules.hub_max : 0;
        for (int hub = hub_hi; hub >= hub_lo; --hub) {
            if (rules.has_hub) {
                LayerVector probe;
                probe.sizes.assign(1 + rules.rim_count, -1);
                probe.sizes[0] = hub;
                bool capped = false;
                for (auto & c : rules.hub_total_caps)
                    capped = capped || ((c.at_most ? hub <= c.hub : hub == c.hub) && total > c.total_cap);
                if (capped) {
                    r.pruned.push_back({probe, "h"});
                    continue;
                }
            }
            for (auto & parts : partitions_with_cap(total - hub, rules.rim_count, rules.rim_cap)) {
                LayerVector v;
                if (rules.has_hub)
                    v.sizes.push_back(hub);
                v.sizes.insert(v.sizes.end(), parts.begin(), parts.end());
                std::set<LayerVector> classes;
                if (rules.arrangement_sensitive()) {
                    auto order = parts;
                    std::sort(order.begin(), order.end());
                    do {
                        LayerVector a;
                        if (rules.has_hub)
                            a.sizes.push_back(hub);
                        a.sizes.insert(a.sizes.end(), order.begin(), order.end());
                        classes.insert(canonical_rim(a, rules.has_hub ? 1 : 0));
                    } while (std::next_permutation(order.begin(), order.end()));
                }
                else
                    classes.insert(v);
                for (auto it = classes.rbegin(); it != classes.rend(); ++it) {
                    if (auto rule = violated_rule(*it, total, rules))
                        r.pruned.push_back({*it, *rule});
                    else
                        r.cases.push_back(*it);
                }
            }
        }
        return r;
    }

    auto SliceCount::to_string() const -> std::string
    {
        std::string r;
        for (auto & [coord, value] : fixed) {
            if (! r.empty())
                r += ',';
            r += "c" + std::to_string(coord + 1) + "=" + value.to_string();
        }
        return "|" + r + "| " + relation_name(relation) + " " + std::to_string(count);
    }

    auto slice_members(const Graph & g, const SliceCount & s) -> Bitset
    {
        Bitset m(g.vertex_count());
        m.set_all();
        for (auto & [coord, value] : s.fixed)
            m &= layer_slice(g, coord, value);
        return m;
    }

    auto expectation_name(Expectation e) -> std::string
    {
        switch (e) {
        case Expectation::Feasible: return "feasible";
        case Expectation::Infeasible: return "infeasible";
        case Expectation::Unstated: return "unstated";
        }
        return "?";
    }

    auto case_constraints(const Graph & g, const LedgerCase & c) -> ConstraintSpec
    {
        ConstraintSpec spec;
        for (std::size_t i = 0; i < c.layers.sizes.size(); ++i) {
            if (c.layers.sizes[i] < 0)
                continue;
            auto value = i == 0 ? AtomVertex::hub() : AtomVertex::indexed(static_cast<int>(i) - 1);
            spec.clauses.push_back(layer_clause(g, c.layer_coord, value, Relation::Eq, c.layers.sizes[i]));
        }
        for (auto & s : c.extra)
            spec.clauses.push_back(slice_clause(slice_members(g, s), s.relation, s.count, s.to_string()));
        return spec;
    }

    auto entry_status_name(EntryStatus s) -> std::string
    {
        switch (s) {
        case EntryStatus::FeasibleWitness: return "FeasibleWitness";
        case EntryStatus::InfeasibleProven: return "InfeasibleProven";
        case EntryStatus::PrunedByRule: return "PrunedByRule";
        case EntryStatus::Unresolved: return "Unresolved";
        }
        return "?";
    }

    auto LedgerEntry::agrees() const -> bool
    {
        switch (ledger_case.expected) {
        case Expectation::Feasible:
            return status != EntryStatus::InfeasibleProven && status != EntryStatus::PrunedByRule;
        case Expectation::Infeasible: return status != EntryStatus::FeasibleWitness;
        case Expectation::Unstated: return true;
        }
        return true;
    }

    LedgerWriter::LedgerWriter(std::filesystem::path dir, std::string_view name) :
        _dir(std::move(dir)),
        _file(_dir / name)
    {
        std::filesystem::create_directories(_dir / "evidence");
        bool fresh = ! std::filesystem::exists(_file) || std::filesystem::file_size(_file) == 0;
        if (fresh) {
            std::ofstream out(_file, std::ios::binary | std::ios::app);
            if (! out)
                throw Error("cannot write " + _file.string());
            out << ledger_header << '\n';
        }
        else {
            std::ifstream in(_file, std::ios::binary);
            std::string first;
            std::getline(in, first);
            if (first != ledger_header)
                throw Error(_file.string() + " is not a ledger file with the expected columns");
        }
    }

    auto LedgerWriter::store_evidence(std::string_view text, std::string_view extension)
        -> std::pair<std::string, std::string>
    {
        auto sum = sha256_hex(text);
        auto relative = "evidence/" + sum + "." + std::string(extension);
        std::lock_guard lock(_mutex);
        auto path = _dir / relative;
        if (! std::filesystem::exists(path)) {
            std::ofstream out(path, std::ios::binary);
            out << text;
            if (! out)
                throw Error("cannot write " + path.string());
        }
        return {relative, sum};
    }

    auto LedgerWriter::append(const LedgerEntry & e) -> void
    {
        std::ostringstream row;
        auto & c = e.ledger_case;
        row << c.label << '\t' << (c.sub_case.empty() ? "-" : c.sub_case) << '\t' << entry_status_name(e.status) << '\t'
            << (e.rule.empty() ? "-" : e.rule) << '\t' << (e.evidence.empty() ? "-" : e.evidence) << '\t'
            << (e.evidence_sha256.empty() ? "-" : e.evidence_sha256) << '\t' << e.nodes << '\t' << e.elapsed << '\t'
            << expectation_name(c.expected) << '\t' << c.graph_expr << '\t' << c.target << '\n';
        std::lock_guard lock(_mutex);
        std::ofstream out(_file, std::ios::binary | std::ios::app);
        out << row.str();
        out.flush();
        if (! out)
            throw Error("cannot append to " + _file.string());
    }

    auto solve_case(const LedgerCase & c, const Budget & budget) -> std::pair<SolveOutcome, Graph>
    {
        auto g = evaluate(c.graph_expr);
        auto spec = case_constraints(g, c);
        SolverOptions options;
        options.budget = budget;
        options.threads = 1;
        auto out = feasible(g, spec, c.target, options);
        if (out.status == SolveStatus::Feasible || out.status == SolveStatus::Optimal) {
            if (out.value < c.target || out.witness.count() != out.value || ! verify_independent(g, out.witness).independent ||
                first_violated_clause(spec, out.witness))
                throw Error("solver witness for " + c.label + " failed its own check");
        }
        return {std::move(out), std::move(g)};
    }

    namespace
    {
        auto record(const LedgerCase & c, LedgerWriter & writer, const Budget & budget) -> LedgerEntry
        {
            LedgerEntry e;
            e.ledger_case = c;
            if (c.pruned_by) {
                e.status = EntryStatus::PrunedByRule;
                e.rule = *c.pruned_by;
                writer.append(e);
                return e;
            }
            auto [out, g] = solve_case(c, budget);
            e.nodes = out.nodes_explored;
            e.elapsed = out.elapsed.count();
            if (out.status == SolveStatus::Feasible || out.status == SolveStatus::Optimal) {
                e.status = EntryStatus::FeasibleWitness;
                auto cert = make_certificate(c.graph_expr, g, out.witness,
                    "ledger " + c.label + (c.sub_case.empty() ? "" : " " + c.sub_case));
                verify_certificate(cert);
                std::tie(e.evidence, e.evidence_sha256) = writer.store_evidence(format_certificate(cert), "cert");
            }
            else {
                e.status = out.status == SolveStatus::Infeasible ? EntryStatus::InfeasibleProven : EntryStatus::Unresolved;
                std::ostringstream report;
                std::vector<std::pair<std::string, std::string>> extra{
                    {"case", c.label},
                    {"sub_case", c.sub_case},
                    {"graph", c.graph_expr},
                    {"target", std::to_string(c.target)},
                    {"budget_nodes", std::to_string(budget.max_nodes)},
                    {"budget_seconds", std::to_string(budget.max_seconds)},
                };
                auto spec = case_constraints(g, c);
                for (std::size_t i = 0; i < spec.clauses.size(); ++i)
                    extra.emplace_back("clause" + std::to_string(i), spec.clauses[i].name);
                write_solve_report(report, g, out, extra);
                std::tie(e.evidence, e.evidence_sha256) = writer.store_evidence(report.str(), "report");
            }
            writer.append(e);
            return e;
        }
    }

    auto run_ledger(const std::vector<LedgerCase> & cases, LedgerWriter & writer, const LedgerRun & run)
        -> std::vector<LedgerEntry>
    {
        std::vector<LedgerEntry> entries(cases.size());
        std::atomic<std::size_t> next{0};
        std::mutex progress_mutex;
        std::exception_ptr failure;
        auto work = [&] {
            while (true) {
                auto i = next++;
                if (i >= cases.size())
                    return;
                try {
                    entries[i] = record(cases[i], writer, run.budget);
                    if (run.progress) {
                        std::lock_guard lock(progress_mutex);
                        run.progress(entries[i]);
                    }
                }
                catch (...) {
                    std::lock_guard lock(progress_mutex);
                    if (! failure)
                        failure = std::current_exception();
                    next = cases.size();
                }
            }
        };
        int workers = std::max(1, std::min<int>(run.workers, static_cast<int>(cases.size())));
        if (workers == 1)
            work();
        else {
            std::vector<std::jthread> pool;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back(work);
        }
        if (failure)
            std::rethrow_exception(failure);
        return entries;
    }

    auto read_ledger(const std::filesystem::path & file) -> std::vector<std::map<std::string, std::string>>
    {
        std::ifstream in(file, std::ios::binary);
        if (! in)
            throw Error("cannot open " + file.string());
        auto split = [](const std::string & line) {
            std::vector<std::string> fields;
            std::size_t start = 0;
            while (true) {
                auto tab = line.find('\t', start);
                fields.push_back(line.substr(start, tab - start));
                if (tab == std::string::npos)
                    return fields;
                start = tab + 1;
            }
        };
        std::string line;
        std::getline(in, line);
        auto header = split(line);
        std::vector<std::map<std::string, std::string>> rows;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            auto fields = split(line);
            if (fields.size() != header.size())
                throw Error("ledger row with " + std::to_string(fields.size()) + " fields in " + file.string());
            std::map<std::string, std::string> row;
            for (std::size_t i = 0; i < header.size(); ++i)
                row[header[i]] = fields[i];
            rows.push_back(std::move(row));
        }
        return rows;
    }

    auto study_names() -> std::vector<std::string>
    {
        return {"hub-caps", "size-58", "size-57", "triangle", "size-171"};
    }

    auto w5_cube_rules(int total, int rim_cap, int triple_cap) -> PruningRules
    {
        (void) total;
        PruningRules r;
        r.has_hub = true;
        r.rim_count = 5;
        r.rim_cap = rim_cap;
        r.hub_min = 0;
        r.hub_max = rim_cap;
        r.triple_cap = triple_cap;
        r.distinct_maxima = true;
        r.hub_total_caps = {{11, false, 54}, {10, false, 55}, {7, true, 57}};
        r.hub_rim_caps = {{9, 10, 57}};
        return r;
    }

    auto triangle_triples(int total) -> std::vector<std::vector<int>>
    {
        return partitions_with_cap(total, 3, 58);
    }

    namespace
    {
        const std::string cube = "W5^3";
        const std::string cube_k3 = "W5^3xK3";

        auto wheel_value(int j) -> AtomVertex
        {
            return j < 0 ? AtomVertex::hub() : AtomVertex::indexed(j);
        }

        /// |S_{i,j}|: K3 coordinate i, wheel layer j (-1 for the hub).
        auto triangle_slice(int i, int j, Relation rel, int count) -> SliceCount
        {
            return {{{2, wheel_value(j)}, {3, AtomVertex::indexed(i)}}, rel, count};
        }

        auto triangle_layer(int i, int count) -> SliceCount
        {
            return {{{3, AtomVertex::indexed(i)}}, Relation::Eq, count};
        }

        auto profile_slices(int i, const std::vector<int> & profile) -> std::vector<SliceCount>
        {
            std::vector<SliceCount> r;
            for (std::size_t j = 0; j < profile.size(); ++j)
                r.push_back(triangle_slice(i, static_cast<int>(j) - 1, Relation::Eq, profile[j]));
            return r;
        }

        auto join(const std::vector<int> & v) -> std::string
        {
            return LayerVector{v}.to_string();
        }

        auto cube_study(int total, PruningRules rules, const std::vector<LayerVector> & feasible_vectors)
            -> std::vector<LedgerCase>
        {
            std::set<LayerVector> feasible_classes;
            for (auto & v : feasible_vectors)
                feasible_classes.insert(canonical_rim(v));
            auto e = enumerate_cases(total, rules);
            std::vector<LedgerCase> cases;
            auto base = [&](const LayerVector & v) {
                LedgerCase c;
                c.label = v.to_string();
                c.graph_expr = cube;
                c.layers = v;
                c.layer_coord = 2;
                c.target = total;
                return c;
            };
            for (auto & v : e.cases) {
                auto c = base(v);
                c.expected = feasible_classes.contains(v) ? Expectation::Feasible : Expectation::Infeasible;
                cases.push_back(std::move(c));
            }
            for (auto & p : e.pruned) {
                auto c = base(p.vector);
                c.expected = Expectation::Infeasible;
                c.pruned_by = p.rule;
                cases.push_back(std::move(c));
            }
            return cases;
        }
    }

    auto study_cases(std::string_view name, int rim_cap, int triple_cap) -> std::vector<LedgerCase>
    {
        std::vector<LedgerCase> cases;
        if (name == "hub-caps") {
            auto hub_case = [&](std::string label, LayerVector layers, std::vector<SliceCount> extra, int target) {
                LedgerCase c;
                c.label = std::move(label);
                c.graph_expr = cube;
                c.layers = std::move(layers);
                c.layer_coord = 2;
                c.extra = std::move(extra);
                c.target = target;
                c.expected = Expectation::Infeasible;
                cases.push_back(std::move(c));
            };
            hub_case("hub=11", LayerVector::parse("11,-,-,-,-,-"), {}, 55);
            hub_case("hub=10", LayerVector::parse("10,-,-,-,-,-"), {}, 56);
            hub_case("hub=9,rim0=10", LayerVector::parse("9,10,-,-,-,-"), {}, 58);
            hub_case("hub<=7", {}, {{{{2, AtomVertex::hub()}}, Relation::Le, 7}}, 58);
            return cases;
        }
        if (name == "size-58")
            return cube_study(58, w5_cube_rules(58, rim_cap, triple_cap),
                {LayerVector::parse("9,11,9,11,9,9"), LayerVector::parse("8,11,9,10,10,10")});
        if (name == "size-57") {
            auto rules = w5_cube_rules(57, rim_cap, triple_cap);
            rules.hub_min = rules.hub_max = 9;
            return cube_study(57, rules,
                {LayerVector::parse("9,11,8,11,9,9"), LayerVector::parse("9,11,9,11,9,8"),
                    LayerVector::parse("9,11,9,10,9,9"), LayerVector::parse("9,9,10,9,10,10")});
        }
        if (name == "triangle") {
            auto add = [&](std::vector<int> s, std::string sub, std::vector<SliceCount> extra) {
                LedgerCase c;
                c.label = "s=" + join(s);
                c.sub_case = std::move(sub);
                c.graph_expr = cube_k3;
                c.target = s[0] + s[1] + s[2];
                for (int i = 0; i < 3; ++i)
                    c.extra.push_back(triangle_layer(i, s[i]));
                c.extra.insert(c.extra.end(), extra.begin(), extra.end());
                c.expected = Expectation::Infeasible;
                cases.push_back(std::move(c));
            };
            std::vector<int> a{9, 11, 9, 11, 9, 9}, b{8, 11, 9, 10, 10, 10}, a1{9, 9, 11, 9, 11, 9};
            for (auto s : {std::vector<int>{58, 56, 56}, std::vector<int>{58, 57, 55}})
                for (auto & p : {a, b})
                    add(s, "S0=" + join(p), profile_slices(0, p));
            for (auto hubs : {std::vector<int>{9, 9, 9}, std::vector<int>{9, 9, 8}})
                for (auto p : {std::vector<int>{9, 11, 8, 11, 9, 9}, std::vector<int>{9, 11, 9, 11, 9, 8},
                         std::vector<int>{9, 11, 9, 10, 9, 9}, std::vector<int>{9, 9, 10, 9, 10, 10}}) {
                    auto extra = profile_slices(0, p);
                    extra.push_back(triangle_slice(1, -1, Relation::Eq, hubs[1]));
                    extra.push_back(triangle_slice(2, -1, Relation::Eq, hubs[2]));
                    add({57, 57, 57}, "hubs=" + join(hubs) + " S0=" + join(p), extra);
                }
            {
                auto extra = profile_slices(0, a);
                auto more = profile_slices(1, a1);
                extra.insert(extra.end(), more.begin(), more.end());
                auto with_hub = [&](int h) {
                    auto x = extra;
                    x.push_back(triangle_slice(2, -1, Relation::Eq, h));
                    return x;
                };
                add({58, 58, 54}, "hubs=(9,9,11) S0=" + join(a) + " S1=" + join(a1), with_hub(11));
                auto x = profile_slices(1, b);
                x.push_back(triangle_slice(0, -1, Relation::Eq, 9));
                x.push_back(triangle_slice(2, -1, Relation::Eq, 10));
                add({58, 58, 54}, "hubs=(9,8,10) S1=" + join(b), x);
                add({58, 58, 54}, "hubs=(9,9,9) S0=" + join(a) + " S1=" + join(a1), with_hub(9));
            }
            return cases;
        }
        if (name == "size-171") {
            for (auto & s : triangle_triples(171)) {
                LedgerCase c;
                c.label = "s=" + join(s);
                c.graph_expr = cube_k3;
                c.target = 171;
                for (int i = 0; i < 3; ++i)
                    c.extra.push_back(triangle_layer(i, s[i]));
                c.expected = Expectation::Infeasible;
                cases.push_back(std::move(c));
            }
            return cases;
        }
        throw InvalidArgument("unknown study '" + std::string(name) + "'");
    }
}
