#include <oddwheel/errors.hh>
#include <oddwheel/lp.hh>

#include <istream>
#include <ostream>
#include <sstream>

namespace oddwheel
{
    auto LinearProgram::add_variable(std::string name, bool is_free) -> int
    {
        variables.push_back(std::move(name));
        free.push_back(is_free);
        objective.emplace_back(0);
        for (auto & c : constraints)
            c.coeffs.emplace_back(0);
        return static_cast<int>(variables.size()) - 1;
    }

    auto lp_status_name(LpStatus s) -> std::string
    {
        switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        }
        return "?";
    }

    namespace
    {
        auto check_shape(const LinearProgram & lp) -> void
        {
            std::size_t n = lp.variables.size();
            if (lp.free.size() != n || lp.objective.size() != n)
                throw InvalidArgument("linear program: variable data of inconsistent length");
            for (auto & c : lp.constraints)
                if (c.coeffs.size() != n)
                    throw InvalidArgument("linear program: row '" + c.name + "' has the wrong width");
        }

        /// Minimises obj over {x >= 0 : A x = b} with b >= 0, starting from
        /// the basis given by basic columns. Returns false when unbounded.
        class Tableau
        {
        public:
            std::vector<std::vector<Rational>> rows;
            std::vector<Rational> rhs;
            std::vector<int> basis;
            std::vector<Rational> reduced;
            Rational value;
            std::vector<bool> allowed;

            auto columns() const -> int { return static_cast<int>(allowed.size()); }

            auto pivot(int r, int c) -> void
            {
                Rational p = rows[r][c];
                for (auto & x : rows[r])
                    x /= p;
                rhs[r] /= p;
                for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                    if (i == r || rows[i][c].is_zero())
                        continue;
                    Rational f = rows[i][c];
                    for (int j = 0; j < columns(); ++j)
                        if (! rows[r][j].is_zero())
                            rows[i][j] -= f * rows[r][j];
                    rhs[i] -= f * rhs[r];
                }
                if (! reduced[c].is_zero()) {
                    Rational f = reduced[c];
                    for (int j = 0; j < columns(); ++j)
                        if (! rows[r][j].is_zero())
                            reduced[j] -= f * rows[r][j];
                    value -= f * rhs[r];
                }
                basis[r] = c;
            }

            /// Installs a cost vector and prices out the basic columns.
            auto set_cost(const std::vector<Rational> & cost) -> void
            {
                reduced = cost;
                value = 0;
                for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                    const Rational & cb = cost[basis[i]];
                    if (cb.is_zero())
                        continue;
                    for (int j = 0; j < columns(); ++j)
                        if (! rows[i][j].is_zero())
                            reduced[j] -= cb * rows[i][j];
                    value -= cb * rhs[i];
                }
            }

            /// Bland's rule: lowest-index improving column, then the
            /// lowest-index basic variable among minimum ratios.
            auto optimise() -> bool
            {
                while (true) {
                    int enter = -1;
                    for (int j = 0; j < columns(); ++j)
                        if (allowed[j] && reduced[j].sign() < 0) {
                            enter = j;
                            break;
                        }
                    if (enter < 0)
                        return true;
                    int leave = -1;
                    Rational best;
                    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                        if (rows[i][enter].sign() <= 0)
                            continue;
                        Rational ratio = rhs[i] / rows[i][enter];
                        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                            leave = i;
                            best = ratio;
                        }
                    }
                    if (leave < 0)
                        return false;
                    pivot(leave, enter);
                }
            }
        };
    }

    auto activity(const LinearConstraint & c, const std::vector<Rational> & x) -> Rational
    {
        Rational s;
        for (std::size_t j = 0; j < c.coeffs.size(); ++j)
            if (! c.coeffs[j].is_zero())
                s += c.coeffs[j] * x[j];
        return s;
    }

    auto first_violation(const LinearProgram & lp, const std::vector<Rational> & x) -> std::optional<int>
    {
        check_shape(lp);
        if (x.size() != lp.variables.size())
            throw InvalidArgument("solution has the wrong width");
        for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
            auto & c = lp.constraints[i];
            auto a = activity(c, x);
            bool ok = c.sense == Sense::Le ? a <= c.rhs : c.sense == Sense::Ge ? a >= c.rhs : a == c.rhs;
            if (! ok)
                return static_cast<int>(i);
        }
        for (std::size_t j = 0; j < x.size(); ++j)
            if (! lp.free[j] && x[j].sign() < 0)
                return -1 - static_cast<int>(j);
        return std::nullopt;
    }

    auto solve_lp(const LinearProgram & lp) -> LpSolution
    {
        check_shape(lp);
        int n = static_cast<int>(lp.variables.size());
        int m = static_cast<int>(lp.constraints.size());

        // Column layout: structural (free variables split), slacks, artificials.
        std::vector<int> pos_col(n), neg_col(n, -1);
        int cols = 0;
        for (int j = 0; j < n; ++j) {
            pos_col[j] = cols++;
            if (lp.free[j])
                neg_col[j] = cols++;
        }
        int structural = cols;

        std::vector<std::vector<Rational>> a(m);
        std::vector<Rational> b(m);
        std::vector<Sense> sense(m);
        for (int i = 0; i < m; ++i) {
            auto & c = lp.constraints[i];
            bool flip = c.rhs.sign() < 0;
            a[i].assign(structural, Rational());
            for (int j = 0; j < n; ++j) {
                Rational v = flip ? -c.coeffs[j] : c.coeffs[j];
                a[i][pos_col[j]] = v;
                if (neg_col[j] >= 0)
                    a[i][neg_col[j]] = -v;
            }
            b[i] = flip ? -c.rhs : c.rhs;
            sense[i] = c.sense;
            if (flip && c.sense != Sense::Eq)
                sense[i] = c.sense == Sense::Le ? Sense::Ge : Sense::Le;
        }

        std::vector<int> slack(m, -1), artificial(m, -1);
        for (int i = 0; i < m; ++i)
            if (sense[i] != Sense::Eq)
                slack[i] = cols++;
        int first_artificial = cols;
        for (int i = 0; i < m; ++i)
            if (sense[i] != Sense::Le)
                artificial[i] = cols++;

        Tableau t;
        t.rows.assign(m, std::vector<Rational>(cols));
        t.rhs = b;
        t.basis.assign(m, -1);
        t.allowed.assign(cols, true);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < structural; ++j)
                t.rows[i][j] = a[i][j];
            if (slack[i] >= 0)
                t.rows[i][slack[i]] = sense[i] == Sense::Le ? 1 : -1;
            if (artificial[i] >= 0) {
                t.rows[i][artificial[i]] = 1;
                t.basis[i] = artificial[i];
            }
            else
                t.basis[i] = slack[i];
        }

        LpSolution out;
        std::vector<Rational> phase1(cols);
        for (int j = first_artificial; j < cols; ++j)
            phase1[j] = 1;
        t.set_cost(phase1);
        t.optimise();
        if (t.value.sign() != 0) {
            out.status = LpStatus::Infeasible;
            return out;
        }

        // Drive zero-level artificials out; drop rows that are redundant.
        for (int i = 0; i < static_cast<int>(t.rows.size());) {
            if (t.basis[i] < first_artificial) {
                ++i;
                continue;
            }
            int c = -1;
            for (int j = 0; j < first_artificial; ++j)
                if (! t.rows[i][j].is_zero()) {
                    c = j;
                    break;
                }
            if (c >= 0) {
                t.pivot(i, c);
                ++i;
            }
            else {
                t.rows.erase(t.rows.begin() + i);
                t.rhs.erase(t.rhs.begin() + i);
                t.basis.erase(t.basis.begin() + i);
            }
        }
        for (int j = first_artificial; j < cols; ++j)
            t.allowed[j] = false;

        std::vector<Rational> cost(cols);
        for (int j = 0; j < n; ++j) {
            Rational c = lp.minimize ? lp.objective[j] : -lp.objective[j];
            cost[pos_col[j]] = c;
            if (neg_col[j] >= 0)
                cost[neg_col[j]] = -c;
        }
        t.set_cost(cost);
        if (! t.optimise()) {
            out.status = LpStatus::Unbounded;
            return out;
        }

        std::vector<Rational> column_value(cols);
        for (int i = 0; i < static_cast<int>(t.rows.size()); ++i)
            column_value[t.basis[i]] = t.rhs[i];
        out.values.resize(n);
        for (int j = 0; j < n; ++j) {
            out.values[j] = column_value[pos_col[j]];
            if (neg_col[j] >= 0)
                out.values[j] -= column_value[neg_col[j]];
        }
        out.status = LpStatus::Optimal;
        for (int j = 0; j < n; ++j)
            out.objective += lp.objective[j] * out.values[j];
        for (int i = 0; i < m; ++i)
            if (activity(lp.constraints[i], out.values) == lp.constraints[i].rhs)
                out.tight.push_back(i);
        return out;
    }

    auto write_lp(std::ostream & out, const LinearProgram & lp) -> void
    {
        check_shape(lp);
        for (std::size_t j = 0; j < lp.variables.size(); ++j)
            out << "var " << lp.variables[j] << (lp.free[j] ? " free" : "") << '\n';
        out << (lp.minimize ? "min" : "max");
        for (auto & c : lp.objective)
            out << ' ' << c;
        out << '\n';
        for (auto & c : lp.constraints) {
            out << "row " << c.name;
            for (auto & x : c.coeffs)
                out << ' ' << x;
            out << ' ' << (c.sense == Sense::Le ? "<=" : c.sense == Sense::Ge ? ">=" : "=") << ' ' << c.rhs << '\n';
        }
    }

    auto read_lp(std::istream & in) -> LinearProgram
    {
        LinearProgram lp;
        std::string line;
        std::size_t number = 0;
        bool have_objective = false;
        auto fail = [&](const std::string & what) { throw ParseError(what + " on line " + std::to_string(number), number); };
        while (std::getline(in, line)) {
            ++number;
            auto hash = line.find('#');
            if (hash != std::string::npos)
                line.resize(hash);
            std::istringstream s(line);
            std::string head;
            if (! (s >> head))
                continue;
            std::vector<std::string> rest;
            for (std::string tok; s >> tok;)
                rest.push_back(tok);
            if (head == "var") {
                if (have_objective || ! lp.constraints.empty())
                    fail("variables must come first");
                if (rest.empty() || rest.size() > 2 || (rest.size() == 2 && rest[1] != "free"))
                    fail("bad var line");
                lp.add_variable(rest[0], rest.size() == 2);
            }
            else if (head == "min" || head == "max") {
                if (rest.size() != lp.variables.size())
                    fail("objective has the wrong width");
                lp.minimize = head == "min";
                for (std::size_t j = 0; j < rest.size(); ++j)
                    lp.objective[j] = Rational::parse(rest[j]);
                have_objective = true;
            }
            else if (head == "row") {
                if (rest.size() != lp.variables.size() + 3)
                    fail("row has the wrong width");
                LinearConstraint c;
                c.name = rest[0];
                for (std::size_t j = 0; j < lp.variables.size(); ++j)
                    c.coeffs.push_back(Rational::parse(rest[1 + j]));
                auto & op = rest[rest.size() - 2];
                if (op == "<=")
                    c.sense = Sense::Le;
                else if (op == ">=")
                    c.sense = Sense::Ge;
                else if (op == "=")
                    c.sense = Sense::Eq;
                else
                    fail("bad relation '" + op + "'");
                c.rhs = Rational::parse(rest.back());
                lp.constraints.push_back(std::move(c));
            }
            else
                fail("unknown directive '" + head + "'");
        }
        return lp;
    }

    auto reduced_lp(const std::vector<int> & orbit_sizes, const std::vector<Profile> & profiles) -> LinearProgram
    {
        if (orbit_sizes.empty() || orbit_sizes.size() > 26)
            throw InvalidArgument("reduced_lp needs between 1 and 26 orbits");
        LinearProgram lp;
        int z = lp.add_variable("z", true);
        lp.objective[z] = 1;
        for (std::size_t i = 0; i < orbit_sizes.size(); ++i)
            lp.add_variable(std::string(1, static_cast<char>('a' + i)));

        for (auto & p : profiles) {
            if (p.p.size() != orbit_sizes.size())
                throw InvalidArgument("profile " + p.to_string() + " does not match the orbit count");
            LinearConstraint c;
            c.name = p.to_string();
            c.coeffs.assign(lp.variables.size(), Rational());
            c.coeffs[z] = -1;
            for (std::size_t i = 0; i < p.p.size(); ++i)
                c.coeffs[1 + i] = p.p[i];
            c.sense = Sense::Le;
            c.rhs = 0;
            lp.constraints.push_back(std::move(c));
        }
        LinearConstraint norm;
        norm.name = "normalise";
        norm.coeffs.assign(lp.variables.size(), Rational());
        for (std::size_t i = 0; i < orbit_sizes.size(); ++i)
            norm.coeffs[1 + i] = orbit_sizes[i];
        norm.sense = Sense::Eq;
        norm.rhs = 1;
        lp.constraints.push_back(std::move(norm));
        return lp;
    }
}
