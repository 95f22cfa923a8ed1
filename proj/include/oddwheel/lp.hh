#ifndef ODDWHEEL_LP_HH
#define ODDWHEEL_LP_HH

#include <oddwheel/orbits.hh>
#include <oddwheel/rational.hh>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace oddwheel
{
    enum class Sense
    {
        Le,
        Ge,
        Eq
    };

    struct LinearConstraint
    {
        std::string name;
        std::vector<Rational> coeffs;
        Sense sense = Sense::Le;
        Rational rhs;
    };

    /// Variables are non-negative unless marked free.
    struct LinearProgram
    {
        std::vector<std::string> variables;
        std::vector<bool> free;
        std::vector<Rational> objective;
        bool minimize = true;
        std::vector<LinearConstraint> constraints;

        auto add_variable(std::string name, bool is_free = false) -> int;
    };

    enum class LpStatus
    {
        Optimal,
        Infeasible,
        Unbounded
    };

    auto lp_status_name(LpStatus s) -> std::string;

    struct LpSolution
    {
        LpStatus status = LpStatus::Infeasible;
        Rational objective;
        std::vector<Rational> values;
        /// Indices of constraints holding with equality at the solution.
        std::vector<int> tight;
    };

    /// Dense two-phase simplex over exact rationals with Bland's rule.
    auto solve_lp(const LinearProgram & lp) -> LpSolution;

    /// Index of the first constraint (or -1 - j for a sign bound on variable
    /// j) violated by x; nullopt when x is feasible.
    auto first_violation(const LinearProgram & lp, const std::vector<Rational> & x) -> std::optional<int>;
    auto activity(const LinearConstraint & c, const std::vector<Rational> & x) -> Rational;

    /// Plain-text form: `var <name> [free]`, `min|max <coeffs>`, and
    /// `row <name> <coeffs> <=|>=|= <rhs>` lines; `#` starts a comment.
    auto write_lp(std::ostream & out, const LinearProgram & lp) -> void;
    auto read_lp(std::istream & in) -> LinearProgram;

    /// min z subject to sum_i p_i w_i <= z for each profile and
    /// sum_i |T_i| w_i = 1; z free, orbit weights named a, b, c, ...
    auto reduced_lp(const std::vector<int> & orbit_sizes, const std::vector<Profile> & profiles) -> LinearProgram;
}

#endif
