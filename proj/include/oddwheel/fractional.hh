#ifndef ODDWHEEL_FRACTIONAL_HH
#define ODDWHEEL_FRACTIONAL_HH

#include <oddwheel/lp.hh>
#include <oddwheel/orbits.hh>
#include <oddwheel/rational.hh>

#include <string>

namespace oddwheel
{
    enum class ProfileRoute
    {
        Slicing,
        Enumeration
    };

    auto parse_route(std::string_view text) -> ProfileRoute;

    struct ChiFResult
    {
        /// False when profile generation hit its budget; the numbers below
        /// are then meaningless.
        bool complete = false;
        Rational chi_f;
        Rational z;
        std::vector<int> orbit_sizes;
        ProfileSet profiles;
        LinearProgram lp;
        LpSolution solution;

        /// Profiles whose constraint is tight at the optimum.
        auto tight_profiles() const -> std::vector<Profile>;
    };

    /// Orbits, maximal profiles, reduced LP, exact solve; chi_f = 1/z.
    auto chi_f_wheel_square(int t, ProfileRoute route, const SolverOptions & options = {}) -> ChiFResult;

    /// (6t^2 + 7t + 3) / (2t^2 + t + 1).
    auto conjectured_chi_f_closed_form(int t) -> Rational;
}

#endif
