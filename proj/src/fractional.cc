#include <oddwheel/errors.hh>
#include <oddwheel/fractional.hh>

namespace oddwheel
{
    auto parse_route(std::string_view text) -> ProfileRoute
    {
        if (text == "slicing")
            return ProfileRoute::Slicing;
        if (text == "enumeration")
            return ProfileRoute::Enumeration;
        throw InvalidArgument("unknown profile route '" + std::string(text) + "'");
    }

    auto ChiFResult::tight_profiles() const -> std::vector<Profile>
    {
        std::vector<Profile> r;
        for (int i : solution.tight)
            if (i < static_cast<int>(profiles.profiles.size()))
                r.push_back(profiles.profiles[i]);
        return r;
    }

    auto chi_f_wheel_square(int t, ProfileRoute route, const SolverOptions & options) -> ChiFResult
    {
        if (t < 2)
            throw InvalidArgument("chi_f_wheel_square needs t >= 2");
        ChiFResult r;
        auto orbits = wheel_square_orbits(t);
        r.orbit_sizes = orbits.sizes();
        r.profiles = route == ProfileRoute::Slicing ? maximal_profiles_by_slicing(t, options)
                                                    : maximal_profiles_by_enumeration(orbits, options.budget);
        if (! r.profiles.complete)
            return r;

        r.lp = reduced_lp(r.orbit_sizes, r.profiles.profiles);
        r.solution = solve_lp(r.lp);
        if (r.solution.status != LpStatus::Optimal)
            throw Error("reduced LP for t=" + std::to_string(t) + " is " + lp_status_name(r.solution.status));
        r.z = r.solution.objective;
        r.chi_f = r.z.reciprocal();
        r.complete = true;
        return r;
    }

    auto conjectured_chi_f_closed_form(int t) -> Rational
    {
        if (t < 2)
            throw InvalidArgument("closed form is stated for t >= 2");
        BigInt T = t;
        return Rational(6 * T * T + 7 * T + 3, 2 * T * T + T + 1);
    }
}
