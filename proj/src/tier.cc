#include <oddwheel/errors.hh>
#include <oddwheel/tier.hh>

#include <cstdlib>

namespace oddwheel
{
    auto tier_name(Tier t) -> std::string
    {
        return t == Tier::Quick ? "quick" : "long";
    }

    auto parse_tier(std::string_view text) -> Tier
    {
        if (text == "quick")
            return Tier::Quick;
        if (text == "long")
            return Tier::Long;
        throw InvalidArgument("unknown tier '" + std::string(text) + "'");
    }

    auto tier_from_environment() -> Tier
    {
        const char * value = std::getenv("ODDWHEEL_TIER");
        if (! value)
            return Tier::Quick;
        try {
            return parse_tier(value);
        }
        catch (const InvalidArgument &) {
            return Tier::Quick;
        }
    }

    auto ledger_budget(Tier t) -> Budget
    {
        Budget b;
        if (t == Tier::Quick)
            b.max_nodes = 1'000'000;
        return b;
    }

    auto table_budget(Tier t) -> Budget
    {
        Budget b;
        if (t == Tier::Quick)
            b.max_nodes = 1'000'000;
        else
            b.max_seconds = 3600;
        return b;
    }
}
