#ifndef ODDWHEEL_TIER_HH
#define ODDWHEEL_TIER_HH

#include <oddwheel/mis.hh>

#include <string>
#include <string_view>

namespace oddwheel
{
    enum class Tier
    {
        Quick,
        Long
    };

    auto tier_name(Tier t) -> std::string;
    auto parse_tier(std::string_view text) -> Tier;

    /// ODDWHEEL_TIER if set and valid, otherwise quick.
    auto tier_from_environment() -> Tier;

    /// Per-case budget for ledger runs: 10^6 nodes when quick, none when long.
    auto ledger_budget(Tier t) -> Budget;

    /// Per-cell budget for table runs: 10^6 nodes when quick, one hour when
    /// long.
    auto table_budget(Tier t) -> Budget;
}

#endif
