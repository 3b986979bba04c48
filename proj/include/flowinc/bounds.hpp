#pragma once

#include "flowinc/incidence.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace flowinc {

struct BoundCounts {
    std::uint64_t L1 = 0, L2 = 0;
    std::optional<std::uint64_t> incidences;  // #I
    std::optional<std::uint64_t> joints;      // #J
    unsigned n = 3;
};

struct BoundTerm {
    std::string name;
    std::string formula;
    Decimal50 rhs;
    std::optional<Decimal50> lhs;
    std::optional<Decimal50> ratio;  // lhs / rhs
    std::string flag;                // nonempty when the bound does not apply
};

struct BoundReport {
    BoundCounts counts;
    std::vector<BoundTerm> terms;
    unsigned digits = 50;

    const BoundTerm& term(const std::string& name) const;
    nlohmann::json to_json() const;
    std::string table() const;
};

/// x^(p/q) to 50 digits; exact integer powers stay exact.
Decimal50 rational_power(const Decimal50& x, const Rational& e);
std::string decimal_string(const Decimal50& x, unsigned digits);

/// joints:     #L1^{n/(n-1)}
/// multijoint: #L1 + #L2 + (#L1 #L2)^{(n-1)/(2n-3)}, flagged for n < 3
/// simple:     min{#L1 + #L1^{1/(n-1)} #L2, #L2 + #L1 #L2^{1/(n-1)}}
BoundReport bound_report(const BoundCounts& counts, unsigned digits = 50);

}  // namespace flowinc
