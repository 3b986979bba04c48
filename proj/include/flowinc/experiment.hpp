#pragma once

#include "flowinc/bounds.hpp"
#include "flowinc/families.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flowinc {

/// A requested size beyond what the counters are built for.
class ScaleCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& experiment_subcommands() {
    static const std::vector<std::string> names{"gen",       "incidences", "joints", "tangent-scan", "n7-grid",
                                                "square-sieve", "partition", "bounds", "lift-demo",    "fit"};
    return names;
}

struct ExperimentConfig {
    std::string subcommand;
    std::vector<FamilySpec> families;
    std::vector<std::uint64_t> scales;  // N or k values, strictly increasing
    std::string out;                    // path stem for .csv/.json; empty writes CSV to stdout
    unsigned precision = 20;
    unsigned workers = 1;
    std::uint64_t seed = 1;
    std::map<std::string, std::string> options;  // subcommand-specific keys

    /// Throws ValidationError naming the offending field.
    void validate() const;
};

/// "a..b", "a..b:step" or "a,b,c".
std::vector<std::uint64_t> parse_range(std::string_view text);

/// key=value lines: subcommand, n-range, out, precision, workers, seed, family (path, repeatable);
/// any other key lands in options.
ExperimentConfig parse_config(std::string_view text);

struct Report {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    nlohmann::json summary = nlohmann::json::object();

    std::string to_csv() const;
    nlohmann::json to_json() const;
};

Report run_experiment(const ExperimentConfig& cfg);

/// Writes <out>.csv and <out>.json, each through a temporary file renamed into place.
void write_report(const Report& r, const std::string& out);

struct ExponentFit {
    Decimal50 slope;
    Decimal50 intercept;
    Decimal50 residual;  // sum of squared residuals in log space
};

/// Least squares of log y against log x; needs 3 or more points, all coordinates positive.
ExponentFit fit_exponent(const std::vector<std::pair<Decimal50, Decimal50>>& series);

/// Largest N accepted by tangent-scan, n7-grid and square-sieve.
inline constexpr std::uint64_t kMaxTangentN = 64;
inline constexpr std::uint64_t kMaxGridN = 14;
inline constexpr std::uint64_t kMaxSieveN = 100;
/// Largest #L1 * #L2 for pairwise curve intersection.
inline constexpr std::uint64_t kMaxPairs = 20'000'000;

}  // namespace flowinc
