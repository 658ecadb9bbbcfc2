// Scenario runners, configuration, reports and the result cache.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smin/exact.hpp"
#include "smin/geometry.hpp"

namespace smin {

extern const char* const kLibraryVersion;

struct ScenarioConfig {
    std::string scenario = "density_slope";
    int degree = 3;
    std::vector<Rat> p;
    double eps = 3;
    double x_start = 256, x_stop = 262144, x_factor = 2;
    std::string dedup;  // empty: canonical for cubics, multiplicity otherwise
    std::uint64_t seed = 1;
    std::string out, cache_dir;
    double budget_points = 1e9;
    unsigned threads = 0;
    std::string family;  // family runs
    double height = 20;
    long samples = 2000;
    std::string filter;  // scatter: "", "c3", "s3max"
    double X = 1e5;      // single-X runs
    std::vector<long> primes{2, 3, 5, 7, 11};
    std::string suite;   // identity suites
    long trials = 100;
};

ScenarioConfig config_from_json_text(const std::string& text, const ScenarioConfig& base = {});
ScenarioConfig load_config(const std::string& path, const ScenarioConfig& base = {});
std::string config_to_json_text(const ScenarioConfig& cfg);

std::vector<double> x_grid(const ScenarioConfig& cfg);

struct SlopeFit {
    double slope = 0, intercept = 0, residual = 0;  // residual standard error of ln(count+1) on ln X
};
SlopeFit fit_slope(const std::vector<double>& xs, const std::vector<double>& counts);

struct RunReport {
    std::string scenario;
    std::string config_json;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::optional<SlopeFit> fit;
    std::optional<double> target;
    std::map<std::string, double> metrics;
    std::vector<std::string> notes;
    bool pass = true;
    double wall_seconds = 0;

    std::string to_csv() const;
    std::string to_json() const;
};

RunReport run_density_slope(const ScenarioConfig& cfg);
RunReport run_scatter(const ScenarioConfig& cfg);
RunReport run_sieve(const ScenarioConfig& cfg);
RunReport run_family(const ScenarioConfig& cfg);
RunReport run_binthm(const ScenarioConfig& cfg);
RunReport run_davenport(const ScenarioConfig& cfg);
RunReport run_polytope_audit(const ScenarioConfig& cfg);
// fess, disc, df, minkowski, bounds, quartic-xcheck
RunReport run_identity_suite(const ScenarioConfig& cfg);
RunReport run_scenario(const ScenarioConfig& cfg);

// Distinct GL2(Z)-classes (twisted action) of cubic forms in the box with lo <= |disc| <= hi.
struct CubicClasses {
    long long raw = 0;                           // forms in the box with disc in range
    std::vector<std::array<long long, 4>> reps;  // canonical forms, sorted
};
CubicClasses cubic_classes(const BoxSpec& box, long long lo, long long hi, double budget = 1e10, unsigned threads = 0);

// Append-only line-delimited store; entries carry a checksum and are ignored when it does not match.
class ResultCache {
public:
    explicit ResultCache(std::string dir);
    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& value) const;
    bool enabled() const { return !path_.empty(); }

private:
    std::string path_;
};

std::string cache_key(const std::string& kind, const std::vector<Rat>& p, double X, const std::string& predicate);

}  // namespace smin
