#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "smin/experiments.hpp"

namespace smin {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> point_strings(const std::vector<Rat>& p) {
    std::vector<std::string> out;
    for (auto& v : p) out.push_back(v.get_str());
    return out;
}

std::vector<Rat> point_from_json(const json& j) {
    if (j.is_string()) return parse_point(j.get<std::string>());
    std::vector<Rat> p;
    for (auto& v : j) p.push_back(v.is_string() ? parse_rat(v.get<std::string>()) : parse_rat(v.dump()));
    return p;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
    return h;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

}  // namespace

ScenarioConfig config_from_json_text(const std::string& text, const ScenarioConfig& base) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "config must be an object");
    ScenarioConfig c = base;
    try {
        for (auto& [k, v] : j.items()) {
            if (k == "scenario") c.scenario = v.get<std::string>();
            else if (k == "degree") c.degree = v.get<int>();
            else if (k == "p") c.p = point_from_json(v);
            else if (k == "eps") c.eps = v.get<double>();
            else if (k == "x_start") c.x_start = v.get<double>();
            else if (k == "x_stop") c.x_stop = v.get<double>();
            else if (k == "x_factor") c.x_factor = v.get<double>();
            else if (k == "dedup") c.dedup = v.get<std::string>();
            else if (k == "seed") c.seed = v.get<std::uint64_t>();
            else if (k == "out") c.out = v.get<std::string>();
            else if (k == "cache_dir") c.cache_dir = v.get<std::string>();
            else if (k == "budget_points") c.budget_points = v.get<double>();
            else if (k == "threads") c.threads = v.get<unsigned>();
            else if (k == "family") c.family = v.get<std::string>();
            else if (k == "height") c.height = v.get<double>();
            else if (k == "samples") c.samples = v.get<long>();
            else if (k == "filter") c.filter = v.get<std::string>();
            else if (k == "X") c.X = v.get<double>();
            else if (k == "primes") c.primes = v.get<std::vector<long>>();
            else if (k == "suite") c.suite = v.get<std::string>();
            else if (k == "trials") c.trials = v.get<long>();
            else throw Error(ErrorKind::ParseError, "unknown config key '" + k + "'");
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("config: ") + e.what());
    }
    return c;
}

ScenarioConfig load_config(const std::string& path, const ScenarioConfig& base) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot read config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str(), base);
}

std::string config_to_json_text(const ScenarioConfig& c) {
    json j;
    j["scenario"] = c.scenario;
    j["degree"] = c.degree;
    j["p"] = point_strings(c.p);
    j["eps"] = c.eps;
    j["x_start"] = c.x_start;
    j["x_stop"] = c.x_stop;
    j["x_factor"] = c.x_factor;
    j["dedup"] = c.dedup;
    j["seed"] = c.seed;
    j["budget_points"] = c.budget_points;
    j["family"] = c.family;
    j["height"] = c.height;
    j["samples"] = c.samples;
    j["filter"] = c.filter;
    j["X"] = c.X;
    j["primes"] = c.primes;
    j["suite"] = c.suite;
    j["trials"] = c.trials;
    return j.dump();
}

std::string RunReport::to_json() const {
    json j;
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["header"] = {{"timestamp", stamp}, {"wall_seconds", wall_seconds}};
    j["version"] = kLibraryVersion;
    j["scenario"] = scenario;
    j["config"] = config_json.empty() ? json::object() : json::parse(config_json);
    j["pass"] = pass;
    if (fit) j["fit"] = {{"slope", fit->slope}, {"intercept", fit->intercept}, {"residual", fit->residual}};
    if (target) j["target"] = *target;
    j["metrics"] = json::object();
    for (auto& [k, v] : metrics) j["metrics"][k] = v;
    j["notes"] = notes;
    j["columns"] = columns;
    j["rows"] = rows;
    return j.dump(2);
}

ResultCache::ResultCache(std::string dir) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    path_ = (std::filesystem::path(dir) / "results.jsonl").string();
}

std::optional<std::string> ResultCache::get(const std::string& key) const {
    if (path_.empty()) return std::nullopt;
    std::ifstream in(path_);
    std::string line;
    std::optional<std::string> hit;
    while (std::getline(in, line)) {
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("value") || !j.contains("checksum"))
            continue;
        if (!j["key"].is_string() || j["key"].get<std::string>() != key || !j["value"].is_string()) continue;
        std::string v = j["value"].get<std::string>();
        if (j["checksum"] == hex64(fnv1a(key + "\n" + v))) hit = v;
    }
    return hit;
}

void ResultCache::put(const std::string& key, const std::string& value) const {
    if (path_.empty()) return;
    json j;
    j["key"] = key;
    j["value"] = value;
    j["checksum"] = hex64(fnv1a(key + "\n" + value));
    std::ofstream out(path_, std::ios::app);
    out << j.dump() << "\n";
}

std::string cache_key(const std::string& kind, const std::vector<Rat>& p, double X, const std::string& predicate) {
    std::ostringstream os;
    os << kind << "|";
    for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i].get_str();
    os << "|" << std::setprecision(17) << X << "|" << hex64(fnv1a(predicate)) << "|" << kLibraryVersion;
    return os.str();
}

}  // namespace smin
