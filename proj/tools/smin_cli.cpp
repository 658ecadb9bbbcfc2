// smin: command-line front end for the scenario runners.
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "smin/experiments.hpp"
#include "smin/forms.hpp"
#include "smin/geometry.hpp"
#include "smin/minima.hpp"
#include "smin/rings.hpp"

using namespace smin;

namespace {

enum Exit { kOk = 0, kUsage = 1, kAcceptance = 2, kBudget = 3, kPrecision = 4 };

struct Flags {
    std::string config, p, dedup, out, cache_dir, family, filter, suite;
    int degree = 3;
    double eps = 3, x_start = 0, x_stop = 0, x_factor = 0, budget = 0, height = 0, X = 0;
    unsigned threads = 0;
    std::uint64_t seed = 1;
    long samples = 0, trials = 0;
    std::vector<long> primes;
    std::map<std::string, CLI::Option*> opt;
};

void add_common(CLI::App* sub, Flags& f) {
    f.opt["config"] = sub->add_option("--config", f.config, "JSON config file; flags override it");
    f.opt["degree"] = sub->add_option("--degree", f.degree, "form degree");
    f.opt["p"] = sub->add_option("--p", f.p, "point as exact rationals, e.g. 1/4,1/4");
    f.opt["eps"] = sub->add_option("--eps", f.eps, "closeness parameter");
    f.opt["x_start"] = sub->add_option("--x-start", f.x_start, "first X of the geometric grid");
    f.opt["x_stop"] = sub->add_option("--x-stop", f.x_stop, "last X of the grid");
    f.opt["x_factor"] = sub->add_option("--x-factor", f.x_factor, "grid ratio");
    f.opt["dedup"] = sub->add_option("--dedup", f.dedup, "canonical | multiplicity | none");
    f.opt["out"] = sub->add_option("--out", f.out, "CSV output path; a .json summary is written beside it");
    f.opt["cache_dir"] = sub->add_option("--cache-dir", f.cache_dir, "enumeration cache directory");
    f.opt["threads"] = sub->add_option("--threads", f.threads, "worker threads (0 = hardware)");
    f.opt["budget"] = sub->add_option("--budget-points", f.budget, "maximum lattice points per enumeration");
    f.opt["seed"] = sub->add_option("--seed", f.seed, "random seed");
    f.opt["X"] = sub->add_option("--X", f.X, "single discriminant bound");
}

ScenarioConfig build_config(const std::string& scenario, Flags& f) {
    ScenarioConfig c;
    c.scenario = scenario;
    if (f.opt["config"]->count()) c = load_config(f.config, c);
    c.scenario = scenario;
    auto set = [&](const char* k) { return f.opt.count(k) && f.opt[k]->count() > 0; };
    if (set("degree")) c.degree = f.degree;
    if (set("p")) c.p = parse_point(f.p);
    if (set("eps")) c.eps = f.eps;
    if (set("x_start")) c.x_start = f.x_start;
    if (set("x_stop")) c.x_stop = f.x_stop;
    if (set("x_factor")) c.x_factor = f.x_factor;
    if (set("dedup")) c.dedup = f.dedup;
    if (set("out")) c.out = f.out;
    if (set("cache_dir")) c.cache_dir = f.cache_dir;
    if (set("threads")) c.threads = f.threads;
    if (set("budget")) c.budget_points = f.budget;
    if (set("seed")) c.seed = f.seed;
    if (set("X")) c.X = f.X;
    if (set("family")) c.family = f.family;
    if (set("height")) c.height = f.height;
    if (set("samples")) c.samples = f.samples;
    if (set("filter")) c.filter = f.filter;
    if (set("primes")) c.primes = f.primes;
    if (set("suite")) c.suite = f.suite;
    if (set("trials")) c.trials = f.trials;
    return c;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << text;
}

int emit(const RunReport& rep, const ScenarioConfig& cfg) {
    if (cfg.out.empty()) {
        std::cout << rep.to_csv();
    } else {
        write_text(cfg.out, rep.to_csv());
        std::string js = cfg.out;
        auto dot = js.find_last_of('.');
        if (dot != std::string::npos && js.find('/', dot) == std::string::npos) js.erase(dot);
        write_text(js + ".json", rep.to_json());
    }
    std::cerr << rep.scenario << ": " << (rep.pass ? "pass" : "FAIL");
    if (rep.fit) std::cerr << " slope=" << rep.fit->slope << " residual=" << rep.fit->residual;
    if (rep.target) std::cerr << " target=" << *rep.target;
    for (auto& [k, v] : rep.metrics) std::cerr << " " << k << "=" << v;
    std::cerr << "\n";
    return rep.pass ? kOk : kAcceptance;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"successive minima profiles of low-rank rings"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kLibraryVersion);

    std::map<std::string, Flags> flags;
    auto scenario_cmd = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, flags[name]);
        return sub;
    };

    std::string form_text;
    bool no_certify = false;
    auto* prof = app.add_subcommand("profile", "successive minima profile of the ring of a binary form");
    prof->add_option("form", form_text, "coefficients a0,...,an")->required();
    prof->add_flag("--no-certify", no_certify, "skip the quad-precision rerun");

    auto* en = scenario_cmd("enumerate", "list cubic classes (or count box points) with |disc| <= X");
    scenario_cmd("density", "density slope over an X grid");
    auto* sc = scenario_cmd("scatter", "cubic profile scatter with segment distances");
    sc->add_option("--filter", flags["scatter"].filter, "c3 | s3max");
    flags["scatter"].opt["filter"] = sc->get_option("--filter");
    auto* sv = scenario_cmd("sieve", "square-divisibility constants and maximal fractions");
    flags["sieve"].opt["primes"] = sv->add_option("--primes", flags["sieve"].primes, "primes for the l^2 | disc counts");
    auto* fm = scenario_cmd("family", "closeness fraction of a parametrized family");
    flags["family"].opt["family"] = fm->add_option("--family", flags["family"].family,
                                                   "monogenic3|monogenic4|monogenic5|binary4|binary5|xy_xy|x_y_x2");
    flags["family"].opt["height"] = fm->add_option("--height", flags["family"].height, "height bound T");
    flags["family"].opt["samples"] = fm->add_option("--samples", flags["family"].samples, "members sampled");
    scenario_cmd("binthm", "binary form class count slopes");
    scenario_cmd("davenport", "lattice point count against volume");
    scenario_cmd("audit", "polytope vertex and density spot checks");
    auto* ck = scenario_cmd("check", "exact identity suites");
    flags["check"].opt["suite"] =
        ck->add_option("--suite", flags["check"].suite, "fess|disc|df|minkowski|bounds|quartic-xcheck")->required();
    flags["check"].opt["trials"] = ck->add_option("--trials", flags["check"].trials, "trials per check");

    std::string poly_name, poly_point, density_name;
    auto* po = app.add_subcommand("polytope", "membership and density value at a point");
    po->add_option("--name", poly_name, "polytope name")->required();
    po->add_option("--point", poly_point, "point as exact rationals")->required();
    po->add_option("--density", density_name, "also evaluate this density function");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*prof) {
            auto f = parse_form(form_text);
            auto r = profile(nakagawa_ring(f), !no_certify);
            std::cout << profile_csv_header(f.n) << "\n" << profile_csv_row(r, f.n) << "\n";
            return kOk;
        }
        if (*po) {
            auto pt = parse_point(poly_point);
            bool in = polytope_contains(poly_name, pt);
            std::cout << "name,point,contains" << (density_name.empty() ? "" : ",density") << "\n"
                      << poly_name << ",\"" << poly_point << "\"," << (in ? "true" : "false");
            if (!density_name.empty()) std::cout << "," << density_value(density_name, pt).str();
            std::cout << "\n";
            return kOk;
        }
        if (*en) {
            auto cfg = build_config("enumerate", flags["enumerate"]);
            if (cfg.p.empty()) throw Error(ErrorKind::InvalidPoint, "enumerate needs --p");
            RunReport rep;
            rep.scenario = "enumerate";
            rep.config_json = config_to_json_text(cfg);
            if (cfg.degree == 3) {
                auto box = make_box(BoxKind::cubic, cfg.p, cfg.X);
                auto cls = cubic_classes(box, 1, (long long)cfg.X, cfg.budget_points, cfg.threads);
                rep.columns = {"a", "b", "c", "d", "disc"};
                for (auto& q : cls.reps)
                    rep.rows.push_back({std::to_string(q[0]), std::to_string(q[1]), std::to_string(q[2]),
                                        std::to_string(q[3]), BinaryForm({q[0], q[1], q[2], q[3]}).disc().get_str()});
                rep.metrics["raw_forms"] = double(cls.raw);
                rep.metrics["classes"] = double(cls.reps.size());
            } else {
                auto kind = cfg.degree == 4 ? BoxKind::quartic : BoxKind::quintic;
                if (cfg.degree != 4 && cfg.degree != 5) throw Error(ErrorKind::UnsupportedDegree, "degree 3, 4 or 5");
                auto res = count_points(make_box(kind, cfg.p, cfg.X), {}, cfg.budget_points, cfg.threads);
                rep.columns = {"X", "points", "volume"};
                rep.rows.push_back({std::to_string(cfg.X), res.count.get_str(), std::to_string(res.volume)});
            }
            return emit(rep, cfg);
        }
        static const std::map<std::string, std::string> scenario_of = {
            {"density", "density_slope"}, {"scatter", "scatter"},   {"sieve", "sieve"},
            {"family", "family"},         {"binthm", "binthm"},     {"davenport", "davenport"},
            {"audit", "polytope_audit"},  {"check", "identity_suite"}};
        for (auto& [cmd, scenario] : scenario_of) {
            if (!*app.get_subcommand(cmd)) continue;
            auto cfg = build_config(scenario, flags[cmd]);
            if (scenario == "density_slope" && cfg.p.empty()) throw Error(ErrorKind::InvalidPoint, "density needs --p");
            return emit(run_scenario(cfg), cfg);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.kind() == ErrorKind::ResourceBudgetExceeded) return kBudget;
        if (e.kind() == ErrorKind::PrecisionExhausted) return kPrecision;
        return kUsage;
    }
    return kUsage;
}
