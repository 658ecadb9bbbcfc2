#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <unistd.h>

#include "doctest.h"
#include "smin/experiments.hpp"
#include "smin/rings.hpp"

using namespace smin;
namespace fs = std::filesystem;

namespace {

ScenarioConfig cubic_cfg(Rat p1, Rat p2) {
    ScenarioConfig c;
    c.degree = 3;
    c.p = {p1, p2};
    c.x_start = 256;
    c.x_stop = 262144;
    c.x_factor = 2;
    return c;
}

fs::path scratch_dir(const std::string& name) {
    auto d = fs::temp_directory_path() / ("smin_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("cubic classes agree with brute-force canonicalisation") {
    for (auto pt : {std::vector<Rat>{Rat(1, 4), Rat(1, 4)}, std::vector<Rat>{Rat(1, 6), Rat(1, 3)},
                    std::vector<Rat>{Rat(0), Rat(1, 2)}}) {
        double X = 3000;
        auto box = make_box(BoxKind::cubic, pt, X);
        long long lo = 1500, hi = 3000;
        std::set<std::array<long long, 4>> want;
        long long raw = 0;
        long long L[4];
        for (int i = 0; i < 4; ++i) L[i] = box.bounds[i].get_si();
        for (long long a = -L[0]; a <= L[0]; ++a)
            for (long long b = -L[1]; b <= L[1]; ++b)
                for (long long c = -L[2]; c <= L[2]; ++c)
                    for (long long d = -L[3]; d <= L[3]; ++d) {
                        __int128 D = disc_cubic(a, b, c, d);
                        if (D < 0) D = -D;
                        if (D < lo || D > hi) continue;
                        ++raw;
                        long long in[4]{a, b, c, d}, out[4];
                        cubic_canonical_form_ll(in, out);
                        want.insert({out[0], out[1], out[2], out[3]});
                    }
        auto got = cubic_classes(box, lo, hi, 1e10, 2);
        CHECK(got.raw == raw);
        CHECK(std::set<std::array<long long, 4>>(got.reps.begin(), got.reps.end()) == want);
        CHECK(std::is_sorted(got.reps.begin(), got.reps.end()));
        CHECK(cubic_classes(box, lo, hi, 1e10, 1).reps == got.reps);
    }
}

TEST_CASE("slope fit") {
    std::vector<double> xs, cs;
    for (double X = 256; X <= 262144; X *= 2) {
        xs.push_back(X);
        cs.push_back(std::exp(1.0) * std::pow(X, 0.9) - 1);
    }
    auto f = fit_slope(xs, cs);
    CHECK(f.slope == doctest::Approx(0.9).epsilon(1e-9));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(f.residual < 1e-9);
    ScenarioConfig c;
    c.x_start = 256, c.x_stop = 262144, c.x_factor = 2;
    auto g = x_grid(c);
    CHECK(g.size() == 11);
    CHECK(g.front() == 256);
    CHECK(g.back() == 262144);
}

TEST_CASE("cubic density slopes at the well-behaved points") {
    for (auto pt : {std::vector<Rat>{Rat(1, 4), Rat(1, 4)}, std::vector<Rat>{Rat(1, 5), Rat(3, 10)},
                    std::vector<Rat>{Rat(1, 6), Rat(1, 3)}, std::vector<Rat>{Rat(0), Rat(1, 2)}}) {
        auto rep = run_density_slope(cubic_cfg(pt[0], pt[1]));
        REQUIRE(rep.fit);
        REQUIRE(rep.target);
        INFO("p1 = " << pt[0].get_str() << " slope = " << rep.fit->slope);
        CHECK(std::abs(rep.fit->slope - *rep.target) <= 0.15);
        CHECK(rep.fit->residual < 0.1);
        CHECK(rep.pass);
        if (pt[0] == 0) CHECK(rep.metrics.at("reducible_fraction_top") == 1.0);
    }
}

TEST_CASE("density runner errors") {
    auto c = cubic_cfg(Rat(1, 4), Rat(1, 4));
    c.budget_points = 1000;
    try {
        run_density_slope(c);
        FAIL("budget ignored");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ResourceBudgetExceeded);
    }
    ScenarioConfig q;
    q.degree = 4;
    q.p = {Rat(1, 6), Rat(1, 6), Rat(1, 6), Rat(1, 4), Rat(1, 4)};
    q.dedup = "canonical";
    try {
        run_density_slope(q);
        FAIL("canonical dedup accepted for quartics");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedDedup);
    }
}

TEST_CASE("reports are deterministic") {
    auto c = cubic_cfg(Rat(1, 4), Rat(1, 4));
    c.x_stop = 16384;
    auto a = run_density_slope(c), b = run_density_slope(c);
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.to_csv().rfind("X,raw,count,reducible_fraction\n", 0) == 0);
    c.threads = 1;
    CHECK(run_density_slope(c).to_csv() == a.to_csv());
    ScenarioConfig f;
    f.family = "monogenic3";
    f.height = 10;
    f.samples = 200;
    f.eps = 5;
    f.seed = 7;
    CHECK(run_family(f).to_csv() == run_family(f).to_csv());
}

TEST_CASE("json summary") {
    auto rep = run_polytope_audit(ScenarioConfig{});
    CHECK(rep.pass);
    auto j = rep.to_json();
    for (auto key : {"\"header\"", "\"version\"", "\"scenario\"", "\"config\"", "\"pass\"", "\"rows\""})
        CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("empty scatter population") {
    ScenarioConfig c;
    c.filter = "s3max";
    c.X = 20;
    auto rep = run_scatter(c);
    CHECK(rep.rows.empty());
    CHECK(rep.to_csv().empty());
    CHECK(rep.pass);
}

TEST_CASE("scatter of cubic rings stays near the segment") {
    ScenarioConfig c;
    c.X = 5000;
    c.eps = 3;
    auto rep = run_scatter(c);
    CHECK_FALSE(rep.rows.empty());
    CHECK(rep.metrics.at("far_points") == 0);
    c.filter = "c3";
    auto c3 = run_scatter(c);
    CHECK(c3.metrics.at("far_points") == 0);
    for (auto& row : c3.rows) CHECK(row[3] == "C3");
}

TEST_CASE("identity suites pass") {
    for (auto s : {"disc", "fess", "df", "minkowski", "quartic-xcheck", "bounds"}) {
        ScenarioConfig c;
        c.suite = s;
        c.trials = 20;
        auto rep = run_identity_suite(c);
        INFO(s);
        CHECK(rep.pass);
    }
}

TEST_CASE("config round trip and validation") {
    ScenarioConfig c;
    c.scenario = "family";
    c.p = {Rat(1, 6), Rat(1, 3)};
    c.eps = 5;
    c.family = "binary4";
    c.primes = {2, 3};
    c.seed = 99;
    auto back = config_from_json_text(config_to_json_text(c));
    CHECK(back.scenario == "family");
    CHECK(back.p == c.p);
    CHECK(back.eps == 5);
    CHECK(back.family == "binary4");
    CHECK(back.primes == c.primes);
    CHECK(back.seed == 99);
    CHECK(config_to_json_text(back) == config_to_json_text(c));
    CHECK(config_from_json_text(R"({"p": "1/4,1/4"})").p == std::vector<Rat>{Rat(1, 4), Rat(1, 4)});
    CHECK(config_from_json_text(R"({"p": ["1/4", "1/4"]})").p == std::vector<Rat>{Rat(1, 4), Rat(1, 4)});
    CHECK_THROWS_AS(config_from_json_text(R"({"bogus": 1})"), Error);
    CHECK_THROWS_AS(config_from_json_text("[1,2]"), Error);
    CHECK_THROWS_AS(config_from_json_text(R"({"eps": "big"})"), Error);
}

TEST_CASE("result cache verifies checksums") {
    auto dir = scratch_dir("cache");
    ResultCache cache(dir.string());
    CHECK(cache.enabled());
    CHECK_FALSE(cache.get("k"));
    cache.put("k", "v1");
    CHECK(*cache.get("k") == "v1");
    cache.put("k", "v2");
    CHECK(*cache.get("k") == "v2");
    // a tampered line is ignored
    {
        std::ifstream in(dir / "results.jsonl");
        std::string all((std::istreambuf_iterator<char>(in)), {});
        auto pos = all.rfind("v2");
        all.replace(pos, 2, "v9");
        std::ofstream out(dir / "results.jsonl");
        out << all << "not json\n";
    }
    CHECK(*ResultCache(dir.string()).get("k") == "v1");
    CHECK_FALSE(ResultCache("").enabled());
    auto k1 = cache_key("cubic", {Rat(1, 4), Rat(1, 4)}, 1024, "dyadic");
    CHECK(k1 == cache_key("cubic", {Rat(1, 4), Rat(1, 4)}, 1024, "dyadic"));
    CHECK(k1 != cache_key("cubic", {Rat(1, 4), Rat(1, 4)}, 2048, "dyadic"));
    CHECK(k1.find(kLibraryVersion) != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cached density runs reproduce uncached ones") {
    auto dir = scratch_dir("density");
    auto c = cubic_cfg(Rat(1, 6), Rat(1, 3));
    c.x_stop = 8192;
    auto plain = run_density_slope(c);
    c.cache_dir = dir.string();
    auto first = run_density_slope(c), second = run_density_slope(c);
    CHECK(first.to_csv() == plain.to_csv());
    CHECK(second.to_csv() == plain.to_csv());
    fs::remove_all(dir);
}
