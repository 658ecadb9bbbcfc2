#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "smin/geometry.hpp"

using namespace smin;

namespace {

std::vector<Rat> R(std::initializer_list<std::pair<long, long>> v) {
    std::vector<Rat> out;
    for (auto& [a, b] : v) {
        out.push_back(Rat(a, b));
        out.back().canonicalize();
    }
    return out;
}

long long brute_count(const BoxSpec& b, const CoordPredicate& pred) {
    int d = b.dim();
    std::vector<long long> x(d), lim(d);
    for (int i = 0; i < d; ++i) lim[i] = b.bounds[i].get_si(), x[i] = -lim[i];
    long long n = 0;
    for (;;) {
        if (pred(x.data())) ++n;
        int i = d - 1;
        while (i >= 0 && x[i] == lim[i]) x[i] = -lim[i], --i;
        if (i < 0) break;
        ++x[i];
    }
    return n;
}

}  // namespace

TEST_CASE("box exponents") {
    auto b = make_box(BoxKind::cubic, R({{1, 4}, {1, 4}}), 16);
    CHECK(b.exps == R({{1, 4}, {1, 4}, {1, 4}, {1, 4}}));
    CHECK(b.bounds == std::vector<Int>{2, 2, 2, 2});
    auto m = make_box(BoxKind::cubic, R({{1, 6}, {1, 3}}), 64);
    CHECK(m.exps == R({{0, 1}, {1, 6}, {1, 3}, {1, 2}}));
    CHECK(m.bounds == std::vector<Int>{1, 2, 4, 8});
    auto bin = make_box(BoxKind::binary, R({{1, 12}, {1, 12}}), 1000, 3);
    CHECK(bin.exps == make_box(BoxKind::cubic, R({{1, 4}, {1, 4}}), 1000).exps);
    CHECK_THROWS_AS(make_box(BoxKind::cubic, R({{1, 4}, {1, 3}}), 16), Error);
    CHECK_THROWS_AS(make_box(BoxKind::quartic, R({{1, 6}, {1, 6}, {1, 6}, {1, 6}, {1, 6}}), 16), Error);
}

TEST_CASE("floor of powers") {
    CHECK(floor_power(1e6, Rat(1, 4)) == 31);
    CHECK(floor_power(4096, Rat(1, 12)) == 2);
    CHECK(floor_power(4095, Rat(1, 12)) == 1);
    CHECK(floor_power(100, Rat(-1, 4)) == 0);
    CHECK(floor_power(1e6, Rat(1, 2)) == 1000);
    CHECK(floor_power(1e6 - 1, Rat(1, 2)) == 999);
    std::mt19937_64 rng(91);
    for (int t = 0; t < 200; ++t) {
        long X = 2 + long(rng() % 1000000);
        Rat e(long(1 + rng() % 5), long(1 + rng() % 12));
        Int f = floor_power(double(X), e);
        // f^den <= X^num < (f+1)^den
        Int lhs, rhs, x = X, top;
        mpz_pow_ui(lhs.get_mpz_t(), f.get_mpz_t(), e.get_den().get_ui());
        Int f1 = f + 1;
        mpz_pow_ui(rhs.get_mpz_t(), f1.get_mpz_t(), e.get_den().get_ui());
        mpz_pow_ui(top.get_mpz_t(), x.get_mpz_t(), e.get_num().get_ui());
        CHECK(lhs <= top);
        CHECK(top < rhs);
    }
}

TEST_CASE("segment map") {
    CHECK(segment_L(3, R({{0, 1}, {1, 6}})) == R({{1, 6}, {1, 3}}));
    CHECK(segment_L(3, R({{1, 12}, {1, 12}})) == R({{1, 4}, {1, 4}}));
    CHECK(segment_L(5, R({{0, 1}, {1, 20}})) == R({{1, 20}, {2, 20}, {3, 20}, {4, 20}}));
    CHECK(segment_L(4, R({{1, 24}, {1, 24}})) == R({{1, 6}, {1, 6}, {1, 6}}));
    CHECK_THROWS_AS(segment_L(3, R({{1, 6}, {0, 1}})), Error);
    // L(r) sums to 1/2 along the whole segment
    for (int n : {3, 4, 5})
        for (int s = 0; s <= 10; ++s) {
            Rat k = binary_k(n);
            Rat r1 = k / 2 * s / 10;
            auto v = segment_L(n, {r1, k - r1});
            Rat sum = 0;
            for (auto& x : v) sum += x;
            CHECK(sum == Rat(1, 2));
            // binary box coincides with the box at L(r) for cubics
            if (n == 3) CHECK(make_box(BoxKind::binary, {r1, k - r1}, 1e4, 3).exps == make_box(BoxKind::cubic, v, 1e4).exps);
        }
}

TEST_CASE("lattice point counts") {
    auto b = make_box(BoxKind::cubic, R({{1, 4}, {1, 4}}), 16);
    auto c = count_points(b);
    CHECK(c.count == 625);
    CHECK(c.volume == doctest::Approx(256));
    auto big = count_points(make_box(BoxKind::cubic, R({{1, 4}, {1, 4}}), 1e6));
    CHECK(big.count == Int(63) * 63 * 63 * 63);
    CHECK(std::abs(big.count.get_d() - big.volume) / big.volume <= 0.05);
    auto pinned = make_box(BoxKind::cubic, R({{1, 12}, {5, 12}}), 1e6);
    CHECK(pinned.bounds[0] == 0);
    CHECK(count_points(pinned).count == 1 * (2 * pinned.bounds[1] + 1) * (2 * pinned.bounds[2] + 1) * (2 * pinned.bounds[3] + 1));
    CHECK_THROWS_AS(count_points(make_box(BoxKind::cubic, R({{1, 4}, {1, 4}}), 1e12), [](const long long*) { return true; }, 1e9),
                    Error);
}

TEST_CASE("filtered counts agree with brute force and do not depend on threads") {
    auto b = make_box(BoxKind::cubic, R({{1, 5}, {3, 10}}), 4000);
    CoordPredicate pred = [](const long long* x) {
        __int128 d = disc_cubic(x[0], x[1], x[2], x[3]);
        if (d < 0) d = -d;
        return d >= 2000 && d <= 4000;
    };
    long long want = brute_count(b, pred);
    CHECK(want > 0);
    for (unsigned th : {1u, 2u, 3u, 7u}) CHECK(count_points(b, pred, 1e9, th).count == long(want));
}

TEST_CASE("Davenport shape across a grid of cubic boxes") {
    double worst = 0;
    for (auto pt : {R({{1, 4}, {1, 4}}), R({{1, 5}, {3, 10}}), R({{1, 6}, {1, 3}})})
        for (double X : {16.0, 256.0, 4096.0, 65536.0, 1e6}) {
            auto b = make_box(BoxKind::cubic, pt, X);
            auto c = count_points(b);
            double min_side = 1e300;
            for (auto& e : b.exps) min_side = std::min(min_side, 2 * std::pow(X, e.get_d()));
            double face = std::max(1.0, c.volume / min_side);
            worst = std::max(worst, std::abs(c.count.get_d() - c.volume) / face);
        }
    CHECK(worst <= 16);
}

TEST_CASE("polytope membership examples") {
    auto s4 = R({{1, 6}, {1, 6}, {1, 6}, {1, 4}, {1, 4}});
    auto d4v = R({{0, 1}, {1, 4}, {1, 4}, {0, 1}, {1, 2}});
    CHECK(polytope_contains("poly4_s4", s4));
    CHECK_FALSE(polytope_contains("poly4_s4", d4v));
    CHECK(polytope_contains("poly4_d4", d4v));
    std::vector<Rat> s5 = R({{1, 8}, {1, 8}, {1, 8}, {1, 8}, {3, 10}, {3, 10}, {3, 10}, {3, 10}, {3, 10}});
    CHECK(polytope_contains("poly5_s5", s5));
    std::vector<Rat> m5;
    for (int k : {1, 2, 3, 4, 4, 5, 6, 7, 8}) m5.push_back(oracle::frac(k, 20));
    CHECK(polytope_contains("poly5_s5", m5));
    CHECK_THROWS_AS(polytope_contains("poly6", s4), Error);
    try {
        polytope("poly6");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownPolytope);
    }
    CHECK_THROWS_AS(polytope_contains("poly4_s4", R({{1, 4}, {1, 4}})), Error);
}

TEST_CASE("poly4 is the union of its three pieces on random points") {
    std::mt19937_64 rng(92);
    auto a = polytope("poly4_a"), b = polytope("poly4_b"), c = polytope("poly4_c");
    int inside = 0;
    for (int t = 0; t < 1000; ++t) {
        // random point satisfying the sum conditions, coordinates in multiples of 1/48
        long u = long(rng() % 25), v = long(rng() % 25);
        if (u + v > 24) u = 24 - u, v = 24 - v;
        long w = 24 - u - v, q = long(rng() % 25);
        std::vector<long> ps{u, v, w};
        std::sort(ps.begin(), ps.end());
        std::vector<Rat> pt{oracle::frac(ps[0], 48), oracle::frac(ps[1], 48), oracle::frac(ps[2], 48), oracle::frac(std::min(q, 24 - q), 48),
                            oracle::frac(std::max(q, 24 - q), 48)};
        bool u3 = contains(a, pt) || contains(b, pt) || contains(c, pt);
        CHECK(polytope_contains("poly4", pt) == u3);
        inside += u3;
        // S4 polytope sits inside poly4, and the D4 polytope contains the S4 one
        if (polytope_contains("poly4_s4", pt)) {
            CHECK(u3);
            CHECK(polytope_contains("poly4_d4", pt));
        }
    }
    CHECK(inside > 0);
}

TEST_CASE("density values") {
    CHECK(density_value("d3", R({{1, 6}, {1, 3}})).value == Rat(5, 6));
    CHECK(density_value("d3", R({{0, 1}, {1, 2}})).value == 1);
    CHECK(density_value("d3", R({{1, 4}, {1, 4}})).value == 1);
    CHECK(density_value("d3max", R({{0, 1}, {1, 2}})).value == 1);
    CHECK(density_value("d3max", R({{1, 5}, {3, 10}})).value == Rat(9, 10));
    CHECK(density_value("d4", R({{1, 8}, {1, 8}, {1, 4}, {1, 4}, {1, 4}})).value == Rat(3, 4));
    CHECK(density_value("d4", R({{1, 6}, {1, 6}, {1, 6}, {1, 4}, {1, 4}})).value == 1);
    CHECK(density_value("dS3", R({{1, 12}, {5, 12}})).kind == DensityValue::Zero);
    CHECK(density_value("d3", R({{1, 3}, {1, 6}})).kind == DensityValue::Zero);
    CHECK(density_value("d4", R({{1, 6}, {1, 6}, {1, 6}, {1, 4}, {1, 4}})).str() == "1");
    CHECK_THROWS_AS(density_value("d7", R({{1, 4}, {1, 4}})), Error);
}

TEST_CASE("cubic density decomposition on the segment") {
    for (int s = 0; s <= 19; ++s) {
        Rat p1 = oracle::frac(s, 76);  // 20 points in [0, 1/4)
        std::vector<Rat> p{p1, Rat(1, 2) - p1};
        Rat base = 1 - (p[1] - p[0]);
        bool left = p1 < Rat(1, 6);
        CHECK(density_value("d3", p).value == base + (left ? Rat(1, 2) - 3 * p1 : Rat(0)));
        auto s3 = density_value("dS3", p);
        if (left)
            CHECK(s3.kind == DensityValue::Zero);
        else
            CHECK(s3.value == base);
    }
}

TEST_CASE("cubic density is Lipschitz across the breakpoint") {
    Rat h(1, 100000);
    for (Rat x : {Rat(1, 6), Rat(1, 12), Rat(1, 5)}) {
        auto v = [](const Rat& p1) { return density_value("d3", {p1, Rat(1, 2) - p1}).value; };
        Rat d1 = v(x) - v(x - h), d2 = v(x + h) - v(x);
        CHECK(abs(d1) <= 3 * h);
        CHECK(abs(d2) <= 3 * h);
    }
}

TEST_CASE("quartic density is continuous on edges of its pieces") {
    std::mt19937_64 rng(93);
    Rat h(1, 1000000);
    for (int t = 0; t < 200; ++t) {
        long a = long(rng() % 9), b = long(rng() % 9);
        std::vector<long> ps{a, b, 24 - a - b};
        std::sort(ps.begin(), ps.end());
        long q = long(rng() % 13);
        std::vector<Rat> pt{oracle::frac(ps[0], 48), oracle::frac(ps[1], 48), oracle::frac(ps[2], 48), oracle::frac(q, 48), oracle::frac(24 - q, 48)};
        auto v = density_value("d4", pt);
        if (v.kind != DensityValue::Value) continue;
        // move q1 by h inside the polytope when possible
        auto moved = pt;
        moved[3] -= h, moved[4] += h;
        auto w = density_value("d4", moved);
        if (w.kind == DensityValue::Value) CHECK(abs(w.value - v.value) <= 20 * h);
    }
}

TEST_CASE("D4 density") {
    auto v = R({{0, 1}, {1, 4}, {1, 4}, {0, 1}, {1, 2}});
    CHECK(density_value("dD4", v).kind == DensityValue::Value);
    auto s4 = R({{1, 6}, {1, 6}, {1, 6}, {1, 4}, {1, 4}});
    CHECK(density_value("dD4", s4).kind == DensityValue::Unknown);
    CHECK(density_value("dD4_lower", s4).kind == DensityValue::Value);
    std::vector<Rat> m5;
    for (int k : {1, 2, 3, 4, 4, 5, 6, 7, 8}) m5.push_back(oracle::frac(k, 20));
    CHECK(density_value("dS5", m5).kind == DensityValue::Value);
}

TEST_CASE("flag polytopes") {
    std::vector<std::vector<int>> zero(4, std::vector<int>(4, 0));
    auto fz = flag_polytope(zero, 4);
    CHECK(fz.pieces.size() == 1);
    CHECK(fz.pieces[0].size() == basic_constraints(4).size());
    std::vector<std::vector<int>> generic{{0, 0, 0, 0}, {0, 1, 1, 2}, {0, 1, 2, 2}, {0, 2, 2, 2}};
    CHECK(contains(flag_polytope(generic, 4), R({{1, 12}, {1, 6}, {1, 4}, {1, 6}, {1, 3}})));
    CHECK(same_convex_polytope(flag_polytope(generic, 4), polytope("poly4_s4")));
    CHECK_FALSE(same_convex_polytope(flag_polytope(zero, 4), polytope("poly4_s4")));
    std::vector<std::vector<int>> bad{{0, 0, 0, 0}, {0, 2, 1, 2}, {0, 1, 2, 2}, {0, 2, 2, 2}};
    try {
        flag_polytope(bad, 4);
        FAIL("non-monotone table accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidTable);
    }
    std::vector<std::vector<int>> z5(6, std::vector<int>(6, 0));
    CHECK(flag_polytope(z5, 5).pieces[0].size() == basic_constraints(5).size());
    CHECK_THROWS_AS(flag_polytope(zero, 5), Error);
}

TEST_CASE("parsing points") {
    CHECK(parse_point("1/4, 1/4") == R({{1, 4}, {1, 4}}));
    CHECK(parse_point("0.25,0.25") == R({{1, 4}, {1, 4}}));
    CHECK_THROWS_AS(parse_point("a,b"), Error);
}
