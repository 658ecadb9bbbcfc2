#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "smin/geometry.hpp"
#include "smin/minima.hpp"
#include "smin/quartic.hpp"

using namespace smin;

namespace {

TernaryQuadPair random_pair(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> u(-bound, bound);
    TernaryQuadPair p;
    for (auto& x : p.a) x = u(rng);
    for (auto& x : p.b) x = u(rng);
    return p;
}

TernaryQuadPair random_nondegenerate(std::mt19937_64& rng, long bound) {
    for (;;) {
        auto p = random_pair(rng, bound);
        Int d = pair_disc(p);
        if (d != 0 && abs(d) != 1) return p;
    }
}

std::array<long, 9> random_gl3(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> u(-2, 2);
    std::array<long, 9> g{1, 0, 0, 0, 1, 0, 0, 0, 1};
    for (int s = 0; s < 5; ++s) {
        int i = int(rng() % 3), j = int(rng() % 3);
        if (i == j) continue;
        long k = u(rng);
        for (int c = 0; c < 3; ++c) g[i * 3 + c] += k * g[j * 3 + c];
    }
    if (rng() % 2)
        for (int c = 0; c < 3; ++c) g[c] = -g[c];
    return g;
}

std::array<long, 4> random_gl2(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> u(-2, 2);
    for (;;) {
        std::array<long, 4> g{u(rng), u(rng), u(rng), u(rng)};
        long d = g[0] * g[3] - g[1] * g[2];
        if (d == 1 || d == -1) return g;
    }
}

// Characteristic polynomials of all elements of Euclidean length at most sqrt(bound);
// a basis-free fingerprint of the ring.
std::multiset<std::vector<Int>> short_charpolys(const RankRing& r, double bound) {
    auto g = gram(r);
    int n = r.n;
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = g.at(i, j);
    Eigen::MatrixXd Gi = G.inverse();
    std::vector<long> lim(n);
    for (int i = 0; i < n; ++i) lim[i] = long(std::floor(std::sqrt(bound * Gi(i, i)) + 1e-9));
    std::multiset<std::vector<Int>> out;
    std::vector<long> x(n);
    for (int i = 0; i < n; ++i) x[i] = -lim[i];
    for (;;) {
        double q = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) q += x[i] * G(i, j) * x[j];
        if (q <= bound * (1 + 1e-9) && q > 1e-9) {
            Elem e(x.begin(), x.end());
            out.insert(charpoly(mult_matrix(r, e)).c);
        }
        int i = n - 1;
        while (i >= 0 && x[i] == lim[i]) x[i] = -lim[i], --i;
        if (i < 0) break;
        ++x[i];
    }
    return out;
}

struct Fingerprint {
    Int disc;
    std::vector<double> lambda;
    std::multiset<std::vector<Int>> polys;
};

Fingerprint fingerprint(const RankRing& r) {
    auto p = profile(r);
    double top = p.lambda.back() * p.lambda.back() * 1.0001;
    return {p.disc, p.lambda, short_charpolys(r, top)};
}

void check_same(const Fingerprint& a, const Fingerprint& b) {
    CHECK(a.disc == b.disc);
    REQUIRE(a.lambda.size() == b.lambda.size());
    for (size_t i = 0; i < a.lambda.size(); ++i) CHECK(a.lambda[i] == doctest::Approx(b.lambda[i]).epsilon(1e-9));
    CHECK(a.polys == b.polys);
}

Elem random_elem(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> u(-bound, bound);
    return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("pair discriminant examples") {
    auto x4y4 = psi_binary_quartic(BinaryForm{1, 0, 0, 0, 1});
    CHECK(pair_disc(x4y4) == 256);
    TernaryQuadPair same;
    same.A(1, 1) = 1, same.A(2, 2) = 2, same.A(3, 3) = 3;
    same.b = same.a;
    CHECK(pair_disc(same) == 0);
}

TEST_CASE("pair discriminant is invariant under the group action") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 100; ++t) {
        auto p = random_pair(rng, 4);
        auto q = act_pair(p, random_gl2(rng), random_gl3(rng));
        CHECK(pair_disc(q) == pair_disc(p));
    }
}

TEST_CASE("resolvent cubic examples") {
    CHECK(resolvent_cubic(psi_binary_quartic(BinaryForm{1, 0, 0, 0, 1})) == BinaryForm{-1, 0, 4, 0});
    TernaryQuadPair diag;
    diag.A(1, 1) = 1, diag.A(2, 2) = 1, diag.A(3, 3) = 1;
    diag.B(1, 1) = 1, diag.B(2, 2) = 2, diag.B(3, 3) = 3;
    // 4 (x - y)(2x - y)(3x - y)
    CHECK(resolvent_cubic(diag) == BinaryForm{24, -44, 24, -4});
    TernaryQuadPair zeroB;
    zeroB.A(1, 1) = 1, zeroB.A(2, 2) = 1;
    CHECK_THROWS_AS(resolvent_cubic(zeroB), Error);
    try {
        quartic_ring(zeroB);
        FAIL("degenerate pair accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateDiscriminant);
    }
}

TEST_CASE("resolvent cubic equals 4 det(Bx - Ay) evaluated at integer points") {
    std::mt19937_64 rng(62);
    for (int t = 0; t < 50; ++t) {
        auto p = random_pair(rng, 5);
        auto f = resolvent_cubic_raw(p);
        for (long x = -2; x <= 2; ++x)
            for (long y = -2; y <= 2; ++y) {
                std::vector<std::vector<Rat>> m(3, std::vector<Rat>(3));
                for (int i = 1; i <= 3; ++i)
                    for (int j = 1; j <= 3; ++j) {
                        Rat s = i == j ? Rat(1) : Rat(1, 2);
                        m[i - 1][j - 1] = s * (p.B(i, j) * x - p.A(i, j) * y);
                    }
                Rat want = 4 * oracle::det(m);
                Int got = f.f[0] * x * x * x + f.f[1] * x * x * y + f.f[2] * x * y * y + f.f[3] * y * y * y;
                CHECK(Rat(got) == want);
            }
    }
}

TEST_CASE("quartic rings are valid and discriminant preserving") {
    std::mt19937_64 rng(63);
    for (int t = 0; t < 100; ++t) {
        auto p = random_nondegenerate(rng, 4);
        auto rings = quartic_ring(p);
        CHECK_NOTHROW(validate_ring(rings.R));
        CHECK_NOTHROW(validate_ring(rings.C));
        CHECK(trace_disc(rings.R) == pair_disc(p));
        CHECK(trace_disc(rings.C) == pair_disc(p));
    }
}

TEST_CASE("psi of binary quartics") {
    auto p = psi_binary_quartic(BinaryForm{1, 0, 0, 0, 1});
    CHECK(p.A(1, 1) == 1);
    CHECK(p.A(1, 2) == 0);
    CHECK(p.A(1, 3) == 0);
    CHECK(p.A(2, 2) == 0);
    CHECK(p.A(2, 3) == 0);
    CHECK(p.A(3, 3) == 1);
    CHECK(p.B(1, 3) == 1);  // matrix entry 1/2
    CHECK(p.B(2, 2) == 1);
    CHECK(p.B(1, 1) == 0);
    CHECK(p.B(3, 3) == 0);
    std::mt19937_64 rng(64);
    for (int t = 0; t < 100; ++t) {
        BinaryForm f(oracle::random_coeffs(rng, 4, 9));
        CHECK(pair_disc(psi_binary_quartic(f)) == f.disc());
        CHECK(pair_disc(psi_binary_quartic(f)) == oracle::disc(f.f));
    }
}

TEST_CASE("psi compatible with the binary quartic ring") {
    check_same(fingerprint(quartic_ring(psi_binary_quartic(BinaryForm{1, 0, 0, 0, 1})).R),
               fingerprint(nakagawa_ring(BinaryForm{1, 0, 0, 0, 1})));
    std::mt19937_64 rng(65);
    int done = 0;
    while (done < 20) {
        BinaryForm f(oracle::random_coeffs(rng, 4, 4));
        if (f.disc() == 0 || abs(f.disc()) == 1) continue;
        ++done;
        check_same(fingerprint(quartic_ring(psi_binary_quartic(f)).R), fingerprint(nakagawa_ring(f)));
    }
}

TEST_CASE("resolvent ring matches the ring of the resolvent cubic") {
    std::mt19937_64 rng(66);
    for (int t = 0; t < 20; ++t) {
        auto p = random_nondegenerate(rng, 3);
        check_same(fingerprint(quartic_ring(p).C), fingerprint(nakagawa_ring(resolvent_cubic(p))));
    }
}

TEST_CASE("equivalent pairs give isomorphic rings") {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 20; ++t) {
        auto p = random_nondegenerate(rng, 3);
        auto q = act_pair(p, random_gl2(rng), random_gl3(rng));
        check_same(fingerprint(quartic_ring(p).R), fingerprint(quartic_ring(q).R));
    }
}

TEST_CASE("psi box at the binary quartic midpoint") {
    std::vector<Rat> pt{Rat(1, 6), Rat(1, 6), Rat(1, 6), Rat(1, 6), Rat(1, 3)};
    double X = 64;  // X^{1/6} = 2
    auto box = make_box(BoxKind::quartic, pt, X);
    std::mt19937_64 rng(68);
    std::uniform_int_distribution<long> u(-3, 3);
    int inside = 0, outside = 0;
    for (int t = 0; t < 2000; ++t) {
        std::vector<Int> c(5);
        for (auto& x : c) x = u(rng);
        BinaryForm f(c);
        bool small = heights(f).hc <= 2;
        CHECK(small == in_box(box, pair_coords(psi_binary_quartic(f))));
        (small ? inside : outside)++;
    }
    CHECK(inside > 0);
    CHECK(outside > 0);
    // boundary coefficient 2 in every slot
    CHECK(in_box(box, pair_coords(psi_binary_quartic(BinaryForm{2, -2, 2, -2, 2}))));
    CHECK_FALSE(in_box(box, pair_coords(psi_binary_quartic(BinaryForm{2, -2, 3, -2, 2}))));
}

TEST_CASE("family packing and heights") {
    FamilyTriple zero{FamilyKind::xy_xy, std::vector<Int>(6, 0), 1, 0};
    CHECK(pair_disc(family_pack(zero)) == 0);
    FamilyTriple t{FamilyKind::xy_xy, {2, 1, 1, 1, 1, 1}, 1, 0};
    CHECK(family_height(t) == 4);
    auto p = family_pack(t);
    CHECK(p.A(1, 1) == 1);
    CHECK(p.A(1, 2) == 0);
    CHECK(p.A(2, 2) == 0);
    CHECK(p.B(1, 1) == 0);
    CHECK(p.B(1, 2) == 0);
    CHECK(p.B(2, 2) == 1);
    CHECK(family_unpack(FamilyKind::xy_xy, p).free == t.free);
    CHECK_THROWS_AS(family_pack(FamilyTriple{FamilyKind::xy_xy, std::vector<Int>(5, 0), 1, 0}), Error);
    CHECK_THROWS_AS(family_pack(FamilyTriple{FamilyKind::xy_xy, std::vector<Int>(6, 0), 2, 0}), Error);
    CHECK_THROWS_AS(family_unpack(FamilyKind::x_y_x2, p), Error);
    FamilyTriple s{FamilyKind::x_y_x2, {1, 2, 3, 4, 5, 6, 7}, -1, 1};
    CHECK(family_height(s) == 49);
    CHECK(family_unpack(FamilyKind::x_y_x2, family_pack(s)).free == s.free);
}

TEST_CASE("x_y_x2 height matches the box at its target vertex") {
    std::vector<Rat> pt{Rat(1, 10), Rat(1, 5), Rat(1, 5), Rat(1, 5), Rat(3, 10)};
    double X = 1024;  // X^{1/5} = 4
    auto box = make_box(BoxKind::quartic, pt, X);
    std::mt19937_64 rng(69);
    std::uniform_int_distribution<long> u(-5, 5);
    int inside = 0;
    for (int t = 0; t < 3000; ++t) {
        FamilyTriple s{FamilyKind::x_y_x2, std::vector<Int>(7), 1, 0};
        for (auto& v : s.free) v = u(rng) / (1 + long(rng() % 2));
        bool small = family_height(s) <= 4;
        CHECK(small == in_box(box, pair_coords(family_pack(s))));
        inside += small;
    }
    CHECK(inside > 0);
    // boundary: squared entries at 2, plain entries at 4
    FamilyTriple edge{FamilyKind::x_y_x2, {2, 4, 4, 4, 2, 2, 2}, 1, 0};
    CHECK(family_height(edge) == 4);
    CHECK(in_box(box, pair_coords(family_pack(edge))));
    edge.free[1] = 5;
    CHECK_FALSE(in_box(box, pair_coords(family_pack(edge))));
}

TEST_CASE("numeric resolvent map recovers the pair") {
    auto pr = psi_binary_quartic(BinaryForm{1, 0, 0, 0, 1});
    auto rings = quartic_ring(pr);
    auto m = resolvent_map_numeric(rings.R, rings.C);
    CHECK(pair_disc(m.pair) == 256);
    check_same(fingerprint(quartic_ring(m.pair).R), fingerprint(rings.R));
    std::mt19937_64 rng(70);
    for (int t = 0; t < 20; ++t) {
        auto p = random_nondegenerate(rng, 3);
        auto r = quartic_ring(p);
        auto mm = resolvent_map_numeric(r.R, r.C);
        CHECK(pair_disc(mm.pair) == pair_disc(p));
        for (auto& w : mm.w)
            for (auto& b : w) CHECK(b.radius < 1e-3);
    }
}

TEST_CASE("resolvent map rejects a ring paired with the wrong cubic ring") {
    auto rings = quartic_ring(psi_binary_quartic(BinaryForm{1, 0, 0, 0, 1}));
    try {
        resolvent_map_numeric(rings.R, nakagawa_ring(BinaryForm{1, 0, -1, -1}));
        FAIL("mismatched pair accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PairingNotFound);
    }
    // the resolvent ring of a different quartic
    auto other = quartic_ring(psi_binary_quartic(BinaryForm{1, 0, 1, 0, 1}));
    CHECK_THROWS_AS(resolvent_map_numeric(rings.R, other.C), Error);
}

TEST_CASE("index identities for 1, x, y, xy and 1, x, y, x^2") {
    std::mt19937_64 rng(71);
    int tested = 0;
    for (int t = 0; t < 50; ++t) {
        auto p = random_nondegenerate(rng, 3);
        auto R = quartic_ring(p).R;
        Elem x = random_elem(rng, 3), y = random_elem(rng, 3);
        CHECK(index_1_x_y_xy(R, x, y) == index_pair(phi_quadratic(p, x), phi_quadratic(p, y)));
        CHECK(index_1_x_y_x2(R, x, y) == index_pair(phi_quadratic(p, x), phi_bilinear2(p, x, y)));
        ++tested;
    }
    CHECK(tested == 50);
}

TEST_CASE("pair literals") {
    auto p = psi_binary_quartic(BinaryForm{1, 2, 3, 4, 5});
    CHECK(parse_pair(format_pair(p)) == p);
    CHECK(format_pair(psi_binary_quartic(BinaryForm{1, 0, 0, 0, 1})) == "1,0,0,0,0,1;0,0,1,1,0,0");
    CHECK_THROWS_AS(parse_pair("1,2,3"), Error);
    CHECK_THROWS_AS(parse_pair("1,2,3,4,5,6;1,2,3,4,5"), Error);
}
