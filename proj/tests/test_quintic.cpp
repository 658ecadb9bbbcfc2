#include <algorithm>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "smin/quintic.hpp"

using namespace smin;

namespace {

std::vector<Rat> midpoint5() {
    return {Rat(1, 8), Rat(1, 8), Rat(1, 8), Rat(1, 8), Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(3, 8), Rat(3, 8)};
}

std::vector<Rat> monic5() {
    std::vector<Rat> v;
    for (int k : {1, 2, 3, 4, 4, 5, 6, 7, 8}) v.push_back(oracle::frac(k, 20));
    return v;
}

// the fixed entries of psi, as (k, i, j, value)
const int kFixed[6][4] = {{1, 2, 3, -1}, {2, 1, 3, 1}, {2, 2, 4, 1}, {3, 1, 4, -1}, {3, 2, 5, -1}, {4, 1, 5, 1}};

}  // namespace

TEST_CASE("psi of binary quintics") {
    auto t = psi_binary_quintic(BinaryForm{1, 0, 0, 0, 0, 1});
    CHECK(t.at(1, 2, 3) == -1);
    CHECK(t.at(1, 4, 5) == -1);
    CHECK(t.at(4, 1, 5) == 1);
    CHECK(t.at(4, 3, 4) == -1);
    CHECK(t.at(2, 3, 5) == 0);
    CHECK(t.at(2, 4, 5) == 0);
    CHECK(t.at(3, 3, 4) == 0);
    CHECK(t.at(3, 3, 5) == 0);

    auto u = psi_binary_quintic(BinaryForm{1, 2, 3, 4, 5, 6});
    CHECK(u.at(1, 4, 5) == -6);
    CHECK(u.at(2, 3, 5) == -4);
    CHECK(u.at(2, 4, 5) == -5);
    CHECK(u.at(3, 3, 4) == -2);
    CHECK(u.at(3, 3, 5) == -3);
    CHECK(u.at(4, 3, 4) == -1);
    for (auto& f : kFixed) CHECK(u.at(f[0], f[1], f[2]) == f[3]);

    auto z = psi_binary_quintic(BinaryForm(std::vector<Int>(6, 0)));
    int nonzero = 0;
    for (auto& s : z.slots) nonzero += s != 0;
    CHECK(nonzero == 6);
    for (auto& f : kFixed) CHECK(z.at(f[0], f[1], f[2]) == f[3]);
}

TEST_CASE("alternating completion") {
    AltTensor t;
    t.set(2, 1, 4, 7);
    CHECK(t.at(2, 4, 1) == -7);
    CHECK(t.at(2, 3, 3) == 0);
    t.set(3, 5, 2, 4);
    CHECK(t.at(3, 2, 5) == -4);
    CHECK_THROWS_AS(AltTensor::pair_index(3, 3), Error);
}

TEST_CASE("psi is affine-linear in the form") {
    std::mt19937_64 rng(81);
    auto base = psi_binary_quintic(BinaryForm(std::vector<Int>(6, 0)));
    for (int t = 0; t < 50; ++t) {
        auto a = oracle::random_coeffs(rng, 5, 9), b = oracle::random_coeffs(rng, 5, 9);
        std::vector<Int> s(6);
        for (int i = 0; i < 6; ++i) s[i] = a[i] + b[i];
        auto ta = psi_binary_quintic(BinaryForm(a)), tb = psi_binary_quintic(BinaryForm(b)),
             ts = psi_binary_quintic(BinaryForm(s));
        for (int k = 0; k < 40; ++k) CHECK(ts.slots[k] - base.slots[k] == (ta.slots[k] - base.slots[k]) + (tb.slots[k] - base.slots[k]));
    }
    // injective: distinct forms give distinct tensors
    CHECK_FALSE(psi_binary_quintic(BinaryForm{1, 0, 0, 0, 0, 1}) == psi_binary_quintic(BinaryForm{1, 0, 0, 0, 1, 1}));
}

TEST_CASE("quintic box and the classical height") {
    double X = 256;  // X^{1/8} = 2
    CHECK(tensor_in_box(AltTensor{}, midpoint5(), X));
    CHECK(tensor_in_box(AltTensor{}, monic5(), 2));
    std::mt19937_64 rng(82);
    std::uniform_int_distribution<long> u(-3, 3);
    int inside = 0;
    for (int t = 0; t < 2000; ++t) {
        std::vector<Int> c(6);
        for (auto& x : c) x = u(rng);
        BinaryForm f(c);
        bool small = heights(f).hc <= 2;
        CHECK(small == tensor_in_box(psi_binary_quintic(f), midpoint5(), X));
        inside += small;
    }
    CHECK(inside > 0);
    CHECK(tensor_in_box(psi_binary_quintic(BinaryForm{2, -2, 2, -2, 2, -2}), midpoint5(), X));
    for (int i = 0; i < 6; ++i) {
        std::vector<Int> c(6, 2);
        c[i] = 3;
        CHECK_FALSE(tensor_in_box(psi_binary_quintic(BinaryForm(c)), midpoint5(), X));
    }
    CHECK_THROWS_AS(tensor_in_box(AltTensor{}, std::vector<Rat>(9, Rat(1, 8)), X), Error);
}

std::vector<Int> random_monic(std::mt19937_64& rng, long base) {
    std::vector<Int> c(6, 0);
    c[0] = 1;
    long b = 1;
    for (int i = 1; i < 6; ++i) {
        b *= base;
        c[i] = std::uniform_int_distribution<long>(-b, b)(rng);
    }
    return c;
}

TEST_CASE("monic quintics with small root height sit in the monic box up to the fixed slots") {
    double X = 1048576;  // X^{1/20} = 2
    auto box = make_box(BoxKind::quintic, monic5(), X);
    // the fixed +-1 entries in slots with exponent -1/20
    std::set<int> tight{AltTensor::slot(2, 1, 3), AltTensor::slot(3, 1, 4), AltTensor::slot(4, 1, 5)};
    for (int s : tight) CHECK(box.exps[s] == oracle::frac(-1, 20));
    auto inside_off_tight = [&](const AltTensor& t) {
        for (int s = 0; s < 40; ++s)
            if (!tight.count(s) && abs(t.slots[s]) > box.bounds[s]) return false;
        return true;
    };
    std::mt19937_64 rng(84);
    for (int t = 0; t < 500; ++t) {
        BinaryForm f(random_monic(rng, 3));
        bool small = *heights(f).hr <= 2.0;
        auto psi = psi_binary_quintic(f);
        CHECK(small == inside_off_tight(psi));
        CHECK_FALSE(tensor_in_box(psi, monic5(), X));
        // one factor X^{1/20} absorbs the fixed entries
        if (small)
            for (int s : tight) CHECK(abs(psi.slots[s]) <= floor_power(X, box.exps[s] + oracle::frac(1, 20)));
    }
}

TEST_CASE("group action on tensors") {
    auto t = psi_binary_quintic(BinaryForm{1, 2, 3, 4, 5, 6});
    std::array<long, 16> id4{};
    std::array<long, 25> id5{};
    for (int i = 0; i < 4; ++i) id4[i * 5] = 1;
    for (int i = 0; i < 5; ++i) id5[i * 6] = 1;
    CHECK(act_tensor(t, id4, id5) == t);
    // a unipotent g5 and its inverse
    auto g = id5, gi = id5;
    g[0 * 5 + 3] = 2;
    gi[0 * 5 + 3] = -2;
    CHECK(act_tensor(act_tensor(t, id4, g), id4, gi) == t);
    auto h = id4, hi = id4;
    h[1 * 4 + 2] = -3;
    hi[1 * 4 + 2] = 3;
    CHECK(act_tensor(act_tensor(t, h, id5), hi, id5) == t);
}

TEST_CASE("quintic ring side") {
    BinaryForm f{1, 0, 0, 0, 0, 1};
    auto p = quintic_ring_side(f);
    CHECK(p.disc == 3125);
    auto direct = profile(nakagawa_ring(f));
    for (size_t i = 0; i < p.lambda.size(); ++i) CHECK(p.lambda[i] == doctest::Approx(direct.lambda[i]).epsilon(1e-12));
    CHECK(p.p.size() == 4);
    CHECK_THROWS_AS(quintic_ring_side(BinaryForm{1, 2, 1, 0, 0, 0}), Error);
}

TEST_CASE("quintic profiles near the midpoint and monic vertices") {
    std::mt19937_64 rng(83);
    std::uniform_int_distribution<long> u(-3, 3);
    BinaryForm best{1, 0, 0, 0, 0, 1};
    Int best_disc = 0;
    for (int t = 0; t < 300; ++t) {
        std::vector<Int> c(6);
        for (auto& x : c) x = u(rng);
        BinaryForm f(c);
        if (abs(f.disc()) > best_disc) best_disc = abs(f.disc()), best = f;
    }
    auto mp = quintic_ring_side(best);
    for (double q : mp.p) CHECK(std::abs(q - 0.125) <= 0.12);

    int tested = 0;
    for (int t = 0; t < 400 && tested < 40; ++t) {
        BinaryForm f(random_monic(rng, 2));
        if (abs(f.disc()) < 16384) continue;
        ++tested;
        auto prof = quintic_ring_side(f);
        for (size_t i = 1; i < prof.p.size(); ++i) CHECK(prof.p[i - 1] <= prof.p[i] + 1e-12);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(prof.p[i] - (i + 1) / 20.0) <= 0.15);
    }
    CHECK(tested > 0);
}

TEST_CASE("tensor literals") {
    auto t = psi_binary_quintic(BinaryForm{1, 2, 3, 4, 5, 6});
    CHECK(parse_tensor(format_tensor(t)) == t);
    CHECK_THROWS_AS(parse_tensor("1,2,3"), Error);
}
