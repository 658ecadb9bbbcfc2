// Binary n-ic forms, the GL2(Z) action, and the rings they parametrize.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smin/exact.hpp"
#include "smin/rings.hpp"

namespace smin {

// f = f_0 x^n + f_1 x^{n-1} y + ... + f_n y^n
struct BinaryForm {
    int n = 0;
    std::vector<Int> f;

    BinaryForm() = default;
    explicit BinaryForm(std::vector<Int> coeffs);
    BinaryForm(std::initializer_list<long> coeffs);

    Int disc() const { return disc_binary_form(n, f); }
    bool nondegenerate() const { return disc() != 0; }
    Int eval(const Int& x, const Int& y) const;

    bool operator==(const BinaryForm& o) const { return f == o.f; }
    bool operator<(const BinaryForm& o) const;
};

struct GL2Z {
    Int a = 1, b = 0, c = 0, d = 1;
    Int det() const { return a * d - b * c; }
    GL2Z operator*(const GL2Z& o) const { return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d}; }
};

// (gamma f)(x,y) = f((x,y) gamma), divided by det gamma when n = 3.
BinaryForm gl2_act(const GL2Z& g, const BinaryForm& f);
// Plain substitution f(ax + cy, bx + dy), no determinant twist.
BinaryForm substitute(const GL2Z& g, const BinaryForm& f);

struct Heights {
    Int hc;
    std::optional<double> hr;
};
Heights heights(const BinaryForm& f);
bool is_reducible(const BinaryForm& f);

// For n = 3 the basis is the Delone-Faddeev one (omega, theta); for n >= 4 it is zeta_1..zeta_{n-1}.
RankRing nakagawa_ring(const BinaryForm& f);
// zeta_1..zeta_{n-1} basis for every n.
RankRing nakagawa_ring_raw(const BinaryForm& f);
// omega theta = -ad, omega^2 = -ac + b omega - a theta, theta^2 = -bd + d omega - c theta.
RankRing delone_faddeev_ring(const BinaryForm& f);

// Homogeneous integer polynomial, keyed by exponent vectors.
struct MPoly {
    int vars = 0;
    std::map<std::vector<int>, Int> terms;

    MPoly() = default;
    explicit MPoly(int v) : vars(v) {}
    static MPoly constant(int vars, const Int& c);
    static MPoly variable(int vars, int i);
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly scaled(const Int& s) const;
    void prune();
    bool operator==(const MPoly& o) const { return vars == o.vars && terms == o.terms; }
};
std::string to_string(const MPoly& p);

// I(alpha) = det of the coordinates of 1, alpha, ..., alpha^{n-1}, alpha = sum x_i v_i.
MPoly index_form(const RankRing& r);
MPoly form_poly(const BinaryForm& f);
bool fess_identity_check(const BinaryForm& f);

BinaryForm parse_form(const std::string& s);
std::string format_form(const BinaryForm& f);

}  // namespace smin
