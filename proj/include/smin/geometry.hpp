// Coefficient boxes, lattice-point counts, polytopes and density functions.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smin/exact.hpp"

namespace smin {

enum class BoxKind { cubic, quartic, quintic, binary };

struct BoxSpec {
    BoxKind kind = BoxKind::cubic;
    int n = 3;               // form degree for binary boxes
    std::vector<Rat> exps;   // one exponent per coordinate
    double X = 0;
    std::vector<Int> bounds; // floor(X^e), 0 when e < 0

    int dim() const { return int(exps.size()); }
};

// cubic: p = (p1, p2); quartic: (p1, p2, p3, q1, q2); quintic: (p1..p4, q1..q5); binary: r = (r1, r2).
BoxSpec make_box(BoxKind kind, const std::vector<Rat>& point, double X, int n = 3);
Int floor_power(double X, const Rat& e);
bool in_box(const BoxSpec& b, const std::vector<Int>& coords);
double box_volume(const BoxSpec& b);

Rat binary_k(int n);  // 1 / (2 (1 + ... + (n-1)))
std::vector<Rat> segment_L(int n, const std::vector<Rat>& r);

struct CountResult {
    Int count = 0;
    double volume = 0;
};
using CoordPredicate = std::function<bool(const long long*)>;
// Exact count of integer points in the box satisfying pred (all points when pred is empty).
CountResult count_points(const BoxSpec& b, const CoordPredicate& pred = {}, double budget = 1e9,
                         unsigned threads = 0);

// a . x <= rhs, or a . x == rhs when eq is set.
struct LinConstraint {
    std::vector<Rat> a;
    Rat rhs;
    bool eq = false;
};

struct PolytopeSpec {
    std::string name;
    int dim = 0;
    std::vector<std::vector<LinConstraint>> pieces;  // union of convex pieces
};

// poly4_s4, poly4_d4, poly4, poly4_a, poly4_b, poly4_c, poly5_s5, basic4, basic5
PolytopeSpec polytope(const std::string& name);
bool contains(const PolytopeSpec& p, const std::vector<Rat>& pt);
bool polytope_contains(const std::string& name, const std::vector<Rat>& pt);
std::vector<LinConstraint> basic_constraints(int degree);

// table is (degree = 4) 4x4 with values in [0, 2], or (degree = 5) 6x6 with values in [0, 4].
PolytopeSpec flag_polytope(const std::vector<std::vector<int>>& table, int degree);
std::vector<std::vector<Rat>> vertices(const std::vector<LinConstraint>& piece, int dim);
bool same_convex_polytope(const PolytopeSpec& a, const PolytopeSpec& b);

struct DensityValue {
    enum Kind { Value, Zero, Unknown } kind = Zero;
    Rat value = 0;
    std::string str() const;
};
// d3, d3max, dS3, d4, dS4, dD4, dD4_lower, d5, dS5
DensityValue density_value(const std::string& which, const std::vector<Rat>& pt);

Rat parse_rat(const std::string& s);
std::vector<Rat> parse_point(const std::string& s);  // "1/4,1/4"

}  // namespace smin
