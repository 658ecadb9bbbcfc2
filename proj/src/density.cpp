#include <algorithm>

#include "smin/geometry.hpp"

namespace smin {

std::string DensityValue::str() const {
    switch (kind) {
        case Value: return value.get_str();
        case Zero: return "zero";
        default: return "unknown";
    }
}

namespace {

DensityValue val(const Rat& v) { return {DensityValue::Value, v}; }
DensityValue zero() { return {DensityValue::Zero, 0}; }
DensityValue unknown() { return {DensityValue::Unknown, 0}; }

Rat pos(const Rat& v) { return v > 0 ? v : Rat(0); }

void need_dim(const std::vector<Rat>& pt, size_t d) {
    if (pt.size() != d) throw Error(ErrorKind::DimensionMismatch, "point has the wrong dimension");
}

bool on_segment(const std::vector<Rat>& p, const Rat& lo, const Rat& hi) {
    return p[0] + p[1] == Rat(1, 2) && p[0] >= lo && p[0] <= hi;
}

Rat quartic_base(const std::vector<Rat>& p) {
    return 1 - (p[2] - p[1]) - (p[2] - p[0]) - (p[1] - p[0]) - (p[4] - p[3]);
}

Rat quartic_total(const std::vector<Rat>& p) {
    Rat s = quartic_base(p);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            for (int k = 0; k < 2; ++k) s += pos(p[3 + k] - p[i] - p[j]);
    return s;
}

Rat d4_lower(const std::vector<Rat>& p) {
    return quartic_base(p) + (p[4] - 2 * p[0]) + (p[4] - p[0] - p[1]) + (p[4] - p[0] - p[2]);
}

Rat quintic_total(const std::vector<Rat>& p) {
    Rat s = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) s -= p[j] - p[i];
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) s -= p[4 + j] - p[4 + i];
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            for (int k = 0; k < 4; ++k) s += pos(Rat(-1, 2) + p[4 + i] + p[4 + j] - p[k]);
    return s;
}

}  // namespace

DensityValue density_value(const std::string& which, const std::vector<Rat>& p) {
    if (which == "d3" || which == "d3max" || which == "dS3") {
        need_dim(p, 2);
        if (which == "d3") {
            if (!on_segment(p, 0, Rat(1, 4))) return zero();
            return val(1 - (p[1] - p[0]) + pos(Rat(1, 2) - 3 * p[0]));
        }
        if (which == "d3max" && p[0] == 0 && p[1] == Rat(1, 2)) return val(1);
        if (on_segment(p, Rat(1, 6), Rat(1, 4))) return val(1 - (p[1] - p[0]));
        return zero();
    }
    if (which == "d4" || which == "dS4" || which == "dD4" || which == "dD4_lower") {
        need_dim(p, 5);
        if (which == "d4") return polytope_contains("poly4", p) ? val(quartic_total(p)) : zero();
        if (which == "dS4") return polytope_contains("poly4_s4", p) ? val(quartic_total(p)) : zero();
        bool d4 = polytope_contains("poly4_d4", p);
        if (!d4) return zero();
        if (which == "dD4_lower") return val(d4_lower(p));
        return polytope_contains("poly4_s4", p) ? unknown() : val(d4_lower(p));
    }
    if (which == "d5" || which == "dS5") {
        need_dim(p, 9);
        if (polytope_contains("poly5_s5", p)) return val(quintic_total(p));
        if (which == "dS5" || !polytope_contains("basic5", p)) return zero();
        return unknown();
    }
    throw Error(ErrorKind::UnknownFunction, "unknown density function '" + which + "'");
}

}  // namespace smin
