// Canonical representatives of GL2(Z)-orbits of binary cubic forms under the twisted action.
#include <array>
#include <cmath>

#include "smin/forms.hpp"
#include "smin/rings.hpp"

namespace smin {

namespace {

struct Small {
    int a, b, c, d;
};

const std::vector<Small>& small_matrices() {
    static const std::vector<Small> mats = [] {
        std::vector<Small> v;
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b)
                for (int c = -1; c <= 1; ++c)
                    for (int d = -1; d <= 1; ++d)
                        if (a * d - b * c == 1 || a * d - b * c == -1) v.push_back({a, b, c, d});
        return v;
    }();
    return mats;
}

struct Overflow {};

inline double to_d(const __int128& v) { return double(v); }
inline double to_d(const Int& v) { return v.get_d(); }
inline long double to_ld(const __int128& v) { return (long double)v; }
inline long double to_ld(const Int& v) { return (long double)v.get_d(); }

template <class T>
inline void guard(const T&) {}
template <>
inline void guard<__int128>(const __int128& v) {
    const __int128 lim = __int128(1) << 60;
    if (v > lim || v < -lim) throw Overflow{};
}

template <class T>
using Cub = std::array<T, 4>;

// f((x,y) g) / det g with g = [[a,b],[c,d]]: x -> a x + c y, y -> b x + d y
template <class T>
Cub<T> act(const Cub<T>& f, long a, long b, long c, long d) {
    // (a x + c y)^{3-i} (b x + d y)^i
    T A = a, B = b, C = c, D = d;
    Cub<T> r{T(0), T(0), T(0), T(0)};
    // i = 0: (A x + C y)^3
    r[0] += f[0] * A * A * A;
    r[1] += f[0] * 3 * A * A * C;
    r[2] += f[0] * 3 * A * C * C;
    r[3] += f[0] * C * C * C;
    // i = 1: (A x + C y)^2 (B x + D y)
    r[0] += f[1] * A * A * B;
    r[1] += f[1] * (A * A * D + 2 * A * C * B);
    r[2] += f[1] * (C * C * B + 2 * A * C * D);
    r[3] += f[1] * C * C * D;
    // i = 2: (A x + C y)(B x + D y)^2
    r[0] += f[2] * A * B * B;
    r[1] += f[2] * (C * B * B + 2 * A * B * D);
    r[2] += f[2] * (A * D * D + 2 * C * B * D);
    r[3] += f[2] * C * D * D;
    // i = 3
    r[0] += f[3] * B * B * B;
    r[1] += f[3] * 3 * B * B * D;
    r[2] += f[3] * 3 * B * D * D;
    r[3] += f[3] * D * D * D;
    if (a * d - b * c < 0)
        for (auto& v : r) v = -v;
    for (auto& v : r) guard(v);
    return r;
}

template <class T>
std::array<T, 3> hessian(const Cub<T>& f) {
    const T &a = f[0], &b = f[1], &c = f[2], &d = f[3];
    return {b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d};
}

template <class T>
T tabs(const T& v) {
    return v < 0 ? T(-v) : v;
}

template <class T>
bool lex_less(const Cub<T>& x, const Cub<T>& y) {
    for (int i = 0; i < 4; ++i) {
        if (x[i] < y[i]) return true;
        if (y[i] < x[i]) return false;
    }
    return false;
}

// Quadratic factor of the complex-conjugate root pair, scaled to be positive definite.
template <class T>
std::array<long double, 3> complex_pair_factor(const Cub<T>& f) {
    long double a = to_ld(f[0]), b = to_ld(f[1]), c = to_ld(f[2]), d = to_ld(f[3]);
    if (f[0] == 0) {
        long double s = b > 0 ? 1 : -1;
        return {s * b, s * c, s * d};
    }
    if (f[3] == 0) {
        // root at t = 0: factor x (a x^2 + b x y + c y^2)
        long double s = a > 0 ? 1 : -1;
        return {s * a, s * b, s * c};
    }
    long double p = (3 * a * c - b * b) / (3 * a * a);
    long double q = (2 * b * b * b - 9 * a * b * c + 27 * a * a * d) / (27 * a * a * a);
    long double disc = q * q / 4 + p * p * p / 27;
    long double sq = std::sqrt(std::max(disc, (long double)0));
    long double t = std::cbrt(-q / 2 + sq) + std::cbrt(-q / 2 - sq);
    long double r = t - b / (3 * a);
    for (int it = 0; it < 6; ++it) {
        long double v = ((a * r + b) * r + c) * r + d;
        long double dv = (3 * a * r + 2 * b) * r + c;
        if (dv == 0) break;
        long double step = v / dv;
        r -= step;
        if (std::fabs(step) <= 1e-19L * (1 + std::fabs(r))) break;
    }
    long double e = b + a * r, g = c + e * r;
    long double s = a > 0 ? 1 : -1;
    return {s * a, s * e, s * g};
}

template <class T>
Cub<T> canonical_impl(Cub<T> f) {
    T D = f[1] * f[1] * f[2] * f[2] - 4 * f[0] * f[2] * f[2] * f[2] - 4 * f[1] * f[1] * f[1] * f[3] -
          27 * f[0] * f[0] * f[3] * f[3] + 18 * f[0] * f[1] * f[2] * f[3];
    if (D == 0) throw Error(ErrorKind::DegenerateDiscriminant, "canonical form of degenerate cubic");
    const auto& mats = small_matrices();
    Cub<T> best{};
    bool have = false;
    if (D > 0) {
        for (int guard_it = 0; guard_it < 10000; ++guard_it) {
            auto h = hessian(f);
            if (tabs(h[1]) > h[0]) {
                // x -> x + t y with t = round(-Q / 2P)
                long double t = std::nearbyint(-to_ld(h[1]) / (2 * to_ld(h[0])));
                f = act(f, 1, 0, long(t), 1);
            } else if (h[0] > h[2]) {
                f = act(f, 0, -1, 1, 0);
            } else {
                break;
            }
        }
        for (auto& m : mats) {
            Cub<T> g = act(f, m.a, m.b, m.c, m.d);
            auto h = hessian(g);
            if (!(tabs(h[1]) <= h[0] && h[0] <= h[2])) continue;
            if (!have || lex_less(g, best)) {
                best = g;
                have = true;
            }
        }
    } else {
        const long double tight = 1e-12L, slack = 1e-9L;
        auto q = complex_pair_factor(f);
        for (int guard_it = 0; guard_it < 10000; ++guard_it) {
            long double P = q[0], Q = q[1], R = q[2];
            if (std::fabs(Q) > P * (1 + tight)) {
                long double t = std::nearbyint(-Q / (2 * P));
                f = act(f, 1, 0, long(t), 1);
                q = {P, 2 * P * t + Q, P * t * t + Q * t + R};
            } else if (P > R * (1 + tight)) {
                f = act(f, 0, -1, 1, 0);
                q = {R, -Q, P};
            } else {
                break;
            }
        }
        q = complex_pair_factor(f);
        for (auto& m : mats) {
            // q((x,y) m): x -> a x + c y, y -> b x + d y
            long double P = q[0] * m.a * m.a + q[1] * m.a * m.b + q[2] * m.b * m.b;
            long double Q = 2 * q[0] * m.a * m.c + q[1] * (m.a * m.d + m.b * m.c) + 2 * q[2] * m.b * m.d;
            long double R = q[0] * m.c * m.c + q[1] * m.c * m.d + q[2] * m.d * m.d;
            if (!(std::fabs(Q) <= P * (1 + slack) && P <= R * (1 + slack))) continue;
            Cub<T> g = act(f, m.a, m.b, m.c, m.d);
            if (!have || lex_less(g, best)) {
                best = g;
                have = true;
            }
        }
    }
    if (!have) throw Error(ErrorKind::PrecisionExhausted, "no reduced image found");
    return best;
}

}  // namespace

void cubic_canonical_form_ll(const long long in[4], long long out[4]) {
    const long long lim = 1LL << 30;
    bool small = true;
    for (int i = 0; i < 4; ++i) small = small && in[i] < lim && in[i] > -lim;
    if (small) {
        try {
            Cub<__int128> r = canonical_impl<__int128>({in[0], in[1], in[2], in[3]});
            for (int i = 0; i < 4; ++i) out[i] = (long long)r[i];
            return;
        } catch (const Overflow&) {
        }
    }
    Cub<Int> r = canonical_impl<Int>({Int(long(in[0])), Int(long(in[1])), Int(long(in[2])), Int(long(in[3]))});
    for (int i = 0; i < 4; ++i) out[i] = r[i].get_si();
}

BinaryForm cubic_canonical_form(const BinaryForm& f) {
    if (f.n != 3) throw Error(ErrorKind::UnsupportedDegree, "cubic_canonical_form needs a cubic");
    bool fits = true;
    for (auto& v : f.f) fits = fits && v.fits_slong_p() && abs(v) < (Int(1) << 30);
    if (fits) {
        long long in[4], out[4];
        for (int i = 0; i < 4; ++i) in[i] = f.f[i].get_si();
        try {
            Cub<__int128> r = canonical_impl<__int128>({in[0], in[1], in[2], in[3]});
            for (int i = 0; i < 4; ++i) out[i] = (long long)r[i];
            return BinaryForm({Int(long(out[0])), Int(long(out[1])), Int(long(out[2])), Int(long(out[3]))});
        } catch (const Overflow&) {
        }
    }
    Cub<Int> r = canonical_impl<Int>({f.f[0], f.f[1], f.f[2], f.f[3]});
    return BinaryForm({r[0], r[1], r[2], r[3]});
}

}  // namespace smin
