#include <Eigen/Dense>
#include <algorithm>

#include "smin/exact.hpp"

namespace smin {

namespace {

template <class T>
T unit_roundoff();
template <>
double unit_roundoff<double>() { return 0x1p-53; }
template <>
f128 unit_roundoff<f128>() { return scalbnq(1, -113); }

template <class T>
T from_int(const Int& z);
template <>
double from_int<double>(const Int& z) { return z.get_d(); }
template <>
f128 from_int<f128>(const Int& z) { return to_f128(z); }

template <class T>
T cabs(const Cx<T>& z) { return sqrt_t(z.norm2()); }

template <class T>
struct Eval {
    Cx<T> p, dp;
    T bound_p, bound_dp;  // sum |c_i||z|^i and sum i|c_i||z|^{i-1}
};

template <class T>
Eval<T> horner(const std::vector<T>& c, const Cx<T>& z) {
    Eval<T> e{Cx<T>(0), Cx<T>(0), T(0), T(0)};
    T az = cabs(z);
    for (int i = int(c.size()) - 1; i >= 0; --i) {
        e.dp = e.dp * z + e.p;
        e.p = e.p * z + Cx<T>(c[i]);
        e.bound_dp = e.bound_dp * az + e.bound_p;
        e.bound_p = e.bound_p * az + absd(c[i]);
    }
    return e;
}

}  // namespace

template <class T>
std::vector<RootBall<T>> isolate_roots(const IntPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root isolation of zero polynomial");
    int n = p.degree();
    if (n == 0) return {};
    if (!is_squarefree(p)) throw Error(ErrorKind::NotSquarefree, to_string(p));
    std::vector<T> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = from_int<T>(p.c[i]);

    std::vector<Cx<T>> z(n);
    if (n == 1) {
        z[0] = Cx<T>(-c[0] / c[1]);
    } else {
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
        double lead = p.lead().get_d();
        for (int i = 1; i < n; ++i) comp(i, i - 1) = 1;
        for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.c[i].get_d() / lead;
        Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
        auto ev = es.eigenvalues();
        for (int i = 0; i < n; ++i) z[i] = Cx<T>(T(ev[i].real()), T(ev[i].imag()));
        // break exact coincidences so the Aberth correction is defined
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if ((z[i] - z[j]).norm2() == 0) z[i] = z[i] + Cx<T>(T(1e-7) * T(i), T(1e-7));
    }

    const T u = unit_roundoff<T>();
    for (int it = 0; it < 200; ++it) {
        T worst = 0;
        for (int k = 0; k < n; ++k) {
            Eval<T> e = horner(c, z[k]);
            if (e.p.norm2() == 0) continue;
            Cx<T> ratio = e.p / e.dp;
            Cx<T> s(0);
            for (int j = 0; j < n; ++j)
                if (j != k) s = s + Cx<T>(1) / (z[k] - z[j]);
            Cx<T> w = ratio / (Cx<T>(1) - ratio * s);
            z[k] = z[k] - w;
            T rel = cabs(w) / (cabs(z[k]) + T(1));
            worst = std::max(worst, rel);
        }
        if (worst < u * T(4)) break;
    }

    std::vector<RootBall<T>> out(n);
    const T gamma = T(4 * n + 8) * u;
    for (int k = 0; k < n; ++k) {
        Eval<T> e = horner(c, z[k]);
        T num = cabs(e.p) + gamma * e.bound_p;
        T den = cabs(e.dp) - gamma * e.bound_dp;
        T r = den > 0 ? T(n) * num / den * (T(1) + T(16) * u) : T(1) / T(0);
        out[k] = {z[k], r};
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (!(cabs(out[i].z - out[j].z) > out[i].radius + out[j].radius))
                throw Error(ErrorKind::PrecisionExhausted, "root balls overlap for " + to_string(p));
    std::sort(out.begin(), out.end(), [](const RootBall<T>& a, const RootBall<T>& b) {
        if (a.z.re != b.z.re) return a.z.re < b.z.re;
        return a.z.im < b.z.im;
    });
    return out;
}

template std::vector<RootBall<double>> isolate_roots<double>(const IntPoly&);
template std::vector<RootBall<f128>> isolate_roots<f128>(const IntPoly&);

std::vector<ComplexBall> certified_roots(const IntPoly& p, double tol) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root isolation of zero polynomial");
    if (p.degree() == 1) {
        Rat root(-p.c[0], p.c[1]);
        root.canonicalize();
        double d = root.get_d();
        Rat diff = abs(root - Rat(d));
        double r = diff == 0 ? 0.0 : std::nextafter(diff.get_d(), 1.0);
        if (r > tol) throw Error(ErrorKind::PrecisionExhausted, "linear root not representable");
        return {ComplexBall{{d, 0.0}, r}};
    }
    auto balls = isolate_roots<f128>(p);
    std::vector<ComplexBall> out;
    for (auto& b : balls) {
        double re = double(b.z.re), im = double(b.z.im);
        f128 dre = b.z.re - f128(re), dim = b.z.im - f128(im);
        double r = double(b.radius + sqrtq(dre * dre + dim * dim)) * (1 + 1e-15);
        r = std::nextafter(r, 1.0);
        if (!(r <= tol)) throw Error(ErrorKind::PrecisionExhausted, "root radius above tolerance for " + to_string(p));
        out.push_back({{re, im}, r});
    }
    return out;
}

}  // namespace smin
