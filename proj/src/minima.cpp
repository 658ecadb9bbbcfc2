#include "smin/minima.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

namespace smin {

namespace {

template <class T>
T from_rat(const Rat& q);
template <>
double from_rat<double>(const Rat& q) { return q.get_d(); }
template <>
f128 from_rat<f128>(const Rat& q) { return to_f128(q); }

template <class T>
T eps_of();
template <>
double eps_of<double>() { return 0x1p-52; }
template <>
f128 eps_of<f128>() { return scalbnq(1, -112); }

template <class T>
T tsqrt(T x) { return sqrt_t(x); }

template <class T>
T cabs(const Cx<T>& z) { return sqrt_t(z.norm2()); }

template <class T>
struct Embedding {
    int n = 0;
    std::vector<std::vector<Cx<T>>> s;  // s[k][i] = sigma_k(v_i)
    std::vector<std::vector<T>> rad;
};

struct Primitive {
    IntPoly chi;
    std::vector<std::vector<Rat>> cinv;
};

Primitive primitive_element(const RankRing& r, std::uint64_t seed) {
    int n = r.n;
    std::mt19937_64 rng(seed);
    long range = 5;
    for (int attempt = 0; attempt < 200; ++attempt) {
        if (attempt && attempt % 20 == 0) range *= 2;
        std::uniform_int_distribution<long> dist(-range, range);
        Elem theta(n, Int(0));
        for (int i = 1; i < n; ++i) theta[i] = dist(rng);
        // try the plain generator v_1 first: it is usually primitive
        if (attempt == 0 && n > 1) {
            std::fill(theta.begin(), theta.end(), Int(0));
            theta[1] = 1;
        }
        IntPoly chi = charpoly(mult_matrix(r, theta));
        if (!is_squarefree(chi)) continue;
        std::vector<std::vector<Rat>> c(n, std::vector<Rat>(n));
        Elem pw = basis_vector(n, 0);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) c[j][i] = pw[i];
            pw = ring_mul(r, pw, theta);
        }
        return {chi, inverse_rational(c)};
    }
    throw Error(ErrorKind::DegenerateDiscriminant, "no primitive element found");
}

template <class T>
Embedding<T> embed(const RankRing& r, const Primitive& pr) {
    int n = r.n;
    auto roots = isolate_roots<T>(pr.chi);
    Embedding<T> e;
    e.n = n;
    e.s.assign(n, std::vector<Cx<T>>(n));
    e.rad.assign(n, std::vector<T>(n, T(0)));
    const T u = eps_of<T>();
    std::vector<std::vector<T>> cinv(n, std::vector<T>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cinv[i][j] = from_rat<T>(pr.cinv[i][j]);
    for (int k = 0; k < n; ++k) {
        const Cx<T>& z = roots[k].z;
        T az = cabs(z), rho = roots[k].radius;
        std::vector<Cx<T>> pw(n);
        std::vector<T> apw(n), apw_hi(n);
        pw[0] = Cx<T>(1);
        apw[0] = 1;
        apw_hi[0] = 1;
        for (int j = 1; j < n; ++j) {
            pw[j] = pw[j - 1] * z;
            apw[j] = apw[j - 1] * az;
            apw_hi[j] = apw_hi[j - 1] * (az + rho);
        }
        for (int i = 0; i < n; ++i) {
            Cx<T> acc(0);
            T err = 0, mag = 0;
            for (int j = 0; j < n; ++j) {
                if (pr.cinv[i][j] == 0) continue;
                acc = acc + pw[j] * cinv[i][j];
                T a = absd(cinv[i][j]);
                err += a * (apw_hi[j] - apw[j]);
                mag += a * apw[j];
            }
            e.s[k][i] = acc;
            e.rad[k][i] = (err + T(4 * n + 8) * u * mag) * (T(1) + T(8) * u);
        }
    }
    return e;
}

template <class T>
void gram_from(const Embedding<T>& e, std::vector<T>& g, std::vector<T>& rad) {
    int n = e.n;
    const T u = eps_of<T>();
    g.assign(size_t(n) * n, T(0));
    rad.assign(size_t(n) * n, T(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T acc = 0, err = 0;
            for (int k = 0; k < n; ++k) {
                const auto &a = e.s[k][i], &b = e.s[k][j];
                acc += a.re * b.re + a.im * b.im;
                T ra = e.rad[k][i], rb = e.rad[k][j];
                err += cabs(a) * rb + cabs(b) * ra + ra * rb + T(8) * u * cabs(a) * cabs(b);
            }
            g[size_t(i) * n + j] = acc / T(n);
            rad[size_t(i) * n + j] = err / T(n);
        }
}

// ---------------------------------------------------------------- lattice reduction

using IMat = std::vector<std::vector<long long>>;

template <class T>
std::vector<T> transform_gram(const std::vector<T>& g, const IMat& b, int n) {
    // rows of b are basis vectors
    std::vector<T> out(size_t(n) * n, T(0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            T s = 0;
            for (int a = 0; a < n; ++a) {
                if (!b[i][a]) continue;
                for (int c = 0; c < n; ++c)
                    if (b[j][c]) s += T(b[i][a]) * T(b[j][c]) * g[size_t(a) * n + c];
            }
            out[size_t(i) * n + j] = out[size_t(j) * n + i] = s;
        }
    return out;
}

template <class T>
bool cholesky(const std::vector<T>& g, int n, std::vector<T>& mu, std::vector<T>& bstar) {
    mu.assign(size_t(n) * n, T(0));
    bstar.assign(n, T(0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            T s = g[size_t(i) * n + j];
            for (int k = 0; k < j; ++k) s -= mu[size_t(i) * n + k] * mu[size_t(j) * n + k] * bstar[k];
            mu[size_t(i) * n + j] = s / bstar[j];
        }
        T s = g[size_t(i) * n + i];
        for (int k = 0; k < i; ++k) s -= mu[size_t(i) * n + k] * mu[size_t(i) * n + k] * bstar[k];
        if (!(s > 0)) return false;
        bstar[i] = s;
        mu[size_t(i) * n + i] = 1;
    }
    return true;
}

template <class T>
T tround(T x);
template <>
double tround<double>(double x) { return std::nearbyint(x); }
template <>
f128 tround<f128>(f128 x) { return rintq(x); }

template <class T>
IMat lll(const std::vector<T>& g, int n) {
    IMat b(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) b[i][i] = 1;
    std::vector<T> mu, bs;
    int k = 1, guard = 0;
    while (k < n && guard++ < 100000) {
        auto gb = transform_gram(g, b, n);
        if (!cholesky(gb, n, mu, bs)) throw Error(ErrorKind::PrecisionExhausted, "Gram not positive definite");
        for (int j = k - 1; j >= 0; --j) {
            T m = mu[size_t(k) * n + j];
            if (absd(m) > T(0.5) + T(1e-9)) {
                long long q = (long long)tround(m);
                for (int c = 0; c < n; ++c) b[k][c] -= q * b[j][c];
                gb = transform_gram(g, b, n);
                cholesky(gb, n, mu, bs);
            }
        }
        T m = mu[size_t(k) * n + k - 1];
        if (bs[k] < (T(0.99) - m * m) * bs[k - 1]) {
            std::swap(b[k], b[k - 1]);
            k = std::max(k - 1, 1);
        } else {
            ++k;
        }
    }
    return b;
}

// Unimodular V whose first columns span the saturation of the given vectors (as columns).
void saturate(const std::vector<std::vector<long long>>& w, int n, IMat& v, IMat& vinv) {
    int k = int(w.size());
    IMat a(n, std::vector<long long>(k));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) a[i][j] = w[j][i];
    // rows of r: r * a = [T; 0]; v = r^{-1}
    IMat r(n, std::vector<long long>(n, 0));
    v = r;
    for (int i = 0; i < n; ++i) r[i][i] = v[i][i] = 1;
    int top = 0;
    for (int c = 0; c < k && top < n; ++c) {
        for (;;) {
            int best = -1;
            for (int i = top; i < n; ++i)
                if (a[i][c] != 0 && (best < 0 || std::llabs(a[i][c]) < std::llabs(a[best][c]))) best = i;
            if (best < 0) break;
            if (best != top) {
                std::swap(a[best], a[top]);
                std::swap(r[best], r[top]);
                for (int i = 0; i < n; ++i) std::swap(v[i][best], v[i][top]);
            }
            bool clean = true;
            for (int i = top + 1; i < n; ++i) {
                if (a[i][c] == 0) continue;
                long long q = a[i][c] / a[top][c];
                for (int j = 0; j < k; ++j) a[i][j] -= q * a[top][j];
                for (int j = 0; j < n; ++j) r[i][j] -= q * r[top][j];
                // inverse: column top += q * column i
                for (int j = 0; j < n; ++j) v[j][top] += q * v[j][i];
                if (a[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[top][c] != 0) ++top;
    }
    vinv = r;
}

template <class T>
struct Enum {
    int n, k;
    const std::vector<T>& mu;
    const std::vector<T>& bs;
    T bound;
    std::vector<long long> x, best;
    bool found = false;
    long long nodes = 0;

    void run(int level, T partial) {
        if (++nodes > 50000000) throw Error(ErrorKind::ResourceBudgetExceeded, "enumeration node budget");
        if (level < k) {
            bool any = false;
            for (int j = k; j < n; ++j) any = any || x[j] != 0;
            if (!any) return;
        }
        if (level < 0) {
            if (partial < bound) {
                bound = partial;
                best = x;
                found = true;
            }
            return;
        }
        T c = 0;
        for (int j = level + 1; j < n; ++j) c -= mu[size_t(j) * n + level] * T(x[j]);
        T rem = bound - partial;
        if (rem < 0) return;
        T width = tsqrt(rem / bs[level]);
        long long center = (long long)tround(c);
        // zig-zag around the center
        for (long long step = 0;; ++step) {
            bool any_in = false;
            for (int sgn = 0; sgn < 2; ++sgn) {
                if (step == 0 && sgn == 1) break;
                long long xi = sgn == 0 ? center + step : center - step;
                T d = T(xi) - c;
                T contrib = d * d * bs[level];
                if (contrib > bound - partial) continue;
                any_in = true;
                x[level] = xi;
                run(level - 1, partial + contrib);
            }
            x[level] = 0;
            if (!any_in && T(step) > width + T(1)) break;
        }
    }
};

template <class T>
std::vector<T> minima_impl(const std::vector<T>& g, int n, std::vector<std::vector<long long>>* vecs) {
    IMat b = lll(g, n);
    std::vector<T> gr = transform_gram(g, b, n);
    std::vector<std::vector<long long>> chosen;  // in LLL coordinates
    std::vector<T> lambda;
    for (int step = 0; step < n; ++step) {
        IMat v, vinv;
        saturate(chosen, n, v, vinv);
        int k = int(chosen.size());
        // new basis vectors are the columns of v
        IMat vt(n, std::vector<long long>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) vt[i][j] = v[j][i];
        std::vector<T> gp = transform_gram(gr, vt, n);
        T bound = -1;
        int fallback = -1;
        for (int j = 0; j < n; ++j) {
            bool outside = false;
            for (int i = k; i < n; ++i) outside = outside || vinv[i][j] != 0;
            if (outside && (bound < 0 || gr[size_t(j) * n + j] < bound)) {
                bound = gr[size_t(j) * n + j];
                fallback = j;
            }
        }
        std::vector<T> mu, bs;
        if (!cholesky(gp, n, mu, bs)) throw Error(ErrorKind::PrecisionExhausted, "Gram not positive definite");
        Enum<T> en{n, k, mu, bs, bound * (T(1) + T(1e-9)), std::vector<long long>(n, 0), {}, false, 0};
        en.run(n - 1, T(0));
        std::vector<long long> x(n, 0);
        T norm;
        if (en.found) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) x[i] += v[i][j] * en.best[j];
            norm = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) norm += T(x[i]) * T(x[j]) * gr[size_t(i) * n + j];
        } else {
            x[fallback] = 1;
            norm = bound;
        }
        chosen.push_back(x);
        lambda.push_back(tsqrt(norm));
    }
    if (vecs) {
        vecs->clear();
        for (auto& x : chosen) {
            std::vector<long long> y(n, 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) y[j] += x[i] * b[i][j];
            vecs->push_back(y);
        }
    }
    return lambda;
}

MinimaProfile certified_minima(const std::vector<double>& gd, const std::vector<f128>* gq, int n,
                               std::vector<std::vector<long long>>* vecs) {
    MinimaProfile prof;
    if (!gq || gq->empty()) {
        prof.lambda = minima_impl(gd, n, vecs);
        prof.lambda_err.assign(n, 0.0);
        for (int i = 0; i < n; ++i) prof.lambda_err[i] = std::abs(prof.lambda[i]) * 1e-12;
        return prof;
    }
    // reduce once in quad precision, then compare both precisions on the reduced Gram
    IMat b = lll(*gq, n);
    auto rq = transform_gram(*gq, b, n);
    std::vector<double> rd(rq.size());
    for (size_t i = 0; i < rq.size(); ++i) rd[i] = double(rq[i]);
    std::vector<std::vector<long long>> local;
    auto ld = minima_impl(rd, n, vecs ? &local : nullptr);
    auto lq = minima_impl(rq, n, nullptr);
    prof.lambda.assign(n, 0.0);
    prof.lambda_err.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double q = double(lq[i]);
        double diff = std::abs(q - ld[i]);
        if (diff > 1e-9 * std::abs(q))
            throw Error(ErrorKind::PrecisionExhausted, "successive minima disagree across precisions");
        prof.lambda[i] = q;
        prof.lambda_err[i] = diff + 1e-25 * std::abs(q);
    }
    if (vecs) {
        vecs->clear();
        for (auto& x : local) {
            std::vector<long long> y(n, 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) y[j] += x[i] * b[i][j];
            vecs->push_back(y);
        }
    }
    return prof;
}

}  // namespace

BallMatrix embeddings(const RankRing& r, std::uint64_t seed) {
    if (trace_disc(r) == 0) throw Error(ErrorKind::DegenerateDiscriminant, "embeddings of degenerate ring");
    auto pr = primitive_element(r, seed);
    auto e = embed<f128>(r, pr);
    BallMatrix out(r.n, std::vector<ComplexBall>(r.n));
    for (int k = 0; k < r.n; ++k)
        for (int i = 0; i < r.n; ++i) {
            double re = double(e.s[k][i].re), im = double(e.s[k][i].im);
            f128 dre = e.s[k][i].re - re, dim = e.s[k][i].im - im;
            double rad = double(e.rad[k][i] + sqrtq(dre * dre + dim * dim));
            out[k][i] = {{re, im}, rad == 0 ? 0.0 : std::nextafter(rad, 1.0)};
        }
    return out;
}

MinkLattice gram(const RankRing& r, std::uint64_t seed) {
    if (trace_disc(r) == 0) throw Error(ErrorKind::DegenerateDiscriminant, "Gram of degenerate ring");
    auto pr = primitive_element(r, seed);
    auto e = embed<f128>(r, pr);
    std::vector<f128> g, rad;
    gram_from(e, g, rad);
    MinkLattice l;
    l.n = r.n;
    l.gram_hi = g;
    for (size_t i = 0; i < g.size(); ++i) {
        double d = double(g[i]);
        l.gram.push_back(d);
        l.radius.push_back(double(rad[i] + absd(g[i] - f128(d))) * (1 + 1e-15));
    }
    return l;
}

MinkLattice lattice_from_gram(int n, const std::vector<double>& g) {
    if (int(g.size()) != n * n) throw Error(ErrorKind::DimensionMismatch, "Gram size");
    MinkLattice l;
    l.n = n;
    l.gram = g;
    l.radius.assign(g.size(), 0.0);
    return l;
}

MinimaProfile successive_minima(const MinkLattice& l, std::vector<std::vector<long long>>& vectors) {
    return certified_minima(l.gram, &l.gram_hi, l.n, &vectors);
}

MinimaProfile successive_minima(const MinkLattice& l) {
    return certified_minima(l.gram, &l.gram_hi, l.n, nullptr);
}

MinimaProfile profile(const RankRing& r, bool certify, std::uint64_t seed) {
    Int d = trace_disc(r);
    if (d == 0) throw Error(ErrorKind::DegenerateDiscriminant, "profile of degenerate ring");
    if (abs(d) == 1) throw Error(ErrorKind::UnitDiscriminant, "log base |disc| = 1 undefined");
    auto pr = primitive_element(r, seed);
    MinimaProfile prof;
    std::vector<double> gd, rd;
    bool double_ok = true;
    try {
        auto e = embed<double>(r, pr);
        gram_from(e, gd, rd);
    } catch (const Error& err) {
        if (err.kind() != ErrorKind::PrecisionExhausted) throw;
        double_ok = false;
    }
    if (certify || !double_ok) {
        auto eq = embed<f128>(r, pr);
        std::vector<f128> gq, rq;
        gram_from(eq, gq, rq);
        if (!double_ok) {
            gd.clear();
            for (auto v : gq) gd.push_back(double(v));
        }
        prof = certified_minima(gd, certify ? &gq : nullptr, r.n, nullptr);
    } else {
        prof = certified_minima(gd, nullptr, r.n, nullptr);
    }
    prof.disc = d;
    double ld = std::log(std::abs(d.get_d()));
    for (int i = 1; i < r.n; ++i) prof.p.push_back(std::log(prof.lambda[i]) / ld);
    return prof;
}

bool is_close(const std::vector<double>& p, const std::vector<double>& target, double eps, double X) {
    if (p.size() != target.size()) throw Error(ErrorKind::DimensionMismatch, "profile/target dimensions differ");
    if (!(X > 1)) throw Error(ErrorKind::InvalidPoint, "X must exceed 1");
    double tol = eps / std::log(X);
    double worst = 0;
    for (size_t i = 0; i < p.size(); ++i) worst = std::max(worst, std::abs(p[i] - target[i]));
    return worst <= tol * (1 + 1e-12);
}

bool is_close(const MinimaProfile& prof, const std::vector<double>& target, double eps, double X) {
    return is_close(prof.p, target, eps, X);
}

std::vector<double> dual_minima(const MinkLattice& l) {
    int n = l.n;
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = l.at(i, j);
    Eigen::MatrixXd inv = g.inverse();
    std::vector<double> gi(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gi[size_t(i) * n + j] = 0.5 * (inv(i, j) + inv(j, i));
    return minima_impl(gi, n, nullptr);
}

std::pair<bool, bool> check_bound_system(const std::vector<double>& a, const std::vector<double>& p, double C,
                                         double X) {
    if (a.size() != p.size()) throw Error(ErrorKind::DimensionMismatch, "a and p lengths differ");
    const double slack = 1 + 1e-12;
    bool hyp = true, concl = true;
    for (size_t i = 0; i < a.size(); ++i) {
        double m = 0;
        for (size_t j = 0; j < a.size(); ++j) m = std::max(m, std::pow(X, 2 * p[i] - p[j]) * a[j]);
        hyp = hyp && a[i] * a[i] <= C * m * slack;
        concl = concl && a[i] <= C * std::pow(X, p[i]) * slack;
    }
    return {hyp, concl};
}

bool has_cycle(const std::vector<std::vector<int>>& adj) {
    int n = int(adj.size());
    std::vector<int> state(n, 0);
    std::function<bool(int)> dfs = [&](int u) {
        state[u] = 1;
        for (int v : adj[u]) {
            if (state[v] == 1) return true;
            if (state[v] == 0 && dfs(v)) return true;
        }
        state[u] = 2;
        return false;
    };
    for (int u = 0; u < n; ++u)
        if (state[u] == 0 && dfs(u)) return true;
    return false;
}

double unit_ball_volume(int n) { return std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1); }

bool minkowski_bounds_hold(const MinimaProfile& prof, int n) {
    double prod = 1;
    for (double l : prof.lambda) prod *= l;
    double vol = std::pow(double(n), -n / 2.0) * std::sqrt(std::abs(prof.disc.get_d()));
    double lhs = unit_ball_volume(n) * prod;
    double lower = std::pow(2.0, n) / std::tgamma(n + 1.0) * vol;
    double upper = std::pow(2.0, n) * vol;
    return lhs >= lower * (1 - 1e-9) && lhs <= upper * (1 + 1e-9);
}

std::string profile_csv_header(int n) {
    std::string h = "degree,disc";
    for (int i = 0; i < n; ++i) h += ",lambda" + std::to_string(i);
    for (int i = 1; i < n; ++i) h += ",p" + std::to_string(i);
    return h;
}

std::string profile_csv_row(const MinimaProfile& prof, int n) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(12) << n << "," << prof.disc.get_str();
    for (double l : prof.lambda) os << "," << l;
    for (double p : prof.p) os << "," << p;
    return os.str();
}

bool find_idempotent(const RankRing& r, Elem& out) {
    int n = r.n;
    auto emb = embeddings(r);
    Eigen::MatrixXcd m(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) m(k, i) = emb[k][i].center;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    for (int mask = 1; mask + 1 < (1 << n); ++mask) {
        Eigen::VectorXcd t(n);
        for (int k = 0; k < n; ++k) t(k) = (mask >> k) & 1 ? 1.0 : 0.0;
        Eigen::VectorXcd e = lu.solve(t);
        Elem cand(n);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            double re = e(i).real();
            if (std::abs(e(i).imag()) > 1e-6 || std::abs(re - std::round(re)) > 1e-6) ok = false;
            cand[i] = (long)std::llround(re);
        }
        if (!ok) continue;
        if (ring_mul(r, cand, cand) == cand) {
            out = cand;
            return true;
        }
    }
    return false;
}

}  // namespace smin
