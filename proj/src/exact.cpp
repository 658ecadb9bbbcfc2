#include "smin/exact.hpp"

#include <algorithm>
#include <sstream>

namespace smin {

const char* error_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
        case ErrorKind::NotSquarefree: return "NotSquarefree";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::ZeroDiscriminant: return "ZeroDiscriminant";
        case ErrorKind::FactorizationTimeout: return "FactorizationTimeout";
        case ErrorKind::DegenerateDiscriminant: return "DegenerateDiscriminant";
        case ErrorKind::NonAssociativeTable: return "NonAssociativeTable";
        case ErrorKind::NonCommutativeTable: return "NonCommutativeTable";
        case ErrorKind::UnitDiscriminant: return "UnitDiscriminant";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ShapeViolation: return "ShapeViolation";
        case ErrorKind::PairingNotFound: return "PairingNotFound";
        case ErrorKind::InvalidPoint: return "InvalidPoint";
        case ErrorKind::UnknownPolytope: return "UnknownPolytope";
        case ErrorKind::UnknownFunction: return "UnknownFunction";
        case ErrorKind::InvalidTable: return "InvalidTable";
        case ErrorKind::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
        case ErrorKind::UnsupportedDedup: return "UnsupportedDedup";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind k, const std::string& what)
    : std::runtime_error(std::string(error_name(k)) + ": " + what), kind_(k) {}

IntPoly::IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c.emplace_back(v);
    trim();
}

void IntPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Int IntPoly::eval(const Int& x) const {
    Int r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

IntPoly derivative(const IntPoly& p) {
    std::vector<Int> d;
    for (size_t i = 1; i < p.c.size(); ++i) d.push_back(p.c[i] * Int(unsigned(i)));
    return IntPoly(d);
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return IntPoly(r);
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return IntPoly(r);
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return IntPoly(r);
}

std::string to_string(const IntPoly& p) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < p.c.size(); ++i) os << (i ? "," : "") << p.c[i].get_str();
    os << "]";
    return os.str();
}

Int det_bareiss(std::vector<std::vector<Int>> m) {
    size_t n = m.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

Rat det_rational(std::vector<std::vector<Rat>> m) {
    size_t n = m.size();
    Rat det = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t r = k;
        while (r < n && m[r][k] == 0) ++r;
        if (r == n) return 0;
        if (r != k) {
            std::swap(m[k], m[r]);
            det = -det;
        }
        det *= m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rat f = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

std::vector<std::vector<Rat>> inverse_rational(std::vector<std::vector<Rat>> m) {
    size_t n = m.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t r = k;
        while (r < n && m[r][k] == 0) ++r;
        if (r == n) throw Error(ErrorKind::DegenerateDiscriminant, "singular matrix");
        std::swap(m[k], m[r]);
        std::swap(inv[k], inv[r]);
        Rat p = m[k][k];
        for (size_t j = 0; j < n; ++j) {
            m[k][j] /= p;
            inv[k][j] /= p;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            Rat f = m[i][k];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    return inv;
}

Int resultant(const IntPoly& p, const IntPoly& q) {
    if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "resultant of zero polynomial");
    int m = p.degree(), n = q.degree();
    if (m == 0 && n == 0) return 1;
    if (m == 0) {
        Int r = 1;
        for (int i = 0; i < n; ++i) r *= p.c[0];
        return r;
    }
    if (n == 0) {
        Int r = 1;
        for (int i = 0; i < m; ++i) r *= q.c[0];
        return r;
    }
    int s = m + n;
    std::vector<std::vector<Int>> syl(s, std::vector<Int>(s, Int(0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) syl[r][r + i] = p.c[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) syl[n + r][r + i] = q.c[n - i];
    return det_bareiss(std::move(syl));
}

namespace {

using RPoly = std::vector<Rat>;

void rtrim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly rmod(RPoly a, const RPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rat f = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        a.pop_back();
        rtrim(a);
    }
    return a;
}

}  // namespace

int gcd_degree(const IntPoly& p, const IntPoly& q) {
    RPoly a(p.c.begin(), p.c.end()), b(q.c.begin(), q.c.end());
    rtrim(a);
    rtrim(b);
    if (a.empty()) return int(b.size()) - 1;
    if (b.empty()) return int(a.size()) - 1;
    while (!b.empty()) {
        RPoly r = rmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return int(a.size()) - 1;
}

bool is_squarefree(const IntPoly& p) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial");
    if (p.degree() <= 1) return true;
    return gcd_degree(p, derivative(p)) == 0;
}

namespace {

std::vector<Int> shift_form(const std::vector<Int>& f, long k) {
    // coefficients of f(x, kx + y)
    int n = int(f.size()) - 1;
    std::vector<Int> g(n + 1, Int(0));
    for (int i = 0; i <= n; ++i) {
        // f_i x^{n-i} (kx + y)^i
        Int binom = 1;
        // term y^t x^{i-t} with coefficient C(i,t) k^{i-t}
        std::vector<Int> kpow(i + 1, Int(1));
        for (int t = 1; t <= i; ++t) kpow[t] = kpow[t - 1] * k;
        for (int t = 0; t <= i; ++t) {
            g[t] += f[i] * binom * kpow[i - t];
            binom = binom * (i - t) / (t + 1);
        }
    }
    return g;
}

}  // namespace

Int disc_binary_form(int n, const std::vector<Int>& f) {
    if (n < 2 || n > 5) throw Error(ErrorKind::UnsupportedDegree, "degree " + std::to_string(n));
    if (int(f.size()) != n + 1) throw Error(ErrorKind::UnsupportedDegree, "coefficient count mismatch");
    if (n == 3) return disc_cubic(f[0], f[1], f[2], f[3]);
    std::vector<Int> g = f;
    if (g[0] == 0) {
        bool all_zero = std::all_of(f.begin(), f.end(), [](const Int& v) { return v == 0; });
        if (all_zero) return 0;
        for (long k = 1;; ++k) {
            bool done = false;
            for (long s : {k, -k}) {
                auto h = shift_form(f, s);
                if (h[0] != 0) {
                    g = h;
                    done = true;
                    break;
                }
            }
            if (done) break;
        }
    }
    std::vector<Int> asc(g.rbegin(), g.rend());
    IntPoly F(asc);
    Int r = resultant(F, derivative(F));
    Int out = r / g[0];
    if ((n * (n - 1) / 2) % 2) out = -out;
    return out;
}

Int disc_cubic(const Int& a, const Int& b, const Int& c, const Int& d) {
    return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
}

namespace {

inline bool mul_ok(__int128 a, __int128 b, __int128& r) { return !__builtin_mul_overflow(a, b, &r); }
inline bool sub_ok(__int128 a, __int128 b, __int128& r) { return !__builtin_sub_overflow(a, b, &r); }
inline bool add_ok(__int128 a, __int128 b, __int128& r) { return !__builtin_add_overflow(a, b, &r); }

bool det_bareiss_fast(__int128 (*m)[12], int n, __int128& out) {
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            int r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) {
                out = 0;
                return true;
            }
            for (int j = 0; j < n; ++j) std::swap(m[k][j], m[r][j]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                __int128 x, y, z;
                if (!mul_ok(m[i][j], m[k][k], x) || !mul_ok(m[i][k], m[k][j], y) || !sub_ok(x, y, z)) return false;
                m[i][j] = z / prev;
            }
        }
        prev = m[k][k];
    }
    out = sign * m[n - 1][n - 1];
    return true;
}

}  // namespace

bool disc_binary_form_fast(int n, const long long* f, __int128& out) {
    if (n < 2 || n > 6) return false;
    __int128 g[7];
    for (int i = 0; i <= n; ++i) g[i] = f[i];
    if (g[0] == 0) {
        bool found = false;
        for (long k = 1; k <= n + 1 && !found; ++k) {
            for (long s : {k, -k}) {
                // g = f(x, s x + y)
                __int128 h[7] = {0, 0, 0, 0, 0, 0, 0};
                bool ok = true;
                for (int i = 0; i <= n && ok; ++i) {
                    __int128 binom = 1;
                    for (int t = 0; t <= i && ok; ++t) {
                        __int128 kp = 1;
                        for (int e = 0; e < i - t && ok; ++e) ok = mul_ok(kp, s, kp);
                        __int128 term;
                        ok = ok && mul_ok(f[i], binom, term) && mul_ok(term, kp, term) && add_ok(h[t], term, h[t]);
                        binom = binom * (i - t) / (t + 1);
                    }
                }
                if (!ok) return false;
                if (h[0] != 0) {
                    for (int i = 0; i <= n; ++i) g[i] = h[i];
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            out = 0;
            return true;
        }
    }
    if (n == 3) {
        // b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2 + 18abcd, small enough here to check coarsely
        auto big = [](__int128 v) { return v > (__int128(1) << 28) || v < -(__int128(1) << 28); };
        if (big(g[0]) || big(g[1]) || big(g[2]) || big(g[3])) return false;
        out = disc_cubic(g[0], g[1], g[2], g[3]);
        return true;
    }
    // Sylvester matrix of F(x) = sum g_i x^{n-i} and F'(x), descending coefficients
    int m = n, d = n - 1, s = m + d;
    __int128 syl[12][12] = {};
    for (int r = 0; r < d; ++r)
        for (int i = 0; i <= m; ++i) syl[r][r + i] = g[i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= d; ++i) syl[d + r][r + i] = g[i] * (n - i);
    __int128 res;
    if (!det_bareiss_fast(syl, s, res)) return false;
    out = res / g[0];
    if ((n * (n - 1) / 2) % 2) out = -out;
    return true;
}

IntPoly charpoly(const std::vector<std::vector<Int>>& a) {
    size_t n = a.size();
    std::vector<Int> c(n + 1, Int(0));
    c[n] = 1;
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (size_t k = 1; k <= n; ++k) {
        // m <- a*m + c[n-k+1] I
        std::vector<std::vector<Int>> am(n, std::vector<Int>(n, Int(0)));
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) {
                if (a[i][l] == 0) continue;
                for (size_t j = 0; j < n; ++j) am[i][j] += a[i][l] * m[l][j];
            }
        for (size_t i = 0; i < n; ++i) am[i][i] += c[n - k + 1];
        m = std::move(am);
        Int tr = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) tr += a[i][l] * m[l][i];
        c[n - k] = -tr / Int(unsigned(k));
    }
    return IntPoly(c);
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
    auto z = a.center + b.center;
    return {z, (a.radius + b.radius + 2.3e-16 * std::abs(z)) * (1 + 1e-15)};
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
    auto z = a.center - b.center;
    return {z, (a.radius + b.radius + 2.3e-16 * std::abs(z)) * (1 + 1e-15)};
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
    auto z = a.center * b.center;
    double r = std::abs(a.center) * b.radius + std::abs(b.center) * a.radius + a.radius * b.radius;
    return {z, (r + 4.5e-16 * std::abs(z)) * (1 + 1e-15)};
}

double to_double(const Rat& q) { return q.get_d(); }

f128 to_f128(const Int& z) {
    size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    Int a = abs(z);
    long shift = 0;
    if (bits > 120) {
        shift = long(bits) - 120;
        mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), shift);
    }
    Int hi, lo;
    mpz_fdiv_q_2exp(hi.get_mpz_t(), a.get_mpz_t(), 60);
    mpz_fdiv_r_2exp(lo.get_mpz_t(), a.get_mpz_t(), 60);
    f128 r = f128(hi.get_ui()) * f128(1ULL << 60) + f128(lo.get_ui());
    if (shift) r = scalbnq(r, int(shift));
    return z < 0 ? -r : r;
}

f128 to_f128(const Rat& q) { return to_f128(q.get_num()) / to_f128(q.get_den()); }

}  // namespace smin
