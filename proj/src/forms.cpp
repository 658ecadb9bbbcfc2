#include "smin/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace smin {

BinaryForm::BinaryForm(std::vector<Int> coeffs) : n(int(coeffs.size()) - 1), f(std::move(coeffs)) {}

BinaryForm::BinaryForm(std::initializer_list<long> coeffs) {
    for (long v : coeffs) f.emplace_back(v);
    n = int(f.size()) - 1;
}

Int BinaryForm::eval(const Int& x, const Int& y) const {
    Int r = 0;
    for (int i = 0; i <= n; ++i) {
        Int t = f[i];
        for (int k = 0; k < n - i; ++k) t *= x;
        for (int k = 0; k < i; ++k) t *= y;
        r += t;
    }
    return r;
}

bool BinaryForm::operator<(const BinaryForm& o) const {
    if (n != o.n) return n < o.n;
    return std::lexicographical_compare(f.begin(), f.end(), o.f.begin(), o.f.end());
}

BinaryForm substitute(const GL2Z& g, const BinaryForm& f) {
    int n = f.n;
    // powers of (a x + c y) and (b x + d y) as coefficient lists in x^{deg-t} y^t
    auto powers = [n](const Int& p, const Int& q) {
        std::vector<std::vector<Int>> pw(n + 1);
        pw[0] = {Int(1)};
        for (int e = 1; e <= n; ++e) {
            pw[e].assign(e + 1, Int(0));
            for (int t = 0; t < e; ++t) {
                pw[e][t] += pw[e - 1][t] * p;
                pw[e][t + 1] += pw[e - 1][t] * q;
            }
        }
        return pw;
    };
    auto X = powers(g.a, g.c), Y = powers(g.b, g.d);
    std::vector<Int> out(n + 1, Int(0));
    for (int i = 0; i <= n; ++i) {
        if (f.f[i] == 0) continue;
        const auto& xp = X[n - i];
        const auto& yp = Y[i];
        for (size_t s = 0; s < xp.size(); ++s)
            for (size_t t = 0; t < yp.size(); ++t) out[s + t] += f.f[i] * xp[s] * yp[t];
    }
    return BinaryForm(out);
}

BinaryForm gl2_act(const GL2Z& g, const BinaryForm& f) {
    BinaryForm r = substitute(g, f);
    if (f.n == 3 && g.det() < 0)
        for (auto& v : r.f) v = -v;
    return r;
}

Heights heights(const BinaryForm& f) {
    Heights h;
    h.hc = 0;
    for (auto& v : f.f) h.hc = std::max(h.hc, Int(abs(v)));
    if (f.f[0] == 1) {
        double m = 0;
        for (int i = 1; i <= f.n; ++i) m = std::max(m, std::pow(std::abs(f.f[i].get_d()), 1.0 / i));
        // exact check for perfect powers: e.g. 8^{1/3} must be 2, not 1.9999...
        double r = std::round(m);
        if (std::abs(m - r) < 1e-9) m = r;
        h.hr = m;
    }
    return h;
}

bool is_reducible(const BinaryForm& f) {
    if (f.f.front() == 0 || f.f.back() == 0) return true;
    auto rs = divisors(abs(f.f.back()));
    auto ss = divisors(abs(f.f.front()));
    for (auto& s : ss)
        for (auto& r0 : rs)
            for (int sg : {1, -1}) {
                Int r = r0 * sg;
                if (gcd(r, s) != 1) continue;
                if (f.eval(r, s) == 0) return true;
            }
    return false;
}

RankRing nakagawa_ring_raw(const BinaryForm& form) {
    int n = form.n;
    if (form.disc() == 0) throw Error(ErrorKind::DegenerateDiscriminant, format_form(form));
    const auto& f = form.f;
    RankRing r(n);
    for (int i = 1; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::vector<Int> v(n, Int(0));
            // zeta_n stands for the constant -f_n
            auto add = [&](int k, const Int& coef) {
                if (k == n)
                    v[0] -= coef * f[n];
                else
                    v[k] += coef;
            };
            for (int k = std::max(i + j - n, 1); k <= i; ++k) add(k, -f[i + j - k]);
            for (int k = j + 1; k <= std::min(i + j, n); ++k) add(k, f[i + j - k]);
            r.set_product(i, j, v);
        }
    return r;
}

RankRing delone_faddeev_ring(const BinaryForm& form) {
    if (form.n != 3) throw Error(ErrorKind::UnsupportedDegree, "Delone-Faddeev table needs a cubic");
    if (form.disc() == 0) throw Error(ErrorKind::DegenerateDiscriminant, format_form(form));
    const Int &a = form.f[0], &b = form.f[1], &c = form.f[2], &d = form.f[3];
    RankRing r(3);
    r.set_product(1, 1, {-a * c, b, -a});
    r.set_product(1, 2, {-a * d, 0, 0});
    r.set_product(2, 2, {-b * d, d, -c});
    return r;
}

RankRing nakagawa_ring(const BinaryForm& f) {
    if (f.n == 3) return delone_faddeev_ring(f);
    if (f.n < 2 || f.n > 6) throw Error(ErrorKind::UnsupportedDegree, "degree " + std::to_string(f.n));
    return nakagawa_ring_raw(f);
}

MPoly MPoly::constant(int vars, const Int& c) {
    MPoly p(vars);
    if (c != 0) p.terms[std::vector<int>(vars, 0)] = c;
    return p;
}

MPoly MPoly::variable(int vars, int i) {
    MPoly p(vars);
    std::vector<int> e(vars, 0);
    e[i] = 1;
    p.terms[e] = 1;
    return p;
}

void MPoly::prune() {
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second == 0)
            it = terms.erase(it);
        else
            ++it;
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    r.vars = std::max(vars, o.vars);
    for (auto& [e, c] : o.terms) r.terms[e] += c;
    r.prune();
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + o.scaled(-1); }

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(std::max(vars, o.vars));
    for (auto& [e1, c1] : terms)
        for (auto& [e2, c2] : o.terms) {
            std::vector<int> e(r.vars, 0);
            for (size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
            for (size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
            r.terms[e] += c1 * c2;
        }
    r.prune();
    return r;
}

MPoly MPoly::scaled(const Int& s) const {
    MPoly r(vars);
    if (s == 0) return r;
    for (auto& [e, c] : terms) r.terms[e] = c * s;
    return r;
}

std::string to_string(const MPoly& p) {
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        os << (first ? "" : " + ") << it->second.get_str();
        for (size_t i = 0; i < it->first.size(); ++i)
            if (it->first[i]) os << "*x" << i + 1 << (it->first[i] > 1 ? "^" + std::to_string(it->first[i]) : "");
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

MPoly index_form(const RankRing& r) {
    int n = r.n;
    if (trace_disc(r) == 0) throw Error(ErrorKind::DegenerateDiscriminant, "index form of degenerate ring");
    int vars = n - 1;
    using PVec = std::vector<MPoly>;
    PVec alpha(n, MPoly(vars));
    for (int i = 1; i < n; ++i) alpha[i] = MPoly::variable(vars, i - 1);
    std::vector<PVec> rows;
    PVec cur(n, MPoly(vars));
    cur[0] = MPoly::constant(vars, 1);
    rows.push_back(cur);
    for (int k = 1; k < n; ++k) {
        PVec next(n, MPoly(vars));
        for (int a = 0; a < n; ++a) {
            if (cur[a].terms.empty()) continue;
            for (int b = 1; b < n; ++b) {
                MPoly prod = cur[a] * alpha[b];
                for (int c = 0; c < n; ++c)
                    if (r.at(a, b, c) != 0) next[c] = next[c] + prod.scaled(r.at(a, b, c));
            }
        }
        cur = next;
        rows.push_back(cur);
    }
    // row 0 is (1,0,...,0): expand along it
    std::vector<int> perm(vars);
    std::iota(perm.begin(), perm.end(), 1);
    MPoly det(vars);
    do {
        int inv = 0;
        for (int i = 0; i < vars; ++i)
            for (int j = i + 1; j < vars; ++j)
                if (perm[i] > perm[j]) ++inv;
        MPoly term = MPoly::constant(vars, inv % 2 ? -1 : 1);
        for (int i = 0; i < vars && !term.terms.empty(); ++i) term = term * rows[i + 1][perm[i]];
        det = det + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

MPoly form_poly(const BinaryForm& f) {
    MPoly p(2);
    for (int i = 0; i <= f.n; ++i)
        if (f.f[i] != 0) p.terms[{f.n - i, i}] = f.f[i];
    return p;
}

bool fess_identity_check(const BinaryForm& f) {
    int n = f.n;
    if (f.disc() == 0) throw Error(ErrorKind::DegenerateDiscriminant, format_form(f));
    MPoly idx = index_form(nakagawa_ring_raw(f));
    // x_t -> x^{n-2-t} y^t
    MPoly lhs(2);
    for (auto& [e, c] : idx.terms) {
        int ex = 0, ey = 0;
        for (int t = 0; t < n - 1; ++t) {
            ex += e[t] * (n - 2 - t);
            ey += e[t] * t;
        }
        lhs.terms[{ex, ey}] += c;
    }
    lhs.prune();
    int m = (n - 1) * (n - 2) / 2;
    MPoly rhs = MPoly::constant(2, 1), fp = form_poly(f);
    for (int i = 0; i < m; ++i) rhs = rhs * fp;
    return lhs == rhs;
}

BinaryForm parse_form(const std::string& s) {
    std::vector<Int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        Int z;
        if (tok.empty() || z.set_str(tok, 10) != 0) throw Error(ErrorKind::ParseError, "bad form literal '" + s + "'");
        v.push_back(z);
    }
    if (v.size() < 3) throw Error(ErrorKind::ParseError, "bad form literal '" + s + "'");
    return BinaryForm(v);
}

std::string format_form(const BinaryForm& f) {
    std::string s;
    for (size_t i = 0; i < f.f.size(); ++i) s += (i ? "," : "") + f.f[i].get_str();
    return s;
}

}  // namespace smin
