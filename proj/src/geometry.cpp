#include "smin/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace smin {

Int floor_power(double X, const Rat& e) {
    if (!(X > 1)) throw Error(ErrorKind::InvalidPoint, "X must exceed 1");
    if (e < 0) return 0;
    if (e == 0) return 1;
    Rat q = e;
    q.canonicalize();
    const Int& u = q.get_num();
    const Int& v = q.get_den();
    if (X == std::floor(X) && X < 9007199254740992.0 && u.fits_ulong_p() && v.fits_ulong_p() && u < 4096) {
        Int xi(X), pw, r;
        mpz_pow_ui(pw.get_mpz_t(), xi.get_mpz_t(), u.get_ui());
        mpz_root(r.get_mpz_t(), pw.get_mpz_t(), v.get_ui());
        return r;
    }
    long double val = std::pow((long double)X, (long double)e.get_d());
    long double fl = std::floor(val);
    // one-ulp guard toward the nearest integer
    long double up = std::nextafter(val, (long double)INFINITY);
    if (std::floor(up) > fl && std::floor(up) - val < 1e-15L * val) fl = std::floor(up);
    Int out;
    out = double(fl);
    return out;
}

namespace {

Rat sum(const std::vector<Rat>& v, size_t lo, size_t hi) {
    Rat s = 0;
    for (size_t i = lo; i < hi; ++i) s += v[i];
    return s;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InvalidPoint, what);
}

}  // namespace

Rat binary_k(int n) { return Rat(1, n * (n - 1)); }

BoxSpec make_box(BoxKind kind, const std::vector<Rat>& pt, double X, int n) {
    BoxSpec b;
    b.kind = kind;
    b.X = X;
    const Rat half(1, 2);
    for (auto& v : pt) require(v >= 0, "negative coordinate");
    switch (kind) {
        case BoxKind::cubic: {
            require(pt.size() == 2 && pt[0] + pt[1] == half, "cubic point needs p1 + p2 = 1/2");
            b.n = 3;
            b.exps = {3 * pt[0] - half, 2 * pt[0] + pt[1] - half, pt[0] + 2 * pt[1] - half, 3 * pt[1] - half};
            break;
        }
        case BoxKind::quartic: {
            require(pt.size() == 5 && sum(pt, 0, 3) == half && pt[3] + pt[4] == half,
                    "quartic point needs sum p = 1/2 and q1 + q2 = 1/2");
            b.n = 4;
            for (int m = 0; m < 2; ++m)
                for (int i = 0; i < 3; ++i)
                    for (int j = i; j < 3; ++j) b.exps.push_back(pt[i] + pt[j] - pt[3 + m]);
            break;
        }
        case BoxKind::quintic: {
            require(pt.size() == 9 && sum(pt, 0, 4) == half && sum(pt, 4, 9) == Rat(3, 2),
                    "quintic point needs sum p = 1/2 and sum q = 3/2");
            b.n = 5;
            // slot k, then (i, j) lexicographic; exponent 1/2 + p_{5-k} - q_{6-i} - q_{6-j}
            for (int k = 1; k <= 4; ++k)
                for (int i = 1; i <= 5; ++i)
                    for (int j = i + 1; j <= 5; ++j)
                        b.exps.push_back(half + pt[5 - k - 1] - pt[4 + 6 - i - 1] - pt[4 + 6 - j - 1]);
            break;
        }
        case BoxKind::binary: {
            require(n >= 2 && pt.size() == 2 && pt[0] + pt[1] == binary_k(n), "binary point needs r1 + r2 = k");
            b.n = n;
            for (int i = 0; i <= n; ++i) b.exps.push_back((n - i) * pt[0] + i * pt[1]);
            break;
        }
    }
    for (auto& e : b.exps) b.bounds.push_back(floor_power(X, e));
    return b;
}

bool in_box(const BoxSpec& b, const std::vector<Int>& c) {
    if (int(c.size()) != b.dim()) throw Error(ErrorKind::DimensionMismatch, "coordinate count differs from box");
    for (int i = 0; i < b.dim(); ++i)
        if (abs(c[i]) > b.bounds[i]) return false;
    return true;
}

double box_volume(const BoxSpec& b) {
    double v = 1;
    for (auto& e : b.exps) v *= 2 * std::pow(b.X, e.get_d());
    return v;
}

std::vector<Rat> segment_L(int n, const std::vector<Rat>& r) {
    if (n < 3 || n > 5) throw Error(ErrorKind::UnsupportedDegree, "segment map defined for n = 3, 4, 5");
    Rat k = binary_k(n);
    require(r.size() == 2 && r[0] >= 0 && r[0] <= r[1] && r[0] + r[1] == k, "point not on the segment");
    Rat t = r[0] / (k / 2);
    std::vector<Rat> out;
    for (int i = 1; i < n; ++i) out.push_back((1 - t) * i * k + t * Rat(1, 2 * (n - 1)));
    return out;
}

CountResult count_points(const BoxSpec& b, const CoordPredicate& pred, double budget, unsigned threads) {
    CountResult res;
    res.volume = box_volume(b);
    int d = b.dim();
    Int total = 1;
    for (auto& bd : b.bounds) total *= 2 * bd + 1;
    if (!pred) {
        res.count = total;
        return res;
    }
    for (auto& bd : b.bounds)
        if (bd > 10000000) throw Error(ErrorKind::ResourceBudgetExceeded, "coordinate bound above 1e7");
    if (total.get_d() > budget) throw Error(ErrorKind::ResourceBudgetExceeded, "box holds too many points");
    std::vector<long long> lim(d);
    for (int i = 0; i < d; ++i) lim[i] = b.bounds[i].get_si();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    long long lo0 = -lim[0], span = 2 * lim[0] + 1;
    threads = unsigned(std::min<long long>(threads, span));
    std::vector<long long> counts(threads, 0);
    auto work = [&](unsigned t) {
        long long from = lo0 + span * t / threads, to = lo0 + span * (t + 1) / threads;
        std::vector<long long> x(d);
        long long cnt = 0;
        for (long long x0 = from; x0 < to; ++x0) {
            x[0] = x0;
            for (int i = 1; i < d; ++i) x[i] = -lim[i];
            for (;;) {
                if (pred(x.data())) ++cnt;
                int i = d - 1;
                while (i >= 1 && x[i] == lim[i]) x[i] = -lim[i], --i;
                if (i < 1) break;
                ++x[i];
            }
        }
        counts[t] = cnt;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (auto c : counts) res.count += Int(long(c));
    return res;
}

// ---------------------------------------------------------------- polytopes

namespace {

LinConstraint le(int dim, std::initializer_list<std::pair<int, Rat>> terms, Rat rhs) {
    LinConstraint c{std::vector<Rat>(dim, Rat(0)), rhs, false};
    for (auto& [i, v] : terms) c.a[i] += v;
    return c;
}

LinConstraint eqc(int dim, std::initializer_list<std::pair<int, Rat>> terms, Rat rhs) {
    auto c = le(dim, terms, rhs);
    c.eq = true;
    return c;
}

bool satisfies(const LinConstraint& c, const std::vector<Rat>& x) {
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += c.a[i] * x[i];
    return c.eq ? s == c.rhs : s <= c.rhs;
}

// quartic coordinates: p1 p2 p3 q1 q2 -> 0..4
std::vector<LinConstraint> quartic_extra(std::initializer_list<std::array<int, 3>> rows) {
    // q_k <= p_i + p_j, given as {k, i, j} with 1-based indices; i = j allowed
    std::vector<LinConstraint> v;
    for (auto& r : rows) v.push_back(le(5, {{2 + r[0], 1}, {r[1] - 1, -1}, {r[2] - 1, -1}}, 0));
    return v;
}

std::vector<LinConstraint> with_basic(int degree, std::vector<LinConstraint> extra) {
    auto v = basic_constraints(degree);
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
}

}  // namespace

std::vector<LinConstraint> basic_constraints(int degree) {
    std::vector<LinConstraint> v;
    if (degree == 4) {
        v.push_back(le(5, {{0, -1}}, 0));
        v.push_back(le(5, {{0, 1}, {1, -1}}, 0));
        v.push_back(le(5, {{1, 1}, {2, -1}}, 0));
        v.push_back(eqc(5, {{0, 1}, {1, 1}, {2, 1}}, Rat(1, 2)));
        v.push_back(le(5, {{3, -1}}, 0));
        v.push_back(le(5, {{3, 1}, {4, -1}}, 0));
        v.push_back(eqc(5, {{3, 1}, {4, 1}}, Rat(1, 2)));
    } else if (degree == 5) {
        v.push_back(le(9, {{0, -1}}, 0));
        for (int i = 0; i < 3; ++i) v.push_back(le(9, {{i, 1}, {i + 1, -1}}, 0));
        v.push_back(eqc(9, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}, Rat(1, 2)));
        v.push_back(le(9, {{4, -1}}, 0));
        for (int i = 4; i < 8; ++i) v.push_back(le(9, {{i, 1}, {i + 1, -1}}, 0));
        v.push_back(eqc(9, {{4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}}, Rat(3, 2)));
    } else {
        throw Error(ErrorKind::UnsupportedDegree, "basic constraints exist for degree 4 and 5");
    }
    return v;
}

PolytopeSpec polytope(const std::string& name) {
    PolytopeSpec p;
    p.name = name;
    if (name == "basic4") {
        p.dim = 5;
        p.pieces = {basic_constraints(4)};
    } else if (name == "poly4_s4") {
        p.dim = 5;
        p.pieces = {with_basic(4, quartic_extra({{2, 1, 3}, {1, 1, 1}, {2, 2, 2}}))};
    } else if (name == "poly4_d4") {
        p.dim = 5;
        p.pieces = {with_basic(4, quartic_extra({{1, 1, 1}, {2, 2, 2}}))};
    } else if (name == "poly4_a") {
        p.dim = 5;
        p.pieces = {with_basic(4, quartic_extra({{2, 2, 3}, {1, 1, 1}}))};
    } else if (name == "poly4_b") {
        p.dim = 5;
        p.pieces = {with_basic(4, quartic_extra({{2, 1, 3}, {1, 1, 2}}))};
    } else if (name == "poly4_c") {
        p.dim = 5;
        p.pieces = {with_basic(4, quartic_extra({{2, 1, 3}, {2, 2, 2}}))};
    } else if (name == "poly4") {
        p.dim = 5;
        for (auto* piece : {"poly4_a", "poly4_b", "poly4_c"}) p.pieces.push_back(polytope(piece).pieces[0]);
    } else if (name == "basic5") {
        p.dim = 9;
        p.pieces = {basic_constraints(5)};
    } else if (name == "poly5_s5") {
        p.dim = 9;
        // 1/2 + p_k >= q_i + q_j as {k, i, j}
        const int rows[7][3] = {{1, 4, 1}, {1, 3, 2}, {2, 1, 5}, {2, 2, 4}, {3, 5, 2}, {3, 3, 4}, {4, 5, 3}};
        std::vector<LinConstraint> extra;
        for (auto& r : rows) extra.push_back(le(9, {{4 + r[1] - 1, 1}, {4 + r[2] - 1, 1}, {r[0] - 1, -1}}, Rat(1, 2)));
        p.pieces = {with_basic(5, extra)};
    } else {
        throw Error(ErrorKind::UnknownPolytope, "unknown polytope '" + name + "'");
    }
    return p;
}

bool contains(const PolytopeSpec& p, const std::vector<Rat>& pt) {
    if (int(pt.size()) != p.dim) throw Error(ErrorKind::DimensionMismatch, "point dimension differs from polytope");
    for (auto& piece : p.pieces) {
        bool ok = true;
        for (auto& c : piece) ok = ok && satisfies(c, pt);
        if (ok) return true;
    }
    return false;
}

bool polytope_contains(const std::string& name, const std::vector<Rat>& pt) { return contains(polytope(name), pt); }

PolytopeSpec flag_polytope(const std::vector<std::vector<int>>& t, int degree) {
    int size = degree == 4 ? 4 : degree == 5 ? 6 : -1;
    if (size < 0) throw Error(ErrorKind::UnsupportedDegree, "flag polytopes exist for degree 4 and 5");
    int top = degree == 4 ? 2 : 4;
    if (int(t.size()) != size) throw Error(ErrorKind::InvalidTable, "flag table has the wrong number of rows");
    for (auto& row : t)
        if (int(row.size()) != size) throw Error(ErrorKind::InvalidTable, "flag table has the wrong number of columns");
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            int v = t[i][j];
            if (v < 0 || v > top) throw Error(ErrorKind::InvalidTable, "flag table value out of range");
            if ((i == 0 || j == 0) && v != 0) throw Error(ErrorKind::InvalidTable, "flag table must vanish on row and column 0");
            if (i + 1 < size && t[i + 1][j] < v) throw Error(ErrorKind::InvalidTable, "flag table not monotone");
            if (j + 1 < size && t[i][j + 1] < v) throw Error(ErrorKind::InvalidTable, "flag table not monotone");
        }
    PolytopeSpec p;
    p.name = "flag";
    p.dim = degree == 4 ? 5 : 9;
    auto piece = basic_constraints(degree);
    if (degree == 4) {
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                if (t[i][j] > 0) piece.push_back(le(5, {{2 + t[i][j], 1}, {i - 1, -1}, {j - 1, -1}}, 0));
    } else {
        for (int i = 1; i <= 5; ++i)
            for (int j = i; j <= 5; ++j)
                if (t[i][j] > 0)
                    piece.push_back(le(9, {{4 + 6 - i - 1, 1}, {4 + 6 - j - 1, 1}, {5 - t[i][j] - 1, -1}}, Rat(1, 2)));
    }
    p.pieces = {piece};
    return p;
}

namespace {

// Unique solution of the square-or-tall system, or nullopt.
std::optional<std::vector<Rat>> solve_exact(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs, int dim) {
    int rows = int(m.size()), r = 0;
    std::vector<int> pivcol;
    for (int c = 0; c < dim && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        std::swap(rhs[piv], rhs[r]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (int k = c; k < dim; ++k) m[i][k] -= f * m[r][k];
            rhs[i] -= f * rhs[r];
        }
        pivcol.push_back(c);
        ++r;
    }
    if (r < dim) return std::nullopt;
    for (int i = r; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt;
    std::vector<Rat> x(dim);
    for (int i = 0; i < r; ++i) x[pivcol[i]] = rhs[i] / m[i][pivcol[i]];
    return x;
}

}  // namespace

std::vector<std::vector<Rat>> vertices(const std::vector<LinConstraint>& piece, int dim) {
    std::vector<const LinConstraint*> eqs, ineqs;
    for (auto& c : piece) (c.eq ? eqs : ineqs).push_back(&c);
    int need = dim - int(eqs.size());
    std::vector<std::vector<Rat>> out;
    if (need < 0) return out;
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
        if (int(pick.size()) == need) {
            std::vector<std::vector<Rat>> m;
            std::vector<Rat> rhs;
            for (auto* c : eqs) m.push_back(c->a), rhs.push_back(c->rhs);
            for (int i : pick) m.push_back(ineqs[i]->a), rhs.push_back(ineqs[i]->rhs);
            auto x = solve_exact(m, rhs, dim);
            if (!x) return;
            for (auto& c : piece)
                if (!satisfies(c, *x)) return;
            if (std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
            return;
        }
        for (int i = start; i < int(ineqs.size()); ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

bool same_convex_polytope(const PolytopeSpec& a, const PolytopeSpec& b) {
    if (a.dim != b.dim || a.pieces.size() != 1 || b.pieces.size() != 1)
        throw Error(ErrorKind::DimensionMismatch, "comparison needs two convex polytopes of equal dimension");
    return vertices(a.pieces[0], a.dim) == vertices(b.pieces[0], b.dim);
}

Rat parse_rat(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace((unsigned char)ch)) t += ch;
    auto dot = t.find('.');
    Rat q;
    if (dot != std::string::npos) {
        std::string digits = t.substr(0, dot) + t.substr(dot + 1);
        Int num, den = 1;
        if (num.set_str(digits, 10) != 0) throw Error(ErrorKind::ParseError, "bad number '" + s + "'");
        for (size_t i = dot + 1; i < t.size(); ++i) den *= 10;
        q = Rat(num, den);
    } else if (q.set_str(t, 10) != 0) {
        throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
    }
    q.canonicalize();
    return q;
}

std::vector<Rat> parse_point(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rat(tok));
    if (out.empty()) throw Error(ErrorKind::ParseError, "empty point");
    return out;
}

}  // namespace smin
