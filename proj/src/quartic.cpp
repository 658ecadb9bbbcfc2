#include "smin/quartic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace smin {

int TernaryQuadPair::slot(int i, int j) {
    if (i > j) std::swap(i, j);
    static const int idx[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return idx[i - 1][j - 1];
}

namespace {

// 2M as an integer matrix: 2 a_ii on the diagonal, a_ij off it.
std::array<std::array<Int, 3>, 3> doubled(const std::array<Int, 6>& c) {
    std::array<std::array<Int, 3>, 3> m;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) m[i - 1][j - 1] = i == j ? Int(2 * c[TernaryQuadPair::slot(i, j)]) : c[TernaryQuadPair::slot(i, j)];
    return m;
}

void undouble(const std::array<std::array<Int, 3>, 3>& m, std::array<Int, 6>& c) {
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) {
            if (i == j) {
                if (!mpz_divisible_ui_p(m[i - 1][i - 1].get_mpz_t(), 2))
                    throw Error(ErrorKind::InvalidTable, "odd diagonal after action");
                c[TernaryQuadPair::slot(i, i)] = m[i - 1][i - 1] / 2;
            } else {
                c[TernaryQuadPair::slot(i, j)] = m[i - 1][j - 1];
            }
        }
}

using Lin = std::array<Int, 2>;  // x, y coefficients
using Cubic = std::array<Int, 4>;

Cubic mul3(const Lin& u, const Lin& v, const Lin& w) {
    // (u0 x + u1 y)(v0 x + v1 y)(w0 x + w1 y)
    Int q0 = u[0] * v[0], q1 = u[0] * v[1] + u[1] * v[0], q2 = u[1] * v[1];
    return {q0 * w[0], q0 * w[1] + q1 * w[0], q1 * w[1] + q2 * w[0], q2 * w[1]};
}

Int l_of(const TernaryQuadPair& p, int s, int t) { return p.a[s] * p.b[t] - p.a[t] * p.b[s]; }

}  // namespace

BinaryForm resolvent_cubic_raw(const TernaryQuadPair& p) {
    auto na = doubled(p.a), nb = doubled(p.b);
    Lin e[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) e[i][j] = {nb[i][j], Int(-na[i][j])};
    static const int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    Cubic acc{0, 0, 0, 0};
    for (int s = 0; s < 6; ++s) {
        Cubic t = mul3(e[0][perm[s][0]], e[1][perm[s][1]], e[2][perm[s][2]]);
        for (int k = 0; k < 4; ++k) acc[k] += s < 3 ? t[k] : Int(-t[k]);
    }
    // 4 det(M) = det(2M) / 2
    std::vector<Int> f(4);
    for (int k = 0; k < 4; ++k) {
        if (!mpz_divisible_ui_p(acc[k].get_mpz_t(), 2)) throw Error(ErrorKind::InvalidTable, "resolvent not integral");
        f[k] = acc[k] / 2;
    }
    return BinaryForm(f);
}

Int pair_disc(const TernaryQuadPair& p) { return resolvent_cubic_raw(p).disc(); }

BinaryForm resolvent_cubic(const TernaryQuadPair& p) {
    BinaryForm f = resolvent_cubic_raw(p);
    if (f.disc() == 0) throw Error(ErrorKind::DegenerateDiscriminant, "pair has zero discriminant");
    return f;
}

QuarticRings quartic_ring(const TernaryQuadPair& p) {
    BinaryForm res = resolvent_cubic(p);
    enum { s11, s12, s13, s22, s23, s33 };
    auto L = [&](int s, int t) { return l_of(p, s, t); };
    // c[(i,j)][k] for k = 1..3
    Int c[4][4][4];
    auto put = [&](int i, int j, Int c1, Int c2, Int c3) {
        c[i][j][1] = c[j][i][1] = c1;
        c[i][j][2] = c[j][i][2] = c2;
        c[i][j][3] = c[j][i][3] = c3;
    };
    put(1, 1, -L(s12, s13) + L(s11, s23), L(s11, s13), -L(s11, s12));
    put(1, 2, L(s13, s22), L(s11, s23), -L(s11, s22));
    put(1, 3, 0, L(s11, s33), 0);
    put(2, 2, -L(s22, s23), L(s12, s23) + L(s13, s22), -L(s12, s22));
    put(2, 3, -L(s22, s33), L(s12, s33), 0);
    put(3, 3, -L(s23, s33), L(s13, s33), -L(s13, s23) + L(s12, s33));
    // constant terms from associativity (a_i a_j) a_k = a_i (a_j a_k) with k != i
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) {
            int k = i != 1 ? 1 : 2;
            Int c0 = 0;
            for (int m = 1; m <= 3; ++m) c0 += c[j][k][m] * c[i][m][k] - c[i][j][m] * c[m][k][k];
            c[i][j][0] = c[j][i][0] = c0;
        }
    QuarticRings out{RankRing(4), nakagawa_ring(res)};
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) out.R.set_product(i, j, {c[i][j][0], c[i][j][1], c[i][j][2], c[i][j][3]});
    return out;
}

TernaryQuadPair psi_binary_quartic(const BinaryForm& f) {
    if (f.n != 4) throw Error(ErrorKind::UnsupportedDegree, "psi needs a quartic");
    TernaryQuadPair p;
    p.A(1, 1) = f.f[0];
    p.A(1, 2) = -f.f[1];  // sign chosen so that pair_disc(psi(f)) = disc(f)
    p.A(2, 2) = f.f[2];
    p.A(2, 3) = f.f[3];
    p.A(3, 3) = f.f[4];
    p.B(1, 3) = 1;
    p.B(2, 2) = 1;
    return p;
}

TernaryQuadPair act_pair(const TernaryQuadPair& p, const std::array<long, 4>& g2, const std::array<long, 9>& g3) {
    auto conj = [&](const std::array<Int, 6>& c) {
        auto m = doubled(c);
        std::array<std::array<Int, 3>, 3> t, r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                t[i][j] = 0;
                for (int k = 0; k < 3; ++k) t[i][j] += g3[i * 3 + k] * m[k][j];
            }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                r[i][j] = 0;
                for (int k = 0; k < 3; ++k) r[i][j] += t[i][k] * g3[j * 3 + k];
            }
        return r;
    };
    auto ma = conj(p.a), mb = conj(p.b);
    std::array<std::array<Int, 3>, 3> na, nb;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            na[i][j] = g2[0] * ma[i][j] + g2[1] * mb[i][j];
            nb[i][j] = g2[2] * ma[i][j] + g2[3] * mb[i][j];
        }
    TernaryQuadPair out;
    undouble(na, out.a);
    undouble(nb, out.b);
    return out;
}

std::vector<Int> pair_coords(const TernaryQuadPair& p) {
    std::vector<Int> v(p.a.begin(), p.a.end());
    v.insert(v.end(), p.b.begin(), p.b.end());
    return v;
}

const char* family_name(FamilyKind k) { return k == FamilyKind::xy_xy ? "xy_xy" : "x_y_x2"; }

int family_free_count(FamilyKind k) { return k == FamilyKind::xy_xy ? 6 : 7; }

TernaryQuadPair family_pack(const FamilyTriple& t) {
    if (int(t.free.size()) != family_free_count(t.kind))
        throw Error(ErrorKind::ShapeViolation, "wrong number of free entries");
    if (t.eps != 1 && t.eps != -1) throw Error(ErrorKind::ShapeViolation, "sign must be +1 or -1");
    if (t.nu != 0 && t.nu != 1) throw Error(ErrorKind::ShapeViolation, "nu must be 0 or 1");
    if (t.kind == FamilyKind::xy_xy && t.nu != 0) throw Error(ErrorKind::ShapeViolation, "nu only for x_y_x2");
    TernaryQuadPair p;
    const auto& v = t.free;
    p.A(1, 1) = 1;
    if (t.kind == FamilyKind::xy_xy) {
        p.B(2, 2) = 1;
        p.A(1, 3) = v[0];
        p.A(2, 3) = v[1];
        p.A(3, 3) = v[2];
        p.B(1, 3) = v[3];
        p.B(2, 3) = v[4];
        p.B(3, 3) = v[5];
    } else {
        p.B(1, 2) = 1;
        p.A(1, 3) = v[0];
        p.A(2, 2) = v[1];
        p.A(2, 3) = v[2];
        p.A(3, 3) = v[3];
        p.B(2, 2) = v[4];
        p.B(2, 3) = v[5];
        p.B(3, 3) = v[6];
    }
    return p;
}

FamilyTriple family_unpack(FamilyKind k, const TernaryQuadPair& p) {
    FamilyTriple t;
    t.kind = k;
    auto need = [](bool ok) {
        if (!ok) throw Error(ErrorKind::ShapeViolation, "fixed entry differs from the family shape");
    };
    need(p.A(1, 1) == 1 && p.A(1, 2) == 0 && p.B(1, 1) == 0);
    if (k == FamilyKind::xy_xy) {
        need(p.A(2, 2) == 0 && p.B(1, 2) == 0 && p.B(2, 2) == 1);
        t.free = {p.A(1, 3), p.A(2, 3), p.A(3, 3), p.B(1, 3), p.B(2, 3), p.B(3, 3)};
    } else {
        need(p.B(1, 2) == 1 && p.B(1, 3) == 0);
        t.free = {p.A(1, 3), p.A(2, 2), p.A(2, 3), p.A(3, 3), p.B(2, 2), p.B(2, 3), p.B(3, 3)};
    }
    return t;
}

Int family_height(const FamilyTriple& t) {
    if (int(t.free.size()) != family_free_count(t.kind))
        throw Error(ErrorKind::ShapeViolation, "wrong number of free entries");
    const auto& v = t.free;
    // squared entries first, then plain ones
    std::vector<int> sq, lin;
    if (t.kind == FamilyKind::xy_xy) {
        sq = {0, 1, 3, 4};
        lin = {2, 5};
    } else {
        sq = {0, 4, 5, 6};
        lin = {1, 2, 3};
    }
    Int h = 0;
    for (int i : sq) h = std::max(h, Int(v[i] * v[i]));
    for (int i : lin) h = std::max(h, Int(abs(v[i])));
    return h;
}

ResolventMap resolvent_map_numeric(const RankRing& R, const RankRing& C) {
    if (R.n != 4 || C.n != 3) throw Error(ErrorKind::DimensionMismatch, "need a quartic ring and a cubic ring");
    if (trace_disc(R) != trace_disc(C)) throw Error(ErrorKind::PairingNotFound, "discriminants differ");
    auto er = embeddings(R), ec = embeddings(C);
    double rmax = 0, scale = 1;
    for (auto& row : er)
        for (auto& b : row) rmax = std::max(rmax, b.radius), scale = std::max(scale, std::abs(b.center));
    for (auto& row : ec)
        for (auto& b : row) rmax = std::max(rmax, b.radius), scale = std::max(scale, std::abs(b.center));
    static const int split[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const double tol = 1e-6;
    for (int pi = 0; pi < 6; ++pi) {
        Eigen::Matrix3cd m;
        for (int s = 0; s < 3; ++s) {
            int tau = perms[pi][s];
            m(s, 0) = 1.0;
            m(s, 1) = ec[tau][1].center;
            m(s, 2) = ec[tau][2].center;
        }
        Eigen::PartialPivLU<Eigen::Matrix3cd> lu(m);
        double cond = lu.inverse().cwiseAbs().rowwise().sum().maxCoeff();
        ResolventMap out;
        out.w.resize(9);
        out.pairing = pi;
        bool ok = true;
        for (int i = 1; i <= 3 && ok; ++i)
            for (int j = 1; j <= 3 && ok; ++j) {
                Eigen::Vector3cd phi;
                for (int s = 0; s < 3; ++s) {
                    const int* q = split[s];
                    auto sg = [&](int e, int b) { return er[q[e]][b].center; };
                    phi(s) = 0.5 * (sg(0, i) * sg(1, j) + sg(1, i) * sg(0, j) + sg(2, i) * sg(3, j) + sg(3, i) * sg(2, j));
                }
                Eigen::Vector3cd w = lu.solve(phi);
                double rad = cond * (8 * rmax * scale * scale + 1e-14 * scale * scale);
                for (int m2 = 0; m2 < 2; ++m2) {
                    std::complex<double> z = w(m2 + 1);
                    out.w[(i - 1) * 3 + (j - 1)][m2] = {z, rad};
                    double mult = i == j ? 1.0 : 2.0;
                    double x = z.real() * mult;
                    if (std::abs(z.imag()) > tol || std::abs(x - std::round(x)) > tol) ok = false;
                }
            }
        if (!ok) continue;
        for (int i = 1; i <= 3; ++i)
            for (int j = i; j <= 3; ++j) {
                double mult = i == j ? 1.0 : 2.0;
                const auto& e = out.w[(i - 1) * 3 + (j - 1)];
                out.pair.A(i, j) = long(std::llround(e[0].center.real() * mult));
                out.pair.B(i, j) = long(std::llround(e[1].center.real() * mult));
            }
        return out;
    }
    throw Error(ErrorKind::PairingNotFound, "no embedding pairing gives an integral resolvent map");
}

namespace {

Int quad_eval(const std::array<Int, 6>& c, const Elem& x) {
    Int s = 0;
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) s += c[TernaryQuadPair::slot(i, j)] * x[i] * x[j];
    return s;
}

Int polar(const std::array<Int, 6>& c, const Elem& x, const Elem& y) {
    // Q(x + y) - Q(x) - Q(y)
    Int s = 0;
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) s += c[TernaryQuadPair::slot(i, j)] * (x[i] * y[j] + x[j] * y[i]);
    return s;
}

Int abs_det4(const std::vector<Elem>& rows) {
    std::vector<std::vector<Int>> m(rows.begin(), rows.end());
    return abs(det_bareiss(m));
}

}  // namespace

std::array<Int, 2> phi_quadratic(const TernaryQuadPair& p, const Elem& x) {
    if (x.size() != 4) throw Error(ErrorKind::DimensionMismatch, "quartic element expected");
    return {quad_eval(p.a, x), quad_eval(p.b, x)};
}

std::array<Int, 2> phi_bilinear2(const TernaryQuadPair& p, const Elem& x, const Elem& y) {
    if (x.size() != 4 || y.size() != 4) throw Error(ErrorKind::DimensionMismatch, "quartic element expected");
    return {polar(p.a, x, y), polar(p.b, x, y)};
}

Int index_1_x_y_xy(const RankRing& R, const Elem& x, const Elem& y) {
    return abs_det4({basis_vector(4, 0), x, y, ring_mul(R, x, y)});
}

Int index_1_x_y_x2(const RankRing& R, const Elem& x, const Elem& y) {
    return abs_det4({basis_vector(4, 0), x, y, ring_mul(R, x, x)});
}

Int index_pair(const std::array<Int, 2>& u, const std::array<Int, 2>& v) { return abs(u[0] * v[1] - u[1] * v[0]); }

TernaryQuadPair parse_pair(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw Error(ErrorKind::ParseError, "pair literal needs ';'");
    auto read6 = [](const std::string& s, std::array<Int, 6>& out) {
        std::stringstream ss(s);
        std::string tok;
        int k = 0;
        while (std::getline(ss, tok, ',')) {
            if (k >= 6) throw Error(ErrorKind::ParseError, "too many entries in pair literal");
            tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
            if (out[k].set_str(tok, 10) != 0) throw Error(ErrorKind::ParseError, "bad integer '" + tok + "'");
            ++k;
        }
        if (k != 6) throw Error(ErrorKind::ParseError, "pair literal needs six entries per form");
    };
    TernaryQuadPair p;
    read6(text.substr(0, semi), p.a);
    read6(text.substr(semi + 1), p.b);
    return p;
}

std::string format_pair(const TernaryQuadPair& p) {
    std::string s;
    for (int k = 0; k < 6; ++k) s += (k ? "," : "") + p.a[k].get_str();
    s += ";";
    for (int k = 0; k < 6; ++k) s += (k ? "," : "") + p.b[k].get_str();
    return s;
}

}  // namespace smin
