#include <sstream>

#include "smin/forms.hpp"
#include "smin/rings.hpp"

namespace smin {

RankRing::RankRing(int rank) : n(rank), table(size_t(rank) * rank * rank, Int(0)) {
    for (int i = 0; i < n; ++i) {
        at(0, i, i) = 1;
        at(i, 0, i) = 1;
    }
}

void RankRing::set_product(int i, int j, const std::vector<Int>& coords) {
    for (int k = 0; k < n; ++k) {
        at(i, j, k) = coords[k];
        at(j, i, k) = coords[k];
    }
}

Elem basis_vector(int n, int i) {
    Elem e(n, Int(0));
    e[i] = 1;
    return e;
}

Elem ring_mul(const RankRing& r, const Elem& x, const Elem& y) {
    int n = r.n;
    Elem z(n, Int(0));
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            Int s = x[i] * y[j];
            for (int k = 0; k < n; ++k)
                if (r.at(i, j, k) != 0) z[k] += s * r.at(i, j, k);
        }
    }
    return z;
}

RElem ring_mul(const RankRing& r, const RElem& x, const RElem& y) {
    int n = r.n;
    RElem z(n, Rat(0));
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            Rat s = x[i] * y[j];
            for (int k = 0; k < n; ++k)
                if (r.at(i, j, k) != 0) z[k] += s * r.at(i, j, k);
        }
    }
    return z;
}

std::vector<std::vector<Int>> mult_matrix(const RankRing& r, const Elem& x) {
    int n = r.n;
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
    for (int j = 0; j < n; ++j) {
        Elem col = ring_mul(r, x, basis_vector(n, j));
        for (int k = 0; k < n; ++k) m[k][j] = col[k];
    }
    return m;
}

Int trace(const RankRing& r, const Elem& x) {
    Int t = 0;
    for (int i = 0; i < r.n; ++i) {
        if (x[i] == 0) continue;
        Int ti = 0;
        for (int j = 0; j < r.n; ++j) ti += r.at(i, j, j);
        t += x[i] * ti;
    }
    return t;
}

void validate_ring(const RankRing& r) {
    int n = r.n;
    if (n < 1 || r.table.size() != size_t(n) * n * n) throw Error(ErrorKind::InvalidTable, "table size");
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (r.at(0, i, k) != (i == k ? 1 : 0) || r.at(i, 0, k) != (i == k ? 1 : 0))
                throw Error(ErrorKind::InvalidTable, "v_0 is not the identity");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (r.at(i, j, k) != r.at(j, i, k))
                    throw Error(ErrorKind::NonCommutativeTable,
                                "v" + std::to_string(i) + "*v" + std::to_string(j));
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j)
            for (int k = 1; k < n; ++k) {
                Elem lhs = ring_mul(r, ring_mul(r, basis_vector(n, i), basis_vector(n, j)), basis_vector(n, k));
                Elem rhs = ring_mul(r, basis_vector(n, i), ring_mul(r, basis_vector(n, j), basis_vector(n, k)));
                if (lhs != rhs)
                    throw Error(ErrorKind::NonAssociativeTable, "witness triple (" + std::to_string(i) + "," +
                                                                    std::to_string(j) + "," + std::to_string(k) + ")");
            }
}

Int trace_disc(const RankRing& r) {
    int n = r.n;
    std::vector<Int> tr(n, Int(0));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) tr[k] += r.at(k, j, j);
    std::vector<std::vector<Int>> g(n, std::vector<Int>(n, Int(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) g[i][j] += r.at(i, j, k) * tr[k];
    return det_bareiss(g);
}

RankRing change_basis(const RankRing& r, const std::vector<Elem>& basis) {
    int n = r.n;
    std::vector<std::vector<Rat>> b(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i][j] = basis[i][j];
    auto inv = inverse_rational(b);
    RankRing out(n);
    for (int i = 1; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Elem p = ring_mul(r, basis[i], basis[j]);
            std::vector<Int> coords(n, Int(0));
            for (int k = 0; k < n; ++k) {
                Rat s = 0;
                for (int m = 0; m < n; ++m) s += p[m] * inv[m][k];
                if (s.get_den() != 1) throw Error(ErrorKind::InvalidTable, "basis change is not unimodular");
                coords[k] = s.get_num();
            }
            out.set_product(i, j, coords);
        }
    return out;
}

BinaryForm delone_faddeev_form(const RankRing& r) {
    if (r.n != 3) throw Error(ErrorKind::UnsupportedDegree, "Delone-Faddeev form needs rank 3");
    if (trace_disc(r) == 0) throw Error(ErrorKind::DegenerateDiscriminant, "degenerate cubic ring");
    // alpha = x v1 + y v2; I = x P2 - y P1 where P_k are the alpha^2 coordinates; return -I
    auto P = [&](int k) { return std::vector<Int>{r.at(1, 1, k), 2 * r.at(1, 2, k), r.at(2, 2, k)}; };
    auto p1 = P(1), p2 = P(2);
    // x*(p2[0] x^2 + p2[1] xy + p2[2] y^2) - y*(p1[0] x^2 + p1[1] xy + p1[2] y^2)
    std::vector<Int> idx = {p2[0], p2[1] - p1[0], p2[2] - p1[1], -p1[2]};
    for (auto& v : idx) v = -v;
    return BinaryForm(idx);
}

namespace {

Int mod(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Elem elem_mod(Elem x, const Int& ell) {
    for (auto& v : x) v = mod(v, ell);
    return x;
}

Elem pow_mod(const RankRing& r, Elem base, Int e, const Int& ell) {
    Elem acc = basis_vector(r.n, 0);
    base = elem_mod(base, ell);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = elem_mod(ring_mul(r, acc, base), ell);
        base = elem_mod(ring_mul(r, base, base), ell);
        e >>= 1;
    }
    return acc;
}

// Kernel of the F_ell-linear map with the given columns (each column of length rows).
std::vector<Elem> kernel_mod(const std::vector<Elem>& cols, const Int& ell) {
    size_t ncols = cols.size();
    if (ncols == 0) return {};
    size_t rows = cols[0].size();
    std::vector<Elem> m(rows, Elem(ncols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < ncols; ++j) m[i][j] = mod(cols[j][i], ell);
    std::vector<int> pivot_col;
    size_t rank = 0;
    for (size_t c = 0; c < ncols && rank < rows; ++c) {
        size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        Int inv;
        mpz_invert(inv.get_mpz_t(), m[rank][c].get_mpz_t(), ell.get_mpz_t());
        for (auto& v : m[rank]) v = mod(v * inv, ell);
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][c] == 0) continue;
            Int f = m[i][c];
            for (size_t j = 0; j < ncols; ++j) m[i][j] = mod(m[i][j] - f * m[rank][j], ell);
        }
        pivot_col.push_back(int(c));
        ++rank;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<Elem> ker;
    for (size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        Elem v(ncols, Int(0));
        v[free] = 1;
        for (size_t i = 0; i < rank; ++i) v[pivot_col[i]] = mod(-m[i][free], ell);
        ker.push_back(v);
    }
    return ker;
}

// Row-style Hermite normal form; returns the nonzero rows.
std::vector<Elem> hnf_rows(std::vector<Elem> rows, int n) {
    size_t top = 0;
    for (int c = 0; c < n; ++c) {
        for (;;) {
            size_t best = rows.size();
            for (size_t i = top; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool clean = true;
            for (size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[top][c].get_mpz_t());
                for (int j = 0; j < n; ++j) rows[i][j] -= q * rows[top][j];
                if (rows[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (top < rows.size() && rows[top][c] != 0) ++top;
    }
    rows.resize(top);
    return rows;
}

}  // namespace

bool is_maximal_at(const RankRing& r, const Int& ell) {
    int n = r.n;
    if (trace_disc(r) == 0) throw Error(ErrorKind::DegenerateDiscriminant, "maximality of degenerate ring");
    // ell-radical: kernel of x -> x^{ell^j} on R/ell R with ell^j >= n
    Int q = ell;
    while (q < n) q *= ell;
    std::vector<Elem> frob;
    for (int i = 0; i < n; ++i) frob.push_back(pow_mod(r, basis_vector(n, i), q, ell));
    std::vector<Elem> gens = kernel_mod(frob, ell);
    for (int i = 0; i < n; ++i) {
        Elem e(n, Int(0));
        e[i] = ell;
        gens.push_back(e);
    }
    std::vector<Elem> basis = hnf_rows(gens, n);
    std::vector<std::vector<Rat>> bm(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) bm[i][j] = basis[i][j];
    auto binv = inverse_rational(bm);
    // y -> (y b_i mod ell I)_i ; R is ell-maximal iff this map is injective on R/ell R
    std::vector<Elem> cols;
    for (int s = 0; s < n; ++s) {
        Elem col;
        for (int i = 0; i < n; ++i) {
            Elem p = ring_mul(r, basis_vector(n, s), basis[i]);
            for (int k = 0; k < n; ++k) {
                Rat t = 0;
                for (int m = 0; m < n; ++m) t += p[m] * binv[m][k];
                col.push_back(mod(t.get_num(), ell));
            }
        }
        cols.push_back(col);
    }
    return kernel_mod(cols, ell).empty();
}

bool is_maximal(const RankRing& r) {
    Int d = trace_disc(r);
    if (d == 0) throw Error(ErrorKind::DegenerateDiscriminant, "maximality of degenerate ring");
    for (auto& ell : square_prime_divisors(d))
        if (!is_maximal_at(r, ell)) return false;
    return true;
}

std::vector<Elem> index_l_overrings(const RankRing& r, long ell) {
    int n = r.n;
    Int L = ell;
    std::vector<Elem> found;
    auto in_span = [&](Elem w, const Elem& v) {
        // w == t v mod ell for some t
        w = elem_mod(w, L);
        int lead = 0;
        while (lead < n && v[lead] == 0) ++lead;
        Int t = w[lead];
        for (int k = 0; k < n; ++k)
            if (mod(w[k] - t * v[k], L) != 0) return false;
        return true;
    };
    Elem v(n, Int(0));
    // projective points: first nonzero coordinate equal to 1
    for (int lead = 0; lead < n; ++lead) {
        long count = 1;
        for (int k = lead + 1; k < n; ++k) count *= ell;
        for (long code = 0; code < count; ++code) {
            std::fill(v.begin(), v.end(), Int(0));
            v[lead] = 1;
            long c = code;
            for (int k = lead + 1; k < n; ++k) {
                v[k] = c % ell;
                c /= ell;
            }
            bool closed = true;
            for (int i = 1; i < n && closed; ++i) closed = in_span(ring_mul(r, v, basis_vector(n, i)), v);
            if (!closed) continue;
            Elem sq = ring_mul(r, v, v);
            for (auto& x : sq) {
                if (mod(x, L) != 0) closed = false;
                x /= L;
            }
            if (closed && in_span(sq, v)) found.push_back(v);
        }
    }
    return found;
}

const char* galois_name(CubicGalois g) {
    switch (g) {
        case CubicGalois::S3: return "S3";
        case CubicGalois::C3: return "C3";
        case CubicGalois::Reducible: return "reducible";
    }
    return "?";
}

CubicGalois cubic_galois_class(const BinaryForm& f) {
    if (f.n != 3) throw Error(ErrorKind::UnsupportedDegree, "cubic_galois_class needs a cubic");
    Int d = f.disc();
    if (d == 0) throw Error(ErrorKind::DegenerateDiscriminant, format_form(f));
    if (is_reducible(f)) return CubicGalois::Reducible;
    if (d > 0 && mpz_perfect_square_p(d.get_mpz_t())) return CubicGalois::C3;
    return CubicGalois::S3;
}

std::string serialize_ring(const RankRing& r) {
    std::ostringstream os;
    os << "rank " << r.n << "\n";
    for (int i = 1; i < r.n; ++i)
        for (int j = i; j < r.n; ++j) {
            os << i << " " << j << ":";
            for (int k = 0; k < r.n; ++k) os << " " << r.at(i, j, k).get_str();
            os << "\n";
        }
    return os.str();
}

RankRing parse_ring(const std::string& text) {
    std::istringstream is(text);
    std::string word;
    int n;
    if (!(is >> word >> n) || word != "rank" || n < 1 || n > 8) throw Error(ErrorKind::ParseError, "ring header");
    RankRing r(n);
    for (int i = 1; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int a, b;
            char colon;
            if (!(is >> a >> b >> colon) || a != i || b != j || colon != ':')
                throw Error(ErrorKind::ParseError, "ring product header " + std::to_string(i) + " " + std::to_string(j));
            std::vector<Int> v(n);
            for (int k = 0; k < n; ++k) {
                std::string tok;
                if (!(is >> tok) || v[k].set_str(tok, 10) != 0) throw Error(ErrorKind::ParseError, "ring coefficient");
            }
            r.set_product(i, j, v);
        }
    return r;
}

}  // namespace smin
