// Pairs of integral ternary quadratic forms and the quartic rings they parametrize.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "smin/forms.hpp"
#include "smin/minima.hpp"
#include "smin/rings.hpp"

namespace smin {

// Coefficients of A(x) = sum_{i<=j} a_ij x_i x_j in the order 11,12,13,22,23,33; same for B.
// The symmetric matrix of A has a_ii on the diagonal and a_ij/2 off it.
struct TernaryQuadPair {
    std::array<Int, 6> a{}, b{};

    static int slot(int i, int j);  // 1-based indices, either order
    Int& A(int i, int j) { return a[slot(i, j)]; }
    Int& B(int i, int j) { return b[slot(i, j)]; }
    const Int& A(int i, int j) const { return a[slot(i, j)]; }
    const Int& B(int i, int j) const { return b[slot(i, j)]; }
    bool operator==(const TernaryQuadPair& o) const { return a == o.a && b == o.b; }
};

BinaryForm resolvent_cubic_raw(const TernaryQuadPair& p);  // 4 det(Bx - Ay), no checks
BinaryForm resolvent_cubic(const TernaryQuadPair& p);
Int pair_disc(const TernaryQuadPair& p);

struct QuarticRings {
    RankRing R;  // basis 1, a_1, a_2, a_3
    RankRing C;  // nakagawa_ring(resolvent_cubic(p))
};
QuarticRings quartic_ring(const TernaryQuadPair& p);

TernaryQuadPair psi_binary_quartic(const BinaryForm& f);

// (g2, g3) . (A, B): both forms are replaced by g3 M g3^T, then (A, B) -> (r A + s B, t A + u B).
TernaryQuadPair act_pair(const TernaryQuadPair& p, const std::array<long, 4>& g2, const std::array<long, 9>& g3);

// 12 coordinates a11..a33, b11..b33 for box membership.
std::vector<Int> pair_coords(const TernaryQuadPair& p);

enum class FamilyKind { xy_xy, x_y_x2 };
const char* family_name(FamilyKind k);

// xy_xy free entries: a13, a23, a33, b13, b23, b33
// x_y_x2 free entries: a13, a22, a23, a33, b22, b23, b33
struct FamilyTriple {
    FamilyKind kind = FamilyKind::xy_xy;
    std::vector<Int> free;
    int eps = 1;
    int nu = 0;
};
int family_free_count(FamilyKind k);
TernaryQuadPair family_pack(const FamilyTriple& t);
FamilyTriple family_unpack(FamilyKind k, const TernaryQuadPair& p);  // ShapeViolation on mismatch
Int family_height(const FamilyTriple& t);

struct ResolventMap {
    // w[(i-1)*3 + (j-1)][m]: coordinate of phi(a_i (x) a_j) along the m-th non-unit basis vector of C
    std::vector<std::array<ComplexBall, 2>> w;
    TernaryQuadPair pair;  // integral pair read off w
    int pairing = 0;       // which 2+2 split of the quartic embeddings was matched to the first cubic one
};
ResolventMap resolvent_map_numeric(const RankRing& R, const RankRing& C);

// phi(x) mod Z for x in R, from an integral pair: (A(x'), B(x')) with x' the non-unit coordinates.
std::array<Int, 2> phi_quadratic(const TernaryQuadPair& p, const Elem& x);
// phi(x + y) - phi(x) - phi(y)
std::array<Int, 2> phi_bilinear2(const TernaryQuadPair& p, const Elem& x, const Elem& y);

// |det| of the coordinate matrix of 1, x, y, xy (resp. 1, x, y, x^2) in R.
Int index_1_x_y_xy(const RankRing& R, const Elem& x, const Elem& y);
Int index_1_x_y_x2(const RankRing& R, const Elem& x, const Elem& y);
// |det| of the non-unit coordinates of (u, v) in C.
Int index_pair(const std::array<Int, 2>& u, const std::array<Int, 2>& v);

TernaryQuadPair parse_pair(const std::string& text);
std::string format_pair(const TernaryQuadPair& p);

}  // namespace smin
