// Rank-n rings given by integer multiplication tables.
#pragma once

#include <string>
#include <vector>

#include "smin/exact.hpp"

namespace smin {

struct BinaryForm;

// v_i v_j = sum_k c(i,j,k) v_k over the basis v_0 = 1, v_1, ..., v_{n-1}.
struct RankRing {
    int n = 0;
    std::vector<Int> table;  // (i*n + j)*n + k

    RankRing() = default;
    explicit RankRing(int rank);

    Int& at(int i, int j, int k) { return table[(size_t(i) * n + j) * n + k]; }
    const Int& at(int i, int j, int k) const { return table[(size_t(i) * n + j) * n + k]; }
    // Set v_i v_j = v_j v_i for 1 <= i <= j < n; products with v_0 are filled in by the constructor.
    void set_product(int i, int j, const std::vector<Int>& coords);

    bool operator==(const RankRing& o) const { return n == o.n && table == o.table; }
};

using Elem = std::vector<Int>;
using RElem = std::vector<Rat>;

Elem ring_mul(const RankRing& r, const Elem& x, const Elem& y);
RElem ring_mul(const RankRing& r, const RElem& x, const RElem& y);
// Column j holds the coordinates of x * v_j.
std::vector<std::vector<Int>> mult_matrix(const RankRing& r, const Elem& x);
Int trace(const RankRing& r, const Elem& x);
Elem basis_vector(int n, int i);

// Throws NonCommutativeTable / NonAssociativeTable / InvalidTable on failure.
void validate_ring(const RankRing& r);
Int trace_disc(const RankRing& r);
// Ring in a new basis: row i of `basis` gives the old coordinates of the new v_i (row 0 must be 1).
RankRing change_basis(const RankRing& r, const std::vector<Elem>& basis);

BinaryForm delone_faddeev_form(const RankRing& r);

bool is_maximal_at(const RankRing& r, const Int& ell);
bool is_maximal(const RankRing& r);
// Index-ell over-rings R' with R < R' <= (1/ell)R, each given by its extra generator (numerators mod ell).
std::vector<Elem> index_l_overrings(const RankRing& r, long ell);
// Nontrivial idempotent e (e^2 = e, e != 0, 1), located through the complex embeddings.
bool find_idempotent(const RankRing& r, Elem& out);

enum class CubicGalois { S3, C3, Reducible };
const char* galois_name(CubicGalois g);
CubicGalois cubic_galois_class(const BinaryForm& f);
BinaryForm cubic_canonical_form(const BinaryForm& f);
// Same, on plain 64-bit coefficients; used in enumeration loops.
void cubic_canonical_form_ll(const long long in[4], long long out[4]);

// "rank n" line followed by one line per product i j: c_0 ... c_{n-1}.
std::string serialize_ring(const RankRing& r);
RankRing parse_ring(const std::string& text);

}  // namespace smin
