// Quadruples of 5x5 alternating integer matrices and the quintic box.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "smin/forms.hpp"
#include "smin/geometry.hpp"
#include "smin/minima.hpp"

namespace smin {

// a^k_ij for k = 1..4 and 1 <= i < j <= 5, slot order k then (i, j) lexicographic.
struct AltTensor {
    std::array<Int, 40> slots{};

    static int pair_index(int i, int j);  // 1 <= i < j <= 5 -> 0..9
    static int slot(int k, int i, int j) { return (k - 1) * 10 + pair_index(i, j); }
    // Alternating completion: at(k, j, i) = -at(k, i, j), at(k, i, i) = 0.
    Int at(int k, int i, int j) const;
    void set(int k, int i, int j, const Int& v);
    bool operator==(const AltTensor& o) const { return slots == o.slots; }
};

AltTensor psi_binary_quintic(const BinaryForm& f);
std::vector<Int> tensor_coords(const AltTensor& t);
// |a^k_ij| <= X^{1/2 + p_{5-k} - q_{6-i} - q_{6-j}} for all 40 slots; p = (p1..p4, q1..q5).
bool tensor_in_box(const AltTensor& t, const std::vector<Rat>& p, double X);

// A'_k = sum_l g4[k][l] g5 A_l g5^T (row-major g4 4x4, g5 5x5).
AltTensor act_tensor(const AltTensor& t, const std::array<long, 16>& g4, const std::array<long, 25>& g5);

MinimaProfile quintic_ring_side(const BinaryForm& f, bool certify = true);

// "a12,...,a45;...;..." four blocks of ten integers
std::string format_tensor(const AltTensor& t);
AltTensor parse_tensor(const std::string& text);

}  // namespace smin
