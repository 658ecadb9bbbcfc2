#include "smin/quintic.hpp"

#include <algorithm>
#include <sstream>

namespace smin {

int AltTensor::pair_index(int i, int j) {
    if (i < 1 || j > 5 || i >= j) throw Error(ErrorKind::DimensionMismatch, "slot needs 1 <= i < j <= 5");
    static const int start[5] = {0, 4, 7, 9, 10};
    return start[i - 1] + (j - i - 1);
}

Int AltTensor::at(int k, int i, int j) const {
    if (i == j) return 0;
    if (i < j) return slots[slot(k, i, j)];
    return -slots[slot(k, j, i)];
}

void AltTensor::set(int k, int i, int j, const Int& v) {
    if (i < j)
        slots[slot(k, i, j)] = v;
    else
        slots[slot(k, j, i)] = -v;
}

AltTensor psi_binary_quintic(const BinaryForm& f) {
    if (f.n != 5) throw Error(ErrorKind::UnsupportedDegree, "psi needs a quintic");
    const auto& c = f.f;
    AltTensor t;
    t.set(1, 2, 3, -1);
    t.set(1, 4, 5, -c[5]);
    t.set(2, 1, 3, 1);
    t.set(2, 2, 4, 1);
    t.set(2, 3, 5, -c[3]);
    t.set(2, 4, 5, -c[4]);
    t.set(3, 1, 4, -1);
    t.set(3, 2, 5, -1);
    t.set(3, 3, 4, -c[1]);
    t.set(3, 3, 5, -c[2]);
    t.set(4, 1, 5, 1);
    t.set(4, 3, 4, -c[0]);
    return t;
}

std::vector<Int> tensor_coords(const AltTensor& t) { return {t.slots.begin(), t.slots.end()}; }

bool tensor_in_box(const AltTensor& t, const std::vector<Rat>& p, double X) {
    return in_box(make_box(BoxKind::quintic, p, X), tensor_coords(t));
}

AltTensor act_tensor(const AltTensor& t, const std::array<long, 16>& g4, const std::array<long, 25>& g5) {
    // conjugate each A_l by g5
    std::array<std::array<std::array<Int, 5>, 5>, 4> conj;
    for (int l = 1; l <= 4; ++l) {
        std::array<std::array<Int, 5>, 5> tmp;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                Int s = 0;
                for (int m = 0; m < 5; ++m) s += g5[i * 5 + m] * t.at(l, m + 1, j + 1);
                tmp[i][j] = s;
            }
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                Int s = 0;
                for (int m = 0; m < 5; ++m) s += tmp[i][m] * g5[j * 5 + m];
                conj[l - 1][i][j] = s;
            }
    }
    AltTensor out;
    for (int k = 1; k <= 4; ++k)
        for (int i = 1; i <= 5; ++i)
            for (int j = i + 1; j <= 5; ++j) {
                Int s = 0;
                for (int l = 0; l < 4; ++l) s += g4[(k - 1) * 4 + l] * conj[l][i - 1][j - 1];
                out.set(k, i, j, s);
            }
    return out;
}

MinimaProfile quintic_ring_side(const BinaryForm& f, bool certify) {
    if (f.n != 5) throw Error(ErrorKind::UnsupportedDegree, "quintic form expected");
    if (f.disc() == 0) throw Error(ErrorKind::DegenerateDiscriminant, "quintic form with zero discriminant");
    return profile(nakagawa_ring(f), certify);
}

std::string format_tensor(const AltTensor& t) {
    std::string s;
    for (int k = 0; k < 4; ++k) {
        if (k) s += ";";
        for (int m = 0; m < 10; ++m) s += (m ? "," : "") + t.slots[k * 10 + m].get_str();
    }
    return s;
}

AltTensor parse_tensor(const std::string& text) {
    AltTensor t;
    std::stringstream blocks(text);
    std::string block;
    int k = 0;
    while (std::getline(blocks, block, ';')) {
        if (k >= 4) throw Error(ErrorKind::ParseError, "tensor literal has more than four blocks");
        std::stringstream ss(block);
        std::string tok;
        int m = 0;
        while (std::getline(ss, tok, ',')) {
            tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
            if (m >= 10 || t.slots[k * 10 + m].set_str(tok, 10) != 0)
                throw Error(ErrorKind::ParseError, "bad tensor entry '" + tok + "'");
            ++m;
        }
        if (m != 10) throw Error(ErrorKind::ParseError, "tensor block needs ten entries");
        ++k;
    }
    if (k != 4) throw Error(ErrorKind::ParseError, "tensor literal needs four blocks");
    return t;
}

}  // namespace smin
