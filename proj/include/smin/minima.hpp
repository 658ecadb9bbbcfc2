// Minkowski embedding, Gram matrices and successive minima of rank-n rings.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "smin/exact.hpp"
#include "smin/rings.hpp"

namespace smin {

struct MinkLattice {
    int n = 0;
    std::vector<double> gram;    // row-major, midpoint
    std::vector<double> radius;  // per-entry error bound
    std::vector<f128> gram_hi;   // same Gram at quad precision, empty when unavailable

    double at(int i, int j) const { return gram[size_t(i) * n + j]; }
};

struct MinimaProfile {
    Int disc = 0;
    std::vector<double> lambda;
    std::vector<double> lambda_err;
    std::vector<double> p;  // log_|disc| lambda_i, i = 1..n-1
};

using BallMatrix = std::vector<std::vector<ComplexBall>>;

// Row k is the k-th embedding evaluated on v_0..v_{n-1}.
BallMatrix embeddings(const RankRing& r, std::uint64_t seed = 1);

MinkLattice gram(const RankRing& r, std::uint64_t seed = 1);
MinkLattice lattice_from_gram(int n, const std::vector<double>& g);

// Minima of the midpoint Gram; certified against the quad-precision Gram when present.
MinimaProfile successive_minima(const MinkLattice& l);
// Also returns the minimal vectors (coordinates in the lattice basis).
MinimaProfile successive_minima(const MinkLattice& l, std::vector<std::vector<long long>>& vectors);

// certify = false skips the quad-precision rerun.
MinimaProfile profile(const RankRing& r, bool certify = true, std::uint64_t seed = 1);

bool is_close(const MinimaProfile& prof, const std::vector<double>& target, double eps, double X);
bool is_close(const std::vector<double>& p, const std::vector<double>& target, double eps, double X);

std::vector<double> dual_minima(const MinkLattice& l);

std::pair<bool, bool> check_bound_system(const std::vector<double>& a, const std::vector<double>& p, double C,
                                         double X);

bool has_cycle(const std::vector<std::vector<int>>& adj);

double unit_ball_volume(int n);
// (2^n/n!) n^{-n/2} sqrt|disc| <= V_n prod lambda <= 2^n n^{-n/2} sqrt|disc|
bool minkowski_bounds_hold(const MinimaProfile& prof, int n);

std::string profile_csv_header(int n);
std::string profile_csv_row(const MinimaProfile& prof, int n);

}  // namespace smin
