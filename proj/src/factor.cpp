#include <algorithm>

#include "smin/exact.hpp"

namespace smin {

namespace {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0 when the budget runs out.
Int rho(const Int& n, std::uint64_t& budget) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1; c < 64; ++c) {
        Int y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1, m = 128;
        auto f = [&](const Int& v) {
            Int t = v * v + c;
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            return t;
        };
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = f(y);
                    Int d = abs(x - y);
                    q = q * d;
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
                if (budget < lim) return 0;
                budget -= lim;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                Int d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
                if (budget == 0) return 0;
                --budget;
            } while (g == 1);
        }
        if (g != n) return g;
    }
    return 0;
}

void split(const Int& n, std::vector<Int>& primes, std::uint64_t& budget) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        primes.push_back(n);
        return;
    }
    for (unsigned long k = 2; k <= 8; ++k) {
        Int r;
        if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k)) {
            for (unsigned long i = 0; i < k; ++i) split(r, primes, budget);
            return;
        }
    }
    Int d = rho(n, budget);
    if (d == 0) throw Error(ErrorKind::FactorizationTimeout, "cofactor " + n.get_str());
    split(d, primes, budget);
    split(Int(n / d), primes, budget);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n0, std::uint64_t rho_budget) {
    if (n0 == 0) throw Error(ErrorKind::ZeroDiscriminant, "cannot factor 0");
    Int n = abs(n0);
    std::vector<Int> primes;
    for (unsigned long p = 2; p < 100000; p += (p == 2 ? 1 : 2)) {
        if (Int(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            primes.emplace_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        if (n < Int(100000) * Int(100000)) {
            primes.push_back(n);
        } else {
            split(n, primes, rho_budget);
        }
    }
    std::sort(primes.begin(), primes.end());
    std::vector<std::pair<Int, unsigned>> out;
    for (auto& p : primes) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.push_back({p, 1});
    }
    return out;
}

std::vector<Int> square_prime_divisors(const Int& disc) {
    if (disc == 0) throw Error(ErrorKind::ZeroDiscriminant, "square_prime_divisors(0)");
    std::vector<Int> out;
    for (auto& [p, e] : factor_integer(disc))
        if (e >= 2) out.push_back(p);
    return out;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> out{1};
    if (n == 0) return out;
    for (auto& [p, e] : factor_integer(n)) {
        size_t sz = out.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace smin
