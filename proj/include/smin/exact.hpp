// Exact integer/rational arithmetic, polynomials, resultants, discriminants,
// certified root isolation and small-scale factorization.
#pragma once

#include <gmpxx.h>
#include <quadmath.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace smin {

using Int = mpz_class;
using Rat = mpq_class;
using f128 = __float128;

enum class ErrorKind {
    ZeroPolynomial,
    UnsupportedDegree,
    NotSquarefree,
    PrecisionExhausted,
    ZeroDiscriminant,
    FactorizationTimeout,
    DegenerateDiscriminant,
    NonAssociativeTable,
    NonCommutativeTable,
    UnitDiscriminant,
    DimensionMismatch,
    ShapeViolation,
    PairingNotFound,
    InvalidPoint,
    UnknownPolytope,
    UnknownFunction,
    InvalidTable,
    ResourceBudgetExceeded,
    UnsupportedDedup,
    ParseError,
};

const char* error_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& what);
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Univariate integer polynomial, coefficients in ascending degree.
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    int degree() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Int& lead() const { return c.back(); }
    Int eval(const Int& x) const;
    void trim();

    bool operator==(const IntPoly& o) const { return c == o.c; }
};

IntPoly derivative(const IntPoly& p);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
std::string to_string(const IntPoly& p);

Int det_bareiss(std::vector<std::vector<Int>> m);
Rat det_rational(std::vector<std::vector<Rat>> m);
// Inverse of a square rational matrix; throws DegenerateDiscriminant if singular.
std::vector<std::vector<Rat>> inverse_rational(std::vector<std::vector<Rat>> m);

Int resultant(const IntPoly& p, const IntPoly& q);
// Degree of gcd over Q.
int gcd_degree(const IntPoly& p, const IntPoly& q);
bool is_squarefree(const IntPoly& p);

// Disc of the binary n-ic f_0 x^n + ... + f_n y^n, n = 2..6 (3..5 in the spec'd range).
Int disc_binary_form(int n, const std::vector<Int>& f);
// Same, fixed-width; returns false when an intermediate value overflows.
bool disc_binary_form_fast(int n, const long long* f, __int128& out);

inline __int128 disc_cubic(__int128 a, __int128 b, __int128 c, __int128 d) {
    return b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d;
}
Int disc_cubic(const Int& a, const Int& b, const Int& c, const Int& d);

// Characteristic polynomial det(xI - M) of an integer matrix (Faddeev-LeVerrier).
IntPoly charpoly(const std::vector<std::vector<Int>>& m);

struct ComplexBall {
    std::complex<double> center;
    double radius = 0;

    bool contains(std::complex<double> z) const { return std::abs(z - center) <= radius; }
    bool disjoint(const ComplexBall& o) const { return std::abs(center - o.center) > radius + o.radius; }
};

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);

// Minimal complex number over an arbitrary real type (used with double and f128).
template <class T>
struct Cx {
    T re{}, im{};
    Cx() = default;
    Cx(T r, T i = T(0)) : re(r), im(i) {}
    Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
    Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Cx operator*(T s) const { return {re * s, im * s}; }
    Cx operator/(const Cx& o) const {
        T d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    Cx conj() const { return {re, -im}; }
    T norm2() const { return re * re + im * im; }
};

template <class T>
struct RootBall {
    Cx<T> z;
    T radius;
};

// Roots refined in T, each with a certified inclusion radius; balls pairwise disjoint.
template <class T>
std::vector<RootBall<T>> isolate_roots(const IntPoly& p);

std::vector<ComplexBall> certified_roots(const IntPoly& p, double tol = 1e-12);

// Prime factorization with multiplicities; throws FactorizationTimeout.
std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n, std::uint64_t rho_budget = 4000000);
std::vector<Int> square_prime_divisors(const Int& disc);
std::vector<Int> divisors(const Int& n);

double to_double(const Rat& q);
f128 to_f128(const Int& z);
f128 to_f128(const Rat& q);

inline double absd(double x) { return x < 0 ? -x : x; }
inline f128 absd(f128 x) { return x < 0 ? -x : x; }
inline double sqrt_t(double x) { return std::sqrt(x); }
inline f128 sqrt_t(f128 x) { return sqrtq(x); }

}  // namespace smin
