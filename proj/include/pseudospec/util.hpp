#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pseudospec {

using cplx = std::complex<double>;
using std::size_t;

constexpr double PI = 3.141592653589793238462643383279502884;

// ---------- exact rational arithmetic (small denominators only) ----------

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }
    double value() const { return double(num) / double(den); }

    friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
    friend Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

inline long long factorial_ll(int n) {
    if (n < 0) throw std::domain_error("factorial of negative");
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline long long binomial_ll(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// parity sign (-1)^e without pow
inline int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

// ---------- angles ----------

// reduce to [-pi, pi)
inline double reduce_angle(double x) {
    double y = std::remainder(x, 2.0 * PI);   // [-pi, pi]
    if (y >= PI) y -= 2.0 * PI;
    return y;
}

// ---------- permutations ----------

// sign of a permutation given as image list perm[i] = sigma(i), 0-based
inline int permutation_sign(const std::vector<int>& perm) {
    const size_t n = perm.size();
    std::vector<char> seen(n, 0);
    int sign = 1;
    for (size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        size_t len = 0;
        for (size_t j = i; !seen[j]; j = size_t(perm[j])) { seen[j] = 1; ++len; }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

inline bool is_permutation(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || size_t(v) >= p.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

// ---------- deterministic RNG ----------

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) {
    return a + (b - a) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline int uniform_int(Rng& rng, int a, int b) {  // inclusive
    return std::uniform_int_distribution<int>(a, b)(rng);
}

} // namespace pseudospec
