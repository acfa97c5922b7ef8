#ifndef MCDS_RATIONAL_HPP
#define MCDS_RATIONAL_HPP

#include <cassert>
#include <cstdint>
#include <numeric>
#include <string>

namespace mcds {

// Exact non-negative rational. Star efficiencies and marking probabilities
// are ratios of small integers (counts over summed weights), so int64
// numerator/denominator with 128-bit cross multiplication never overflows
// at the instance sizes this simulator targets.
struct Rat {
    int64_t num = 0;
    int64_t den = 1;

    Rat() = default;
    Rat(int64_t n, int64_t d) : num(n), den(d) {
        assert(d != 0);
        if (den < 0) { num = -num; den = -den; }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    explicit Rat(int64_t n) : num(n), den(1) {}

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num * b.num, a.den * b.den);
    }
    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// 2^floor(log2 r) for r > 0, as an exact rational (exponent may be negative).
inline Rat floor_pow2(const Rat& r) {
    assert(r.num > 0);
    Rat p(1, 1);
    if (p <= r) {
        while (Rat(p.num * 2, p.den) <= r) p = Rat(p.num * 2, p.den);
    } else {
        while (r < p) p = Rat(p.num, p.den * 2);
    }
    return p;
}

}  // namespace mcds

#endif
