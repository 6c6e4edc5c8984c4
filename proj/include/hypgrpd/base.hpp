#pragma once

// Shared plumbing: exact rational arithmetic, typed errors, hashing.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypgrpd {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error taxonomy mirrors the CLI exit codes: violation -> 1, input -> 2, budget -> 3.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& m) : std::runtime_error(m) {}
};
struct violation_error : std::runtime_error {
    explicit violation_error(const std::string& m) : std::runtime_error(m) {}
};
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& m) : std::runtime_error(m) {}
};

constexpr long long INF_SCALE = std::numeric_limits<long long>::max();

inline BigInt rat_num(const Rat& r) { return numerator(r); }
inline BigInt rat_den(const Rat& r) { return denominator(r); }

inline Rat pow2r(long long e) {
    BigInt p = 1;
    p <<= static_cast<unsigned>(e < 0 ? -e : e);
    return e >= 0 ? Rat(p) : Rat(1, p);
}

inline Rat rat_pow(const Rat& r, unsigned long long e) {
    Rat acc = 1, base = r;
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline std::string rat_str(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            auto dot = s.find('.');
            if (dot != std::string::npos) {
                // decimal literal -> exact rational
                std::string digits = s.substr(0, dot) + s.substr(dot + 1);
                long long frac = static_cast<long long>(s.size() - dot - 1);
                BigInt num(digits);
                BigInt den = 1;
                for (long long i = 0; i < frac; ++i) den *= 10;
                return Rat(num, den);
            }
            return Rat(BigInt(s));
        }
        return Rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw input_error("cannot parse rational '" + s + "'");
    }
}

// floor(ln d) for exact rational d > 0, via certified rational brackets of e.
// Terminates because ln d is an integer only for d = 1 (handled directly).
inline long long floor_ln(const Rat& d) {
    if (d <= 0) throw input_error("floor_ln: argument must be positive");
    if (d == 1) return 0;

    auto cmp_with_e_pow = [](const Rat& x, long long k) -> int {
        if (k == 0) return x < 1 ? -1 : 1;  // x != 1 here
        Rat sum = 1, term = 1;
        BigInt fact = 1;
        for (long long n = 1;; ++n) {
            fact *= n;
            term = Rat(1, fact);
            sum += term;
            if (n < 6) continue;
            Rat lo_e = sum;
            Rat hi_e = sum + Rat(2, fact * (n + 1));
            Rat lo_p, hi_p;
            if (k > 0) {
                lo_p = rat_pow(lo_e, static_cast<unsigned long long>(k));
                hi_p = rat_pow(hi_e, static_cast<unsigned long long>(k));
            } else {
                lo_p = 1 / rat_pow(hi_e, static_cast<unsigned long long>(-k));
                hi_p = 1 / rat_pow(lo_e, static_cast<unsigned long long>(-k));
            }
            if (x < lo_p) return -1;
            if (x > hi_p) return 1;
            if (n > 200) throw input_error("floor_ln: bracket did not converge");
        }
    };

    long long bits = static_cast<long long>(msb(rat_num(d))) -
                     static_cast<long long>(msb(rat_den(d)));
    long long lo = static_cast<long long>((bits - 2) * 0.6931471805599453) - 2;
    long long hi = static_cast<long long>((bits + 2) * 0.6931471805599453) + 2;
    for (long long k = lo; k <= hi; ++k) {
        if (cmp_with_e_pow(d, k) >= 0 && cmp_with_e_pow(d, k + 1) < 0) return k;
    }
    throw input_error("floor_ln: search window exhausted");
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string fnv1a64_hex(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(s);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

inline long long floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace hypgrpd
