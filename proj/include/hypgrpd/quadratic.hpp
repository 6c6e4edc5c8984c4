#pragma once

// Exact arithmetic in Z[theta] where theta is the expanding root of
// x^2 = p x + q with q = +-1 (so theta is a unit and theta^{-1} stays in
// the ring), plus exact elements of Q(sqrt(d)) for eigenvalue output.

#include <string>

#include "base.hpp"
#include "json_util.hpp"

namespace hypgrpd {

struct QuadRing {
    long long p, q;  // theta^2 = p*theta + q
    int root_sign;   // theta = (p + root_sign*sqrt(p^2+4q)) / 2

    static QuadRing golden() { return {1, 1, +1}; }  // theta = (1+sqrt5)/2

    // ring for x^2 + b x + 1 = 0, i.e. theta^2 = -b theta - 1; pick the
    // root of modulus > 1 (the expanding one)
    static QuadRing from_b(long long b) {
        if (b * b <= 4) throw input_error("need |b| > 2 for a real quadratic ring");
        // roots (-b +- sqrt(b^2-4))/2 have product 1; for b < 0 both are
        // positive and the + root is the large one, for b > 0 both negative
        // and the - root has modulus > 1
        return {-b, -1, b < 0 ? +1 : -1};
    }

    long long disc() const { return p * p + 4 * q; }
};

struct QuadInt {
    long long a = 0, b = 0;  // a + b*theta
    bool operator==(const QuadInt& o) const { return a == o.a && b == o.b; }
    bool operator!=(const QuadInt& o) const { return !(*this == o); }
    bool operator<(const QuadInt& o) const { return a != o.a ? a < o.a : b < o.b; }
};

inline QuadInt qadd(const QuadInt& x, const QuadInt& y) { return {x.a + y.a, x.b + y.b}; }
inline QuadInt qsub(const QuadInt& x, const QuadInt& y) { return {x.a - y.a, x.b - y.b}; }
inline QuadInt qneg(const QuadInt& x) { return {-x.a, -x.b}; }

inline QuadInt qmul(const QuadRing& R, const QuadInt& x, const QuadInt& y) {
    // (a1 + b1 t)(a2 + b2 t) = a1a2 + q b1b2 + (a1b2 + a2b1 + p b1b2) t
    return {x.a * y.a + R.q * x.b * y.b, x.a * y.b + x.b * y.a + R.p * x.b * y.b};
}

// multiply by theta^k, k of either sign (theta^{-1} = (theta - p)/q)
inline QuadInt qmul_theta_pow(const QuadRing& R, QuadInt x, long long k) {
    QuadInt t{0, 1};
    QuadInt tinv{-R.p * R.q, R.q};  // q = +-1: (theta - p)/q = -pq + q theta
    for (long long i = 0; i < (k > 0 ? k : -k); ++i) x = qmul(R, x, k > 0 ? t : tinv);
    return x;
}

// exact sign of a + b*theta
inline int qsign(const QuadRing& R, const QuadInt& x) {
    // 2*val = (2a + b p) + (b * root_sign) * sqrt(D)
    __int128 A = 2 * static_cast<__int128>(x.a) + static_cast<__int128>(x.b) * R.p;
    __int128 t = static_cast<__int128>(x.b) * R.root_sign;
    __int128 D = R.disc();
    if (t == 0) return A > 0 ? 1 : (A < 0 ? -1 : 0);
    if (t > 0 && A >= 0) return 1;
    if (t < 0 && A <= 0) return -1;
    // opposite signs: compare A^2 vs t^2 D
    __int128 lhs = A * A, rhs = t * t * D;
    if (lhs == rhs) return 0;  // cannot happen for irrational theta unless both zero
    if (A > 0) return lhs > rhs ? 1 : -1;   // A > 0 > t*sqrtD side
    return lhs > rhs ? -1 : 1;
}

// compare a + b*theta against a rational r
inline int qcmp(const QuadRing& R, const QuadInt& x, const Rat& r) {
    long long num = static_cast<long long>(rat_num(r));
    long long den = static_cast<long long>(rat_den(r));
    return qsign(R, {x.a * den - num, x.b * den});
}

inline std::string qformat(const QuadInt& x) {
    if (x.b == 0) return std::to_string(x.a);
    std::string out;
    if (x.a != 0) out += std::to_string(x.a);
    if (x.b == 1)
        out += (x.a != 0 ? "+" : "") + std::string("t");
    else if (x.b == -1)
        out += "-t";
    else
        out += (x.b > 0 && x.a != 0 ? "+" : "") + std::to_string(x.b) + "t";
    return out;
}

// ---- exact elements of Q(sqrt(d)) -----------------------------------------

struct QuadSurd {
    Rat a, b;      // a + b * sqrt(d)
    long long d;   // nonnegative, not necessarily squarefree

    bool operator==(const QuadSurd& o) const { return a == o.a && b == o.b && d == o.d; }
};

inline QuadSurd surd_add(const QuadSurd& x, const QuadSurd& y) {
    if (x.d != y.d && x.b != 0 && y.b != 0) throw input_error("mixed radicands");
    return {x.a + y.a, x.b + y.b, x.b != 0 ? x.d : y.d};
}

inline QuadSurd surd_mul(const QuadSurd& x, const QuadSurd& y) {
    if (x.d != y.d && x.b != 0 && y.b != 0) throw input_error("mixed radicands");
    long long d = x.b != 0 ? x.d : y.d;
    return {x.a * y.a + x.b * y.b * Rat(d), x.a * y.b + x.b * y.a, d};
}

inline int surd_sign(const QuadSurd& x) {
    if (x.b == 0) return x.a > 0 ? 1 : (x.a < 0 ? -1 : 0);
    if (x.a == 0) return x.b > 0 ? 1 : -1;
    if (x.a > 0 && x.b > 0) return 1;
    if (x.a < 0 && x.b < 0) return -1;
    Rat lhs = x.a * x.a, rhs = x.b * x.b * Rat(x.d);
    if (lhs == rhs) return 0;
    if (x.a > 0) return lhs > rhs ? 1 : -1;
    return lhs > rhs ? -1 : 1;
}

inline json surd_to_json(const QuadSurd& x) {
    if (x.b == 0 || x.d == 0) return rat_to_json(x.a);
    json j;
    j["rational"] = rat_to_json(x.a);
    j["coefficient"] = rat_to_json(x.b);
    j["radicand"] = x.d;
    return j;
}

inline std::string surd_str(const QuadSurd& x) {
    if (x.b == 0 || x.d == 0) return rat_str(x.a);
    std::string out = "";
    if (x.a != 0) out += rat_str(x.a) + (x.b > 0 ? " + " : " - ");
    else if (x.b < 0) out += "-";
    Rat ab = rat_abs(x.b);
    if (ab != 1) out += rat_str(ab) + "*";
    return out + "sqrt(" + std::to_string(x.d) + ")";
}

}  // namespace hypgrpd
