#pragma once

#include <algorithm>
#include <stdexcept>

namespace cmh {

// All bound arithmetic in long long; desk-scale parameters stay far below
// overflow.

inline long long r_hat(long long q, long long r) { return r * (r - 1) + (q + 1) * r; }

// Strip count times strip breadth needed by the sort/trim stage.
inline long long bound_lemma31(long long q, long long r, long long p, long long b, long long x) {
    return (q * (r - 1) + x) * (2 * (q + 1) * p + b);
}

// Rebalancing needs 2q spare strips per direction on top of the sort/trim
// supply: q(r+1)+2q+1 = (q(r-1)+2q+1) + 2q.
inline long long bound_lemma32(long long q, long long r, long long p, long long b) {
    return (q * (r + 1) + 2 * q + 1) * (2 * (q + 1) * p + b);
}

inline long long bound_lemma33(long long q, long long p, long long b, long long r) {
    return bound_lemma32(q, r_hat(q, r), p, b);
}

inline long long bound_rainbow(long long n, long long m, long long q) {
    if (n % 2 != 0) throw std::invalid_argument("bound_rainbow: n must be even");
    return bound_lemma33(q, std::max(n / 2 + m, 2 * m), 2, q * (m - 2) + 1);
}

inline long long bound_uniform(long long ell, long long q) {
    return bound_rainbow(2 * ell, ell * ell - ell, q);
}

// Canonical overall bound: the composed chain, not the printed expansion.
inline long long bound_main(long long q, long long k) { return bound_uniform(6 * k, q); }

// Literal evaluation of the published expanded polynomial. Kept verbatim:
// it disagrees with bound_main by exactly q*(24k(q+1)(6k-1)+2) for q >= 1,
// and the two must never be silently reconciled.
inline long long printed_polynomial(long long q, long long k) {
    auto pw = [](long long base, int e) {
        long long r = 1;
        for (int i = 0; i < e; ++i) r *= base;
        return r;
    };
    const long long k2 = pw(k, 2), k3 = pw(k, 3), k4 = pw(k, 4), k5 = pw(k, 5), k6 = pw(k, 6);
    const long long q2 = pw(q, 2), q3 = pw(q, 3), q4 = pw(q, 4);
    return 186624 * k6 * q4 + 186624 * k6 * q3 - 93312 * k5 * q4 - 93312 * k5 * q3 +
           12960 * k4 * q3 + 10368 * k4 * q2 + 4320 * k3 * q4 - 3456 * k3 * q2 - 144 * k2 * q4 -
           432 * k2 * q3 + 432 * k2 * q2 + 576 * k2 * q + 144 * k2 - 48 * k * q4 + 60 * k * q3 -
           24 * k * q2 - 96 * k * q - 24 * k + 4 * q3 - 6 * q2 + 6 * q + 2;
}

} // namespace cmh
