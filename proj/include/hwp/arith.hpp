#pragma once

// Small elementary number theory helpers on machine integers.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hwp {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Thrown when an argument lies outside an operation's mathematical domain.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a requested index range exceeds the data available.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// increasing order. Adequate for the moduli used here (well below 10^12).
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline bool is_squarefree(u64 n) {
    if (n == 0) return false;
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

inline u64 euler_phi(u64 n) {
    u64 phi = n;
    for (auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> small, large;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline u64 ipow(u64 b, unsigned e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace hwp
