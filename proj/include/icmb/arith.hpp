#pragma once

// Exact integer and rational arithmetic used by every other header in this
// library: deterministic factorization, the Kronecker symbol, perfect-square
// detection, power sums both as direct summation and in Faulhaber closed form,
// and a certified rational enclosure of pi.
//
// Everything here is exact.  No floating point is used anywhere; callers that
// need to compare against irrational quantities (pi, square roots) do so
// through enclosures and cross-multiplied integer comparisons.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace icmb {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace arith {

// Signed prime factorization.  `factors` holds (prime, exponent) pairs with
// strictly increasing primes and exponents >= 1; the represented value is
// sign * prod p^e.  The unit n = +-1 is sign with an empty factor list.
struct Factorization {
    int sign = 1;
    std::vector<std::pair<Integer, unsigned>> factors;

    Integer value() const {
        Integer v = sign;
        for (const auto& [p, e] : factors) v *= boost::multiprecision::pow(p, e);
        return v;
    }
};

// Closed rational interval [lo, hi].
struct RationalEnclosure {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const RationalEnclosure& inner) const {
        return lo <= inner.lo && inner.hi <= hi;
    }
};

inline Integer isqrt_floor(const Integer& n) {
    if (n < 0) throw std::invalid_argument("isqrt_floor: negative argument");
    return boost::multiprecision::sqrt(n);  // floor square root for integers
}

// Returns the witness root when n is a perfect square, nullopt otherwise.
// Negative n is never a square.
inline std::optional<Integer> is_perfect_square(const Integer& n) {
    if (n < 0) return std::nullopt;
    Integer r = isqrt_floor(n);
    if (r * r == n) return r;
    return std::nullopt;
}

namespace detail {

// Primes below 2^16, sieved once.  Trial division by this list fully factors
// any n < 2^32 and strips all small factors from larger n.
inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1u << 16;
        std::vector<bool> composite(limit, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i < limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j < limit; j += i)
                composite[static_cast<std::uint32_t>(j)] = true;
        }
        return out;
    }();
    return primes;
}

// One strong-pseudoprime round: n odd > 2, base a with 1 < a < n - 1.
inline bool miller_rabin_round(const Integer& n, const Integer& a) {
    Integer d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    Integer x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

inline int kronecker(Integer a, Integer n);  // forward declaration, used by the Lucas test

namespace detail {

// Strong Lucas probable-prime test with Selfridge parameters: the first
// D in 5, -7, 9, -11, ... with kronecker(D, n) = -1, P = 1, Q = (1 - D)/4.
// Caller guarantees n odd, n > 1, n not a perfect square, n coprime to all
// primes below 2^16.
inline bool strong_lucas_round(const Integer& n) {
    Integer D = 5;
    while (true) {
        int k = arith::kronecker(D, n);
        if (k == 0) return false;  // shared factor with D exposes n as composite
        if (k == -1) break;
        D = (D > 0) ? Integer(-(D + 2)) : Integer(-(D - 2));
    }
    const Integer Q = (1 - D) / 4;

    Integer d = n + 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }

    auto mod_n = [&](Integer v) {
        v %= n;
        if (v < 0) v += n;
        return v;
    };
    auto halve = [&](const Integer& v) {  // division by 2 mod odd n
        return ((v & 1) == 0) ? Integer(v / 2) : Integer((v + n) / 2);
    };

    // Binary ladder for U_d, V_d (P = 1): start at index 1, then for each
    // remaining bit double the index and conditionally step by one.
    Integer U = 1, V = 1, Qk = mod_n(Q);
    const unsigned top = boost::multiprecision::msb(d);
    for (int bit = static_cast<int>(top) - 1; bit >= 0; --bit) {
        U = mod_n(U * V);
        V = mod_n(V * V - 2 * Qk);
        Qk = mod_n(Qk * Qk);
        if (boost::multiprecision::bit_test(d, static_cast<unsigned>(bit))) {
            Integer u2 = mod_n(halve(mod_n(U + V)));
            Integer v2 = mod_n(halve(mod_n(D * U + V)));
            U = u2;
            V = v2;
            Qk = mod_n(Qk * Q);
        }
    }

    if (U == 0 || V == 0) return true;  // U_d = 0 or V_{d*2^0} = 0
    for (int r = 1; r < s; ++r) {
        V = mod_n(V * V - 2 * Qk);
        if (V == 0) return true;
        Qk = mod_n(Qk * Qk);
    }
    return false;
}

}  // namespace detail

// Deterministic primality check: trial division by primes below 2^16
// (complete for n < 2^32), then a base-2 strong pseudoprime round combined
// with a strong Lucas-Selfridge round.  The combination is exhaustively
// verified below 2^64 and has no known counterexample above.
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (std::uint32_t p : detail::small_primes()) {
        Integer P = p;
        if (P * P > n) return true;
        if (n % P == 0) return n == P;
    }
    if (is_perfect_square(n)) return false;
    if (!detail::miller_rabin_round(n, 2)) return false;
    return detail::strong_lucas_round(n);
}

namespace detail {

// Brent-cycle rho split with batched gcds.  n odd composite with no factor
// below 2^16 and not a perfect square.  Deterministic: the polynomial offset
// c walks 1, 2, 3, ... until a split is found.
inline Integer pollard_brent(const Integer& n) {
    for (Integer c = 1;; ++c) {
        auto step = [&](const Integer& v) { return (v * v + c) % n; };
        Integer y = 2, q = 1, g = 1, xs, ys;
        unsigned r = 1;
        const unsigned batch = 64;
        while (g == 1) {
            xs = y;
            for (unsigned i = 0; i < r; ++i) y = step(y);
            for (unsigned k = 0; k < r && g == 1;) {
                ys = y;
                const unsigned lim = std::min(batch, r - k);
                for (unsigned i = 0; i < lim; ++i) {
                    y = step(y);
                    q = q * boost::multiprecision::abs(xs - y) % n;
                }
                g = boost::multiprecision::gcd(q, n);
                k += lim;
            }
            r <<= 1;
        }
        if (g == n) {  // batch overshot; replay one step at a time
            g = 1;
            y = ys;
            while (g == 1) {
                y = step(y);
                g = boost::multiprecision::gcd(boost::multiprecision::abs(xs - y), n);
            }
        }
        if (g != n) return g;
    }
}

}  // namespace detail

// Signed factorization of any nonzero integer.  Deterministic for a given n.
inline Factorization factorize(const Integer& n) {
    if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
    Factorization out;
    out.sign = (n < 0) ? -1 : 1;
    Integer a = boost::multiprecision::abs(n);

    std::map<Integer, unsigned> acc;
    for (std::uint32_t p : detail::small_primes()) {
        Integer P = p;
        if (P * P > a) break;
        while (a % P == 0) {
            a /= P;
            ++acc[P];
        }
    }

    std::vector<Integer> pending;
    if (a > 1) pending.push_back(a);
    while (!pending.empty()) {
        Integer x = pending.back();
        pending.pop_back();
        if (is_prime(x)) {
            ++acc[x];
            continue;
        }
        if (auto r = is_perfect_square(x)) {
            pending.push_back(*r);
            pending.push_back(*r);
            continue;
        }
        Integer d = detail::pollard_brent(x);
        pending.push_back(d);
        pending.push_back(x / d);
    }

    out.factors.assign(acc.begin(), acc.end());
    return out;
}

// Exact multiplicity of the prime p in n.  n must be nonzero, p prime.
inline unsigned ord_p(const Integer& n, const Integer& p) {
    if (n == 0) throw std::invalid_argument("ord_p: n must be nonzero");
    if (!is_prime(p)) throw std::invalid_argument("ord_p: p must be prime");
    unsigned e = 0;
    Integer a = boost::multiprecision::abs(n);
    while (a % p == 0) {
        a /= p;
        ++e;
    }
    return e;
}

// Kronecker symbol (a|n), the total extension of the Jacobi symbol to all
// nonzero n.  Coincides with the Legendre symbol when n is an odd prime;
// completely multiplicative in both arguments; zero iff gcd(a, n) > 1.
inline int kronecker(Integer a, Integer n) {
    if (n == 0) throw std::invalid_argument("kronecker: n must be nonzero");
    // (a|2) for a mod 8 = 0..7: 0 if even, +1 at 1,7, -1 at 3,5.
    static constexpr int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    auto mod8 = [](const Integer& v) {
        Integer r = v % 8;
        if (r < 0) r += 8;
        return static_cast<int>(r);
    };

    int k = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) k = -k;  // (a|-1) = sign of a
    }
    if ((n & 1) == 0) {
        if ((a & 1) == 0) return 0;
        unsigned v = 0;
        while ((n & 1) == 0) {
            n >>= 1;
            ++v;
        }
        if (v & 1) k *= tab2[mod8(a)];
    }
    // n is now odd and positive; (a|n) only depends on a mod n.
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        unsigned v = 0;
        while ((a & 1) == 0) {
            a >>= 1;
            ++v;
        }
        if (v & 1) k *= tab2[mod8(n)];
        // Reciprocity for positive odd a, n: flip sign iff both are 3 mod 4.
        if (((a & 3) == 3) && ((n & 3) == 3)) k = -k;
        Integer r = a;
        a = n % r;
        n = r;
    }
    return (n == 1) ? k : 0;
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Integer r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact at every step: r is a binomial coefficient
    }
    return r;
}

// Direct summation oracle: 1^k + 2^k + ... + n_max^k.
inline Integer power_sum(const Integer& n_max, unsigned k) {
    if (n_max < 1) throw std::invalid_argument("power_sum: n_max must be positive");
    Integer acc = 0;
    for (Integer eta = 1; eta <= n_max; ++eta)
        acc += boost::multiprecision::pow(eta, k);
    return acc;
}

// Bernoulli numbers B_0..B_k in the B_1 = +1/2 convention (all other odd
// indices vanish).  With this convention the Faulhaber expansion below sums
// 1^k + ... + n^k inclusive of the endpoint.
inline std::vector<Rational> bernoulli_plus(unsigned k) {
    std::vector<Rational> b(k + 1);
    b[0] = 1;
    for (unsigned m = 1; m <= k; ++m) {
        Rational s = 0;
        for (unsigned j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * b[j];
        b[m] = -s / Rational(m + 1);
    }
    if (k >= 1) b[1] = Rational(1, 2);
    return b;
}

// Closed form for 1^k + ... + n_max^k:
//   (1/(k+1)) * sum_{j=0}^{k} binom(k+1, j) * B_j * n_max^(k+1-j)
// with B_1 = +1/2.  The result is provably an integer; a nonzero remainder
// in the final division would indicate a broken Bernoulli table and throws.
inline Integer faulhaber(const Integer& n_max, unsigned k) {
    if (n_max < 1) throw std::invalid_argument("faulhaber: n_max must be positive");
    const std::vector<Rational> b = bernoulli_plus(k);
    Rational sum = 0;
    for (unsigned j = 0; j <= k; ++j) {
        sum += Rational(binomial(k + 1, j)) * b[j] *
               Rational(boost::multiprecision::pow(n_max, k + 1 - j));
    }
    sum /= k + 1;
    if (boost::multiprecision::denominator(sum) != 1)
        throw std::logic_error("faulhaber: non-integral closed form");
    return boost::multiprecision::numerator(sum);
}

namespace detail {

// Bracketing pair of consecutive partial sums of arctan(1/x); the true value
// lies between them.  Term count is the least K with x^(2K+1) >= 2^(bits+6),
// monotone in bits so that enclosures nest as precision grows.
inline std::pair<Rational, Rational> atan_inv_brackets(unsigned x, unsigned bits) {
    const Integer threshold = Integer(1) << (bits + 6);
    unsigned K = 0;
    for (Integer xp = x; xp < threshold; xp *= Integer(x) * x) ++K;

    Rational s = 0, s_K = 0;
    Integer xp = x;  // x^(2k+1)
    for (unsigned k = 0; k <= K; ++k) {
        const Rational term(1, Integer(2 * k + 1) * xp);
        s += (k % 2 == 0) ? term : -term;
        if (k + 1 == K) s_K = s;
        xp *= Integer(x) * x;
    }
    return {std::min(s_K, s), std::max(s_K, s)};
}

}  // namespace detail

// Certified enclosure of pi of width at most 2^-bits, from the Machin
// identity pi = 16 arctan(1/5) - 4 arctan(1/239) with alternating-series
// partial-sum brackets for each arctangent.  Deterministic in bits, and
// enclosures nest: pi_enclosure(b + 8) lies inside pi_enclosure(b).
inline RationalEnclosure pi_enclosure(unsigned bits) {
    if (bits < 16) throw std::invalid_argument("pi_enclosure: need bits >= 16");
    if (bits > (1u << 20)) throw std::invalid_argument("pi_enclosure: bits out of range");
    const auto [lo5, hi5] = detail::atan_inv_brackets(5, bits);
    const auto [lo239, hi239] = detail::atan_inv_brackets(239, bits);
    return {16 * lo5 - 4 * hi239, 16 * hi5 - 4 * lo239};
}

}  // namespace arith
}  // namespace icmb
