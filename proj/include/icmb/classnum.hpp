#pragma once

// Class number upper bound for a number field given only its degree, number
// of complex places, and absolute discriminant:
//
//   #Cl  <=  sum_{eta = 1}^{max(floor(M), 1)} eta^(degree - 1),
//   M = (degree! / degree^degree) * (4/pi)^r2 * sqrt(|disc|).
//
// floor(M) is certified, never estimated: the comparison t <= M is decided by
// squaring both sides into integers, with pi entering only through a rational
// enclosure whose precision doubles until the comparison resolves.  For
// r2 = 0 the comparison is pure integer arithmetic.  For r2 > 0 equality
// t = M is impossible (it would make a power of pi rational), so the
// escalation always terminates.

#include <icmb/arith.hpp>

#include <stdexcept>

namespace icmb::classnum {

struct FieldShape {
    unsigned degree;    // = r1 + 2*r2 >= 1
    unsigned r2;        // complex places
    Integer abs_disc;   // |discriminant| >= 1

    FieldShape(unsigned degree_, unsigned r2_, Integer abs_disc_)
        : degree(degree_), r2(r2_), abs_disc(std::move(abs_disc_)) {
        if (degree < 1) throw std::invalid_argument("FieldShape: degree must be >= 1");
        if (2 * r2 > degree) throw std::invalid_argument("FieldShape: need 2*r2 <= degree");
        if (abs_disc < 1) throw std::invalid_argument("FieldShape: |disc| must be >= 1");
    }
};

struct ClassNumberBound {
    FieldShape shape;
    Integer floor_M;  // certified floor of the Minkowski bound
    Integer bound;    // sum_{eta <= max(floor_M, 1)} eta^(degree-1)
};

inline constexpr unsigned kDefaultPiBits = 96;

namespace detail {

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Rational rational_pow(const Rational& base, unsigned e) {
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace detail

// Certified floor of M = (n!/n^n) (4/pi)^r2 sqrt(D).  The returned value
// never undershoots the true floor; with the escalating enclosure it is the
// true floor exactly.
inline Integer minkowski_floor(const FieldShape& shape, unsigned pi_bits = kDefaultPiBits) {
    const unsigned n = shape.degree;
    const Integer nfact = detail::factorial(n);
    const Integer npow = boost::multiprecision::pow(Integer(n), n);
    const Integer& D = shape.abs_disc;

    // rhs of the squared comparison: (n!)^2 * 4^(2 r2) * D
    const Integer rhs = nfact * nfact * boost::multiprecision::pow(Integer(4), 2 * shape.r2) * D;

    // t <= M  <=>  (t n^n)^2 pi^(2 r2) <= rhs; decided through the enclosure.
    unsigned bits = std::max(pi_bits, 16u);
    arith::RationalEnclosure pi = arith::pi_enclosure(bits);
    auto le_M = [&](const Integer& t) {
        if (t <= 0) return true;
        const Integer lhs_core = t * npow;
        if (shape.r2 == 0) return lhs_core * lhs_core <= rhs;
        for (;;) {
            const Rational pl = detail::rational_pow(pi.lo, 2 * shape.r2);
            const Rational ph = detail::rational_pow(pi.hi, 2 * shape.r2);
            const Rational lhs2 = Rational(lhs_core) * Rational(lhs_core);
            if (lhs2 * ph <= Rational(rhs)) return true;
            if (lhs2 * pl > Rational(rhs)) return false;
            if (bits >= (1u << 20))
                throw std::logic_error("minkowski_floor: enclosure failed to resolve");
            bits *= 2;
            pi = arith::pi_enclosure(bits);
        }
    };

    // M < 2^r2 * (isqrt(D) + 1) because n!/n^n <= 1 and 4/pi < 2.
    Integer lo = 0;
    Integer hi = (Integer(1) << shape.r2) * (arith::isqrt_floor(D) + 1);
    while (hi - lo > 1) {
        Integer mid = (lo + hi) / 2;
        if (le_M(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

inline ClassNumberBound class_number_upper_bound(const FieldShape& shape,
                                                 unsigned pi_bits = kDefaultPiBits) {
    Integer fl = minkowski_floor(shape, pi_bits);
    Integer n_eff = fl < 1 ? Integer(1) : fl;
    Integer bound = arith::faulhaber(n_eff, shape.degree - 1);
    return {shape, std::move(fl), std::move(bound)};
}

}  // namespace icmb::classnum
