#pragma once

// Exact ground truth for imaginary quadratic orders, computed by brute-force
// enumeration of reduced primitive binary quadratic forms.  Everything the
// bound machinery claims is audited against the numbers produced here.
//
// For discriminant D < 0 the primitive reduced forms (a, b, c), with
// b^2 - 4ac = D, a > 0, |b| <= a <= c, and b >= 0 whenever |b| = a or a = c,
// biject with the invertible ideal classes of the order of discriminant D.
// The full ideal class monoid of the order of conductor f inside the maximal
// order counts invertible classes of every intermediate order, i.e. sums the
// form class numbers over the divisors of f.

#include <icmb/arith.hpp>
#include <icmb/local.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace icmb::oracle {

struct QuadForm {
    Integer a, b, c;

    Integer discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const QuadForm&) const = default;
};

namespace detail {

inline void require_imaginary_disc(const Integer& D) {
    if (D >= 0) throw std::invalid_argument("oracle: discriminant must be negative");
    Integer r = D % 4;
    if (r < 0) r += 4;
    if (r != 0 && r != 1)
        throw std::invalid_argument("oracle: discriminant must be 0 or 1 mod 4");
}

// Enumeration core, generic so that the common small-discriminant case runs
// on machine words.  Iterates a ascending and b descending from a to -a, so
// the output ordering is deterministic.
template <class Int>
void enumerate_reduced(Int D, std::vector<QuadForm>& out) {
    for (Int a = 1; 3 * a * a <= -D; ++a) {
        for (Int b = a; b + a >= 0; --b) {
            if (((b - D) & 1) != 0) continue;  // b and D must share parity
            const Int n = b * b - D;
            if (n % (4 * a) != 0) continue;
            const Int c = n / (4 * a);
            if (c < a) continue;
            if ((b + a == 0 || a == c) && b < 0) continue;  // boundary convention
            Int babs = b;
            if (babs < 0) babs = -babs;
            Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(a, babs), c);
            if (g != 1) continue;  // imprimitive forms belong to smaller discriminants
            out.push_back({Integer(a), Integer(b), Integer(c)});
        }
    }
}

template <>
inline void enumerate_reduced<std::int64_t>(std::int64_t D, std::vector<QuadForm>& out) {
    for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
        for (std::int64_t b = a; b >= -a; --b) {
            if (((b ^ D) & 1) != 0) continue;
            const std::int64_t n = b * b - D;
            if (n % (4 * a) != 0) continue;
            const std::int64_t c = n / (4 * a);
            if (c < a) continue;
            if ((b == -a || a == c) && b < 0) continue;
            std::int64_t g = std::gcd(std::gcd(a, b < 0 ? -b : b), c);
            if (g != 1) continue;
            out.push_back({Integer(a), Integer(b), Integer(c)});
        }
    }
}

}  // namespace detail

// All primitive reduced forms of discriminant D < 0, ordered by (a asc, b desc).
inline std::vector<QuadForm> reduced_forms(const Integer& D) {
    detail::require_imaginary_disc(D);
    std::vector<QuadForm> out;
    if (D > Integer("-4000000000000000000")) {
        detail::enumerate_reduced<std::int64_t>(D.convert_to<std::int64_t>(), out);
    } else {
        detail::enumerate_reduced<Integer>(D, out);
    }
    return out;
}

// Form class number h(D) = #Cl of the order of discriminant D < 0.
inline Integer form_class_number(const Integer& D) {
    return Integer(reduced_forms(D).size());
}

// Number of roots of unity in the order of discriminant D < 0.
inline unsigned torsion_units(const Integer& D) {
    if (D == -3) return 6;
    if (D == -4) return 4;
    return 2;
}

namespace detail {

inline Integer fundamental_discriminant(const Integer& d) {
    Integer r = d % 4;
    if (r < 0) r += 4;
    return (r == 1) ? d : 4 * d;
}

inline void require_imaginary_squarefree(const Integer& d) {
    if (d >= 0) throw std::invalid_argument("oracle: need a negative squarefree d");
    for (const auto& [p, e] : arith::factorize(d).factors)
        if (e > 1) throw std::invalid_argument("oracle: d must be squarefree");
}

inline std::vector<Integer> divisors_ascending(const Integer& f) {
    std::vector<Integer> divs{1};
    for (const auto& [p, e] : arith::factorize(f).factors) {
        const std::size_t base = divs.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace detail

// One row per overorder of the order of conductor f in Q(sqrt(d)): the
// overorders correspond exactly to the divisors f' | f, with discriminant
// f'^2 * fund_disc, class number h(f'^2 fund_disc), and torsion unit count.
struct OverorderEntry {
    Integer conductor;
    Integer disc;
    Integer class_number;
    unsigned torsion;
};

struct OverorderLattice {
    Integer d;
    Integer f;
    Integer fund_disc;
    std::vector<OverorderEntry> entries;  // ascending conductor
};

inline OverorderLattice overorder_lattice(const Integer& d, const Integer& f) {
    detail::require_imaginary_squarefree(d);
    if (f < 1) throw std::invalid_argument("oracle: conductor must be >= 1");
    OverorderLattice lat{d, f, detail::fundamental_discriminant(d), {}};
    for (const Integer& fp : detail::divisors_ascending(f)) {
        const Integer disc = fp * fp * lat.fund_disc;
        lat.entries.push_back({fp, disc, form_class_number(disc), torsion_units(disc)});
    }
    return lat;
}

// Exact size of the ideal class monoid of the conductor-f order in Q(sqrt(d)),
// d < 0 squarefree: sum of h(f'^2 fund_disc) over f' | f.
inline Integer icm_exact(const Integer& d, const Integer& f) {
    Integer total = 0;
    for (const auto& e : overorder_lattice(d, f).entries) total += e.class_number;
    return total;
}

// Cross-check of the local orbit product against the unit-weighted overorder
// sum: for R the conductor-f order in Q(sqrt(d)),
//
//   prod_{p | f} orbital_quadratic(p, ord_p(f), splitting)
//     = (1/h(fund)) * sum_{f' | f} h(f'^2 fund) * [w(fund) / w(f'^2 fund)].
//
// Both sides are reported; rhs is exact rational so that a violation (which
// would indicate a bug on either side) is still representable.
struct YunCheck {
    Integer lhs;
    Rational rhs;
    bool ok;
};

inline YunCheck yun_check(const Integer& d, const Integer& f) {
    const OverorderLattice lat = overorder_lattice(d, f);

    Integer lhs = 1;
    for (const auto& [p, e] : arith::factorize(f).factors) {
        lhs *= local::orbital_quadratic(
            {p, e, local::quad_splitting(lat.fund_disc, p)});
    }

    const unsigned w_fund = torsion_units(lat.fund_disc);
    Rational sum = 0;
    for (const auto& entry : lat.entries) {
        if (w_fund % entry.torsion != 0)
            throw std::logic_error("yun_check: non-integral unit index");
        sum += Rational(entry.class_number) * Rational(w_fund / entry.torsion);
    }
    const Rational rhs = sum / Rational(lat.entries.front().class_number);
    return {lhs, rhs, Rational(lhs) == rhs};
}

}  // namespace icmb::oracle
