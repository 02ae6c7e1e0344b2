#pragma once

// Local structure of quadratic and cubic orders at a finite place, and the
// orbit-counting formulas attached to that structure.
//
// Throughout, q is the residue size of the base completion, S denotes the
// Serre conductor invariant (the length of the quotient of the maximal order
// by the order at that place), and #T is the torus point count
//
//   #T = prod_i q^(deg_i) * (1 - 1/#kappa_i)
//
// over the components of the etale algebra, with kappa_i the component
// residue field.  All orbit counts come out of exact integer arithmetic; any
// division with a remainder signals inconsistent local data and throws.

#include <icmb/arith.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace icmb::local {

enum class Splitting { Split, Inert, Ramified };

inline const char* to_string(Splitting s) {
    switch (s) {
        case Splitting::Split: return "split";
        case Splitting::Inert: return "inert";
        case Splitting::Ramified: return "ramified";
    }
    throw std::logic_error("to_string(Splitting): bad enum");
}

// Local data of a quadratic order at a prime p: Serre invariant S >= 0 and
// the splitting type of p in the maximal order.
struct QuadLocalData {
    Integer p;
    unsigned serre;
    Splitting splitting;

    QuadLocalData(Integer p_, unsigned serre_, Splitting splitting_)
        : p(std::move(p_)), serre(serre_), splitting(splitting_) {
        if (!arith::is_prime(p)) throw std::invalid_argument("QuadLocalData: p must be prime");
    }
};

// Shape of a cubic etale algebra over the base completion.  An irreducible
// cubic gives a field, unramified (residue degree 3) or totally ramified
// (residue degree 1); otherwise the algebra splits into two or three factors.
enum class CubicShape { IrreducibleUnramified, IrreducibleRamified, TwoFactors, ThreeFactors };

struct CubicComponent {
    unsigned degree;          // [component : base], summing to 3 over all components
    unsigned residue_degree;  // [component residue field : base residue field]
    unsigned serre;           // Serre invariant S_i of the order inside this component
};

// Local data of a cubic order: residue size q of the base, component data,
// delta = max_i S_i, and the gluing length rho (how far the order sits below
// the direct sum of its per-component projections; zero when irreducible).
struct CubicLocalData {
    Integer q;
    CubicShape shape;
    std::vector<CubicComponent> components;
    unsigned delta;
    unsigned rho;

    CubicLocalData(Integer q_, CubicShape shape_, std::vector<CubicComponent> components_,
                   unsigned delta_, unsigned rho_)
        : q(std::move(q_)),
          shape(shape_),
          components(std::move(components_)),
          delta(delta_),
          rho(rho_) {
        auto f = arith::factorize(q);
        if (f.sign != 1 || f.factors.size() != 1)
            throw std::invalid_argument("CubicLocalData: q must be a prime power");
        const std::size_t want =
            (shape == CubicShape::TwoFactors) ? 2u : (shape == CubicShape::ThreeFactors) ? 3u : 1u;
        if (components.size() != want)
            throw std::invalid_argument("CubicLocalData: component count does not match shape");
        unsigned degsum = 0, maxserre = 0;
        for (const auto& comp : components) {
            if (comp.degree < 1 || comp.residue_degree < 1 ||
                comp.degree % comp.residue_degree != 0)
                throw std::invalid_argument("CubicLocalData: bad component degrees");
            degsum += comp.degree;
            maxserre = std::max(maxserre, comp.serre);
        }
        if (degsum != 3) throw std::invalid_argument("CubicLocalData: degrees must sum to 3");
        if (delta != maxserre)
            throw std::invalid_argument("CubicLocalData: delta must equal max component Serre");
        if (shape == CubicShape::IrreducibleUnramified && components[0].residue_degree != 3)
            throw std::invalid_argument("CubicLocalData: unramified cubic has residue degree 3");
        if (shape == CubicShape::IrreducibleRamified && components[0].residue_degree != 1)
            throw std::invalid_argument("CubicLocalData: ramified cubic has residue degree 1");
        const bool irreducible = shape == CubicShape::IrreducibleUnramified ||
                                 shape == CubicShape::IrreducibleRamified;
        if (irreducible && rho != 0)
            throw std::invalid_argument("CubicLocalData: rho must vanish for irreducible shapes");
    }
};

// Local data of a Bass order at one of its own places: residue size q of the
// order itself, Serre invariant S, the residue degree of the maximal order
// over it, and whether the completed order is a domain.
struct BassLocalData {
    Integer q;
    unsigned serre;
    unsigned residue_degree;
    bool is_domain;

    BassLocalData(Integer q_, unsigned serre_, unsigned residue_degree_, bool is_domain_)
        : q(std::move(q_)), serre(serre_), residue_degree(residue_degree_), is_domain(is_domain_) {
        auto f = arith::factorize(q);
        if (f.sign != 1 || f.factors.size() != 1)
            throw std::invalid_argument("BassLocalData: q must be a prime power");
        if (residue_degree < 1)
            throw std::invalid_argument("BassLocalData: residue degree must be >= 1");
    }
};

// Serre invariant of a quadratic order of conductor f at p: ord_p(f).
inline unsigned serre_quadratic(const Integer& conductor, const Integer& p) {
    if (conductor < 1) throw std::invalid_argument("serre_quadratic: conductor must be >= 1");
    return arith::ord_p(conductor, p);
}

// Splitting type of p in the quadratic field of fundamental discriminant D,
// read off the Kronecker symbol (D|p).  D must be fundamental: 1 mod 4 and
// squarefree, or 4k with k squarefree and 2 or 3 mod 4.
inline Splitting quad_splitting(const Integer& fund_disc, const Integer& p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("quad_splitting: p must be prime");
    if (fund_disc == 0 || fund_disc == 1)
        throw std::invalid_argument("quad_splitting: discriminant of a quadratic field required");
    auto mod4 = [](const Integer& v) {
        Integer r = v % 4;
        if (r < 0) r += 4;
        return static_cast<int>(r);
    };
    auto squarefree = [](const Integer& v) {
        for (const auto& [pp, e] : arith::factorize(v).factors)
            if (e > 1) return false;
        return true;
    };
    bool fundamental = false;
    if (mod4(fund_disc) == 1) {
        fundamental = squarefree(fund_disc);
    } else if (fund_disc % 4 == 0) {
        const Integer k = fund_disc / 4;
        const int km = mod4(k);
        fundamental = (km == 2 || km == 3) && squarefree(k);
    }
    if (!fundamental)
        throw std::invalid_argument("quad_splitting: discriminant is not fundamental");

    switch (arith::kronecker(fund_disc, p)) {
        case 1: return Splitting::Split;
        case -1: return Splitting::Inert;
        default: return Splitting::Ramified;
    }
}

// Orbit count above a place of a quadratic order:
//   1 + (#T/(q-1)) * (q^S - 1)/(q-1)
// with #T = (q-1)^2, q^2-1, q(q-1) for split, inert, ramified.  Both division
// steps are exact; S = 0 collapses the count to 1.
inline Integer orbital_quadratic(const QuadLocalData& data) {
    const Integer& q = data.p;
    Integer t_over = 0;  // #T/(q-1)
    switch (data.splitting) {
        case Splitting::Split: t_over = q - 1; break;
        case Splitting::Inert: t_over = q + 1; break;
        case Splitting::Ramified: t_over = q; break;
    }
    // (q^S - 1)/(q - 1) as an explicit geometric sum
    Integer geom = 0, pw = 1;
    for (unsigned i = 0; i < data.serre; ++i) {
        geom += pw;
        pw *= q;
    }
    return 1 + t_over * geom;
}

// Orbit count above a place of a cubic order.  With delta = max S_i and
// d = floor(delta/3), the inner factor F is
//   irreducible unramified:  (q^delta - 1)/(q-1) - 3 (q^(delta-d) - 1)/(q^2-1)
//   irreducible ramified:    the same plus ((1 + delta - 3d) q^(delta-d) - 1)/(q(q+1))
//   reducible:               (q^delta - 1)/(q-1)
// and the count is q^rho * (1 + #T/(q-1)^2 * F).  The whole expression is
// assembled over the common denominator q(q-1)(q+1)(q-1)^2 and must divide
// out exactly; a remainder throws.
inline Integer orbital_cubic(const CubicLocalData& data) {
    const Integer& q = data.q;
    const unsigned delta = data.delta;
    const unsigned d = delta / 3;

    Integer torus = 1;
    for (const auto& comp : data.components) {
        // q^(deg - res) * (q^res - 1), the exact integer form of
        // q^deg (1 - q^-res)
        torus *= boost::multiprecision::pow(q, comp.degree - comp.residue_degree) *
                 (boost::multiprecision::pow(q, comp.residue_degree) - 1);
    }

    const Integer A = boost::multiprecision::pow(q, delta) - 1;
    const Integer B = boost::multiprecision::pow(q, delta - d) - 1;
    // F as f_num over the common denominator L = q(q-1)(q+1)
    Integer f_num;
    switch (data.shape) {
        case CubicShape::IrreducibleUnramified:
            f_num = A * q * (q + 1) - 3 * B * q;
            break;
        case CubicShape::IrreducibleRamified: {
            const Integer C =
                Integer(1 + delta - 3 * d) * boost::multiprecision::pow(q, delta - d) - 1;
            f_num = A * q * (q + 1) - 3 * B * q + C * (q - 1);
            break;
        }
        case CubicShape::TwoFactors:
        case CubicShape::ThreeFactors:
            f_num = A * q * (q + 1);
            break;
    }

    const Integer num = torus * f_num;
    const Integer den = q * (q - 1) * (q + 1) * (q - 1) * (q - 1);
    if (num % den != 0)
        throw std::domain_error("orbital_cubic: non-integral orbit count, local data inconsistent");
    return boost::multiprecision::pow(q, data.rho) * (1 + num / den);
}

// Local factor of the ideal-class-monoid bound for a Bass order:
//   domain:      q^S + residue_degree * (q^(S-1) + ... + q + 1)
//   non-domain:  q^S
// S = 0 gives 1 in both branches.
inline Integer bass_local_factor(const BassLocalData& data) {
    const Integer& q = data.q;
    const Integer lead = boost::multiprecision::pow(q, data.serre);
    if (!data.is_domain) return lead;
    Integer geom = 0, pw = 1;
    for (unsigned i = 0; i < data.serre; ++i) {
        geom += pw;
        pw *= q;
    }
    return lead + data.residue_degree * geom;
}

// ---------------------------------------------------------------------------
// Cubic orders of the Cappell-Shaneson family: R_m = Z[x]/(phi_m) with
//   phi_m = x^3 - m x^2 + (m - 1) x - 1.
// ---------------------------------------------------------------------------

// (disc phi_m, 27 phi_m(m/3)) -- the two integer invariants driving the local
// classification below.
inline std::pair<Integer, Integer> cs_invariants(const Integer& m) {
    const Integer m2 = m * m, m3 = m2 * m, m4 = m2 * m2;
    Integer delta_phi = m4 - 10 * m3 + 31 * m2 - 30 * m - 23;
    Integer c_phi = -2 * m3 + 9 * m2 - 9 * m - 27;
    return {std::move(delta_phi), std::move(c_phi)};
}

enum class CSCaseId { Case1Maximal, Case1, Case2, Case3OddOrd, Case3EvenInert, Case4 };

// Compact labels used in reports and sweep rows.
inline const char* cs_case_code(CSCaseId id) {
    switch (id) {
        case CSCaseId::Case1Maximal: return "C1max";
        case CSCaseId::Case1: return "C1";
        case CSCaseId::Case2: return "C2";
        case CSCaseId::Case3OddOrd: return "C3odd";
        case CSCaseId::Case3EvenInert: return "C3even";
        case CSCaseId::Case4: return "C4";
    }
    throw std::logic_error("cs_case_code: bad enum");
}

// Classified local behaviour of R_m at a prime p dividing disc phi_m.
// ord_delta = ord_p(disc phi_m); serre = S_p per the case:
//   Case1Maximal: ord 2, S 0        Case1: ord 4, S 1       Case2: ord 3, S 1
//   Case3OddOrd:  S (ord-1)/2       Case3EvenInert / Case4: S ord/2
struct CSCase {
    CSCaseId id;
    Integer p;
    unsigned ord_delta;
    unsigned serre;

    CSCase(CSCaseId id_, Integer p_, unsigned ord_delta_, unsigned serre_)
        : id(id_), p(std::move(p_)), ord_delta(ord_delta_), serre(serre_) {
        if (!arith::is_prime(p)) throw std::invalid_argument("CSCase: p must be prime");
        if (p == 2 || p == 3) throw std::invalid_argument("CSCase: p must avoid 2 and 3");
        bool ok = false;
        switch (id) {
            case CSCaseId::Case1Maximal: ok = ord_delta == 2 && serre == 0; break;
            case CSCaseId::Case1: ok = ord_delta == 4 && serre == 1; break;
            case CSCaseId::Case2: ok = ord_delta == 3 && serre == 1; break;
            case CSCaseId::Case3OddOrd:
                ok = ord_delta % 2 == 1 && serre == (ord_delta - 1) / 2;
                break;
            case CSCaseId::Case3EvenInert:
            case CSCaseId::Case4:
                ok = ord_delta % 2 == 0 && ord_delta >= 2 && serre == ord_delta / 2;
                break;
        }
        if (!ok) throw std::invalid_argument("CSCase: inconsistent (case, ord, serre) triple");
    }
};

// Classify the prime p | disc phi_m.
//
//   p | C_phi:  ord must be 2, 3 or 4 (anything else is a broken invariant
//               and throws logic_error); 2 -> Case1Maximal, 4 -> Case1,
//               3 -> Case2.
//   p ∤ C_phi:  odd ord -> Case3OddOrd; even ord decides between
//               Case3EvenInert and Case4 by the Legendre symbol of the
//               p-free part of disc phi_m.
inline CSCase cs_classify_prime(const Integer& m, const Integer& p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("cs_classify_prime: p must be prime");
    if (p == 2 || p == 3)
        throw std::invalid_argument("cs_classify_prime: disc phi_m is never divisible by 2 or 3");
    const auto [delta_phi, c_phi] = cs_invariants(m);
    if (delta_phi % p != 0)
        throw std::invalid_argument("cs_classify_prime: p does not divide disc phi_m");
    const unsigned ord = arith::ord_p(delta_phi, p);

    if (c_phi % p == 0) {
        switch (ord) {
            case 2: return {CSCaseId::Case1Maximal, p, 2, 0};
            case 3: return {CSCaseId::Case2, p, 3, 1};
            case 4: return {CSCaseId::Case1, p, 4, 1};
            default:
                throw std::logic_error(
                    "cs_classify_prime: ord_p(disc) outside {2,3,4} with p | C_phi");
        }
    }
    if (ord % 2 == 1) return {CSCaseId::Case3OddOrd, p, ord, (ord - 1) / 2};
    const Integer p_free = delta_phi / boost::multiprecision::pow(p, ord);
    const int leg = arith::kronecker(p_free, p);
    if (leg == -1) return {CSCaseId::Case3EvenInert, p, ord, ord / 2};
    if (leg == 1) return {CSCaseId::Case4, p, ord, ord / 2};
    throw std::logic_error("cs_classify_prime: p-free part shares a factor with p");
}

// Orbit count above p straight from the case table:
//   Case1Maximal: 1                      Case1: p + 1        Case2: p
//   Case3OddOrd:  1 + p (p^S - 1)/(p-1)  with S = (ord-1)/2
//   Case3EvenInert: 1 + (p+1)(p^S - 1)/(p-1)  with S = ord/2
//   Case4: p^(ord/2)
inline Integer cs_orbital(const CSCase& cs) {
    const Integer& p = cs.p;
    auto geom = [&](unsigned s) {  // (p^s - 1)/(p - 1)
        Integer g = 0, pw = 1;
        for (unsigned i = 0; i < s; ++i) {
            g += pw;
            pw *= p;
        }
        return g;
    };
    switch (cs.id) {
        case CSCaseId::Case1Maximal: return 1;
        case CSCaseId::Case1: return p + 1;
        case CSCaseId::Case2: return p;
        case CSCaseId::Case3OddOrd: return 1 + p * geom(cs.serre);
        case CSCaseId::Case3EvenInert: return 1 + (p + 1) * geom(cs.serre);
        case CSCaseId::Case4: return boost::multiprecision::pow(p, cs.serre);
    }
    throw std::logic_error("cs_orbital: bad enum");
}

// Explicit local data realizing each case, suitable for orbital_cubic:
//   Case1Maximal / Case1: totally ramified cubic field, S = 0 / 1.
//   Case2: ramified quadratic + line, glued with rho = 1.
//   Case3OddOrd: ramified quadratic (S = (ord-1)/2) + line.
//   Case3EvenInert: unramified quadratic (S = ord/2) + line.
//   Case4: three lines, rho = ord/2.
inline CubicLocalData cs_local_data(const CSCase& cs) {
    switch (cs.id) {
        case CSCaseId::Case1Maximal:
            return {cs.p, CubicShape::IrreducibleRamified, {{3, 1, 0}}, 0, 0};
        case CSCaseId::Case1:
            return {cs.p, CubicShape::IrreducibleRamified, {{3, 1, 1}}, 1, 0};
        case CSCaseId::Case2:
            return {cs.p, CubicShape::TwoFactors, {{2, 1, 0}, {1, 1, 0}}, 0, 1};
        case CSCaseId::Case3OddOrd:
            return {cs.p, CubicShape::TwoFactors, {{2, 1, cs.serre}, {1, 1, 0}}, cs.serre, 0};
        case CSCaseId::Case3EvenInert:
            return {cs.p, CubicShape::TwoFactors, {{2, 2, cs.serre}, {1, 1, 0}}, cs.serre, 0};
        case CSCaseId::Case4:
            return {cs.p, CubicShape::ThreeFactors, {{1, 1, 0}, {1, 1, 0}, {1, 1, 0}}, 0,
                    cs.serre};
    }
    throw std::logic_error("cs_local_data: bad enum");
}

}  // namespace icmb::local
