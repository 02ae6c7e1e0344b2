#pragma once

// Global upper bounds for ideal class monoid sizes.
//
// Cubic side (the Cappell-Shaneson family R_m): every prime dividing
// disc phi_m is classified locally, the per-prime orbit counts multiply into
// the factor A, the field discriminant is extracted from the case data, and
// the final bound is
//
//   #ICM(R_m) <= A * class_number_upper_bound(cubic field shape).
//
// Two relaxations of the same bound are also reported: a closed form in
// |disc E| obtained by relaxing floor(M) to M, and for disc E > 3075 the
// single-term form (2/3^5) sqrt(disc phi) disc_E^(3/2), which is exact
// rational here because disc phi / disc E is a perfect square.
//
// Quadratic side: for the order of conductor f in Q(sqrt(d)) the bound is
// the class number input times the product of Bass local factors at p | f,
// and a second bound multiplies #Cl(R) by prod (ord_p(f) + 1).

#include <icmb/arith.hpp>
#include <icmb/classnum.hpp>
#include <icmb/local.hpp>
#include <icmb/oracle.hpp>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace icmb::bounds {

struct CSPrimeReport {
    Integer p;
    local::CSCaseId case_id;
    unsigned ord_delta;
    unsigned serre;
    Integer orbital;   // local orbit count
    Integer a_factor;  // contribution to the product A (1 for Case1Maximal)
};

struct CSReport {
    Integer m;
    Integer delta_phi;
    Integer c_phi;
    std::vector<CSPrimeReport> primes;  // ascending p
    Integer A;
    Integer abs_delta_E;
    int delta_E_sign;  // sign of disc E = sign of disc phi
    unsigned r2;       // 1 complex place when disc phi < 0, else 0
    Integer minkowski_floor;
    Integer classnum_bound;
    Integer bound_main;            // classnum_bound * A
    Rational bound_closed_form;    // certified rational upper value
    std::optional<Rational> bound_simple;  // only when disc E > 3075
};

struct CSOptions {
    unsigned pi_bits = classnum::kDefaultPiBits;
    unsigned sqrt_bits = 64;  // dyadic precision of certified square roots
};

namespace detail {

// Least dyadic rational >= sqrt(n) at the given precision; exact when n is a
// perfect square.
inline Rational sqrt_upper(const Integer& n, unsigned bits) {
    if (n < 0) throw std::invalid_argument("sqrt_upper: negative argument");
    if (auto r = arith::is_perfect_square(n)) return Rational(*r);
    const Integer scaled = arith::isqrt_floor(n << (2 * bits));
    return Rational(scaled + 1, Integer(1) << bits);
}

inline Rational rational_pow(const Rational& base, unsigned e) {
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

// Per-prime contribution to A.
inline Integer cs_a_factor(const local::CSCase& cs) {
    const Integer& p = cs.p;
    switch (cs.id) {
        case local::CSCaseId::Case1Maximal:
            return 1;
        case local::CSCaseId::Case1:
            return p + 1;
        case local::CSCaseId::Case2:
            return p;
        case local::CSCaseId::Case3OddOrd:
            // (p^((ord+1)/2) - 1)/(p - 1)
            return (boost::multiprecision::pow(p, (cs.ord_delta + 1) / 2) - 1) / (p - 1);
        case local::CSCaseId::Case3EvenInert:
            // (p^(ord/2 + 1) + p^(ord/2) - 2)/(p - 1)
            return (boost::multiprecision::pow(p, cs.ord_delta / 2 + 1) +
                    boost::multiprecision::pow(p, cs.ord_delta / 2) - 2) /
                   (p - 1);
        case local::CSCaseId::Case4:
            return boost::multiprecision::pow(p, cs.ord_delta / 2);
    }
    throw std::logic_error("cs_a_factor: bad enum");
}

// Contribution of one classified prime to |disc E|.
inline Integer cs_disc_factor(const local::CSCase& cs) {
    switch (cs.id) {
        case local::CSCaseId::Case1Maximal:
        case local::CSCaseId::Case1:
            return cs.p * cs.p;
        case local::CSCaseId::Case2:
            return cs.p;
        case local::CSCaseId::Case3OddOrd:
            return cs.p;
        case local::CSCaseId::Case3EvenInert:
        case local::CSCaseId::Case4:
            return 1;
    }
    throw std::logic_error("cs_disc_factor: bad enum");
}

inline std::vector<local::CSCase> cs_classify_all(const Integer& m) {
    const auto [delta_phi, c_phi] = local::cs_invariants(m);
    std::vector<local::CSCase> cases;
    for (const auto& [p, e] : arith::factorize(delta_phi).factors) {
        cases.push_back(local::cs_classify_prime(m, p));
        if (cases.back().ord_delta != e)
            throw std::logic_error("cs_classify_all: valuation mismatch");
    }
    return cases;
}

}  // namespace detail

// The product A over the classified primes, with per-prime breakdown.
struct CSAProduct {
    Integer A;
    std::vector<CSPrimeReport> primes;
};

inline CSAProduct cs_A(const Integer& m) {
    CSAProduct out{1, {}};
    for (const auto& cs : detail::cs_classify_all(m)) {
        Integer orbital = local::cs_orbital(cs);
        Integer a_factor = detail::cs_a_factor(cs);
        out.A *= a_factor;
        out.primes.push_back(
            {cs.p, cs.id, cs.ord_delta, cs.serre, std::move(orbital), std::move(a_factor)});
    }
    return out;
}

// (|disc E|, sign): field discriminant of Q[x]/(phi_m) from the case data.
inline std::pair<Integer, int> cs_delta_E(const Integer& m) {
    Integer abs_e = 1;
    for (const auto& cs : detail::cs_classify_all(m)) abs_e *= detail::cs_disc_factor(cs);
    const auto [delta_phi, c_phi] = local::cs_invariants(m);
    return {std::move(abs_e), delta_phi > 0 ? 1 : -1};
}

inline CSReport cs_bound(const Integer& m, const CSOptions& opts = {}) {
    CSReport rep;
    rep.m = m;
    std::tie(rep.delta_phi, rep.c_phi) = local::cs_invariants(m);

    Integer orbital_product = 1;
    rep.A = 1;
    rep.abs_delta_E = 1;
    for (const auto& cs : detail::cs_classify_all(m)) {
        Integer orbital = local::cs_orbital(cs);
        Integer a_factor = detail::cs_a_factor(cs);
        orbital_product *= orbital;
        rep.A *= a_factor;
        rep.abs_delta_E *= detail::cs_disc_factor(cs);
        rep.primes.push_back(
            {cs.p, cs.id, cs.ord_delta, cs.serre, std::move(orbital), std::move(a_factor)});
    }
    if (rep.A != orbital_product)
        throw std::logic_error("cs_bound: A-product disagrees with the orbit-count product");

    const Integer abs_delta_phi = boost::multiprecision::abs(rep.delta_phi);
    if (abs_delta_phi % rep.abs_delta_E != 0)
        throw std::logic_error("cs_bound: |disc E| does not divide |disc phi|");
    const Integer index_sq = abs_delta_phi / rep.abs_delta_E;
    const auto index_root = arith::is_perfect_square(index_sq);
    if (!index_root)
        throw std::logic_error("cs_bound: |disc phi| / |disc E| is not a perfect square");

    rep.delta_E_sign = rep.delta_phi > 0 ? 1 : -1;
    rep.r2 = rep.delta_phi > 0 ? 0 : 1;

    const auto clb =
        classnum::class_number_upper_bound({3, rep.r2, rep.abs_delta_E}, opts.pi_bits);
    rep.minkowski_floor = clb.floor_M;
    rep.classnum_bound = clb.bound;
    rep.bound_main = clb.bound * rep.A;

    // Closed form A*(8/3^7 u^3 D^(3/2) + 2/3^4 u^2 D + 1/3^3 u D^(1/2)) with
    // u = 4/pi, every irrational factor rounded up.
    const Rational pi_lo = arith::pi_enclosure(opts.pi_bits).lo;
    const Rational u_up = Rational(4) / pi_lo;
    const Rational sqrtD_up = detail::sqrt_upper(rep.abs_delta_E, opts.sqrt_bits);
    const Rational D(rep.abs_delta_E);
    const Rational closed =
        Rational(rep.A) *
        (Rational(8, 2187) * detail::rational_pow(u_up, 3 * rep.r2) * D * sqrtD_up +
         Rational(2, 81) * detail::rational_pow(u_up, 2 * rep.r2) * D +
         Rational(1, 27) * detail::rational_pow(u_up, rep.r2) * sqrtD_up);
    // Round up to 2^-24 granularity: still a certified upper value, but with
    // a readable numerator instead of the raw pi-power denominators.
    const Integer closed_num = boost::multiprecision::numerator(closed);
    const Integer closed_den = boost::multiprecision::denominator(closed);
    rep.bound_closed_form =
        Rational(((closed_num << 24) + closed_den - 1) / closed_den, Integer(1) << 24);
    if (Rational(rep.bound_main) > rep.bound_closed_form)
        throw std::logic_error("cs_bound: main bound exceeds its closed-form relaxation");

    // Single-term relaxation, exact because disc phi * disc_E^3 is a square:
    // (2/3^5) sqrt(disc phi) disc_E^(3/2) = (2/243) * index_root * disc_E^2.
    if (rep.delta_E_sign > 0 && rep.abs_delta_E > 3075) {
        rep.bound_simple =
            Rational(2 * *index_root * rep.abs_delta_E * rep.abs_delta_E, 243);
        if (Rational(rep.bound_main) > *rep.bound_simple)
            throw std::logic_error("cs_bound: main bound exceeds the single-term relaxation");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Quadratic orders
// ---------------------------------------------------------------------------

enum class ClassNumberSource { Supplied, Oracle, MinkowskiBound };

inline const char* to_string(ClassNumberSource s) {
    switch (s) {
        case ClassNumberSource::Supplied: return "supplied";
        case ClassNumberSource::Oracle: return "oracle";
        case ClassNumberSource::MinkowskiBound: return "minkowski-bound";
    }
    throw std::logic_error("to_string(ClassNumberSource): bad enum");
}

struct ClassNumberInput {
    ClassNumberSource source;
    Integer value;

    bool exact() const { return source != ClassNumberSource::MinkowskiBound; }
};

struct LocalFactorReport {
    Integer p;
    unsigned serre;
    local::Splitting splitting;
    Integer factor;
};

struct QuadReport {
    Integer d;
    Integer fund_disc;
    Integer conductor;
    std::vector<LocalFactorReport> local_factors;  // ascending p over p | f
    ClassNumberInput class_number;                 // #Cl of the maximal order
    Integer bound_cor52;                           // class_number * prod local factors
    Integer conductor_factor_count;                // prod (ord_p(f) + 1)
    std::optional<ClassNumberInput> cl_r;          // #Cl(R) when available
    std::optional<Integer> bound_cor53;            // cl_r * conductor_factor_count
};

namespace detail {

inline void require_squarefree_d(const Integer& d) {
    if (d == 0 || d == 1)
        throw std::invalid_argument("quad: d must define a quadratic field");
    for (const auto& [p, e] : arith::factorize(d).factors)
        if (e > 1) throw std::invalid_argument("quad: d must be squarefree");
}

inline Integer fundamental_discriminant(const Integer& d) {
    Integer r = d % 4;
    if (r < 0) r += 4;
    return (r == 1) ? d : 4 * d;
}

}  // namespace detail

// Upper bound #ICM(R) <= #Cl(O) * prod_{p | f} bass_local_factor(p).  The
// class number of the maximal order is taken from `h` when supplied, from
// the form oracle when d < 0, and otherwise replaced by its certified upper
// bound.  cl_r feeds the secondary bound the same way (oracle only for d < 0).
inline QuadReport quad_bound(const Integer& d, const Integer& f,
                             std::optional<Integer> h = std::nullopt,
                             std::optional<Integer> cl_r = std::nullopt,
                             unsigned pi_bits = classnum::kDefaultPiBits) {
    detail::require_squarefree_d(d);
    if (f < 1) throw std::invalid_argument("quad: conductor must be >= 1");
    if (h && *h < 1) throw std::invalid_argument("quad: supplied class number must be >= 1");
    if (cl_r && *cl_r < 1) throw std::invalid_argument("quad: supplied #Cl(R) must be >= 1");

    QuadReport rep;
    rep.d = d;
    rep.fund_disc = detail::fundamental_discriminant(d);
    rep.conductor = f;

    Integer product = 1;
    rep.conductor_factor_count = 1;
    for (const auto& [p, e] : arith::factorize(f).factors) {
        const auto splitting = local::quad_splitting(rep.fund_disc, p);
        // Inert completions are domains with residue degree 2, ramified ones
        // domains with residue degree 1, split ones are not domains.
        const bool domain = splitting != local::Splitting::Split;
        const unsigned res_deg = splitting == local::Splitting::Inert ? 2 : 1;
        Integer factor = local::bass_local_factor({p, e, res_deg, domain});
        product *= factor;
        rep.conductor_factor_count *= e + 1;
        rep.local_factors.push_back({p, e, splitting, std::move(factor)});
    }

    if (h) {
        rep.class_number = {ClassNumberSource::Supplied, *h};
    } else if (d < 0) {
        rep.class_number = {ClassNumberSource::Oracle, oracle::form_class_number(rep.fund_disc)};
    } else {
        auto b = classnum::class_number_upper_bound(
            {2, 0, boost::multiprecision::abs(rep.fund_disc)}, pi_bits);
        rep.class_number = {ClassNumberSource::MinkowskiBound, b.bound};
    }
    rep.bound_cor52 = rep.class_number.value * product;

    if (cl_r) {
        rep.cl_r = ClassNumberInput{ClassNumberSource::Supplied, *cl_r};
    } else if (d < 0) {
        rep.cl_r = ClassNumberInput{ClassNumberSource::Oracle,
                                    oracle::form_class_number(f * f * rep.fund_disc)};
    }
    if (rep.cl_r) rep.bound_cor53 = rep.cl_r->value * rep.conductor_factor_count;
    return rep;
}

// Secondary bound #ICM(R) <= #Cl(R) * prod_{p | f} (ord_p(f) + 1); #Cl(R)
// must be supplied for real quadratic fields.
inline Integer quad_chl_bound(const Integer& d, const Integer& f,
                              std::optional<Integer> cl_r = std::nullopt) {
    detail::require_squarefree_d(d);
    if (f < 1) throw std::invalid_argument("quad: conductor must be >= 1");
    Integer cl;
    if (cl_r) {
        if (*cl_r < 1) throw std::invalid_argument("quad: supplied #Cl(R) must be >= 1");
        cl = *cl_r;
    } else if (d < 0) {
        cl = oracle::form_class_number(f * f * detail::fundamental_discriminant(d));
    } else {
        throw std::invalid_argument("quad_chl_bound: #Cl(R) required when d > 0");
    }
    Integer count = 1;
    for (const auto& [p, e] : arith::factorize(f).factors) count *= e + 1;
    return cl * count;
}

}  // namespace icmb::bounds
