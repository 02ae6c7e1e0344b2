#include <catch2/catch_amalgamated.hpp>

#include <icmb/local.hpp>

using icmb::Integer;
namespace arith = icmb::arith;
namespace local = icmb::local;
using local::CSCaseId;
using local::CubicShape;
using local::Splitting;

TEST_CASE("serre invariant of a quadratic order is the conductor valuation") {
    REQUIRE(local::serre_quadratic(Integer(9), Integer(3)) == 2);
    REQUIRE(local::serre_quadratic(Integer(12), Integer(2)) == 2);
    REQUIRE(local::serre_quadratic(Integer(12), Integer(3)) == 1);
    REQUIRE(local::serre_quadratic(Integer(1), Integer(5)) == 0);
    REQUIRE_THROWS_AS(local::serre_quadratic(Integer(0), Integer(5)), std::invalid_argument);
    REQUIRE_THROWS_AS(local::serre_quadratic(Integer(9), Integer(6)), std::invalid_argument);
}

TEST_CASE("splitting from the Kronecker symbol on fundamental discriminants") {
    REQUIRE(local::quad_splitting(Integer(8), Integer(3)) == Splitting::Inert);
    REQUIRE(local::quad_splitting(Integer(-4), Integer(3)) == Splitting::Inert);
    REQUIRE(local::quad_splitting(Integer(-4), Integer(5)) == Splitting::Split);
    REQUIRE(local::quad_splitting(Integer(-4), Integer(2)) == Splitting::Ramified);
    REQUIRE(local::quad_splitting(Integer(-3), Integer(2)) == Splitting::Inert);
    REQUIRE(local::quad_splitting(Integer(-20), Integer(2)) == Splitting::Ramified);
    REQUIRE(local::quad_splitting(Integer(-20), Integer(5)) == Splitting::Ramified);

    // ramified iff p divides the discriminant, on a sample of fundamentals
    for (int d : {-3, -4, -7, -8, -20, -23, 5, 8, 12, 13}) {
        for (int p : {2, 3, 5, 7, 11, 13}) {
            auto s = local::quad_splitting(Integer(d), Integer(p));
            REQUIRE((s == Splitting::Ramified) == (d % p == 0));
        }
    }

    for (int bad : {0, 1, 4, -4 * 3, 20, 45, -27}) {
        REQUIRE_THROWS_AS(local::quad_splitting(Integer(bad), Integer(3)),
                          std::invalid_argument);
    }
    REQUIRE_THROWS_AS(local::quad_splitting(Integer(8), Integer(4)), std::invalid_argument);
}

TEST_CASE("quadratic orbit counts") {
    REQUIRE(local::orbital_quadratic({Integer(3), 1, Splitting::Inert}) == 5);
    REQUIRE(local::orbital_quadratic({Integer(3), 2, Splitting::Inert}) == 17);
    REQUIRE(local::orbital_quadratic({Integer(2), 1, Splitting::Inert}) == 4);
    REQUIRE(local::orbital_quadratic({Integer(2), 1, Splitting::Ramified}) == 3);
    REQUIRE(local::orbital_quadratic({Integer(5), 2, Splitting::Ramified}) == 31);
    REQUIRE(local::orbital_quadratic({Integer(7), 1, Splitting::Split}) == 7);
    for (int p : {2, 3, 5, 7}) {
        for (auto s : {Splitting::Split, Splitting::Inert, Splitting::Ramified}) {
            REQUIRE(local::orbital_quadratic({Integer(p), 0, s}) == 1);
        }
    }
    REQUIRE_THROWS_AS(local::QuadLocalData(Integer(6), 1, Splitting::Split),
                      std::invalid_argument);
}

TEST_CASE("cubic local data validation") {
    using D = local::CubicLocalData;
    REQUIRE_NOTHROW(D(Integer(5), CubicShape::IrreducibleRamified, {{3, 1, 1}}, 1, 0));
    REQUIRE_NOTHROW(D(Integer(25), CubicShape::ThreeFactors,
                      {{1, 1, 0}, {1, 1, 0}, {1, 1, 0}}, 0, 2));
    // q not a prime power
    REQUIRE_THROWS_AS(D(Integer(6), CubicShape::IrreducibleRamified, {{3, 1, 0}}, 0, 0),
                      std::invalid_argument);
    // component count vs shape
    REQUIRE_THROWS_AS(D(Integer(5), CubicShape::TwoFactors, {{3, 1, 0}}, 0, 0),
                      std::invalid_argument);
    // degrees must sum to 3
    REQUIRE_THROWS_AS(D(Integer(5), CubicShape::TwoFactors, {{2, 1, 0}, {2, 1, 0}}, 0, 0),
                      std::invalid_argument);
    // delta must be the max component Serre invariant
    REQUIRE_THROWS_AS(D(Integer(5), CubicShape::TwoFactors, {{2, 1, 2}, {1, 1, 0}}, 1, 0),
                      std::invalid_argument);
    // rho must vanish on irreducible shapes
    REQUIRE_THROWS_AS(D(Integer(5), CubicShape::IrreducibleRamified, {{3, 1, 0}}, 0, 1),
                      std::invalid_argument);
    // unramified cubic must have residue degree 3
    REQUIRE_THROWS_AS(D(Integer(5), CubicShape::IrreducibleUnramified, {{3, 1, 0}}, 0, 0),
                      std::invalid_argument);
}

TEST_CASE("cubic orbit counts on pinned local data") {
    REQUIRE(local::orbital_cubic(
                {Integer(5), CubicShape::IrreducibleRamified, {{3, 1, 1}}, 1, 0}) == 6);
    REQUIRE(local::orbital_cubic(
                {Integer(7), CubicShape::TwoFactors, {{2, 1, 0}, {1, 1, 0}}, 0, 1}) == 7);
    REQUIRE(local::orbital_cubic({Integer(5), CubicShape::ThreeFactors,
                                  {{1, 1, 0}, {1, 1, 0}, {1, 1, 0}}, 0, 2}) == 25);
    // Serre invariant zero and no gluing collapses the count to 1.
    REQUIRE(local::orbital_cubic(
                {Integer(11), CubicShape::IrreducibleUnramified, {{3, 3, 0}}, 0, 0}) == 1);
    // Inconsistent data: an unramified cubic field cannot carry delta = 1,
    // and the assembled fraction does not divide out.
    REQUIRE_THROWS_AS(local::orbital_cubic(
                          {Integer(5), CubicShape::IrreducibleUnramified, {{3, 3, 1}}, 1, 0}),
                      std::domain_error);
}

TEST_CASE("bass local factors") {
    REQUIRE(local::bass_local_factor({Integer(3), 1, 2, true}) == 5);
    REQUIRE(local::bass_local_factor({Integer(3), 2, 2, true}) == 17);
    REQUIRE(local::bass_local_factor({Integer(7), 3, 1, false}) == 343);
    REQUIRE(local::bass_local_factor({Integer(3), 2, 1, true}) == 13);
    REQUIRE(local::bass_local_factor({Integer(5), 0, 2, true}) == 1);
    REQUIRE(local::bass_local_factor({Integer(5), 0, 1, false}) == 1);
    REQUIRE_THROWS_AS(local::BassLocalData(Integer(12), 1, 1, true), std::invalid_argument);
    REQUIRE_THROWS_AS(local::BassLocalData(Integer(5), 1, 0, true), std::invalid_argument);
}

TEST_CASE("quadratic orbit count coincides with the Bass factor") {
    // Inert completions are domains with residue degree 2, ramified ones
    // domains with residue degree 1, split completions are not domains.
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        for (unsigned S = 0; S <= 6; ++S) {
            REQUIRE(local::orbital_quadratic({Integer(p), S, Splitting::Inert}) ==
                    local::bass_local_factor({Integer(p), S, 2, true}));
            REQUIRE(local::orbital_quadratic({Integer(p), S, Splitting::Ramified}) ==
                    local::bass_local_factor({Integer(p), S, 1, true}));
            REQUIRE(local::orbital_quadratic({Integer(p), S, Splitting::Split}) ==
                    local::bass_local_factor({Integer(p), S, 1, false}));
        }
    }
}

TEST_CASE("cubic family invariants") {
    REQUIRE(local::cs_invariants(Integer(6)) == std::pair{Integer(49), Integer(-189)});
    REQUIRE(local::cs_invariants(Integer(0)) == std::pair{Integer(-23), Integer(-27)});
    REQUIRE(local::cs_invariants(Integer(1)) == std::pair{Integer(-31), Integer(-29)});
    REQUIRE(local::cs_invariants(Integer(8)) == std::pair{Integer(697), Integer(-547)});
    REQUIRE(local::cs_invariants(Integer(11)) == std::pair{Integer(4729), Integer(-1699)});

    // disc phi_m is coprime to 6 and positive exactly off the band 0..5
    for (int m = -1000; m <= 1000; ++m) {
        const auto [dphi, cphi] = local::cs_invariants(Integer(m));
        REQUIRE(dphi % 2 != 0);
        REQUIRE(dphi % 3 != 0);
        REQUIRE((dphi > 0) == (m >= 6 || m <= -1));
    }
}

TEST_CASE("classification of primes dividing disc phi_m") {
    auto c = local::cs_classify_prime(Integer(6), Integer(7));
    REQUIRE(c.id == CSCaseId::Case1Maximal);
    REQUIRE(c.ord_delta == 2);
    REQUIRE(c.serre == 0);

    c = local::cs_classify_prime(Integer(-1), Integer(7));
    REQUIRE(c.id == CSCaseId::Case1Maximal);

    c = local::cs_classify_prime(Integer(0), Integer(23));
    REQUIRE(c.id == CSCaseId::Case3OddOrd);
    REQUIRE(c.ord_delta == 1);
    REQUIRE(c.serre == 0);

    // disc phi(-169) = 7^3 * 103 * 24481 with 7 | C_phi(-169)
    c = local::cs_classify_prime(Integer(-169), Integer(7));
    REQUIRE(c.id == CSCaseId::Case2);
    REQUIRE(c.serre == 1);
    REQUIRE(local::cs_classify_prime(Integer(-169), Integer(103)).id == CSCaseId::Case3OddOrd);

    // disc phi(-154) = 31^2 * 624049 with 31 coprime to C_phi and square
    // residue cofactor
    c = local::cs_classify_prime(Integer(-154), Integer(31));
    REQUIRE(c.id == CSCaseId::Case4);
    REQUIRE(c.serre == 1);

    // disc phi(-2880) has 167^2 with non-square cofactor mod 167
    c = local::cs_classify_prime(Integer(-2880), Integer(167));
    REQUIRE(c.id == CSCaseId::Case3EvenInert);
    REQUIRE(c.serre == 1);

    REQUIRE_THROWS_AS(local::cs_classify_prime(Integer(6), Integer(5)), std::invalid_argument);
    REQUIRE_THROWS_AS(local::cs_classify_prime(Integer(6), Integer(2)), std::invalid_argument);
    REQUIRE_THROWS_AS(local::cs_classify_prime(Integer(6), Integer(3)), std::invalid_argument);
}

TEST_CASE("case orbit values") {
    REQUIRE(local::cs_orbital({CSCaseId::Case1Maximal, Integer(7), 2, 0}) == 1);
    REQUIRE(local::cs_orbital({CSCaseId::Case1, Integer(7), 4, 1}) == 8);
    REQUIRE(local::cs_orbital({CSCaseId::Case2, Integer(7), 3, 1}) == 7);
    REQUIRE(local::cs_orbital({CSCaseId::Case3OddOrd, Integer(23), 1, 0}) == 1);
    REQUIRE(local::cs_orbital({CSCaseId::Case3OddOrd, Integer(5), 3, 1}) == 6);
    REQUIRE(local::cs_orbital({CSCaseId::Case3OddOrd, Integer(5), 5, 2}) == 31);
    REQUIRE(local::cs_orbital({CSCaseId::Case3EvenInert, Integer(5), 2, 1}) == 7);
    REQUIRE(local::cs_orbital({CSCaseId::Case3EvenInert, Integer(5), 4, 2}) == 37);
    REQUIRE(local::cs_orbital({CSCaseId::Case4, Integer(31), 2, 1}) == 31);
    REQUIRE(local::cs_orbital({CSCaseId::Case4, Integer(5), 6, 3}) == 125);

    REQUIRE_THROWS_AS(local::CSCase(CSCaseId::Case1, Integer(7), 2, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(local::CSCase(CSCaseId::Case3OddOrd, Integer(7), 2, 1),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(local::CSCase(CSCaseId::Case2, Integer(3), 3, 1), std::invalid_argument);
}

TEST_CASE("case-table orbit values factor through explicit local data") {
    // Synthetic grid over every case id and several primes and valuations.
    std::vector<local::CSCase> grid;
    for (int p : {5, 7, 11, 13, 17, 101}) {
        grid.emplace_back(CSCaseId::Case1Maximal, Integer(p), 2, 0);
        grid.emplace_back(CSCaseId::Case1, Integer(p), 4, 1);
        grid.emplace_back(CSCaseId::Case2, Integer(p), 3, 1);
        for (unsigned ord : {1u, 3u, 5u, 7u})
            grid.emplace_back(CSCaseId::Case3OddOrd, Integer(p), ord, (ord - 1) / 2);
        for (unsigned ord : {2u, 4u, 6u}) {
            grid.emplace_back(CSCaseId::Case3EvenInert, Integer(p), ord, ord / 2);
            grid.emplace_back(CSCaseId::Case4, Integer(p), ord, ord / 2);
        }
    }
    for (const auto& cs : grid) {
        REQUIRE(local::orbital_cubic(local::cs_local_data(cs)) == local::cs_orbital(cs));
    }

    // And over every prime of every classified m in a real range.
    for (int m = -50; m <= 50; ++m) {
        const auto [dphi, cphi] = local::cs_invariants(Integer(m));
        for (const auto& [p, e] : arith::factorize(dphi).factors) {
            auto cs = local::cs_classify_prime(Integer(m), p);
            REQUIRE(cs.ord_delta == e);
            REQUIRE(local::orbital_cubic(local::cs_local_data(cs)) == local::cs_orbital(cs));
        }
    }
}
