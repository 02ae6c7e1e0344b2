#include <catch2/catch_amalgamated.hpp>

#include <icmb/classnum.hpp>
#include <icmb/oracle.hpp>

#include <algorithm>
#include <cstdint>

using icmb::Integer;
using icmb::Rational;
namespace arith = icmb::arith;
namespace oracle = icmb::oracle;

namespace {

// Independent reduction oracle: Gauss reduction of a positive definite form
// by alternating normalization and inversion steps.  Used to confirm that
// the enumerated reduced forms are genuinely reduced and hit every class.
struct F {
    std::int64_t a, b, c;
};

F reduce(F f) {
    for (;;) {
        // normalize b into (-a, a]
        std::int64_t r = ((f.b % (2 * f.a)) + 2 * f.a) % (2 * f.a);
        if (r > f.a) r -= 2 * f.a;
        f.c -= (f.b - r) / (2 * f.a) * ((f.b + r) / 2);
        f.b = r;
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

bool contains(const std::vector<oracle::QuadForm>& forms, const F& f) {
    return std::any_of(forms.begin(), forms.end(), [&](const oracle::QuadForm& g) {
        return g.a == f.a && g.b == f.b && g.c == f.c;
    });
}

}  // namespace

TEST_CASE("reduced forms for pinned discriminants") {
    auto f4 = oracle::reduced_forms(Integer(-4));
    REQUIRE(f4 == std::vector<oracle::QuadForm>{{1, 0, 1}});

    auto f23 = oracle::reduced_forms(Integer(-23));
    REQUIRE(f23 == std::vector<oracle::QuadForm>{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}});

    auto f324 = oracle::reduced_forms(Integer(-324));
    REQUIRE(f324.size() == 6);
    REQUIRE(f324 == std::vector<oracle::QuadForm>{
                        {1, 0, 81}, {2, 2, 41}, {5, 4, 17}, {5, -4, 17}, {9, 6, 10}, {9, -6, 10}});

    REQUIRE_THROWS_AS(oracle::reduced_forms(Integer(5)), std::invalid_argument);
    REQUIRE_THROWS_AS(oracle::reduced_forms(Integer(-5)), std::invalid_argument);
}

TEST_CASE("form class numbers match the classical table") {
    const std::pair<int, int> table[] = {
        {-3, 1},  {-4, 1},  {-7, 1},  {-8, 1},   {-11, 1},  {-12, 1},  {-15, 2},
        {-16, 1}, {-19, 1}, {-20, 2}, {-23, 3},  {-27, 1},  {-36, 2},  {-43, 1},
        {-47, 5}, {-48, 2}, {-64, 2}, {-67, 1},  {-71, 7},  {-75, 2},  {-80, 4},
        {-84, 4}, {-112, 2}, {-144, 4}, {-163, 1}, {-228, 4}, {-231, 12}, {-324, 6}};
    for (auto [D, h] : table) {
        REQUIRE(oracle::form_class_number(Integer(D)) == h);
    }
}

TEST_CASE("every output form is reduced, primitive, and of the right discriminant") {
    for (int D = -4; D >= -2000; --D) {
        int r = ((D % 4) + 4) % 4;
        if (r != 0 && r != 1) continue;
        auto forms = oracle::reduced_forms(Integer(D));
        REQUIRE(!forms.empty());  // the principal form always exists
        for (const auto& q : forms) {
            REQUIRE(q.discriminant() == D);
            REQUIRE(q.a > 0);
            Integer babs = q.b < 0 ? Integer(-q.b) : q.b;
            REQUIRE(babs <= q.a);
            REQUIRE(q.a <= q.c);
            if (babs == q.a || q.a == q.c) REQUIRE(q.b >= 0);
            Integer g = boost::multiprecision::gcd(boost::multiprecision::gcd(q.a, babs), q.c);
            REQUIRE(g == 1);
            // a fixed point of the independent reduction routine
            F f{q.a.convert_to<std::int64_t>(), q.b.convert_to<std::int64_t>(),
                q.c.convert_to<std::int64_t>()};
            F red = reduce(f);
            REQUIRE((red.a == f.a && red.b == f.b && red.c == f.c));
        }
    }
}

TEST_CASE("enumeration is complete: arbitrary forms reduce into the output") {
    for (int D : {-23, -84, -144, -163, -324, -231}) {
        auto forms = oracle::reduced_forms(Integer(D));
        for (std::int64_t a = 1; a * a <= -D; ++a) {
            for (std::int64_t b = -2 * a; b <= 2 * a; ++b) {
                if (((b ^ D) & 1) != 0) continue;
                const std::int64_t n = b * b - D;
                if (n % (4 * a) != 0) continue;
                const std::int64_t c = n / (4 * a);
                if (c <= 0) continue;
                if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
                REQUIRE(contains(forms, reduce({a, b, c})));
            }
        }
    }
}

TEST_CASE("overorder lattice mirrors the divisors of the conductor") {
    auto lat = oracle::overorder_lattice(Integer(-1), Integer(6));
    REQUIRE(lat.fund_disc == -4);
    REQUIRE(lat.entries.size() == 4);
    REQUIRE(lat.entries[0].conductor == 1);
    REQUIRE(lat.entries[0].disc == -4);
    REQUIRE(lat.entries[0].class_number == 1);
    REQUIRE(lat.entries[0].torsion == 4);
    REQUIRE(lat.entries[1].conductor == 2);
    REQUIRE(lat.entries[1].class_number == 1);  // h(-16)
    REQUIRE(lat.entries[2].conductor == 3);
    REQUIRE(lat.entries[2].class_number == 2);  // h(-36)
    REQUIRE(lat.entries[3].conductor == 6);
    REQUIRE(lat.entries[3].disc == -144);
    REQUIRE(lat.entries[3].class_number == 4);  // h(-144)
    REQUIRE(lat.entries[3].torsion == 2);

    auto lat3 = oracle::overorder_lattice(Integer(-3), Integer(2));
    REQUIRE(lat3.entries[0].torsion == 6);
    REQUIRE(lat3.entries[1].torsion == 2);

    REQUIRE_THROWS_AS(oracle::overorder_lattice(Integer(-4), Integer(2)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(oracle::overorder_lattice(Integer(5), Integer(2)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(oracle::overorder_lattice(Integer(-1), Integer(0)),
                      std::invalid_argument);
}

TEST_CASE("exact ideal class monoid sizes") {
    REQUIRE(oracle::icm_exact(Integer(-1), Integer(9)) == 9);
    REQUIRE(oracle::icm_exact(Integer(-1), Integer(1)) == 1);
    REQUIRE(oracle::icm_exact(Integer(-1), Integer(3)) == 3);
    REQUIRE(oracle::icm_exact(Integer(-3), Integer(2)) == 2);
    REQUIRE(oracle::icm_exact(Integer(-5), Integer(2)) == 6);
    REQUIRE(oracle::icm_exact(Integer(-1), Integer(6)) == 8);
    REQUIRE(oracle::icm_exact(Integer(-7), Integer(12)) == 20);

    // monotone under divisibility of conductors
    for (int d : {-1, -2, -3, -5, -7}) {
        for (int f = 1; f <= 24; ++f) {
            for (int fp = 1; fp <= f; ++fp) {
                if (f % fp) continue;
                REQUIRE(oracle::icm_exact(Integer(d), Integer(fp)) <=
                        oracle::icm_exact(Integer(d), Integer(f)));
            }
        }
    }
}

TEST_CASE("orbit products equal unit-weighted overorder sums") {
    auto y = oracle::yun_check(Integer(-1), Integer(9));
    REQUIRE(y.lhs == 17);
    REQUIRE(y.rhs == 17);
    REQUIRE(y.ok);

    REQUIRE(oracle::yun_check(Integer(-7), Integer(12)).lhs == 20);
    REQUIRE(oracle::yun_check(Integer(-3), Integer(6)).lhs == 16);

    for (int d : {-1, -2, -3, -5, -6, -7, -10, -11, -13}) {
        for (int f = 1; f <= 12; ++f) {
            auto check = oracle::yun_check(Integer(d), Integer(f));
            INFO("d=" << d << " f=" << f << " lhs=" << check.lhs << " rhs=" << check.rhs);
            REQUIRE(check.ok);
        }
    }
}

TEST_CASE("class number bound dominates the exact class number") {
    for (int D = -3; D >= -200; --D) {
        int r = ((D % 4) + 4) % 4;
        if (r != 0 && r != 1) continue;
        bool fundamental = false;
        if (r == 1) {
            fundamental = true;
            for (const auto& [p, e] : arith::factorize(Integer(D)).factors)
                if (e > 1) fundamental = false;
        } else {
            Integer k = Integer(D) / 4;
            Integer kr = ((k % 4) + 4) % 4;
            fundamental = (kr == 2 || kr == 3);
            for (const auto& [p, e] : arith::factorize(k).factors)
                if (e > 1) fundamental = false;
        }
        if (!fundamental) continue;
        auto bound = icmb::classnum::class_number_upper_bound({2, 1, Integer(-D)});
        REQUIRE(bound.bound >= oracle::form_class_number(Integer(D)));
    }
}
