#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hwp/cyclo.hpp"
#include "oracles.hpp"

using hwp::CycloNumber;
using hwp::Rational;

namespace {

std::complex<double> eval_poly(const std::vector<long>& c, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * z + static_cast<double>(c[i]);
    return acc;
}

double dist(std::complex<double> a, std::complex<double> b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("small cyclotomic polynomials") {
    CHECK(hwp::cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
    CHECK(hwp::cyclotomic_polynomial(2) == std::vector<long>{1, 1});
    CHECK(hwp::cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
    CHECK(hwp::cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
    CHECK(hwp::cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
}

TEST_CASE("cyclotomic polynomial vanishes at primitive roots and has degree phi") {
    for (unsigned m = 1; m <= 90; ++m) {
        auto c = hwp::cyclotomic_polynomial(m);
        REQUIRE(c.size() == oracle::phi(m) + 1);
        for (unsigned j = 1; j <= m; ++j) {
            if (oracle::gcd(j, m) != 1) continue;
            auto z = std::polar(1.0, 2 * std::numbers::pi * j / m);
            CHECK(std::abs(eval_poly(c, z)) < 1e-8);
        }
    }
}

TEST_CASE("roots of unity") {
    for (unsigned m : {1u, 2u, 3u, 4u, 5u, 8u, 9u, 12u, 15u, 24u, 30u}) {
        CycloNumber z = CycloNumber::root_of_unity(m, 1);
        CycloNumber p = 1L;
        CycloNumber sum;
        for (unsigned j = 0; j < m; ++j) {
            CHECK(p == CycloNumber::root_of_unity(m, j));
            sum += p;
            p *= z;
        }
        CHECK(p == CycloNumber(1L));
        CHECK(sum == CycloNumber(m == 1 ? 1L : 0L));
        CHECK(CycloNumber::root_of_unity(m, -1) == z.inverse());
    }
    CHECK(CycloNumber::root_of_unity(4, 1) * CycloNumber::root_of_unity(4, 1) == CycloNumber(-1L));
    CHECK(CycloNumber::root_of_unity(6, 1) == CycloNumber::root_of_unity(12, 2));
    CHECK(CycloNumber::root_of_unity(3, 1) + CycloNumber::root_of_unity(3, 2) == CycloNumber(-1L));
}

TEST_CASE("canonical form") {
    CycloNumber z;
    CHECK(z.is_zero());
    CHECK(z.order() == 1);
    CHECK(z.denominator() == 1);

    auto x = CycloNumber::from_numerators(4, {2, 2}, 4);
    CHECK(x.numerators() == std::vector<hwp::Integer>{1, 1});
    CHECK(x.denominator() == 2);
    CHECK(x == CycloNumber::from_coeffs(4, {Rational(1, 2), Rational(1, 2)}));

    auto y = CycloNumber::from_numerators(4, {-3, 6}, -9);
    CHECK(y.denominator() == 3);
    CHECK(y.numerators() == std::vector<hwp::Integer>{1, -2});

    auto zero = CycloNumber::from_numerators(5, {0, 0, 0, 0}, 7);
    CHECK(zero.is_zero());
    CHECK(zero.denominator() == 1);
    CHECK(zero.degree() == 4);
    CHECK(zero == CycloNumber());

    CHECK_THROWS_AS(CycloNumber::from_coeffs(5, {1, 2}), hwp::DomainError);
}

TEST_CASE("promotion keeps the value") {
    oracle::Gen g(7);
    for (int rep = 0; rep < 50; ++rep) {
        unsigned m = static_cast<unsigned>(g.integer(1, 12));
        unsigned k = static_cast<unsigned>(g.integer(1, 5));
        CycloNumber x = g.cyclo(m);
        CycloNumber y = x.promoted(m * k);
        CHECK(y.order() == m * k);
        CHECK(y == x);
        CHECK(dist(x.to_complex(), y.to_complex()) < 1e-9);
    }
}

TEST_CASE("rational elements") {
    CycloNumber r(Rational(3, 7));
    CHECK(r.is_rational());
    CHECK(r.to_rational() == Rational(3, 7));
    CHECK(!CycloNumber::root_of_unity(3, 1).is_rational());
    CHECK((CycloNumber::root_of_unity(8, 1) + CycloNumber::root_of_unity(8, 7)).to_complex().real() ==
          doctest::Approx(std::sqrt(2.0)));
    // zeta_8 + zeta_8^{-1} is sqrt 2, irrational
    CHECK(!(CycloNumber::root_of_unity(8, 1) + CycloNumber::root_of_unity(8, 7)).is_rational());
    CHECK((CycloNumber::root_of_unity(5, 1) * CycloNumber::root_of_unity(5, 4)).is_rational());
}

TEST_CASE("field axioms on random elements") {
    oracle::Gen g(11);
    const unsigned orders[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16, 20, 24};
    for (int rep = 0; rep < 200; ++rep) {
        auto pick = [&] { return orders[g.integer(0, std::size(orders) - 1)]; };
        CycloNumber a = g.cyclo(pick()), b = g.cyclo(pick()), c = g.cyclo(pick());
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == CycloNumber());
        CHECK(a + (-a) == CycloNumber());
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == CycloNumber(1L));
            CHECK_FALSE((a * a.conj()).to_complex().real() < 0);
        }
        // The complex embedding is a ring homomorphism up to rounding.
        auto ca = a.to_complex(), cb = b.to_complex();
        double scale = 1 + std::abs(ca) * std::abs(cb);
        CHECK(dist((a * b).to_complex(), ca * cb) < 1e-9 * scale);
        CHECK(dist((a + b).to_complex(), ca + cb) < 1e-9 * scale);
        CHECK(dist(a.conj().to_complex(), std::conj(ca)) < 1e-9 * scale);
    }
}

TEST_CASE("inverse of zero throws") { CHECK_THROWS_AS(CycloNumber().inverse(), hwp::DomainError); }

TEST_CASE("rational scalar operations") {
    CycloNumber z = CycloNumber::root_of_unity(3, 1);
    CHECK(z * Rational(2) == z + z);
    CHECK((z * Rational(6)) / Rational(3) == z + z);
    CHECK(CycloNumber::scaled_root(3, 1, Rational(5, 2)) == z * Rational(5, 2));
    CHECK_THROWS(z / Rational(0));
}

TEST_CASE("add_scaled_root stays in the field") {
    CycloNumber x = CycloNumber::root_of_unity(12, 0).promoted(12);
    x.add_scaled_root(3, 5);
    CHECK(x.order() == 12);
    CHECK(x == CycloNumber(1L) + CycloNumber::root_of_unity(12, 5) * Rational(3));
    x.add_scaled_root(-3, 17);
    CHECK(x == CycloNumber(1L));
}

TEST_CASE("common order") {
    std::vector<CycloNumber> xs{CycloNumber::root_of_unity(4, 1), CycloNumber::root_of_unity(6, 1), CycloNumber(2L)};
    CHECK(hwp::common_order(xs) == 12);
    CHECK(hwp::common_order(std::span<const CycloNumber>{}) == 1);
}

TEST_CASE("to_string is readable") {
    CHECK(CycloNumber(Rational(-1, 2)).to_string() == "-1/2");
    CHECK(CycloNumber().to_string() == "0");
    CHECK(!CycloNumber::root_of_unity(5, 2).to_string().empty());
}
