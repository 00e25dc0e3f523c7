#include <doctest.h>

#include <algorithm>

#include "hwp/lift.hpp"
#include "oracles.hpp"

using hwp::CoefficientBlock;
using hwp::CycloNumber;
using hwp::DirichletCharacter;
using hwp::DirichletSeries;
using hwp::LiftParams;
using hwp::Rational;

namespace {

CoefficientBlock periodic_block(const std::vector<CycloNumber>& period, size_t length, hwp::u64 d = 1, unsigned i = 0) {
    std::vector<CycloNumber> v(length);
    for (size_t n = 0; n < length; ++n) v[n] = period[n % period.size()];
    return CoefficientBlock::from_values(d, i, std::move(v));
}

CoefficientBlock constant_block(long c, size_t length) { return periodic_block({CycloNumber(c)}, length); }

// a(d n^2) written as a Dirichlet series
DirichletSeries block_series(const CoefficientBlock& b, size_t nmax) {
    return DirichletSeries(std::vector<CycloNumber>(b.values.begin(), b.values.begin() + static_cast<long>(nmax)));
}

// sum_{m | n} psi_d(m) m^{k-1} a(d (n/m)^2), by trial division
DirichletSeries shimura_oracle(const CoefficientBlock& b, const LiftParams& p, size_t nmax) {
    DirichletSeries out(nmax);
    for (size_t n = 1; n <= nmax; ++n)
        for (size_t m = 1; m <= n; ++m)
            if (n % m == 0) {
                Rational w = 1;
                for (unsigned j = 1; j < p.k; ++j) w *= static_cast<long>(m);
                out[n] += p.psi_d.eval(static_cast<hwp::i64>(m)) * b.at(n / m) * w;
            }
    return out;
}

std::vector<CycloNumber> random_period(oracle::Gen& g, size_t l) {
    std::vector<CycloNumber> v(l);
    for (auto& x : v) x = g.cyclo(static_cast<unsigned>(std::vector<int>{1, 3, 4}[g.integer(0, 2)]), 3);
    return v;
}

}  // namespace

TEST_CASE("LiftParams") {
    auto p = LiftParams::make(1, 3, DirichletCharacter(1), 5);
    CHECK(p.psi_d == hwp::twist_psi_d(DirichletCharacter(1), 1, 3));
    CHECK(p.period == 5);
    CHECK_THROWS_AS(LiftParams::make(0, 1, DirichletCharacter(1), 1), hwp::DomainError);
    CHECK_THROWS_AS(LiftParams::make(1, 1, DirichletCharacter(1), 0), hwp::DomainError);
    CHECK_THROWS_AS(LiftParams::make(1, 4, DirichletCharacter(1), 1), hwp::DomainError);
}

TEST_CASE("periodicity witness") {
    auto b = periodic_block({1L, -1L, 0L}, 30);
    CHECK(!hwp::periodicity_witness(b, 3).has_value());
    CHECK(!hwp::periodicity_witness(b, 6).has_value());
    CHECK(hwp::periodicity_witness(b, 2) == std::optional<size_t>(3));
    b.values[19] = 5L;
    CHECK(hwp::periodicity_witness(b, 3) == std::optional<size_t>(20));
}

TEST_CASE("shimura_A examples") {
    oracle::Gen g(41);
    auto psi = hwp::enumerate_characters(5)[2];
    for (unsigned k : {1u, 2u, 3u}) {
        auto p = LiftParams::make(k, 2, psi, 1);
        std::vector<CycloNumber> v(60);
        for (auto& x : v) x = g.cyclo(4, 2);
        auto b = CoefficientBlock::from_values(2, 0, v);
        auto A = hwp::shimura_A(b, p, 60);
        CHECK(A[1] == b.at(1));
        for (hwp::u64 q : {2u, 3u, 5u, 7u, 11u, 13u}) {
            Rational w = 1;
            for (unsigned j = 1; j < k; ++j) w *= static_cast<long>(q);
            CHECK(A[q] == b.at(q) + p.psi_d.eval(static_cast<hwp::i64>(q)) * b.at(1) * w);
        }
        CHECK(A == shimura_oracle(b, p, 60));
    }

    auto p1 = LiftParams::make(1, 1, DirichletCharacter(1), 1);
    auto A = hwp::shimura_A(constant_block(7, 10), p1, 10);
    CHECK(A[4] == CycloNumber(7L));

    CHECK_THROWS_AS(hwp::shimura_A(constant_block(1, 10), p1, 11), hwp::RangeError);
    try {
        hwp::shimura_A(constant_block(1, 10), p1, 11);
    } catch (const hwp::RangeError& e) {
        CHECK(std::string(e.what()).find("10") != std::string::npos);
    }
    auto scaled = CoefficientBlock::from_values(1, 1, std::vector<CycloNumber>(10, CycloNumber(1L)));
    CHECK_THROWS_AS(hwp::shimura_A(scaled, p1, 5), hwp::DomainError);
}

TEST_CASE("lift factorization") {
    oracle::Gen g(43);
    for (int rep = 0; rep < 25; ++rep) {
        auto psi = g.character(12);
        unsigned k = static_cast<unsigned>(g.integer(1, 4));
        hwp::u64 d = static_cast<hwp::u64>(std::vector<int>{1, 2, 3, 5, 7}[g.integer(0, 4)]);
        auto p = LiftParams::make(k, d, psi, 1);
        std::vector<CycloNumber> v(300);
        for (auto& x : v) x = g.cyclo(3, 2);
        auto b = CoefficientBlock::from_values(d, 0, v);
        auto A = hwp::shimura_A(b, p, 300);
        CHECK(A == hwp::convolve(hwp::l_coeffs(p.psi_d, static_cast<int>(k) - 1, 300), block_series(b, 300)));
        CHECK(A == oracle::naive_convolve(hwp::l_coeffs(p.psi_d, static_cast<int>(k) - 1, 300), block_series(b, 300)));
    }
}

TEST_CASE("alpha coefficients examples") {
    auto a = hwp::alpha_coeffs(constant_block(4, 30), 3);
    REQUIRE(a.alpha.size() == 2);
    CHECK(a.characters[0].is_principal());
    CHECK(a.alpha[0] == CycloNumber(4L));
    CHECK(a.alpha[1].is_zero());

    auto b = hwp::alpha_coeffs(periodic_block({1L, -1L, 9L}, 30), 3);
    CHECK(b.alpha[0].is_zero());
    CHECK(b.alpha[1] == CycloNumber(1L));

    auto z = hwp::alpha_coeffs(constant_block(0, 30), 7);
    for (auto& x : z.alpha) CHECK(x.is_zero());

    CHECK_THROWS_AS(hwp::alpha_coeffs(periodic_block({1L, 2L}, 30), 3), hwp::PeriodicityViolation);
    try {
        hwp::alpha_coeffs(periodic_block({1L, 2L}, 30), 3);
    } catch (const hwp::PeriodicityViolation& e) {
        CHECK(e.index == 4);
    }
    CHECK_THROWS_AS(hwp::alpha_coeffs(constant_block(1, 2), 3), hwp::RangeError);
}

TEST_CASE("alpha reconstructs the coprime block values") {
    oracle::Gen g(47);
    for (hwp::u64 l : {4u, 5u, 7u, 9u, 12u}) {
        auto b = periodic_block(random_period(g, l), 5 * l);
        auto a = hwp::alpha_coeffs(b, l);
        for (hwp::u64 h = 1; h <= l; ++h) {
            if (oracle::gcd(h, l) != 1) continue;
            CycloNumber s;
            for (size_t c = 0; c < a.alpha.size(); ++c) s += a.alpha[c] * a.characters[c].eval(static_cast<hwp::i64>(h));
            CHECK(s == b.at(h));
        }
    }
}

TEST_CASE("hecke_eisenstein examples") {
    DirichletCharacter one(1);
    auto e4 = hwp::hecke_eisenstein(one, one, 4, 200);
    CHECK(e4.coeffs[6] == CycloNumber(252L));
    for (size_t n = 1; n <= 200; ++n) {
        long s = 0;
        for (long m : hwp::divisors(n)) s += m * m * m;
        CHECK(e4.coeffs[n] == CycloNumber(s));
    }
    CHECK(e4.constant_term == CycloNumber(Rational(1, 240)));
    CHECK(e4.level == 1);

    auto chi4 = hwp::enumerate_characters(4)[1];
    auto chi3 = hwp::enumerate_characters(3)[1];
    auto f = hwp::hecke_eisenstein(chi4, chi3, 2, 100);
    CHECK(f.constant_term.is_zero());
    CHECK(f.level == 12);
    CHECK(f.nebentypus == chi4 * chi3);
    for (hwp::i64 q : {2, 3, 5, 7, 11, 13}) CHECK(f.coeffs[static_cast<size_t>(q)] == chi4.eval(q) + chi3.eval(q) * Rational(q));

    auto g = hwp::hecke_eisenstein(one, chi4, 3, 50);
    CHECK(g.constant_term == -(hwp::generalized_bernoulli(chi4, 3) / Rational(6)));

    CHECK_THROWS_AS(hwp::hecke_eisenstein(one, one, 3, 10), hwp::DomainError);
    CHECK_THROWS_AS(hwp::hecke_eisenstein(one, DirichletCharacter(5), 2, 10), hwp::DomainError);
    CHECK_THROWS_AS(hwp::hecke_eisenstein(chi4.induced(8), chi3, 2, 10), hwp::DomainError);
    try {
        hwp::hecke_eisenstein(one, DirichletCharacter(5), 2, 10);
    } catch (const hwp::DomainError& e) {
        CHECK(std::string(e.what()).find("reduce_to_primitive") != std::string::npos);
    }
}

TEST_CASE("Eisenstein L-factorization on small moduli") {
    std::vector<DirichletCharacter> prim;
    for (hwp::u64 M = 1; M <= 8; ++M)
        for (auto& c : hwp::enumerate_characters(M))
            if (c.is_primitive()) prim.push_back(c);
    for (auto& chi : prim)
        for (auto& psi : prim)
            for (unsigned k = 1; k <= 4; ++k) {
                if ((chi.is_even() == psi.is_even()) != (k % 2 == 0)) continue;
                auto f = hwp::hecke_eisenstein(chi, psi, k, 200);
                auto c = hwp::convolve(hwp::l_coeffs(chi, 0, 200), hwp::l_coeffs(psi, static_cast<int>(k) - 1, 200));
                CHECK(f.coeffs == c);
            }
}

TEST_CASE("eisenstein_product for imprimitive characters and shifts") {
    oracle::Gen g(53);
    for (int rep = 0; rep < 40; ++rep) {
        auto chi = g.character(24), psi = g.character(24);
        unsigned k = static_cast<unsigned>(g.integer(1, 4));
        unsigned shift = static_cast<unsigned>(g.integer(0, 2));
        auto e = hwp::eisenstein_product(chi, psi, k, shift, 300);
        auto direct = oracle::naive_convolve(hwp::l_coeffs(chi, static_cast<int>(shift), 300),
                                             hwp::l_coeffs(psi, static_cast<int>(k) - 1, 300));
        CHECK_MESSAGE(e == direct, chi.debug_line() << " " << psi.debug_line() << " k=" << k << " shift=" << shift);
    }
}

TEST_CASE("master identity examples") {
    auto p = LiftParams::make(1, 1, DirichletCharacter(1), 3);
    auto zero = hwp::master_identity_residual(constant_block(0, 200), p, 200);
    CHECK(zero.exact_zero());
    CHECK(zero.max_abs_residual == 0.0);

    auto c = hwp::master_identity_residual(constant_block(1, 2000), p, 2000);
    CHECK(c.exact_zero());

    auto alt = hwp::master_identity_residual(periodic_block({1L, -1L, 2L}, 2000), p, 2000);
    CHECK(alt.exact_zero());
    CHECK(alt.notes.empty());
}

TEST_CASE("master identity holds for random periodic blocks") {
    oracle::Gen g(59);
    const hwp::u64 periods[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12};
    for (int rep = 0; rep < 40; ++rep) {
        hwp::u64 l = periods[g.integer(0, std::size(periods) - 1)];
        unsigned k = static_cast<unsigned>(g.integer(1, 3));
        hwp::u64 d = static_cast<hwp::u64>(std::vector<int>{1, 2, 3, 5}[g.integer(0, 3)]);
        auto psi = g.character(6);
        auto p = LiftParams::make(k, d, psi, l);
        auto b = periodic_block(random_period(g, l), 240, d);
        auto r = hwp::master_identity_residual(b, p, 240);
        CHECK_MESSAGE(r.exact_zero(), "l=" << l << " k=" << k << " d=" << d << " psi=" << psi.debug_line());
        CHECK(r.max_abs_residual == 0.0);
        if (!psi.is_even()) CHECK(r.notes == std::vector<std::string>{"psi is odd"});
    }
}

TEST_CASE("collected and stratified routes agree for prime periods") {
    oracle::Gen g(61);
    for (hwp::u64 l : {1u, 2u, 3u, 5u, 7u}) {
        auto p = LiftParams::make(2, 1, hwp::enumerate_characters(4)[1], l);
        auto b = periodic_block(random_period(g, l), 300);
        auto a = hwp::master_identity_residual(b, p, 300, hwp::Periodicity::Enforce, hwp::IdentityRoute::Collected);
        auto s = hwp::master_identity_residual(b, p, 300, hwp::Periodicity::Enforce, hwp::IdentityRoute::Stratified);
        CHECK(a.exact_zero());
        CHECK(s.exact_zero());
    }
    auto p = LiftParams::make(1, 1, DirichletCharacter(1), 6);
    CHECK_THROWS_AS(hwp::master_identity_residual(constant_block(1, 60), p, 60, hwp::Periodicity::Enforce,
                                                  hwp::IdentityRoute::Collected),
                    hwp::DomainError);
}

TEST_CASE("master identity detects single-entry perturbations") {
    oracle::Gen g(67);
    for (int rep = 0; rep < 30; ++rep) {
        hwp::u64 l = static_cast<hwp::u64>(std::vector<int>{1, 2, 3, 5, 7, 6}[g.integer(0, 5)]);
        auto p = LiftParams::make(static_cast<unsigned>(g.integer(1, 3)), 1, DirichletCharacter(1), l);
        const size_t nmax = 150;
        auto b = periodic_block(random_period(g, l), nmax);
        size_t j = static_cast<size_t>(g.integer(1, static_cast<long>(nmax)));
        b.values[j - 1] += CycloNumber(Rational(1, 3));

        CHECK_THROWS_AS(hwp::master_identity_residual(b, p, nmax), hwp::PeriodicityViolation);
        auto r = hwp::master_identity_residual(b, p, nmax, hwp::Periodicity::AssumeFirstPeriod);
        if (j > l) {
            CHECK(r.witness_index == std::optional<size_t>(j));
        } else if (j + l <= nmax) {
            // the first period defines the right-hand side; the copy at j + l disagrees
            CHECK(r.witness_index == std::optional<size_t>(j + l));
        }
        CHECK(r.max_abs_residual > 0.0);
    }
}

TEST_CASE("periodicity violation carries the witness") {
    auto p = LiftParams::make(1, 1, DirichletCharacter(1), 3);
    auto b = constant_block(1, 100);
    b.values[40] = 2L;
    try {
        hwp::master_identity_residual(b, p, 100);
        FAIL("expected a periodicity violation");
    } catch (const hwp::PeriodicityViolation& e) {
        CHECK(e.index == 41);
    }
    auto scaled = CoefficientBlock::from_values(1, 1, std::vector<CycloNumber>(10, CycloNumber(1L)));
    CHECK_THROWS_AS(hwp::master_identity_residual(scaled, p, 10), hwp::DomainError);
    CHECK_THROWS_AS(hwp::remark_variant_residual(constant_block(1, 10), p, 10), hwp::DomainError);
}

TEST_CASE("remark variant examples") {
    auto p1 = LiftParams::make(1, 1, DirichletCharacter(1), 2);
    auto zero = CoefficientBlock::from_values(1, 1, std::vector<CycloNumber>(100));
    CHECK(hwp::remark_variant_residual(zero, p1, 100).exact_zero());

    auto theta = hwp::theta_series(DirichletCharacter(2), 1, true, 40001);
    auto b = hwp::block(theta, 1, 1);
    REQUIRE(b.length() == 200);
    auto r = hwp::remark_variant_residual(b, p1, 200);
    CHECK(r.exact_zero());
    CHECK(r.notes == std::vector<std::string>{"i = k (flagged)"});

    auto p2 = LiftParams::make(2, 1, DirichletCharacter(1), 1);
    auto c = CoefficientBlock::from_values(1, 1, std::vector<CycloNumber>(300, CycloNumber(3L)));
    auto rc = hwp::remark_variant_residual(c, p2, 300);
    CHECK(rc.exact_zero());
    CHECK(rc.notes.empty());
}

TEST_CASE("remark variant holds for random periodic blocks") {
    oracle::Gen g(71);
    for (int rep = 0; rep < 20; ++rep) {
        hwp::u64 l = static_cast<hwp::u64>(std::vector<int>{1, 2, 3, 4, 5, 6}[g.integer(0, 5)]);
        unsigned i = static_cast<unsigned>(g.integer(1, 3));
        unsigned k = static_cast<unsigned>(g.integer(1, 3));
        auto p = LiftParams::make(k, 1, g.character(5), l);
        auto b = periodic_block(random_period(g, l), 200, 1, i);
        auto r = hwp::remark_variant_residual(b, p, 200);
        CHECK(r.exact_zero());
        bool flagged = std::find(r.notes.begin(), r.notes.end(), "i = k (flagged)") != r.notes.end();
        CHECK(flagged == (i == k));
    }
}
