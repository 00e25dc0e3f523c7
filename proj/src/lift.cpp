#include "hwp/lift.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hwp {

namespace {

Integer upow(u64 b, unsigned e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

bool parity_matches(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k) {
    bool product_even = chi.is_even() == psi.is_even();
    return product_even == (k % 2 == 0);
}

bool is_delta(const DirichletSeries& e) {
    for (size_t n = 2; n <= e.nmax(); ++n)
        if (!e[n].is_zero()) return false;
    return e.nmax() == 0 || e[1] == CycloNumber(1L);
}

// alpha^{(g)}_chi = sum_{h in (Z/q)^x} b(g h) beta_chi(h), with q the modulus
// of beta; only b(1..g q) is read.
std::vector<CycloNumber> stratum_alpha(const CoefficientBlock& block, u64 g, const BetaMatrix& beta) {
    std::vector<CycloNumber> alpha(beta.characters().size());
    for (u64 h : beta.residues()) {
        const CycloNumber& b = block.at(g * h);
        if (b.is_zero()) continue;
        for (size_t c = 0; c < alpha.size(); ++c) alpha[c] += b * beta.at(c, h);
    }
    return alpha;
}

CoefficientBlock unscaled(const CoefficientBlock& block) {
    if (block.scale_exponent == 0) return block;
    CoefficientBlock out = block;
    out.scale_exponent = 0;
    for (size_t n = 1; n <= out.length(); ++n)
        if (!out.values[n - 1].is_zero()) out.values[n - 1] *= Rational(upow(n, block.scale_exponent));
    return out;
}

DirichletSeries collected_rhs(const CoefficientBlock& block, const LiftParams& p, unsigned shift, size_t nmax) {
    const u64 l = p.period;
    BetaMatrix beta(l);
    auto alpha = stratum_alpha(block, 1, beta);
    const DirichletCharacter one(1);

    DirichletSeries f1 = eisenstein_product(one, p.psi_d, p.k, shift, nmax);
    CycloNumber lead = (block.at(l) - alpha[0]) * Rational(upow(l, shift));
    DirichletSeries rhs = alpha[0] * f1;
    if (!lead.is_zero()) rhs += lead * dilate(f1, l);
    const auto& chars = beta.characters();
    for (size_t c = 1; c < chars.size(); ++c) {
        if (alpha[c].is_zero()) continue;
        rhs += alpha[c] * eisenstein_product(chars[c], p.psi_d, p.k, shift, nmax);
    }
    return rhs;
}

DirichletSeries stratified_rhs(const CoefficientBlock& block, const LiftParams& p, unsigned shift, size_t nmax) {
    const u64 l = p.period;
    DirichletSeries rhs(nmax);
    for (u64 g : divisors(l)) {
        if (g > nmax) break;
        BetaMatrix beta(l / g);
        auto alpha = stratum_alpha(block, g, beta);
        DirichletSeries part(nmax);
        const auto& chars = beta.characters();
        for (size_t c = 0; c < chars.size(); ++c) {
            if (alpha[c].is_zero()) continue;
            part += alpha[c] * eisenstein_product(chars[c], p.psi_d, p.k, shift, nmax);
        }
        if (g == 1)
            rhs += part;
        else
            rhs += CycloNumber(upow(g, shift)) * dilate(part, g);
    }
    return rhs;
}

ResidualReport residual(const CoefficientBlock& block, const LiftParams& p, unsigned shift, size_t nmax,
                        Periodicity mode, IdentityRoute route) {
    const u64 l = p.period;
    if (l == 0) throw DomainError("identity residual: period must be at least 1");
    if (block.length() < l)
        throw RangeError("identity residual: block of length " + std::to_string(block.length()) +
                         " is shorter than the period " + std::to_string(l));
    if (mode == Periodicity::Enforce) {
        if (auto w = periodicity_witness(block, l))
            throw PeriodicityViolation(*w, "identity residual: block is not periodic mod " + std::to_string(l) +
                                               " (first violation at n = " + std::to_string(*w) + ")");
    }
    if (route == IdentityRoute::Auto) route = (l == 1 || is_prime(l)) ? IdentityRoute::Collected : IdentityRoute::Stratified;
    if (route == IdentityRoute::Collected && !(l == 1 || is_prime(l)))
        throw DomainError("identity residual: the collected form needs l = 1 or l prime");

    ResidualReport report;
    if (!p.psi.is_even()) report.notes.push_back("psi is odd");
    if (shift != 0 && shift == p.k) report.notes.push_back("i = k (flagged)");

    DirichletSeries lhs = shimura_A(unscaled(block), p, nmax);
    DirichletSeries rhs = route == IdentityRoute::Collected ? collected_rhs(block, p, shift, nmax)
                                                            : stratified_rhs(block, p, shift, nmax);
    for (size_t n = 1; n <= nmax; ++n) {
        if (lhs[n] == rhs[n]) continue;
        if (!report.witness_index) report.witness_index = n;
        report.max_abs_residual = std::max(report.max_abs_residual, std::abs((lhs[n] - rhs[n]).to_complex()));
    }
    return report;
}

}  // namespace

LiftParams LiftParams::make(unsigned k, u64 d, const DirichletCharacter& psi, u64 period) {
    if (k == 0) throw DomainError("LiftParams: k must be at least 1");
    if (period == 0) throw DomainError("LiftParams: period must be at least 1");
    LiftParams p;
    p.k = k;
    p.d = d;
    p.psi = psi;
    p.psi_d = twist_psi_d(psi, k, d);
    p.period = period;
    return p;
}

std::optional<size_t> periodicity_witness(const CoefficientBlock& block, u64 l) {
    for (size_t n = l + 1; n <= block.length(); ++n)
        if (!(block.values[n - 1] == block.values[(n - 1) % l])) return n;
    return std::nullopt;
}

DirichletSeries shimura_A(const CoefficientBlock& block, const LiftParams& params, size_t nmax) {
    if (block.scale_exponent != 0) throw DomainError("shimura_A: block must be unscaled (i = 0)");
    if (block.length() < nmax)
        throw RangeError("shimura_A: block supplies a(dm^2) only for m <= " + std::to_string(block.length()) +
                         "; largest valid nmax is " + std::to_string(block.length()));
    const auto ord = static_cast<unsigned>(params.psi_d.order());
    DirichletSeries A(nmax);
    for (size_t m = 1; m <= nmax; ++m) {
        auto e = params.psi_d.exponent_at(static_cast<i64>(m));
        if (!e) continue;
        CycloNumber w = CycloNumber::scaled_root(ord, static_cast<long>(*e), Rational(upow(m, params.k - 1)));
        for (size_t j = 1; m * j <= nmax; ++j) {
            const CycloNumber& a = block.values[j - 1];
            if (!a.is_zero()) A[m * j] += w * a;
        }
    }
    return A;
}

AlphaCoefficients alpha_coeffs(const CoefficientBlock& block, u64 l) {
    if (l == 0) throw DomainError("alpha_coeffs: l must be at least 1");
    if (block.length() < l)
        throw RangeError("alpha_coeffs: block of length " + std::to_string(block.length()) + " is shorter than l = " +
                         std::to_string(l));
    if (auto w = periodicity_witness(block, l))
        throw PeriodicityViolation(*w, "alpha_coeffs: block is not periodic mod " + std::to_string(l) +
                                           " (first violation at n = " + std::to_string(*w) + ")");
    BetaMatrix beta(l);
    AlphaCoefficients out;
    out.l = l;
    out.characters = beta.characters();
    out.alpha = stratum_alpha(block, 1, beta);
    return out;
}

EisensteinForm hecke_eisenstein(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k,
                                size_t nmax) {
    if (k == 0) throw DomainError("hecke_eisenstein: k must be at least 1");
    if (!psi.is_primitive())
        throw DomainError("hecke_eisenstein: psi mod " + std::to_string(psi.modulus()) +
                          " is imprimitive; reduce with reduce_to_primitive and pass its primitive part");
    if (!chi.is_primitive())
        throw DomainError("hecke_eisenstein: chi mod " + std::to_string(chi.modulus()) + " is imprimitive");
    if (!parity_matches(chi, psi, k))
        throw DomainError("hecke_eisenstein: (chi psi)(-1) != (-1)^k for k = " + std::to_string(k));

    const u64 oc = chi.order(), op = psi.order();
    const u64 L = std::lcm(oc, op);
    std::vector<long> ec(nmax + 1, -1), ep(nmax + 1, -1);
    std::vector<Integer> pw(nmax + 1);
    for (size_t n = 1; n <= nmax; ++n) {
        if (auto e = chi.exponent_at(static_cast<i64>(n))) ec[n] = static_cast<long>(*e * (L / oc));
        if (auto e = psi.exponent_at(static_cast<i64>(n))) ep[n] = static_cast<long>(*e * (L / op));
        pw[n] = upow(n, k - 1);
    }

    std::vector<CycloNumber> c(nmax);
#pragma omp parallel
    {
        std::vector<Integer> bins(L);
#pragma omp for schedule(dynamic, 64)
        for (long n = 1; n <= static_cast<long>(nmax); ++n) {
            for (auto& b : bins) b = 0;
            auto add = [&](long m) {  // term chi(n/m) psi(m) m^{k-1}
                long a = ec[n / m], b = ep[m];
                if (a < 0 || b < 0) return;
                bins[static_cast<size_t>((a + b) % static_cast<long>(L))] += pw[m];
            };
            for (long m = 1; m * m <= n; ++m) {
                if (n % m) continue;
                add(m);
                if (m * m != n) add(n / m);
            }
            CycloNumber acc = CycloNumber().promoted(static_cast<unsigned>(L));
            for (size_t j = 0; j < L; ++j)
                if (bins[j] != 0) acc.add_scaled_root(bins[j], static_cast<long>(j));
            c[n - 1] = std::move(acc);
        }
    }

    EisensteinForm f;
    f.k = k;
    f.chi = chi;
    f.psi = psi;
    f.coeffs = DirichletSeries(std::move(c));
    f.constant_term = chi.is_principal() ? -(generalized_bernoulli(psi, k) / Rational(2 * static_cast<long>(k)))
                                         : CycloNumber();
    f.level = chi.modulus() * psi.modulus();
    f.nebentypus = chi * psi;
    return f;
}

DirichletSeries eisenstein_product(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k,
                                   unsigned shift, size_t nmax) {
    if (shift != 0 || k == 0 || !parity_matches(chi, psi, k))
        return convolve(l_coeffs(chi, static_cast<int>(shift), nmax), l_coeffs(psi, static_cast<int>(k) - 1, nmax));

    DirichletSeries f =
        hecke_eisenstein(chi.restrict_to_conductor(), psi.restrict_to_conductor(), k, nmax).coeffs;
    DirichletSeries e_chi = reduce_to_primitive(chi, nmax);
    if (!is_delta(e_chi)) f = convolve(e_chi, f);
    DirichletSeries e_psi = reduce_to_primitive(psi, nmax);
    if (!is_delta(e_psi)) f = convolve(shift_argument(e_psi, k - 1), f);
    return f;
}

ResidualReport master_identity_residual(const CoefficientBlock& block, const LiftParams& params, size_t nmax,
                                        Periodicity mode, IdentityRoute route) {
    if (block.scale_exponent != 0)
        throw DomainError("master_identity_residual: block must be unscaled; use remark_variant_residual");
    return residual(block, params, 0, nmax, mode, route);
}

ResidualReport remark_variant_residual(const CoefficientBlock& block, const LiftParams& params, size_t nmax,
                                       Periodicity mode, IdentityRoute route) {
    if (block.scale_exponent == 0)
        throw DomainError("remark_variant_residual: block needs scale exponent i >= 1");
    return residual(block, params, block.scale_exponent, nmax, mode, route);
}

}  // namespace hwp
