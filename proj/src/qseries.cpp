#include "hwp/qseries.hpp"

#include <algorithm>
#include <string>

namespace hwp {

namespace {

u64 isqrt(u64 n) {
    u64 r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

Rational power_rational(u64 p, int e) {
    Rational r = 1;
    for (int i = 0; i < std::abs(e); ++i) r *= static_cast<unsigned long>(p);
    if (e < 0) r = Rational(1) / r;
    return r;
}

}  // namespace

QExpansion::QExpansion(std::vector<CycloNumber> coeffs, int weight_twice, u64 level, DirichletCharacter character)
    : coeffs_(std::move(coeffs)), weight_twice_(weight_twice), level_(level), character_(std::move(character)) {
    if (coeffs_.empty()) throw DomainError("QExpansion: precision must be at least 1");
}

const CycloNumber& QExpansion::coeff(size_t n) const {
    if (n >= coeffs_.size())
        throw RangeError("QExpansion: coefficient " + std::to_string(n) + " beyond precision " +
                         std::to_string(coeffs_.size()));
    return coeffs_[n];
}

void QExpansion::set_cuspidal(bool on) {
    if (on && !coeffs_[0].is_zero()) throw DomainError("QExpansion: a cusp form must have a(0) = 0");
    cuspidal_ = on;
}

QExpansion operator+(const QExpansion& a, const QExpansion& b) {
    if (a.weight_twice_ != b.weight_twice_) throw DomainError("QExpansion: cannot add expansions of different weight");
    size_t prec = std::min(a.precision(), b.precision());
    std::vector<CycloNumber> c(prec);
    for (size_t n = 0; n < prec; ++n) c[n] = a.coeffs_[n] + b.coeffs_[n];
    QExpansion out(std::move(c), a.weight_twice_, std::lcm(a.level_, b.level_), a.character_);
    out.cuspidal_ = a.cuspidal_ && b.cuspidal_;
    return out;
}

QExpansion operator*(const CycloNumber& s, const QExpansion& f) {
    QExpansion out = f;
    for (auto& x : out.coeffs_) x = s * x;
    return out;
}

bool operator==(const QExpansion& a, const QExpansion& b) {
    return a.weight_twice_ == b.weight_twice_ && a.level_ == b.level_ && a.character_ == b.character_ &&
           a.cuspidal_ == b.cuspidal_ && a.lifts_to_cusp_form_ == b.lifts_to_cusp_form_ && a.coeffs_ == b.coeffs_;
}

CoefficientBlock CoefficientBlock::from_values(u64 d, unsigned scale_exponent, std::vector<CycloNumber> values) {
    if (!is_squarefree(d)) throw DomainError("CoefficientBlock: d = " + std::to_string(d) + " is not square-free");
    CoefficientBlock b;
    b.d = d;
    b.scale_exponent = scale_exponent;
    b.source_precision = d * values.size() * values.size() + 1;
    b.values = std::move(values);
    return b;
}

QExpansion theta_series(const DirichletCharacter& psi, u64 d, bool weight_three_halves, size_t precision) {
    if (!is_squarefree(d)) throw DomainError("theta_series: d = " + std::to_string(d) + " is not square-free");
    if (precision == 0) throw DomainError("theta_series: precision must be at least 1");
    std::vector<CycloNumber> c(precision);
    for (u64 n = 1; d * n * n < precision; ++n) {
        CycloNumber v = psi.eval(static_cast<i64>(n));
        if (weight_three_halves) v *= Rational(static_cast<unsigned long>(n));
        c[d * n * n] = std::move(v);
    }
    const u64 r = psi.modulus();
    return QExpansion(std::move(c), weight_three_halves ? 3 : 1, 4 * d * r * r,
                      twist_psi_d(psi, weight_three_halves ? 1 : 0, d));
}

QExpansion shift_V(const QExpansion& f, u64 l) {
    if (l == 0) throw DomainError("shift_V: l must be positive");
    size_t prec = l * (f.precision() - 1) + 1;
    std::vector<CycloNumber> c(prec);
    for (size_t n = 0; n < f.precision(); ++n) c[n * l] = f.coeff(n);
    QExpansion out(std::move(c), f.weight_twice(), f.level() * l, f.character());
    out.set_cuspidal(f.cuspidal());
    return out;
}

QExpansion hecke_Tp2(const QExpansion& f, u64 p, const DirichletCharacter& psi) {
    if (!is_prime(p)) throw DomainError("hecke_Tp2: " + std::to_string(p) + " is not prime");
    if (!f.is_half_integral()) throw DomainError("hecke_Tp2: expansion is not of half-integral weight");
    const int k = (f.weight_twice() - 1) / 2;
    const u64 p2 = p * p;
    const size_t prec = (f.precision() - 1) / p2 + 1;

    const CycloNumber psi_p = psi.eval(static_cast<i64>(p));
    const CycloNumber psi_p2 = psi.eval(static_cast<i64>(p2));
    const Rational pk1 = power_rational(p, k - 1);
    const Rational p2k1 = power_rational(p, 2 * k - 1);
    const i64 sign = (k % 2 == 0) ? 1 : -1;

    std::vector<CycloNumber> c(prec);
    for (size_t n = 0; n < prec; ++n) {
        CycloNumber b = f.coeff(p2 * n);
        const auto& an = f.coeff(n);
        if (!an.is_zero()) {
            int leg = kronecker(sign * static_cast<i64>(n), static_cast<i64>(p));
            if (leg != 0) b += psi_p * an * Rational(leg * pk1);
        }
        if (n % p2 == 0 && !psi_p2.is_zero()) b += psi_p2 * f.coeff(n / p2) * p2k1;
        c[n] = std::move(b);
    }
    QExpansion out(std::move(c), f.weight_twice(), f.level(), f.character());
    out.set_lifts_to_cusp_form(f.lifts_to_cusp_form());
    return out;
}

CoefficientBlock block(const QExpansion& f, u64 d, unsigned i) {
    if (!is_squarefree(d)) throw DomainError("block: d = " + std::to_string(d) + " is not square-free");
    CoefficientBlock b;
    b.d = d;
    b.scale_exponent = i;
    b.source_precision = f.precision();
    const u64 len = isqrt((f.precision() - 1) / d);
    b.values.reserve(len);
    for (u64 n = 1; n <= len; ++n) {
        CycloNumber v = f.coeff(d * n * n);
        if (i > 0 && !v.is_zero()) v /= power_rational(n, static_cast<int>(i));
        b.values.push_back(std::move(v));
    }
    return b;
}

}  // namespace hwp
