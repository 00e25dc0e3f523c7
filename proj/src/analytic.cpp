#include "hwp/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hwp {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// B_{2j} / (2j)! for j = 0..kMaxBernoulli
constexpr int kMaxBernoulli = 40;
const std::vector<double>& bernoulli_over_factorial() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kMaxBernoulli + 1);
        Rational fact = 1;
        for (int j = 0; j <= kMaxBernoulli; ++j) {
            if (j > 0) fact *= (2 * j - 1) * (2 * j);
            Rational q = bernoulli_number(static_cast<unsigned>(2 * j)) / fact;
            t[static_cast<size_t>(j)] = q.get_d();
        }
        return t;
    }();
    return table;
}

// log sin(pi z), continuous in the upper half plane and conjugate-symmetric;
// real z takes the limit from above.
cplx log_sinpi(cplx z) {
    if (z.imag() < 0.0) return std::conj(log_sinpi(std::conj(z)));
    cplx w = std::exp(2.0 * kPi * kI * z);
    return -kI * kPi * z + std::log(1.0 - w) + kI * (kPi / 2) - std::log(2.0);
}

cplx stirling(cplx z) {
    const auto& b = bernoulli_over_factorial();
    cplx acc = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
    cplx zinv = 1.0 / z, z2inv = zinv * zinv, p = zinv;
    double fact = 2.0;  // (2m)!
    for (int m = 1; m <= 10; ++m) {
        if (m > 1) fact *= (2.0 * m - 1) * (2.0 * m);
        // B_{2m} / (2m (2m - 1) z^{2m-1})
        acc += b[static_cast<size_t>(m)] * fact / (2.0 * m * (2.0 * m - 1)) * p;
        p *= z2inv;
    }
    return acc;
}

int em_terms(cplx s) {
    // left of the critical strip the head sum cancels against x^{1-s}, so start early
    const int base = s.real() < 0.0 ? 5 : 12;
    return base + static_cast<int>(std::ceil(std::abs(s) / 3.0));
}

// Euler-Maclaurin with summation start N. With finite_at_one the pole term
// x^{1-s}/(s-1) is replaced by -log x at s = 1 (its constant part there).
cplx hurwitz_em(cplx s, double a, int N, bool finite_at_one) {
    cplx sum = 0.0;
    for (int n = 0; n < N; ++n) sum += std::exp(-s * std::log(n + a));
    const double x = N + a;
    const double lx = std::log(x);
    const cplx xs = std::exp(-s * lx);
    if (finite_at_one && s == cplx(1.0, 0.0))
        sum += -lx;
    else
        sum += x * xs / (s - 1.0);
    sum += 0.5 * xs;

    const auto& b = bernoulli_over_factorial();
    cplx poch = s;        // (s)_{2j-1}
    cplx xp = xs / x;     // x^{-s-2j+1}
    double prev = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= kMaxBernoulli; ++j) {
        cplx term = b[static_cast<size_t>(j)] * poch * xp;
        double mag = std::abs(term);
        if (mag > prev) break;
        sum += term;
        if (mag <= 1e-17 * std::abs(sum)) break;
        prev = mag;
        poch *= (s + (2.0 * j - 1)) * (s + 2.0 * j);
        xp /= x * x;
    }
    return sum;
}

// zeta(1 - w, a) = Gamma(w) (2 pi)^{-w} (e^{-i pi w/2} F(w, a) + e^{i pi w/2} F(w, -a)),
// F(w, a) = sum_{n >= 1} e^{2 pi i n a} n^{-w}; used for Re w >= 4.
cplx hurwitz_reflected(cplx s, double a) {
    const cplx w = 1.0 - s;
    const double cutoff = std::pow(10.0, 17.0 / w.real());
    const long nmax = static_cast<long>(std::min(1e5, std::ceil(cutoff))) + 1;
    cplx fp = 0.0, fm = 0.0;
    for (long n = 1; n <= nmax; ++n) {
        cplx t = std::exp(-w * std::log(static_cast<double>(n)));
        double ang = 2.0 * kPi * std::fmod(n * a, 1.0);
        cplx e(std::cos(ang), std::sin(ang));
        fp += e * t;
        fm += std::conj(e) * t;
    }
    cplx pre = std::exp(log_gamma(w) - w * std::log(2.0 * kPi));
    return pre * (std::exp(-kI * kPi * w / 2.0) * fp + std::exp(kI * kPi * w / 2.0) * fm);
}

}  // namespace

cplx sinpi(cplx z) {
    double n = std::round(z.real());
    cplx r(z.real() - n, z.imag());
    cplx v = std::sin(kPi * r);
    return std::fmod(n, 2.0) != 0.0 ? -v : v;
}

cplx log_gamma(cplx s) {
    if (is_nonpositive_integer(s)) throw PoleError(s, "log_gamma: pole at " + std::to_string(s.real()));
    if (s.real() < 0.5) return std::log(kPi) - log_sinpi(s) - log_gamma(1.0 - s);
    cplx z = s, shift = 0.0;
    while (std::abs(z) < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return stirling(z) - shift;
}

cplx gamma(cplx s) {
    if (is_nonpositive_integer(s)) throw PoleError(s, "gamma: pole at " + std::to_string(s.real()));
    if (s.real() >= 0.5) return std::exp(log_gamma(s));
    return kPi / (sinpi(s) * gamma(1.0 - s));
}

cplx rgamma(cplx s) {
    if (is_nonpositive_integer(s)) return 0.0;
    if (s.real() >= 0.5) return std::exp(-log_gamma(s));
    return sinpi(s) * gamma(1.0 - s) / kPi;
}

cplx hurwitz_zeta(cplx s, double a) {
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta: a must lie in (0, 1]");
    if (s == cplx(1.0, 0.0)) throw PoleError(s, "hurwitz_zeta: pole at s = 1");
    if (s.real() <= -3.0) return hurwitz_reflected(s, a);
    return hurwitz_em(s, a, em_terms(s), false);
}

cplx l_value(const DirichletCharacter& chi, cplx s) {
    const u64 M = chi.modulus();
    const bool at_one = s == cplx(1.0, 0.0);
    if (at_one && chi.is_principal()) throw PoleError(s, "l_value: pole of the principal L-function at s = 1");
    cplx sum = 0.0;
    for (u64 h = 1; h <= M; ++h) {
        if (!chi.exponent_at(static_cast<i64>(h))) continue;
        double a = static_cast<double>(h) / static_cast<double>(M);
        cplx z = at_one ? hurwitz_em(s, a, em_terms(s), true) : hurwitz_zeta(s, a);
        sum += chi.eval_complex(static_cast<i64>(h)) * z;
    }
    return std::exp(-s * std::log(static_cast<double>(M))) * sum;
}

cplx gauss_sum(const DirichletCharacter& chi) {
    const u64 M = chi.modulus();
    cplx sum = 0.0;
    for (u64 a = 1; a <= M; ++a) {
        if (!chi.exponent_at(static_cast<i64>(a))) continue;
        double ang = 2.0 * kPi * static_cast<double>(a) / static_cast<double>(M);
        sum += chi.eval_complex(static_cast<i64>(a)) * cplx(std::cos(ang), std::sin(ang));
    }
    return sum;
}

CompletedL CompletedL::make(const DirichletCharacter& chi) {
    if (!chi.is_primitive())
        throw DomainError("CompletedL: chi mod " + std::to_string(chi.modulus()) + " is imprimitive (conductor " +
                          std::to_string(chi.conductor()) + ")");
    CompletedL L;
    L.chi = chi;
    L.delta = chi.is_even() ? 0 : 1;
    L.conductor = chi.modulus();
    cplx idelta = L.delta ? kI : cplx(1.0, 0.0);
    L.epsilon = gauss_sum(chi) / (idelta * std::sqrt(static_cast<double>(L.conductor)));
    return L;
}

cplx CompletedL::operator()(cplx s) const {
    cplx w = (s + static_cast<double>(delta)) / 2.0;
    cplx pre = std::exp(w * std::log(static_cast<double>(conductor) / kPi));
    return pre * gamma(w) * l_value(chi, s);
}

cplx completed_lambda(const DirichletCharacter& chi, cplx s) { return CompletedL::make(chi)(s); }

double functional_eq_residual(const DirichletCharacter& chi, cplx s) {
    CompletedL L = CompletedL::make(chi);
    CompletedL Lbar = CompletedL::make(chi.conj());
    return std::abs(L(s) - L.epsilon * Lbar(1.0 - s));
}

namespace {

// (q/pi)^{(s+delta)/2} Gamma((s+delta)/2)
cplx gamma_factor(const DirichletCharacter& chi, cplx s) {
    double delta = chi.is_even() ? 0.0 : 1.0;
    cplx w = (s + delta) / 2.0;
    return std::exp(w * std::log(static_cast<double>(chi.modulus()) / kPi)) * gamma(w);
}

void check_eisenstein_pair(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k) {
    if (!chi.is_primitive() || !psi.is_primitive())
        throw DomainError("eisenstein functional equation: chi and psi must be primitive");
    if (k == 0) throw DomainError("eisenstein functional equation: k must be at least 1");
    bool product_even = chi.is_even() == psi.is_even();
    if (product_even != (k % 2 == 0))
        throw DomainError("eisenstein functional equation: (chi psi)(-1) != (-1)^k");
}

double eisenstein_level(const DirichletCharacter& chi, const DirichletCharacter& psi) {
    return static_cast<double>(chi.modulus()) * static_cast<double>(psi.modulus());
}

// Lambda_f(s) / (Lambda(s, chi) Lambda(s - k + 1, psi))^{-1}, i.e.
// G_chi(s) G_psi(s - k + 1) / ((sqrt(Q) / 2 pi)^s Gamma(s)).
cplx completion_ratio(const DirichletCharacter& a, const DirichletCharacter& b, unsigned k, double Q, cplx s) {
    cplx p = std::exp(s * std::log(std::sqrt(Q) / (2.0 * kPi))) * gamma(s);
    return gamma_factor(a, s) * gamma_factor(b, s - static_cast<double>(k) + 1.0) / p;
}

}  // namespace

cplx eisenstein_lambda(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k, cplx s) {
    const double Q = eisenstein_level(chi, psi);
    return std::exp(s * std::log(std::sqrt(Q) / (2.0 * kPi))) * gamma(s) * l_value(chi, s) *
           l_value(psi, s - static_cast<double>(k) + 1.0);
}

cplx eisenstein_fe_constant(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k) {
    check_eisenstein_pair(chi, psi, k);
    const double Q = eisenstein_level(chi, psi);
    const cplx s0(0.5 * k + 0.37, 0.61);
    cplx eps = CompletedL::make(chi).epsilon * CompletedL::make(psi).epsilon;
    cplx af = completion_ratio(chi, psi, k, Q, s0);
    cplx ag = completion_ratio(psi.conj(), chi.conj(), k, Q, static_cast<double>(k) - s0);
    return eps * ag / af;
}

double eisenstein_fe_residual(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k, cplx s) {
    cplx C = eisenstein_fe_constant(chi, psi, k);
    cplx lf = eisenstein_lambda(chi, psi, k, s);
    cplx lg = eisenstein_lambda(psi.conj(), chi.conj(), k, static_cast<double>(k) - s);
    return std::abs(lf - C * lg);
}

double cusp_form_fricke_residual(std::span<const cplx> coeffs, unsigned k, u64 level, int eta, double y) {
    if (y <= 0.0) throw DomainError("cusp_form_fricke_residual: y must be positive");
    const double rq = std::sqrt(static_cast<double>(level));
    auto F = [&](double t) {  // F(i t)
        cplx acc = 0.0;
        for (size_t n = 1; n <= coeffs.size(); ++n) acc += coeffs[n - 1] * std::exp(-2.0 * kPi * n * t);
        return acc;
    };
    cplx lhs = F(1.0 / (y * rq));
    cplx ik = std::pow(kI, static_cast<int>(k));
    cplx rhs = static_cast<double>(eta) * ik * std::pow(y, static_cast<double>(k)) * F(y / rq);
    double scale = std::max({std::abs(lhs), std::abs(rhs), std::numeric_limits<double>::min()});
    return std::abs(lhs - rhs) / scale;
}

std::vector<GammaRatioValue> gamma_ratio_zero_check(unsigned k, unsigned delta, std::span<const cplx> points) {
    if (delta > 1) throw DomainError("gamma_ratio_zero_check: delta must be 0 or 1");
    std::vector<GammaRatioValue> out;
    out.reserve(points.size());
    for (cplx s : points) {
        GammaRatioValue v;
        v.s = s;
        cplx u = s / 2.0;
        cplx w = (s - static_cast<double>(k) + 1.0 + static_cast<double>(delta)) / 2.0;
        bool num_pole = is_nonpositive_integer(u), den_pole = is_nonpositive_integer(w);
        if (num_pole && den_pole) {
            v.indeterminate = true;
            v.value = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
        } else if (num_pole) {
            v.pole = true;
            v.value = cplx(std::numeric_limits<double>::infinity(), 0.0);
        } else if (den_pole) {
            v.value = 0.0;
        } else {
            v.value = gamma(u) * rgamma(w);
        }
        out.push_back(v);
    }
    return out;
}

ZeroFreeCertificate zero_free_certificate(std::span<const cplx> coeffs, double C, double lambda, size_t n1) {
    const size_t nmax = coeffs.size();
    if (C < 0.0) throw DomainError("zero_free_certificate: C must be nonnegative");
    if (n1 < 1 || n1 > nmax) throw DomainError("zero_free_certificate: need 1 <= n1 <= number of coefficients");
    std::vector<double> mag(nmax + 1, 0.0);
    size_t n0 = 0;
    for (size_t n = 1; n <= nmax; ++n) {
        mag[n] = std::abs(coeffs[n - 1]);
        if (n0 == 0 && mag[n] > 0.0) n0 = n;
    }
    if (n0 == 0) throw DomainError("zero_free_certificate: series is identically zero on range");
    for (size_t n = n1; n <= nmax; ++n) {
        double bound = C * std::pow(static_cast<double>(n), lambda);
        if (mag[n] > bound * (1.0 + 1e-12))
            throw DomainError("zero_free_certificate: |B(" + std::to_string(n) + ")| = " + std::to_string(mag[n]) +
                              " exceeds C n^lambda = " + std::to_string(bound));
    }

    const size_t T = std::max(n1, n0);
    const double lead = mag[n0], dn0 = static_cast<double>(n0), dT = static_cast<double>(T);
    auto finite = [&](double sigma) {
        double acc = 0.0;
        for (size_t n = n0 + 1; n <= T; ++n)
            if (mag[n] > 0.0) acc += mag[n] * std::pow(dn0 / static_cast<double>(n), sigma);
        return acc;
    };
    auto tail = [&](double sigma) {
        if (C == 0.0) return 0.0;
        if (sigma <= lambda + 1.0) return std::numeric_limits<double>::infinity();
        return C * std::pow(dn0, sigma) * std::pow(dT, lambda - sigma + 1.0) / (sigma - lambda - 1.0);
    };
    auto bound = [&](double sigma) { return finite(sigma) + tail(sigma); };

    double lo = C > 0.0 ? lambda + 1.0 : -64.0;
    double hi;
    if (bound(lo) < lead) {
        hi = lo;
    } else {
        double step = 1.0;
        hi = lo + step;
        while (!(bound(hi) < lead)) {
            lo = hi;
            step *= 2.0;
            hi += step;
            if (step > 1e6) throw DomainError("zero_free_certificate: no certified half-plane found");
        }
        for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
            double mid = 0.5 * (lo + hi);
            (bound(mid) < lead ? hi : lo) = mid;
        }
    }

    ZeroFreeCertificate cert;
    cert.sigma0 = hi;
    cert.n0 = n0;
    cert.lead_abs = lead;
    cert.finite_part = finite(hi);
    cert.tail_bound_at_sigma0 = bound(hi);
    cert.lambda = lambda;
    cert.C = C;
    cert.n1 = n1;
    return cert;
}

ZeroFreeCertificate zero_free_certificate(const DirichletSeries& coeffs, double C, double lambda, size_t n1) {
    auto c = coeffs.to_complex();
    return zero_free_certificate(std::span<const cplx>(c), C, lambda, n1);
}

namespace {

struct ScanSetup {
    std::vector<double> mag, logn;
    std::span<const cplx> coeffs;
    size_t n0 = 0;
    double lead = 0.0;
    GrowthBound growth;
    double step = 0.0, radius = 0.0, sigma_min = 0.0, t_max = 0.0;
    size_t cols = 0, rows = 0;

    ScanSetup(std::span<const cplx> c, double smin, double smax, double tmax, double h, GrowthBound g)
        : coeffs(c), growth(g), step(h), radius(h / std::sqrt(2.0)), sigma_min(smin), t_max(tmax) {
        if (!(h > 0.0)) throw DomainError("zero_scan: grid_step must be positive");
        if (smax < smin || tmax < 0.0) throw DomainError("zero_scan: empty region");
        const size_t n = c.size();
        mag.assign(n + 1, 0.0);
        logn.assign(n + 1, 0.0);
        for (size_t i = 1; i <= n; ++i) {
            mag[i] = std::abs(c[i - 1]);
            logn[i] = std::log(static_cast<double>(i));
            if (n0 == 0 && mag[i] > 0.0) n0 = i;
        }
        lead = n0 ? mag[n0] : 0.0;
        cols = std::max<size_t>(1, static_cast<size_t>(std::ceil((smax - smin) / h - 1e-9)));
        rows = std::max<size_t>(1, static_cast<size_t>(std::ceil(2.0 * tmax / h - 1e-9)));
    }

    cplx centre(size_t i, size_t j) const {
        return {sigma_min + (static_cast<double>(i) + 0.5) * step, -t_max + (static_cast<double>(j) + 0.5) * step};
    }

    // bound on |sum_{n > nmax} B(n) n^{-s}| for Re s >= sigma
    double tail(double sigma) const {
        if (growth.C == 0.0) return 0.0;
        if (sigma <= growth.lambda + 1.0) return std::numeric_limits<double>::infinity();
        double X = static_cast<double>(coeffs.size());
        return growth.C * std::pow(X, growth.lambda - sigma + 1.0) / (sigma - growth.lambda - 1.0);
    }

    // the n0 term dominates on Re s >= sigma
    bool dominant(double sigma) const {
        if (n0 == 0) return false;
        const double dn0 = static_cast<double>(n0);
        double acc = tail(sigma) * std::pow(dn0, sigma);
        for (size_t n = n0 + 1; n < mag.size() && acc < lead; ++n)
            if (mag[n] > 0.0) acc += mag[n] * std::exp(sigma * (logn[n0] - logn[n]));
        return acc < lead;
    }

    // nullopt when the cell is cleared
    std::optional<ScanHit> cell(size_t i, size_t j) const {
        const cplx s = centre(i, j);
        const double left = s.real() - radius;
        cplx sum = 0.0;
        double deriv = 0.0;
        for (size_t n = 1; n < mag.size(); ++n) {
            if (mag[n] == 0.0) continue;
            sum += coeffs[n - 1] * std::exp(-s * logn[n]);
            deriv += mag[n] * logn[n] * std::exp(-left * logn[n]);
        }
        double bound = tail(left) + deriv * radius;
        double v = std::abs(sum);
        if (v > bound) return std::nullopt;
        return ScanHit{s, v, bound};
    }
};

}  // namespace

std::vector<ScanHit> zero_scan(std::span<const cplx> coeffs, double sigma_min, double sigma_max, double t_max,
                               double grid_step, GrowthBound growth) {
    ScanSetup S(coeffs, sigma_min, sigma_max, t_max, grid_step, growth);
    std::vector<char> cleared_col(S.cols);
    for (size_t i = 0; i < S.cols; ++i) cleared_col[i] = S.dominant(S.centre(i, 0).real() - 0.5 * grid_step);

    const long total = static_cast<long>(S.cols * S.rows);
    std::vector<std::optional<ScanHit>> result(static_cast<size_t>(total));
#pragma omp parallel for schedule(dynamic, 16)
    for (long c = 0; c < total; ++c) {
        size_t i = static_cast<size_t>(c) / S.rows, j = static_cast<size_t>(c) % S.rows;
        if (!cleared_col[i]) result[static_cast<size_t>(c)] = S.cell(i, j);
    }
    std::vector<ScanHit> hits;
    for (auto& r : result)
        if (r) hits.push_back(*r);
    return hits;
}

std::vector<ScanHit> zero_scan_serial(std::span<const cplx> coeffs, double sigma_min, double sigma_max, double t_max,
                                      double grid_step, GrowthBound growth) {
    ScanSetup S(coeffs, sigma_min, sigma_max, t_max, grid_step, growth);
    std::vector<ScanHit> hits;
    for (size_t i = 0; i < S.cols; ++i) {
        if (S.dominant(S.centre(i, 0).real() - 0.5 * grid_step)) continue;
        for (size_t j = 0; j < S.rows; ++j)
            if (auto h = S.cell(i, j)) hits.push_back(*h);
    }
    return hits;
}

}  // namespace hwp
