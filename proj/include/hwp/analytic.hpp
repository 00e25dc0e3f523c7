#pragma once

// Double-precision analytic layer.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "hwp/chars.hpp"
#include "hwp/dseries.hpp"

namespace hwp {

using cplx = std::complex<double>;

/// Evaluation at a pole; `at` is the offending point.
struct PoleError : DomainError {
    PoleError(cplx at, const std::string& what) : DomainError(what), at(at) {}
    cplx at;
};

/// sin(pi z), exact zero at real integers.
cplx sinpi(cplx z);

/// log Gamma continued from the positive reals, cut along the negative real
/// axis (on the cut the value is the limit from above).
cplx log_gamma(cplx s);
cplx gamma(cplx s);
/// 1 / Gamma(s); entire, exactly zero at nonpositive integers.
cplx rgamma(cplx s);

/// zeta(s, a) = sum_{n >= 0} (n + a)^{-s}, 0 < a <= 1, s != 1.
cplx hurwitz_zeta(cplx s, double a);

/// L(s, chi) = M^{-s} sum_{h=1}^{M} chi(h) zeta(s, h/M). Throws PoleError at
/// s = 1 for principal chi.
cplx l_value(const DirichletCharacter& chi, cplx s);

/// Gauss sum sum_{a=1}^{M} chi(a) e^{2 pi i a / M}.
cplx gauss_sum(const DirichletCharacter& chi);

/// Lambda(s, chi) = (q/pi)^{(s+delta)/2} Gamma((s+delta)/2) L(s, chi) for
/// primitive chi of conductor q, with root number
/// epsilon = tau(chi) / (i^delta sqrt(q)).
struct CompletedL {
    DirichletCharacter chi;
    unsigned delta = 0;
    u64 conductor = 1;
    cplx epsilon{1.0, 0.0};

    /// Throws DomainError for imprimitive chi.
    static CompletedL make(const DirichletCharacter& chi);
    cplx operator()(cplx s) const;
};

cplx completed_lambda(const DirichletCharacter& chi, cplx s);
/// |Lambda(s, chi) - epsilon Lambda(1 - s, conj chi)|
double functional_eq_residual(const DirichletCharacter& chi, cplx s);

/// For the Eisenstein product L_f(s) = L(s, chi) L(s - k + 1, psi) with chi,
/// psi primitive and (chi psi)(-1) = (-1)^k, and its partner
/// L_g(w) = L(w, conj psi) L(w - k + 1, conj chi):
///   Lambda_f(s) = (2 pi / sqrt(Q))^{-s} Gamma(s) L_f(s),  Q = cond(chi) cond(psi),
/// and Lambda_f(s) = C Lambda_g(k - s) for a constant C of modulus
/// (cond psi / cond chi)^{(k-1)/2}.
cplx eisenstein_fe_constant(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k);
cplx eisenstein_lambda(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k, cplx s);
/// |Lambda_f(s) - C Lambda_g(k - s)|
double eisenstein_fe_residual(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k, cplx s);

/// Checks F(-1/(Q z)) = eta (sqrt(Q) z)^k F(z) at z = i y / sqrt(Q) for a cusp
/// form given by coeffs[n-1] = a(n). Returns the absolute difference divided
/// by max(1, |F(z)|).
double cusp_form_fricke_residual(std::span<const cplx> coeffs, unsigned k, u64 level, int eta, double y);

struct GammaRatioValue {
    cplx s;
    cplx value;
    bool pole = false;           // numerator singular, denominator regular
    bool indeterminate = false;  // both factors singular
};

/// Gamma(s/2) / Gamma((s - k + 1 + delta)/2) at each point. The value is
/// exactly 0 where only the denominator is singular.
std::vector<GammaRatioValue> gamma_ratio_zero_check(unsigned k, unsigned delta, std::span<const cplx> points);

struct ZeroFreeCertificate {
    double sigma0 = 0.0;
    size_t n0 = 1;
    double lead_abs = 0.0;
    /// finite_part + tail, the full bound on sum_{n > n0} |B(n) (n0/n)^s| at sigma0
    double tail_bound_at_sigma0 = 0.0;
    double finite_part = 0.0;
    double lambda = 0.0;
    double C = 0.0;
    size_t n1 = 1;
};

/// coeffs[n-1] = B(n). Checks |B(n)| <= C n^lambda for n1 <= n <= size and
/// returns the smallest sigma0 (to bisection accuracy, rounded up) with
///   sum_{n0 < n <= T} |B(n)| (n0/n)^sigma0 + C n0^sigma0 T^{lambda - sigma0 + 1} / (sigma0 - lambda - 1)
/// below |B(n0)|, where T = max(n1, n0). C = 0 declares a finite polynomial.
ZeroFreeCertificate zero_free_certificate(std::span<const cplx> coeffs, double C, double lambda, size_t n1);
ZeroFreeCertificate zero_free_certificate(const DirichletSeries& coeffs, double C, double lambda, size_t n1);

struct GrowthBound {
    double C = 0.0;  // |B(n)| <= C n^lambda beyond the stored coefficients
    double lambda = 0.0;
};

struct ScanHit {
    cplx s;             // cell centre
    double abs_value;   // |truncated sum| at the centre
    double bound;       // tail + derivative allowance over the cell
};

/// Square cells of side grid_step covering [sigma_min, sigma_max] x [-t_max, t_max].
/// A cell is cleared when the truncated sum at its centre exceeds the tail
/// bound plus a derivative bound times the cell radius, or when the leading
/// term dominates everything else at the cell's left edge. Uncleared cells
/// are returned in (sigma, t) order.
std::vector<ScanHit> zero_scan(std::span<const cplx> coeffs, double sigma_min, double sigma_max, double t_max,
                               double grid_step, GrowthBound growth = {});
std::vector<ScanHit> zero_scan_serial(std::span<const cplx> coeffs, double sigma_min, double sigma_max, double t_max,
                                      double grid_step, GrowthBound growth = {});

}  // namespace hwp
