#pragma once

// Formal Dirichlet series sum_{n>=1} c(n) n^{-s} with exact coefficients,
// truncated at n <= nmax.

#include <optional>
#include <span>
#include <vector>

#include "hwp/chars.hpp"
#include "hwp/cyclo.hpp"

namespace hwp {

class DirichletSeries {
public:
    DirichletSeries() = default;
    /// All-zero series with coefficients c(1..nmax).
    explicit DirichletSeries(size_t nmax) : c_(nmax) {}
    /// coeffs[n-1] = c(n)
    explicit DirichletSeries(std::vector<CycloNumber> coeffs) : c_(std::move(coeffs)) {}

    size_t nmax() const { return c_.size(); }
    /// 1-based
    const CycloNumber& operator[](size_t n) const { return c_[n - 1]; }
    CycloNumber& operator[](size_t n) { return c_[n - 1]; }
    std::span<const CycloNumber> coeffs() const { return c_; }

    DirichletSeries truncated(size_t nmax) const;
    /// Same values, every coefficient represented in Q(zeta_m).
    DirichletSeries promoted(unsigned m) const;
    unsigned common_order() const { return hwp::common_order(c_); }
    std::vector<std::complex<double>> to_complex() const;

    DirichletSeries& operator+=(const DirichletSeries& rhs);
    DirichletSeries& operator-=(const DirichletSeries& rhs);
    friend DirichletSeries operator+(DirichletSeries a, const DirichletSeries& b) { return a += b; }
    friend DirichletSeries operator-(DirichletSeries a, const DirichletSeries& b) { return a -= b; }
    friend DirichletSeries operator*(const CycloNumber& s, const DirichletSeries& a);
    /// Equal nmax and equal coefficients.
    friend bool operator==(const DirichletSeries& a, const DirichletSeries& b);

private:
    std::vector<CycloNumber> c_;
};

/// Smallest n <= min(nmax) with a(n) != b(n).
std::optional<size_t> first_difference(const DirichletSeries& a, const DirichletSeries& b);

DirichletSeries delta_one(size_t nmax);

/// (A * B)(n) = sum_{m | n} A(m) B(n/m) for n <= min(nmax). Parallel over n.
DirichletSeries convolve(const DirichletSeries& a, const DirichletSeries& b);
/// Single-threaded scatter form of convolve, kept as the reference kernel.
DirichletSeries convolve_serial(const DirichletSeries& a, const DirichletSeries& b);

/// Coefficients of l^{-s} A(s): c(l n) = A(n).
DirichletSeries dilate(const DirichletSeries& a, u64 l);
/// Coefficients of A(s - shift): c(n) = n^shift A(n).
DirichletSeries shift_argument(const DirichletSeries& a, unsigned shift);

/// c(n) = chi(n) n^shift, i.e. L(s - shift, chi). Negative shifts throw.
DirichletSeries l_coeffs(const DirichletCharacter& chi, int shift, size_t nmax);

/// Indicator of n = h (mod M): the partial zeta function zeta_{h,M}.
DirichletSeries partial_zeta_coeffs(u64 h, u64 modulus, size_t nmax);

/// beta_chi(h) = conj(chi(h)) / phi(M): coefficients expressing each partial
/// zeta function of a reduced class as a combination of L(s, chi).
class BetaMatrix {
public:
    explicit BetaMatrix(u64 modulus);

    u64 modulus() const { return modulus_; }
    const std::vector<DirichletCharacter>& characters() const { return chars_; }
    /// Reduced residues 1 <= h <= M, ascending.
    const std::vector<u64>& residues() const { return residues_; }
    /// Throws DomainError if gcd(h, M) > 1.
    const CycloNumber& at(size_t chi_index, u64 h) const;

private:
    u64 modulus_;
    std::vector<DirichletCharacter> chars_;
    std::vector<u64> residues_;
    std::vector<long> slot_;  // residue -> column, -1 for non-units
    std::vector<CycloNumber> values_;
};

inline BetaMatrix beta_matrix(u64 modulus) { return BetaMatrix(modulus); }

/// Finite Euler product prod_{p | M, p not dividing f} (1 - chi0(p) p^{-s})
/// as a Dirichlet series, chi0 the primitive character inducing chi.
DirichletSeries reduce_to_primitive(const DirichletCharacter& chi, size_t nmax);

}  // namespace hwp
