#pragma once

// Truncated q-expansions with exact coefficients, and the coefficient
// blocks {a(d n^2)} extracted from them.

#include <span>
#include <vector>

#include "hwp/chars.hpp"
#include "hwp/cyclo.hpp"

namespace hwp {

/// sum_{0 <= n < precision} a(n) q^n. Weight, level and nebentypus are
/// descriptive tags; no operation checks modularity.
class QExpansion {
public:
    QExpansion(std::vector<CycloNumber> coeffs, int weight_twice, u64 level, DirichletCharacter character);

    size_t precision() const { return coeffs_.size(); }
    const CycloNumber& coeff(size_t n) const;
    std::span<const CycloNumber> coeffs() const { return coeffs_; }

    /// 2k for weight k, 2k+1 for weight k + 1/2
    int weight_twice() const { return weight_twice_; }
    bool is_half_integral() const { return weight_twice_ % 2 != 0; }
    u64 level() const { return level_; }
    const DirichletCharacter& character() const { return character_; }

    bool cuspidal() const { return cuspidal_; }
    /// Tags the form as a cusp form; requires a(0) = 0.
    void set_cuspidal(bool on);

    /// User assertion that the weight-3/2 form lifts to a cusp form. Nothing
    /// in this library can verify it; it is carried through as metadata.
    bool lifts_to_cusp_form() const { return lifts_to_cusp_form_; }
    void set_lifts_to_cusp_form(bool on) { lifts_to_cusp_form_ = on; }

    /// Coefficient-wise sum on the common precision; weights must agree.
    friend QExpansion operator+(const QExpansion& a, const QExpansion& b);
    friend QExpansion operator*(const CycloNumber& c, const QExpansion& f);
    /// Equal coefficients, weight, level, character and flags.
    friend bool operator==(const QExpansion& a, const QExpansion& b);

private:
    std::vector<CycloNumber> coeffs_;
    int weight_twice_;
    u64 level_;
    DirichletCharacter character_;
    bool cuspidal_ = false;
    bool lifts_to_cusp_form_ = false;
};

/// values[n-1] = a(d n^2) / n^i for 1 <= n <= length.
struct CoefficientBlock {
    u64 d = 1;
    unsigned scale_exponent = 0;
    std::vector<CycloNumber> values;
    size_t source_precision = 0;

    size_t length() const { return values.size(); }
    /// 1-based access
    const CycloNumber& at(size_t n) const { return values.at(n - 1); }

    /// Wraps externally supplied block values (e.g. read from a file).
    static CoefficientBlock from_values(u64 d, unsigned scale_exponent, std::vector<CycloNumber> values);
};

/// sum_{n>=1} psi(n) q^{d n^2} (weight 1/2) or sum_{n>=1} n psi(n) q^{d n^2}
/// (weight 3/2), truncated at the given precision.
QExpansion theta_series(const DirichletCharacter& psi, u64 d, bool weight_three_halves, size_t precision);

/// f(z) -> f(l z)
QExpansion shift_V(const QExpansion& f, u64 l);

/// Hecke operator T(p^2) on a weight k + 1/2 expansion with character psi:
///   b(n) = a(p^2 n) + psi(p) ((-1)^k n / p) p^(k-1) a(n) + psi(p^2) p^(2k-1) a(n / p^2).
QExpansion hecke_Tp2(const QExpansion& f, u64 p, const DirichletCharacter& psi);

/// Extracts {a(d n^2) / n^i} over the maximal range d n^2 < precision.
CoefficientBlock block(const QExpansion& f, u64 d, unsigned i);

}  // namespace hwp
