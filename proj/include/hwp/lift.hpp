#pragma once

// Coefficient-level Shimura lift of a periodic block, Hecke's Eisenstein
// products L(s, chi) L(s - k + 1, psi), and the exact comparison of the lift's
// Dirichlet series against its decomposition into such products.

#include <optional>
#include <string>
#include <vector>

#include "hwp/chars.hpp"
#include "hwp/dseries.hpp"
#include "hwp/qseries.hpp"

namespace hwp {

struct LiftParams {
    unsigned k = 1;
    u64 d = 1;
    DirichletCharacter psi;
    DirichletCharacter psi_d;
    u64 period = 1;

    /// Fills psi_d = twist_psi_d(psi, k, d).
    static LiftParams make(unsigned k, u64 d, const DirichletCharacter& psi, u64 period);
};

/// Thrown when a block fails to repeat with the hypothesized period.
struct PeriodicityViolation : DomainError {
    PeriodicityViolation(size_t index, const std::string& what) : DomainError(what), index(index) {}
    size_t index;  // first n with values(n) != values(n mod l)
};

/// First 1-based index breaking period l, if any.
std::optional<size_t> periodicity_witness(const CoefficientBlock& block, u64 l);

/// A(n) = sum_{m | n} psi_d(m) m^{k-1} a(d (n/m)^2) for n <= nmax.
/// Requires scale_exponent 0 and block length >= nmax.
DirichletSeries shimura_A(const CoefficientBlock& block, const LiftParams& params, size_t nmax);

struct AlphaCoefficients {
    u64 l = 1;
    std::vector<DirichletCharacter> characters;  // enumerate_characters(l) order
    std::vector<CycloNumber> alpha;
};

/// alpha_chi = sum_{h in (Z/l)^x} values(h) beta_chi(h). Checks periodicity
/// over the whole block.
AlphaCoefficients alpha_coeffs(const CoefficientBlock& block, u64 l);

struct EisensteinForm {
    unsigned k = 0;
    DirichletCharacter chi;
    DirichletCharacter psi;
    DirichletSeries coeffs;
    CycloNumber constant_term;
    u64 level = 1;
    DirichletCharacter nebentypus;
};

/// c(n) = sum_{m | n} chi(n/m) psi(m) m^{k-1}. chi must be primitive (the
/// principal character mod 1 included), psi primitive, and
/// (chi psi)(-1) = (-1)^k.
EisensteinForm hecke_eisenstein(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k, size_t nmax);

/// Coefficients of L(s - shift, chi) L(s - k + 1, psi) for arbitrary chi and
/// psi. Uses hecke_eisenstein on the primitive parts when the parity allows
/// and folds the missing Euler factors back in; otherwise convolves directly.
DirichletSeries eisenstein_product(const DirichletCharacter& chi, const DirichletCharacter& psi, unsigned k,
                                   unsigned shift, size_t nmax);

enum class Periodicity {
    Enforce,           // throw PeriodicityViolation on an aperiodic block
    AssumeFirstPeriod  // build the decomposition from values(1..l) regardless
};

enum class IdentityRoute {
    Auto,        // Collected when l is 1 or prime, Stratified otherwise
    Collected,   // ((b(l) - alpha_1) l^{-s} + alpha_1) zeta(s) + sum_{chi != 1} alpha_chi L(s, chi); l prime or 1
    Stratified   // sum_{g | l} g^{-s} sum_{chi mod l/g} alpha^{(g)}_chi L(s, chi), any l
};

struct ResidualReport {
    double max_abs_residual = 0.0;
    std::optional<size_t> witness_index;
    bool exact_zero() const { return !witness_index.has_value(); }
    std::vector<std::string> notes;
};

/// Compares shimura_A against the character decomposition, coefficient by
/// coefficient up to nmax.
ResidualReport master_identity_residual(const CoefficientBlock& block, const LiftParams& params, size_t nmax,
                                        Periodicity mode = Periodicity::Enforce,
                                        IdentityRoute route = IdentityRoute::Auto);

/// Same comparison for a block of a(d n^2) / n^i with i >= 1: every L(s, chi)
/// on the right becomes L(s - i, chi). i = k is allowed and noted.
ResidualReport remark_variant_residual(const CoefficientBlock& block, const LiftParams& params, size_t nmax,
                                       Periodicity mode = Periodicity::Enforce,
                                       IdentityRoute route = IdentityRoute::Auto);

}  // namespace hwp
