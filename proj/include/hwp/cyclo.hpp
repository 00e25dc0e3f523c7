#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m).
//
// An element of Q(zeta_m) is stored in the power basis
//   {1, zeta, zeta^2, ..., zeta^(phi(m)-1)}
// reduced modulo the m-th cyclotomic polynomial, as integer numerators over
// one positive common denominator. The representation at a fixed order is
// canonical: gcd(numerators, denominator) = 1 and zero is (0,...,0)/1.
// Binary operations promote both operands to the lcm of their orders.

#include <complex>
#include <gmpxx.h>
#include <span>
#include <string>
#include <vector>

namespace hwp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Precomputed data for Q(zeta_m). Instances live for the whole program and
/// are shared; get() builds each field once and is safe to call concurrently.
class CyclotomicField {
public:
    static const CyclotomicField& get(unsigned order);

    unsigned order() const { return order_; }
    unsigned degree() const { return degree_; }

    /// Coefficients of Phi_m, constant term first (length degree+1).
    const std::vector<long>& minimal_polynomial() const { return phi_; }

    /// zeta^j reduced to the power basis, for 0 <= j < order.
    std::span<const long> power_row(unsigned j) const {
        return {rows_.data() + static_cast<size_t>(j) * degree_, degree_};
    }

private:
    explicit CyclotomicField(unsigned order);

    unsigned order_;
    unsigned degree_;
    std::vector<long> phi_;
    std::vector<long> rows_;  // order_ x degree_
};

/// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
std::vector<long> cyclotomic_polynomial(unsigned m);

class CycloNumber {
public:
    CycloNumber();
    CycloNumber(long value);  // NOLINT(implicit)
    CycloNumber(const Integer& value);  // NOLINT(implicit)
    CycloNumber(const Rational& value);  // NOLINT(implicit)

    /// zeta_m^j for any integer j.
    static CycloNumber root_of_unity(unsigned m, long j);
    /// scale * zeta_m^j
    static CycloNumber scaled_root(unsigned m, long j, const Rational& scale);
    /// Element with the given power-basis coefficients; coeffs.size() must be phi(m).
    static CycloNumber from_coeffs(unsigned m, const std::vector<Rational>& coeffs);
    /// (num_0 + num_1 zeta + ...) / den, canonicalized; num.size() must be phi(m).
    static CycloNumber from_numerators(unsigned m, std::vector<Integer> num, Integer den);

    unsigned order() const { return field_->order(); }
    unsigned degree() const { return field_->degree(); }
    const CyclotomicField& field() const { return *field_; }

    Rational coeff(unsigned i) const;
    std::vector<Rational> coeffs() const;
    const std::vector<Integer>& numerators() const { return num_; }
    const Integer& denominator() const { return den_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Requires is_rational().
    Rational to_rational() const;

    /// Same value represented in Q(zeta_m); order() must divide m.
    CycloNumber promoted(unsigned m) const;

    CycloNumber conj() const;
    CycloNumber inverse() const;

    std::complex<double> to_complex() const;
    std::string to_string() const;

    CycloNumber& operator+=(const CycloNumber& rhs);
    CycloNumber& operator-=(const CycloNumber& rhs);
    CycloNumber& operator*=(const CycloNumber& rhs);
    CycloNumber& operator*=(const Rational& rhs);
    CycloNumber& operator/=(const Rational& rhs);

    /// this += c * zeta^j with zeta a primitive order()-th root of unity.
    /// Stays in the current field; no promotion.
    void add_scaled_root(const Integer& c, long j);

    friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
    friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
    friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b);
    friend CycloNumber operator*(CycloNumber a, const Rational& b) { return a *= b; }
    friend CycloNumber operator/(CycloNumber a, const Rational& b) { return a /= b; }
    CycloNumber operator-() const;

    /// Value equality (orders may differ).
    friend bool operator==(const CycloNumber& a, const CycloNumber& b);

private:
    CycloNumber(const CyclotomicField* f, std::vector<Integer> num, Integer den);
    void canonicalize();

    const CyclotomicField* field_;
    std::vector<Integer> num_;
    Integer den_;
};

std::ostream& operator<<(std::ostream& os, const CycloNumber& x);

/// Bring every element of the range into one common field (lcm of orders).
unsigned common_order(std::span<const CycloNumber> xs);

}  // namespace hwp
