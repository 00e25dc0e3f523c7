#include "hwp/dseries.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

namespace hwp {

namespace {

// Sum of products a_i * b_i landing in Q(zeta_m). Operands may live in any
// subfield Q(zeta_d), d | m: integral products are accumulated in m exponent
// bins and reduced once at the end; anything with a denominator goes through
// CycloNumber.
class ProductSum {
public:
    explicit ProductSum(unsigned order)
        : field_(&CyclotomicField::get(order)), bins_(order), zero_(CycloNumber().promoted(order)) {}

    void reset() {
        if (touched_)
            for (auto& b : bins_) b = 0;
        touched_ = false;
        rest_.reset();
    }

    void add(const CycloNumber& a, const CycloNumber& b) {
        if (a.denominator() != 1 || b.denominator() != 1) {
            rest_ = rest_ ? *rest_ + a * b : a * b;
            return;
        }
        const unsigned m = field_->order();
        const unsigned sa = m / a.order(), sb = m / b.order();
        const auto& an = a.numerators();
        const auto& bn = b.numerators();
        for (size_t i = 0; i < an.size(); ++i) {
            if (an[i] == 0) continue;
            for (size_t j = 0; j < bn.size(); ++j) {
                if (bn[j] == 0) continue;
                mpz_addmul(bins_[(i * sa + j * sb) % m].get_mpz_t(), an[i].get_mpz_t(), bn[j].get_mpz_t());
            }
        }
        touched_ = true;
    }

    CycloNumber result() {
        if (!touched_) return rest_ ? *rest_ : zero_;
        const unsigned n = field_->degree();
        const unsigned m = field_->order();
        std::vector<Integer> out(n);
        for (unsigned t = 0; t < m; ++t) {
            if (bins_[t] == 0) continue;
            if (t < n) {
                out[t] += bins_[t];
                continue;
            }
            auto row = field_->power_row(t);
            for (unsigned u = 0; u < n; ++u) {
                if (row[u] > 0)
                    mpz_addmul_ui(out[u].get_mpz_t(), bins_[t].get_mpz_t(), static_cast<unsigned long>(row[u]));
                else if (row[u] < 0)
                    mpz_submul_ui(out[u].get_mpz_t(), bins_[t].get_mpz_t(), static_cast<unsigned long>(-row[u]));
            }
        }
        auto sum = CycloNumber::from_numerators(m, std::move(out), 1);
        return rest_ ? sum + *rest_ : sum;
    }

private:
    const CyclotomicField* field_;
    std::vector<Integer> bins_;
    CycloNumber zero_;
    std::optional<CycloNumber> rest_;
    bool touched_ = false;
};

}  // namespace

DirichletSeries DirichletSeries::truncated(size_t nmax) const {
    if (nmax > c_.size()) throw RangeError("DirichletSeries::truncated: nmax beyond available coefficients");
    return DirichletSeries(std::vector<CycloNumber>(c_.begin(), c_.begin() + static_cast<long>(nmax)));
}

DirichletSeries DirichletSeries::promoted(unsigned m) const {
    std::vector<CycloNumber> out;
    out.reserve(c_.size());
    for (auto& x : c_) out.push_back(x.promoted(m));
    return DirichletSeries(std::move(out));
}

std::vector<std::complex<double>> DirichletSeries::to_complex() const {
    std::vector<std::complex<double>> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i].to_complex();
    return out;
}

DirichletSeries& DirichletSeries::operator+=(const DirichletSeries& rhs) {
    if (rhs.nmax() < nmax()) c_.resize(rhs.nmax());
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

DirichletSeries& DirichletSeries::operator-=(const DirichletSeries& rhs) {
    if (rhs.nmax() < nmax()) c_.resize(rhs.nmax());
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
    return *this;
}

DirichletSeries operator*(const CycloNumber& s, const DirichletSeries& a) {
    std::vector<CycloNumber> out(a.nmax());
    for (size_t i = 0; i < out.size(); ++i) out[i] = s * a.c_[i];
    return DirichletSeries(std::move(out));
}

bool operator==(const DirichletSeries& a, const DirichletSeries& b) {
    return a.nmax() == b.nmax() && !first_difference(a, b).has_value();
}

std::optional<size_t> first_difference(const DirichletSeries& a, const DirichletSeries& b) {
    size_t n = std::min(a.nmax(), b.nmax());
    for (size_t i = 1; i <= n; ++i)
        if (!(a[i] == b[i])) return i;
    return std::nullopt;
}

DirichletSeries delta_one(size_t nmax) {
    DirichletSeries d(nmax);
    if (nmax > 0) d[1] = 1L;
    return d;
}

DirichletSeries convolve(const DirichletSeries& a, const DirichletSeries& b) {
    const size_t n = std::min(a.nmax(), b.nmax());
    const DirichletSeries& x = a;
    const DirichletSeries& y = b;
    const std::span<const CycloNumber> ac = a.coeffs(), bc = b.coeffs();
    const unsigned order = std::lcm(common_order(ac.first(n)), common_order(bc.first(n)));
    std::vector<CycloNumber> out(n);

#pragma omp parallel
    {
        ProductSum acc(order);
#pragma omp for schedule(dynamic, 32)
        for (long k = 1; k <= static_cast<long>(n); ++k) {
            acc.reset();
            for (long d = 1; d * d <= k; ++d) {
                if (k % d) continue;
                long e = k / d;
                if (!x[d].is_zero() && !y[e].is_zero()) acc.add(x[d], y[e]);
                if (d != e && !x[e].is_zero() && !y[d].is_zero()) acc.add(x[e], y[d]);
            }
            out[k - 1] = acc.result();
        }
    }
    return DirichletSeries(std::move(out));
}

DirichletSeries convolve_serial(const DirichletSeries& a, const DirichletSeries& b) {
    const size_t n = std::min(a.nmax(), b.nmax());
    DirichletSeries out(n);
    for (size_t i = 1; i <= n; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 1; i * j <= n; ++j) {
            if (b[j].is_zero()) continue;
            out[i * j] += a[i] * b[j];
        }
    }
    return out;
}

DirichletSeries dilate(const DirichletSeries& a, u64 l) {
    if (l == 0) throw DomainError("dilate: l must be positive");
    DirichletSeries out(a.nmax());
    for (size_t n = 1; n * l <= a.nmax(); ++n) out[n * l] = a[n];
    return out;
}

DirichletSeries shift_argument(const DirichletSeries& a, unsigned shift) {
    if (shift == 0) return a;
    DirichletSeries out(a.nmax());
    for (size_t n = 1; n <= a.nmax(); ++n) {
        if (a[n].is_zero()) continue;
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), n, shift);
        out[n] = a[n] * Rational(p);
    }
    return out;
}

DirichletSeries l_coeffs(const DirichletCharacter& chi, int shift, size_t nmax) {
    if (shift < 0)
        throw DomainError("l_coeffs: negative shifts are unsupported (only k - 1 >= 0 is needed)");
    DirichletSeries out(nmax);
    const auto ord = static_cast<unsigned>(chi.order());
    for (size_t n = 1; n <= nmax; ++n) {
        auto e = chi.exponent_at(static_cast<i64>(n));
        if (!e) continue;
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), n, static_cast<unsigned long>(shift));
        out[n] = CycloNumber::scaled_root(ord, static_cast<long>(*e), Rational(p));
    }
    return out;
}

DirichletSeries partial_zeta_coeffs(u64 h, u64 modulus, size_t nmax) {
    if (modulus == 0 || h < 1 || h > modulus)
        throw DomainError("partial_zeta_coeffs: need 1 <= h <= M");
    DirichletSeries out(nmax);
    for (size_t n = 1; n <= nmax; ++n)
        if (n % modulus == h % modulus) out[n] = 1L;
    return out;
}

BetaMatrix::BetaMatrix(u64 modulus) : modulus_(modulus), chars_(enumerate_characters(modulus)), slot_(modulus + 1, -1) {
    for (u64 h = 1; h <= modulus; ++h)
        if (std::gcd(h, modulus) == 1) {
            slot_[h] = static_cast<long>(residues_.size());
            residues_.push_back(h);
        }
    const Rational inv_phi(1, static_cast<unsigned long>(residues_.size()));
    values_.reserve(chars_.size() * residues_.size());
    for (auto& chi : chars_)
        for (u64 h : residues_) {
            auto e = *chi.exponent_at(static_cast<i64>(h));
            values_.push_back(CycloNumber::scaled_root(static_cast<unsigned>(chi.order()), -static_cast<long>(e), inv_phi));
        }
}

const CycloNumber& BetaMatrix::at(size_t chi_index, u64 h) const {
    u64 r = ((h - 1) % modulus_) + 1;
    if (h == 0 || slot_[r] < 0)
        throw DomainError("beta_matrix: h = " + std::to_string(h) + " is not coprime to " + std::to_string(modulus_));
    return values_.at(chi_index * residues_.size() + static_cast<size_t>(slot_[r]));
}

DirichletSeries reduce_to_primitive(const DirichletCharacter& chi, size_t nmax) {
    const u64 f = chi.conductor();
    const DirichletCharacter chi0 = chi.restrict_to_conductor();
    std::vector<u64> primes;
    for (auto& [p, e] : factorize(chi.modulus()))
        if (f % p != 0) primes.push_back(p);

    DirichletSeries out(nmax);
    // every squarefree product of the selected primes that fits under nmax
    const size_t r = primes.size();
    for (u64 mask = 0; mask < (u64{1} << r); ++mask) {
        u64 n = 1;
        bool fits = true;
        CycloNumber v = 1L;
        for (size_t i = 0; i < r && fits; ++i) {
            if (!(mask >> i & 1)) continue;
            n *= primes[i];
            fits = n <= nmax;
            v = -(v * chi0.eval(static_cast<i64>(primes[i])));
        }
        if (fits && n <= nmax) out[n] = v;
    }
    return out;
}

}  // namespace hwp
