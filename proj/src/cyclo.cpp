#include "hwp/cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hwp/arith.hpp"

namespace hwp {

namespace {

int mobius(u64 n) {
    int mu = 1;
    for (auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

// p *= (x^d - 1)
void mul_xd_minus_one(std::vector<long>& p, unsigned d) {
    std::vector<long> out(p.size() + d, 0);
    for (size_t i = 0; i < p.size(); ++i) {
        out[i + d] += p[i];
        out[i] -= p[i];
    }
    p.swap(out);
}

// p /= (x^d - 1), exact
void div_xd_minus_one(std::vector<long>& p, unsigned d) {
    size_t qdeg = p.size() - 1 - d;
    std::vector<long> q(qdeg + 1, 0);
    for (size_t j = qdeg + 1; j-- > 0;) {
        long hi = (j + d <= qdeg) ? q[j + d] : 0;
        q[j] = p[j + d] + hi;
    }
    p.swap(q);
}

inline void addmul_long(Integer& acc, const Integer& x, long c) {
    if (c > 0)
        mpz_addmul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(c));
    else if (c < 0)
        mpz_submul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(-c));
}

}  // namespace

std::vector<long> cyclotomic_polynomial(unsigned m) {
    if (m == 0) throw DomainError("cyclotomic_polynomial: order must be positive");
    std::vector<long> p{1};
    auto ds = divisors(m);
    for (u64 d : ds)
        if (mobius(m / d) == 1) mul_xd_minus_one(p, static_cast<unsigned>(d));
    for (u64 d : ds)
        if (mobius(m / d) == -1) div_xd_minus_one(p, static_cast<unsigned>(d));
    // (x^d - 1) products carry sign (-1)^(#factors); normalise to monic.
    if (p.back() < 0)
        for (auto& c : p) c = -c;
    return p;
}

CyclotomicField::CyclotomicField(unsigned order)
    : order_(order), degree_(static_cast<unsigned>(euler_phi(order))), phi_(cyclotomic_polynomial(order)) {
    rows_.assign(static_cast<size_t>(order_) * degree_, 0);
    std::vector<long> cur(degree_, 0);
    cur[0] = 1;
    for (unsigned j = 0; j < order_; ++j) {
        std::copy(cur.begin(), cur.end(), rows_.begin() + static_cast<long>(j) * degree_);
        // cur <- x * cur mod Phi
        long top = cur[degree_ - 1];
        for (unsigned u = degree_ - 1; u > 0; --u) cur[u] = cur[u - 1];
        cur[0] = 0;
        if (top != 0)
            for (unsigned u = 0; u < degree_; ++u) cur[u] -= top * phi_[u];
    }
}

const CyclotomicField& CyclotomicField::get(unsigned order) {
    thread_local const CyclotomicField* last = nullptr;
    if (last && last->order_ == order) return *last;
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<CyclotomicField>> registry;
    if (order == 0) throw DomainError("cyclotomic field order must be positive");
    std::lock_guard lock(mu);
    auto it = registry.find(order);
    if (it == registry.end())
        it = registry.emplace(order, std::unique_ptr<CyclotomicField>(new CyclotomicField(order))).first;
    last = it->second.get();
    return *last;
}

// ---------------------------------------------------------------------------

CycloNumber::CycloNumber() : field_(&CyclotomicField::get(1)), num_(1), den_(1) {}

CycloNumber::CycloNumber(long value) : field_(&CyclotomicField::get(1)), num_{Integer(value)}, den_(1) {}

CycloNumber::CycloNumber(const Integer& value) : field_(&CyclotomicField::get(1)), num_{value}, den_(1) {}

CycloNumber::CycloNumber(const Rational& value)
    : field_(&CyclotomicField::get(1)), num_{value.get_num()}, den_(value.get_den()) {}

CycloNumber::CycloNumber(const CyclotomicField* f, std::vector<Integer> num, Integer den)
    : field_(f), num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
}

CycloNumber CycloNumber::root_of_unity(unsigned m, long j) {
    const auto& f = CyclotomicField::get(m);
    auto row = f.power_row(static_cast<unsigned>(mod_floor(j, m)));
    std::vector<Integer> num(row.begin(), row.end());
    return CycloNumber(&f, std::move(num), 1);
}

CycloNumber CycloNumber::scaled_root(unsigned m, long j, const Rational& scale) {
    const auto& f = CyclotomicField::get(m);
    auto row = f.power_row(static_cast<unsigned>(mod_floor(j, m)));
    std::vector<Integer> num(row.size());
    for (size_t u = 0; u < row.size(); ++u) num[u] = scale.get_num() * row[u];
    return CycloNumber(&f, std::move(num), scale.get_den());
}

CycloNumber CycloNumber::from_coeffs(unsigned m, const std::vector<Rational>& coeffs) {
    const auto& f = CyclotomicField::get(m);
    if (coeffs.size() != f.degree())
        throw DomainError("CycloNumber::from_coeffs: expected " + std::to_string(f.degree()) + " coefficients");
    Integer den = 1;
    for (auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> num(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) num[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    return CycloNumber(&f, std::move(num), std::move(den));
}

CycloNumber CycloNumber::from_numerators(unsigned m, std::vector<Integer> num, Integer den) {
    const auto& f = CyclotomicField::get(m);
    if (num.size() != f.degree())
        throw DomainError("CycloNumber::from_numerators: expected " + std::to_string(f.degree()) + " numerators");
    if (den == 0) throw DomainError("CycloNumber::from_numerators: zero denominator");
    return CycloNumber(&f, std::move(num), std::move(den));
}

void CycloNumber::canonicalize() {
    bool all_zero = true;
    for (auto& c : num_)
        if (c != 0) {
            all_zero = false;
            break;
        }
    if (all_zero) {
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    if (den_ == 1) return;
    Integer g = den_;
    for (auto& c : num_) {
        if (c == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
    }
    den_ /= g;
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

Rational CycloNumber::coeff(unsigned i) const {
    Rational r(num_.at(i), den_);
    r.canonicalize();
    return r;
}

std::vector<Rational> CycloNumber::coeffs() const {
    std::vector<Rational> out;
    out.reserve(num_.size());
    for (unsigned i = 0; i < num_.size(); ++i) out.push_back(coeff(i));
    return out;
}

bool CycloNumber::is_zero() const {
    for (auto& c : num_)
        if (c != 0) return false;
    return true;
}

bool CycloNumber::is_rational() const {
    for (size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return false;
    return true;
}

Rational CycloNumber::to_rational() const {
    if (!is_rational()) throw DomainError("CycloNumber::to_rational: value is not rational");
    return coeff(0);
}

CycloNumber CycloNumber::promoted(unsigned m) const {
    unsigned cur = order();
    if (m == cur) return *this;
    if (m % cur != 0) throw DomainError("CycloNumber::promoted: order does not divide target");
    const auto& f = CyclotomicField::get(m);
    unsigned step = m / cur;
    std::vector<Integer> num(f.degree());
    for (unsigned j = 0; j < num_.size(); ++j) {
        if (num_[j] == 0) continue;
        auto row = f.power_row((j * step) % m);
        for (unsigned u = 0; u < f.degree(); ++u) addmul_long(num[u], num_[j], row[u]);
    }
    return CycloNumber(&f, std::move(num), den_);
}

CycloNumber CycloNumber::conj() const {
    unsigned m = order();
    std::vector<Integer> num(num_.size());
    for (unsigned j = 0; j < num_.size(); ++j) {
        if (num_[j] == 0) continue;
        auto row = field_->power_row((m - j) % m);
        for (unsigned u = 0; u < num.size(); ++u) addmul_long(num[u], num_[j], row[u]);
    }
    return CycloNumber(field_, std::move(num), den_);
}

CycloNumber CycloNumber::inverse() const {
    if (is_zero()) throw DomainError("CycloNumber::inverse: division by zero");
    if (is_rational()) return CycloNumber(Rational(1) / to_rational());
    // Solve (multiplication-by-this matrix) * y = e_0 over Q.
    const unsigned n = degree();
    const unsigned m = order();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (unsigned i = 0; i < n; ++i) {
        CycloNumber col = *this * root_of_unity(m, i);
        for (unsigned r = 0; r < n; ++r) a[r][i] = col.coeff(r);
    }
    a[0][n] = 1;
    for (unsigned c = 0; c < n; ++c) {
        unsigned piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) throw DomainError("CycloNumber::inverse: singular multiplication matrix");
        std::swap(a[c], a[piv]);
        for (unsigned r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (unsigned k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<Rational> y(n);
    for (unsigned r = 0; r < n; ++r) y[r] = a[r][n] / a[r][r];
    return from_coeffs(m, y);
}

namespace {

// e^{2 pi i j/m}, exact on multiples of a twelfth turn
std::complex<double> unit_root(unsigned j, unsigned m) {
    j %= m;
    if ((12u * j) % m == 0) {
        static const double h = std::sqrt(3.0) / 2.0;
        static const std::complex<double> twelfths[12] = {{1, 0},  {h, 0.5},   {0.5, h},   {0, 1},  {-0.5, h},  {-h, 0.5},
                                                         {-1, 0}, {-h, -0.5}, {-0.5, -h}, {0, -1}, {0.5, -h}, {h, -0.5}};
        return twelfths[12u * j / m];
    }
    double ang = 2.0 * std::numbers::pi * j / m;
    return {std::cos(ang), std::sin(ang)};
}

}  // namespace

std::complex<double> CycloNumber::to_complex() const {
    const double den = den_.get_d();
    const unsigned m = order();
    std::complex<double> z = 0.0;
    for (unsigned j = 0; j < num_.size(); ++j) {
        if (num_[j] == 0) continue;
        z += (num_[j].get_d() / den) * unit_root(j, m);
    }
    return z;
}

std::string CycloNumber::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& rhs) {
    if (rhs.is_zero()) return *this;
    if (order() != rhs.order()) {
        unsigned m = std::lcm(order(), rhs.order());
        *this = promoted(m);
        if (rhs.order() != m) return *this += rhs.promoted(m);
    }
    if (den_ == rhs.den_) {
        for (size_t i = 0; i < num_.size(); ++i) num_[i] += rhs.num_[i];
    } else {
        for (size_t i = 0; i < num_.size(); ++i) {
            num_[i] *= rhs.den_;
            mpz_addmul(num_[i].get_mpz_t(), rhs.num_[i].get_mpz_t(), den_.get_mpz_t());
        }
        den_ *= rhs.den_;
    }
    canonicalize();
    return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& rhs) { return *this += -rhs; }

CycloNumber CycloNumber::operator-() const {
    CycloNumber r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

CycloNumber& CycloNumber::operator*=(const Rational& rhs) {
    if (rhs == 0) {
        for (auto& c : num_) c = 0;
        den_ = 1;
        return *this;
    }
    for (auto& c : num_) c *= rhs.get_num();
    den_ *= rhs.get_den();
    canonicalize();
    return *this;
}

CycloNumber& CycloNumber::operator/=(const Rational& rhs) {
    if (rhs == 0) throw DomainError("CycloNumber: division by zero");
    return *this *= Rational(1) / rhs;
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& rhs) { return *this = *this * rhs; }

CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
    if (a.is_zero() || b.is_zero()) return CycloNumber();
    if (b.is_rational()) {
        CycloNumber r = a;
        for (auto& c : r.num_) c *= b.num_[0];
        r.den_ *= b.den_;
        r.canonicalize();
        return r;
    }
    if (a.is_rational()) return b * a;
    if (a.order() != b.order()) {
        unsigned m = std::lcm(a.order(), b.order());
        return a.promoted(m) * b.promoted(m);
    }
    const CyclotomicField* f = a.field_;
    const unsigned n = f->degree();
    const unsigned m = f->order();
    std::vector<Integer> prod(2 * n - 1);
    for (unsigned i = 0; i < n; ++i) {
        if (a.num_[i] == 0) continue;
        for (unsigned j = 0; j < n; ++j) {
            if (b.num_[j] == 0) continue;
            mpz_addmul(prod[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
        }
    }
    std::vector<Integer> out(n);
    for (unsigned t = 0; t < n; ++t) out[t] = std::move(prod[t]);
    for (unsigned t = n; t < 2 * n - 1; ++t) {
        if (prod[t] == 0) continue;
        auto row = f->power_row(t % m);
        for (unsigned u = 0; u < n; ++u) addmul_long(out[u], prod[t], row[u]);
    }
    return CycloNumber(f, std::move(out), a.den_ * b.den_);
}

void CycloNumber::add_scaled_root(const Integer& c, long j) {
    if (c == 0) return;
    auto row = field_->power_row(static_cast<unsigned>(mod_floor(j, order())));
    if (den_ == 1) {
        for (size_t u = 0; u < num_.size(); ++u) addmul_long(num_[u], c, row[u]);
    } else {
        Integer cd = c * den_;
        for (size_t u = 0; u < num_.size(); ++u) addmul_long(num_[u], cd, row[u]);
    }
    canonicalize();
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
    if (a.order() != b.order()) {
        if (a.is_rational() && b.is_rational()) return a.den_ == b.den_ && a.num_[0] == b.num_[0];
        unsigned m = std::lcm(a.order(), b.order());
        return a.promoted(m) == b.promoted(m);
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
}

std::ostream& operator<<(std::ostream& os, const CycloNumber& x) {
    if (x.is_zero()) return os << "0";
    bool first = true;
    for (unsigned j = 0; j < x.degree(); ++j) {
        Rational c = x.coeff(j);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rational a = abs(c);
        if (j == 0) os << a;
        else {
            if (a != 1) os << a << "*";
            os << "z" << x.order();
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    return os;
}

unsigned common_order(std::span<const CycloNumber> xs) {
    unsigned m = 1;
    for (auto& x : xs) m = std::lcm(m, x.order());
    return m;
}

}  // namespace hwp
