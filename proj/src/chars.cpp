#include "hwp/chars.hpp"

#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace hwp {

namespace {

u64 inverse_mod(u64 a, u64 m) {
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
    while (new_r != 0) {
        i64 q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (r != 1) throw DomainError("inverse_mod: not invertible");
    return static_cast<u64>(mod_floor(t, static_cast<i64>(m)));
}

u64 smallest_primitive_root(u64 p, u64 pe) {
    u64 phi = pe / p * (p - 1);
    auto qs = factorize(phi);
    for (u64 g = 2; g < pe; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto& [q, e] : qs)
            if (powmod(g, phi / q, pe) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    return 1;  // pe == 2
}

Turn make_turn(u64 num, u64 den) {
    num %= den;
    u64 g = std::gcd(num, den);
    if (num == 0) return {0, 1};
    return {num / g, den / g};
}

Turn add_turns(Turn a, Turn b) {
    u64 den = std::lcm(a.den, b.den);
    return make_turn(a.num * (den / a.den) + b.num * (den / b.den), den);
}

}  // namespace

int kronecker(i64 d, i64 m) {
    if (d == 0 && m == 0) throw DomainError("kronecker: both arguments are zero");
    if (m == 0) return (d == 1 || d == -1) ? 1 : 0;
    int result = 1;
    if (m < 0) {
        m = -m;
        if (d < 0) result = -result;
    }
    // strip factors of two from m
    int v = 0;
    while ((m & 1) == 0) {
        m >>= 1;
        ++v;
    }
    if (v > 0) {
        if ((d & 1) == 0) return 0;
        i64 r8 = mod_floor(d, 8);
        if ((v & 1) && (r8 == 3 || r8 == 5)) result = -result;
    }
    // now m odd positive: Jacobi symbol (d/m)
    i64 a = mod_floor(d, m);
    i64 n = m;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            i64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// ---------------------------------------------------------------------------

CharacterGroup::CharacterGroup(u64 modulus) : modulus_(modulus), size_(euler_phi(modulus)) {
    if (modulus == 0) throw DomainError("CharacterGroup: modulus must be positive");
    struct LocalTable {
        u64 pe;
        size_t first_gen;
        std::vector<std::vector<int>> logs;  // per generator, indexed by residue mod pe
    };
    std::vector<LocalTable> locals;
    for (auto& [p, e] : factorize(modulus)) {
        u64 pe = ipow(p, e);
        LocalTable lt{pe, gens_.size(), {}};
        auto add_gen = [&](u64 local, u64 order) {
            u64 rest = modulus / pe;
            u64 global = local;
            if (rest > 1) {
                // x = 1 + rest * t, rest * t = local - 1 (mod pe)
                u64 t = mulmod((local + pe - 1) % pe, inverse_mod(rest % pe, pe), pe);
                global = 1 + rest * t;
            }
            gens_.push_back({p, pe, local, global % modulus, order});
        };
        if (p == 2) {
            if (e == 2) {
                add_gen(3, 2);
                lt.logs.assign(1, std::vector<int>(pe, -1));
                lt.logs[0][1] = 0;
                lt.logs[0][3] = 1;
            } else if (e >= 3) {
                add_gen(pe - 1, 2);
                add_gen(5, pe / 4);
                lt.logs.assign(2, std::vector<int>(pe, -1));
                for (u64 b = 0; b < 2; ++b) {
                    u64 v = (b == 0) ? 1 : pe - 1;
                    for (u64 c = 0; c < pe / 4; ++c) {
                        lt.logs[0][v] = static_cast<int>(b);
                        lt.logs[1][v] = static_cast<int>(c);
                        v = v * 5 % pe;
                    }
                }
            }
        } else {
            u64 g = smallest_primitive_root(p, pe);
            u64 order = pe / p * (p - 1);
            add_gen(g, order);
            lt.logs.assign(1, std::vector<int>(pe, -1));
            u64 v = 1;
            for (u64 j = 0; j < order; ++j) {
                lt.logs[0][v] = static_cast<int>(j);
                v = v * g % pe;
            }
        }
        locals.push_back(std::move(lt));
    }
    for (auto& g : gens_) exponent_ = std::lcm(exponent_, g.order);

    const size_t s = stride();
    logs_.assign(modulus * s, -1);
    for (u64 r = 0; r < modulus; ++r) {
        if (std::gcd(r, modulus) != 1) continue;
        if (gens_.empty()) {
            logs_[r * s] = 0;
            continue;
        }
        for (auto& lt : locals)
            for (size_t i = 0; i < lt.logs.size(); ++i) logs_[r * s + lt.first_gen + i] = lt.logs[i][r % lt.pe];
    }
}

std::shared_ptr<const CharacterGroup> CharacterGroup::get(u64 modulus) {
    static std::mutex mu;
    static std::map<u64, std::shared_ptr<const CharacterGroup>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(modulus);
    if (it != cache.end()) return it->second;
    auto g = std::make_shared<const CharacterGroup>(modulus);
    cache.emplace(modulus, g);
    return g;
}

// ---------------------------------------------------------------------------

DirichletCharacter::DirichletCharacter(u64 modulus) : group_(CharacterGroup::get(modulus)) {
    exponents_.assign(group_->generators().size(), 0);
    finish();
}

DirichletCharacter::DirichletCharacter(u64 modulus, std::vector<u64> exponents)
    : group_(CharacterGroup::get(modulus)), exponents_(std::move(exponents)) {
    const auto& gens = group_->generators();
    if (exponents_.size() != gens.size())
        throw DomainError("DirichletCharacter: expected " + std::to_string(gens.size()) + " exponents for modulus " +
                          std::to_string(modulus));
    for (size_t i = 0; i < gens.size(); ++i) exponents_[i] %= gens[i].order;
    finish();
}

void DirichletCharacter::finish() {
    const auto& gens = group_->generators();
    const u64 M = group_->modulus();

    order_ = 1;
    for (size_t i = 0; i < gens.size(); ++i) order_ = std::lcm(order_, gens[i].order / std::gcd(gens[i].order, exponents_[i]));

    // exponent contributed by one unit step of log_i, in units of 1/order_
    std::vector<u64> weight(gens.size());
    for (size_t i = 0; i < gens.size(); ++i) {
        u64 g = std::gcd(gens[i].order, exponents_[i]);
        u64 local_order = gens[i].order / g;
        weight[i] = (exponents_[i] / g) * (order_ / local_order) % order_;
    }
    table_.assign(M, -1);
    for (u64 r = 0; r < M; ++r) {
        if (!group_->is_unit(r)) continue;
        u64 e = 0;
        for (size_t i = 0; i < gens.size(); ++i) e = (e + mulmod(weight[i], group_->log(r, i), order_)) % order_;
        table_[r] = static_cast<int>(e);
    }

    conductor_ = 1;
    for (size_t i = 0; i < gens.size();) {
        const auto& g = gens[i];
        if (g.prime == 2) {
            u64 pe = g.prime_power;
            u64 b = exponents_[i];
            u64 c = (pe >= 8) ? exponents_[i + 1] : 0;
            if (c != 0) {
                u64 o5 = gens[i + 1].order / std::gcd(gens[i + 1].order, c);
                unsigned v = 0;
                while ((o5 >> v) > 1) ++v;
                conductor_ *= ipow(2, v + 2);
            } else if (b != 0) {
                conductor_ *= 4;
            }
            i += (pe >= 8) ? 2 : 1;
        } else {
            u64 o = g.order / std::gcd(g.order, exponents_[i]);
            if (o > 1) {
                unsigned f = 1;
                while (o % g.prime == 0) {
                    o /= g.prime;
                    ++f;
                }
                conductor_ *= ipow(g.prime, f);
            }
            ++i;
        }
    }
    parity_ = (table_[(M - 1) % M] == 0) ? Parity::Even : Parity::Odd;
}

std::optional<u64> DirichletCharacter::exponent_at(i64 m) const {
    int e = table_[static_cast<size_t>(mod_floor(m, static_cast<i64>(modulus())))];
    if (e < 0) return std::nullopt;
    return static_cast<u64>(e);
}

CycloNumber DirichletCharacter::eval(i64 m) const {
    auto e = exponent_at(m);
    if (!e) return CycloNumber();
    return CycloNumber::root_of_unity(static_cast<unsigned>(order_), static_cast<long>(*e));
}

std::complex<double> DirichletCharacter::eval_complex(i64 m) const {
    auto e = exponent_at(m);
    if (!e) return 0.0;
    if (*e == 0) return 1.0;
    if (2 * *e == order_) return -1.0;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(*e) / static_cast<double>(order_));
}

DirichletCharacter DirichletCharacter::conj() const {
    std::vector<u64> ex(exponents_.size());
    const auto& gens = group_->generators();
    for (size_t i = 0; i < ex.size(); ++i) ex[i] = (gens[i].order - exponents_[i]) % gens[i].order;
    return DirichletCharacter(modulus(), std::move(ex));
}

DirichletCharacter DirichletCharacter::induced(u64 new_modulus) const {
    if (new_modulus % modulus() != 0) throw DomainError("induced: new modulus must be a multiple of the modulus");
    if (new_modulus == modulus()) return *this;
    return from_generator_values(new_modulus, [&](u64 g) {
        return make_turn(*exponent_at(static_cast<i64>(g)), order_);
    });
}

DirichletCharacter DirichletCharacter::restrict_to_conductor() const {
    const u64 f = conductor_;
    const u64 M = modulus();
    return from_generator_values(f, [&](u64 g) {
        u64 m = g;
        while (std::gcd(m, M) != 1) m += f;
        return make_turn(*exponent_at(static_cast<i64>(m)), order_);
    });
}

std::string DirichletCharacter::debug_line() const {
    std::ostringstream os;
    os << modulus() << ';';
    for (size_t i = 0; i < exponents_.size(); ++i) os << (i ? "," : "") << exponents_[i];
    os << ';' << conductor_ << ';' << (is_even() ? "even" : "odd");
    return os.str();
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
    u64 m = std::lcm(a.modulus(), b.modulus());
    DirichletCharacter x = a.induced(m), y = b.induced(m);
    const auto& gens = x.group().generators();
    std::vector<u64> ex(gens.size());
    for (size_t i = 0; i < ex.size(); ++i) ex[i] = (x.exponents_[i] + y.exponents_[i]) % gens[i].order;
    return DirichletCharacter(m, std::move(ex));
}

std::vector<DirichletCharacter> enumerate_characters(u64 modulus) {
    auto group = CharacterGroup::get(modulus);
    const auto& gens = group->generators();
    std::vector<DirichletCharacter> out;
    out.reserve(group->size());
    std::vector<u64> ex(gens.size(), 0);
    while (true) {
        out.emplace_back(modulus, ex);
        size_t i = ex.size();
        while (i > 0) {
            --i;
            if (++ex[i] < gens[i].order) break;
            ex[i] = 0;
            if (i == 0) return out;
        }
        if (ex.empty()) return out;
    }
}

DirichletCharacter twist_psi_d(const DirichletCharacter& psi, unsigned k, u64 d) {
    if (!is_squarefree(d)) throw DomainError("twist_psi_d: d = " + std::to_string(d) + " is not square-free");
    const u64 modulus = d * std::lcm(psi.modulus(), u64{4});
    return DirichletCharacter::from_generator_values(modulus, [&](u64 g) {
        auto m = static_cast<i64>(g);
        Turn t = make_turn(*psi.exponent_at(m), psi.order());
        int sign = kronecker(static_cast<i64>(d), m);
        if (k % 2 == 1) sign *= kronecker(-1, m);
        return sign < 0 ? add_turns(t, Turn{1, 2}) : t;
    });
}

// ---------------------------------------------------------------------------

Rational bernoulli_number(unsigned n) {
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard lock(mu);
    while (cache.size() <= n) {
        unsigned m = static_cast<unsigned>(cache.size());
        Rational acc = 0;
        Integer binom = 1;  // C(m+1, j)
        for (unsigned j = 0; j < m; ++j) {
            acc += binom * cache[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        Rational b = -acc / (m + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[n];
}

Rational bernoulli_polynomial(unsigned n, const Rational& x) {
    Rational acc = 0;
    Integer binom = 1;  // C(n, j)
    Rational xpow = 1;  // x^(n-j), accumulated from j = n downward
    std::vector<Rational> pows(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        pows[i] = xpow;
        xpow *= x;
    }
    for (unsigned j = 0; j <= n; ++j) {
        acc += binom * bernoulli_number(j) * pows[n - j];
        binom = binom * (n - j) / (j + 1);
    }
    acc.canonicalize();
    return acc;
}

CycloNumber generalized_bernoulli(const DirichletCharacter& chi, unsigned k) {
    if (k == 0) throw DomainError("generalized_bernoulli: k must be at least 1");
    const u64 M = chi.modulus();
    if (M == 1 && k == 1) return CycloNumber(Rational(-1, 2));
    const auto ord = static_cast<unsigned>(chi.order());
    CycloNumber acc = CycloNumber().promoted(ord);
    for (u64 a = 1; a <= M; ++a) {
        auto e = chi.exponent_at(static_cast<i64>(a));
        if (!e) continue;
        Rational x(static_cast<long>(a), static_cast<long>(M));
        x.canonicalize();
        Rational b = bernoulli_polynomial(k, x);
        if (b == 0) continue;
        acc += CycloNumber::scaled_root(ord, static_cast<long>(*e), b);
    }
    Rational scale = 1;
    for (unsigned i = 1; i < k; ++i) scale *= static_cast<long>(M);
    return acc * scale;
}

}  // namespace hwp
