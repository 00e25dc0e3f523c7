#pragma once

// Dirichlet characters with exact cyclotomic values.
//
// (Z/MZ)^x is split by CRT into prime-power components. An odd p^e
// component is cyclic, generated by the smallest primitive root mod p^e; the
// 2^e component (e >= 3) is generated by {-1, 5}, and by {-1} for e = 2.
// A character is the vector of exponents a_i with chi(g_i) = zeta_{n_i}^{a_i},
// n_i = ord(g_i). Evaluation goes through a discrete-log table shared by all
// characters of the same modulus.

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hwp/arith.hpp"
#include "hwp/cyclo.hpp"

namespace hwp {

/// Kronecker symbol (d/m), with (d/-1) = sign(d) and (d/2) from d mod 8.
int kronecker(i64 d, i64 m);

/// Structure of (Z/MZ)^x. Shared and immutable once built.
class CharacterGroup {
public:
    struct Generator {
        u64 prime;      // p of the component this generator belongs to
        u64 prime_power;
        u64 local;      // generator mod p^e (2^e - 1 stands for -1)
        u64 global;     // CRT lift: local mod p^e, 1 mod M / p^e
        u64 order;
    };

    static std::shared_ptr<const CharacterGroup> get(u64 modulus);

    u64 modulus() const { return modulus_; }
    u64 size() const { return size_; }
    /// lcm of generator orders
    u64 exponent() const { return exponent_; }
    const std::vector<Generator>& generators() const { return gens_; }

    bool is_unit(u64 r) const { return logs_[(r % modulus_) * stride()] >= 0; }
    /// Discrete log of r (mod M) with respect to generator i; r must be a unit.
    u64 log(u64 r, size_t i) const { return static_cast<u64>(logs_[(r % modulus_) * stride() + i]); }

    explicit CharacterGroup(u64 modulus);

private:
    size_t stride() const { return gens_.empty() ? 1 : gens_.size(); }

    u64 modulus_;
    u64 size_;
    u64 exponent_ = 1;
    std::vector<Generator> gens_;
    std::vector<int> logs_;  // modulus x stride, -1 marks non-units
};

/// A value exp(2 pi i num / den) on the unit circle, num/den reduced.
struct Turn {
    u64 num = 0;
    u64 den = 1;
};

class DirichletCharacter {
public:
    enum class Parity { Even, Odd };

    /// The principal character modulo M.
    explicit DirichletCharacter(u64 modulus = 1);
    DirichletCharacter(u64 modulus, std::vector<u64> exponents);

    /// Builds the character mod M whose value at each group generator is
    /// value(g). The caller guarantees that value restricted to units mod M is
    /// a homomorphism.
    template <class F>
    static DirichletCharacter from_generator_values(u64 modulus, F&& value);

    u64 modulus() const { return group_->modulus(); }
    const std::vector<u64>& exponents() const { return exponents_; }
    u64 order() const { return order_; }
    u64 conductor() const { return conductor_; }
    Parity parity() const { return parity_; }
    bool is_even() const { return parity_ == Parity::Even; }
    bool is_principal() const { return order_ == 1; }
    bool is_primitive() const { return conductor_ == modulus(); }
    const CharacterGroup& group() const { return *group_; }

    /// Exponent e with chi(m) = zeta_order^e, or nullopt when gcd(m, M) > 1.
    std::optional<u64> exponent_at(i64 m) const;
    CycloNumber eval(i64 m) const;
    std::complex<double> eval_complex(i64 m) const;

    DirichletCharacter conj() const;
    /// The character mod a multiple of the modulus that this one induces.
    DirichletCharacter induced(u64 new_modulus) const;
    /// The primitive character of modulus conductor() inducing this one.
    DirichletCharacter restrict_to_conductor() const;

    /// `M;exponent_vector;conductor;parity`
    std::string debug_line() const;

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
    }
    /// Pointwise product, at modulus lcm of the two moduli.
    friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);

private:
    void finish();

    std::shared_ptr<const CharacterGroup> group_;
    std::vector<u64> exponents_;
    u64 order_ = 1;
    u64 conductor_ = 1;
    Parity parity_ = Parity::Even;
    std::vector<int> table_;  // exponent mod order_ per residue; -1 for non-units
};

/// All phi(M) characters mod M; principal first, then lexicographic on
/// exponent vectors (first generator most significant).
std::vector<DirichletCharacter> enumerate_characters(u64 modulus);

inline u64 conductor(const DirichletCharacter& chi) { return chi.conductor(); }
inline DirichletCharacter restrict_to_conductor(const DirichletCharacter& chi) {
    return chi.restrict_to_conductor();
}

/// psi_d(m) = psi(m) * (-1/m)^k * (d/m), as a character mod d * lcm(N, 4).
/// Throws DomainError if d is not square-free.
DirichletCharacter twist_psi_d(const DirichletCharacter& psi, unsigned k, u64 d);

/// Bernoulli number B_n with B_1 = -1/2.
Rational bernoulli_number(unsigned n);
/// Bernoulli polynomial B_n(x).
Rational bernoulli_polynomial(unsigned n, const Rational& x);

/// B_{k,chi} = M^{k-1} sum_{a=1}^{M} chi(a) B_k(a/M), M the modulus of chi.
/// The (k = 1, principal mod 1) case returns -1/2.
CycloNumber generalized_bernoulli(const DirichletCharacter& chi, unsigned k);

// ---------------------------------------------------------------------------

template <class F>
DirichletCharacter DirichletCharacter::from_generator_values(u64 modulus, F&& value) {
    auto group = CharacterGroup::get(modulus);
    std::vector<u64> ex;
    ex.reserve(group->generators().size());
    for (const auto& g : group->generators()) {
        Turn t = value(g.global);
        // zeta_den^num must be an n-th root of unity: n * num / den integral
        if ((static_cast<unsigned __int128>(g.order) * t.num) % t.den != 0)
            throw DomainError("from_generator_values: value order incompatible with generator order");
        ex.push_back(static_cast<u64>((static_cast<unsigned __int128>(g.order) * t.num / t.den) % g.order));
    }
    return DirichletCharacter(modulus, std::move(ex));
}

}  // namespace hwp
