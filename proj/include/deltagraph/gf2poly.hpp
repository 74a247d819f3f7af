#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "deltagraph/bitseq.hpp"

namespace deltagraph {

using u128 = unsigned __int128;

/// A polynomial over GF(2), stored as a dense bit-vector: bit i of
/// words()[i/64] is the coefficient of x^i. The representation is kept
/// normalized (no all-zero top words), so the degree is the index of the
/// highest stored bit. Addition is XOR; there are no carries anywhere.
class Gf2Poly {
  public:
    Gf2Poly() = default; // the zero polynomial

    static Gf2Poly zero() { return {}; }
    static Gf2Poly one() { return monomial(0); }
    static Gf2Poly x() { return monomial(1); }
    static Gf2Poly one_plus_x();
    static Gf2Poly monomial(std::size_t d);
    /// Accepts either a hexadecimal coefficient string ("0x49" or "49",
    /// bit i = coefficient of x^i) or a monomial list ("x^6+x^3+1").
    static Gf2Poly parse(std::string_view text);

    bool is_zero() const { return words_.empty(); }
    bool is_one() const { return words_.size() == 1 && words_[0] == 1; }
    /// Index of the top set bit; nullopt for the zero polynomial (whose
    /// degree is -infinity and deliberately not an integer here).
    std::optional<std::size_t> degree() const;
    bool coeff(std::size_t i) const;
    void set_coeff(std::size_t i, bool v);

    std::string to_monomial_string() const; // "x^6+x^3+1", "0" for zero
    std::string to_hex_string() const;      // "0x49", "0x0" for zero

    const std::vector<std::uint64_t>& words() const { return words_; }

    Gf2Poly& operator^=(const Gf2Poly& other);
    friend Gf2Poly operator^(Gf2Poly a, const Gf2Poly& b) {
        a ^= b;
        return a;
    }
    bool operator==(const Gf2Poly& other) const = default;

    /// res ^= (*this) << shift_bits. Building block for mul/divmod.
    void xor_shifted_into(std::vector<std::uint64_t>& res, std::size_t shift_bits) const;

  private:
    std::vector<std::uint64_t> words_;

    void trim();
    friend Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b);
    friend struct PolyDivMod;
};

Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b);

struct PolyDivMod {
    Gf2Poly quotient;
    Gf2Poly remainder;
};
/// Long division; divisor must be nonzero.
PolyDivMod poly_divmod(const Gf2Poly& a, const Gf2Poly& b);

Gf2Poly poly_mod(const Gf2Poly& a, const Gf2Poly& modulus);
Gf2Poly poly_mul_mod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& modulus);
/// Square-and-multiply, O(log e) ring multiplications; e may need all 128
/// bits (divisor scans walk exponents past 2^64). modulus of degree 0 is
/// the zero ring and every result collapses to 0.
Gf2Poly poly_powmod(const Gf2Poly& base, u128 e, const Gf2Poly& modulus);
Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b);
/// Exact division; throws std::domain_error when b does not divide a.
Gf2Poly poly_divexact(const Gf2Poly& a, const Gf2Poly& b);

/// x^n + 1, the modulus under which the difference operator becomes
/// multiplication by 1+x.
Gf2Poly xn_plus_1(std::size_t n);

/// The ring embedding f |-> sum_i f(i) x^(n-i) (coefficients reversed), the
/// convention under which embed(delta(f)) = (1+x) * embed(f) mod x^n+1.
Gf2Poly embed(const BitSequence& f);
/// Inverse on representatives of degree < n; rejects higher degrees.
BitSequence unembed(const Gf2Poly& p, std::size_t n);

/// The factorization of x^m + 1 (m odd) into distinct irreducibles, one per
/// 2-cyclotomic coset mod m. Factors are listed in the same order as the
/// cosets and matched by degree = coset size; within one degree the
/// attachment of a particular factor to a particular coset is positional
/// (sorted by coefficient bits), not a root identification.
struct CyclotomicFactorization {
    std::uint64_t m = 1;
    std::vector<std::vector<std::uint64_t>> cosets; // each sorted; ordered by least element
    struct Factor {
        Gf2Poly poly;
        std::size_t degree;
        bool operator==(const Factor&) const = default;
    };
    std::vector<Factor> factors;
    std::uint64_t multiplicity = 1; // 2^l when describing x^(2^l * m) + 1
};

/// 2-cyclotomic cosets mod m: orbits of r |-> 2r on {0,...,m-1}.
std::vector<std::vector<std::uint64_t>> cyclotomic_cosets(std::uint64_t m);

/// Factor x^m + 1 for odd m >= 1. Irreducible factors are recovered by
/// distinct-degree splitting followed by equal-degree (trace) splitting;
/// the result is checked by re-multiplication.
CyclotomicFactorization factor_xm_plus_1(std::uint64_t m);

/// Factorization of x^n + 1 for arbitrary n = 2^l * m: the factors of
/// x^m + 1, each with multiplicity 2^l.
CyclotomicFactorization factor_xn_plus_1(std::uint64_t n);

} // namespace deltagraph
