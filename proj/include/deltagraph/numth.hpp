#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace deltagraph {

using u128 = unsigned __int128;

std::string u128_to_string(u128 v);
u128 u128_from_string(std::string_view s); // decimal digits only

/// A positive integer (< 2^128) together with its complete factorization,
/// primes strictly increasing. The value 1 carries an empty list.
struct FactoredInteger {
    u128 value = 1;
    std::vector<std::pair<u128, unsigned>> prime_powers;
};

/// Trial division through 10^6, then Brent-cycle Pollard rho with batched
/// gcds on what remains.
FactoredInteger factorize(u128 v);

/// All divisors, ascending.
std::vector<u128> divisors(const FactoredInteger& v);

/// Moebius mu: 0 on non-squarefree values, else (-1)^(number of primes).
int moebius(const FactoredInteger& v);

/// Deterministic for v < 2^64 (fixed Miller-Rabin base set); strong bases
/// plus a strong Lucas test above that.
bool is_probable_prime(u128 v);

u128 mulmod(u128 a, u128 b, u128 m);
u128 powmod(u128 base, u128 e, u128 m);
u128 gcd_u128(u128 a, u128 b);

/// Multiplicative order of 2 modulo odd n >= 3 (the minimal t with
/// 2^t = 1 mod n), found by descending from the Carmichael bound.
std::uint64_t gamma2(std::uint64_t n);

/// q(n) = n * (2^(gamma2(n)/2) - 1) when gamma2(n) is even, else
/// 2^gamma2(n) - 1. Throws std::overflow_error past the 128-bit ceiling.
u128 q_of(std::uint64_t n);

bool is_power_of_two(u128 v);

} // namespace deltagraph
