#include "deltagraph/numth.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace deltagraph {

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out += static_cast<char>('0' + static_cast<unsigned>(v % 10));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

u128 u128_from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("u128_from_string: empty string");
    u128 v = 0;
    for (const char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("u128_from_string: bad digit");
        const u128 next = v * 10 + static_cast<unsigned>(c - '0');
        if (next < v) throw std::overflow_error("u128_from_string: overflow");
        v = next;
    }
    return v;
}

u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        const u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

namespace {

u128 addmod(u128 a, u128 b, u128 m) {
    // a, b < m; avoids the 129-bit intermediate.
    if (a >= m - b) return a - (m - b);
    return a + b;
}

} // namespace

u128 mulmod(u128 a, u128 b, u128 m) {
    if (m == 0) throw std::domain_error("mulmod: zero modulus");
    a %= m;
    b %= m;
    if (m <= ~std::uint64_t{0}) return (a * b) % m; // product fits in 128 bits
    u128 result = 0;
    while (b != 0) {
        if (b & 1) result = addmod(result, a, m);
        a = addmod(a, a, m);
        b >>= 1;
    }
    return result;
}

u128 powmod(u128 base, u128 e, u128 m) {
    if (m == 0) throw std::domain_error("powmod: zero modulus");
    if (m == 1) return 0;
    u128 result = 1;
    base %= m;
    while (e != 0) {
        if (e & 1) result = mulmod(result, base, m);
        e >>= 1;
        if (e != 0) base = mulmod(base, base, m);
    }
    return result;
}

bool is_power_of_two(u128 v) { return v != 0 && (v & (v - 1)) == 0; }

namespace {

bool miller_rabin_witness(u128 n, u128 a, u128 d, unsigned s) {
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true; // a witnesses compositeness
}

// Jacobi symbol (a/n) for odd n > 0 and small |a|.
int jacobi(long long a, u128 n) {
    u128 ua;
    if (a < 0)
        ua = (n - static_cast<u128>(-a) % n) % n;
    else
        ua = static_cast<u128>(a) % n;
    int sign = 1;
    u128 m = n;
    while (ua != 0) {
        unsigned tz = 0;
        while ((ua & 1) == 0) {
            ua >>= 1;
            ++tz;
        }
        if (tz % 2 == 1) {
            const unsigned mm = static_cast<unsigned>(m & 7);
            if (mm == 3 || mm == 5) sign = -sign;
        }
        if ((ua & 3) == 3 && (m & 3) == 3) sign = -sign;
        std::swap(ua, m);
        ua %= m;
    }
    return m == 1 ? sign : 0;
}

bool is_perfect_square(u128 v) {
    if (v == 0) return true;
    u128 lo = 1, hi = u128{1} << 64;
    while (lo < hi) {
        const u128 mid = lo + (hi - lo) / 2;
        if (mid * mid < v && mid < (u128{1} << 64))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo * lo == v;
}

// Strong Lucas probable prime test with Selfridge's parameter choice.
// Callers have already screened small primes, so a zero Jacobi symbol
// means a shared factor and hence a composite.
bool strong_lucas_prp(u128 n) {
    long long d = 5;
    for (;;) {
        const int j = jacobi(d, n);
        if (j == -1) break;
        if (j == 0) return false;
        d = d > 0 ? -(d + 2) : -(d - 2);
    }
    // P = 1, Q = (1 - D)/4, all arithmetic mod n.
    const u128 q = d < 0 ? (static_cast<u128>(-d) + 1) / 4 % n
                         : (n - (static_cast<u128>(d) - 1) / 4 % n) % n;
    const u128 dm = d < 0 ? n - static_cast<u128>(-d) % n : static_cast<u128>(d) % n;

    u128 m = n + 1;
    unsigned s = 0;
    while ((m & 1) == 0) {
        m >>= 1;
        ++s;
    }
    // Compute U_m, V_m by the binary double-and-add chain.
    u128 u = 1, v = 1, qk = q;
    int bits = 0;
    for (u128 t = m; t > 1; t >>= 1) ++bits;
    const u128 inv2 = (n + 1) / 2; // n odd
    for (int i = bits - 1; i >= 0; --i) {
        // double: U_2k = U V, V_2k = V^2 - 2 Q^k
        u = mulmod(u, v, n);
        v = addmod(mulmod(v, v, n), n - mulmod(2 % n, qk, n), n);
        qk = mulmod(qk, qk, n);
        if ((m >> i) & 1) {
            // add one: U_{2k+1} = (P U + V)/2, V_{2k+1} = (D U + P V)/2
            const u128 nu = mulmod(addmod(u, v, n), inv2, n);
            const u128 nv = mulmod(addmod(mulmod(dm, u, n), v, n), inv2, n);
            u = nu;
            v = nv;
            qk = mulmod(qk, q, n);
        }
    }
    if (u == 0 || v == 0) return true;
    for (unsigned r = 1; r < s; ++r) {
        v = addmod(mulmod(v, v, n), n - mulmod(2 % n, qk, n), n);
        qk = mulmod(qk, qk, n);
        if (v == 0) return true;
    }
    return false;
}

} // namespace

bool is_probable_prime(u128 v) {
    if (v < 2) return false;
    for (const unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (v == p) return true;
        if (v % p == 0) return false;
    }
    u128 d = v - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Proven-deterministic base set below 2^64.
    static constexpr std::array<std::uint64_t, 12> kBases = {2,  3,  5,  7,  11, 13,
                                                             17, 19, 23, 29, 31, 37};
    for (const auto a : kBases)
        if (miller_rabin_witness(v, a, d, s)) return false;
    if (v <= ~std::uint64_t{0}) return true;
    if (is_perfect_square(v)) return false;
    return strong_lucas_prp(v);
}

namespace {

// Odd primes below 10^6, built once.
const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1'000'000;
        std::vector<bool> composite(limit, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 3; i < limit; i += 2) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < limit; j += 2ull * i)
                composite[static_cast<std::uint32_t>(j)] = true;
        }
        return out;
    }();
    return primes;
}

struct Rng64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

// Brent's variant of Pollard rho with gcds batched 128 iterations at a time.
u128 pollard_brent(u128 n, Rng64& rng) {
    if (n % 2 == 0) return 2;
    for (;;) {
        const u128 y0 = rng.next() % (n - 1) + 1;
        const u128 c = rng.next() % (n - 1) + 1;
        u128 y = y0, g = 1, q = 1, x = 0, ys = 0;
        const unsigned batch = 128;
        std::uint64_t r = 1;
        auto step = [&](u128 v) { return addmod(mulmod(v, v, n), c, n); };
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = step(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                const std::uint64_t chunk = std::min<std::uint64_t>(batch, r - k);
                for (std::uint64_t i = 0; i < chunk; ++i) {
                    y = step(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u128(q, n);
                k += chunk;
            }
            r *= 2;
        }
        if (g == n) {
            // Batch overshot; replay one step at a time from the checkpoint.
            g = 1;
            y = ys;
            while (g == 1) {
                y = step(y);
                g = gcd_u128(x > y ? x - y : y - x, n);
            }
        }
        if (g != n) return g;
        // Degenerate cycle; retry with fresh parameters.
    }
}

void factor_into(u128 v, std::vector<u128>& primes, Rng64& rng) {
    if (v == 1) return;
    if (is_probable_prime(v)) {
        primes.push_back(v);
        return;
    }
    const u128 d = pollard_brent(v, rng);
    factor_into(d, primes, rng);
    factor_into(v / d, primes, rng);
}

} // namespace

FactoredInteger factorize(u128 v) {
    if (v == 0) throw std::invalid_argument("factorize: value must be >= 1");
    FactoredInteger out;
    out.value = v;
    if (v == 1) return out;

    std::vector<u128> primes;
    while ((v & 1) == 0) {
        primes.push_back(2);
        v >>= 1;
    }
    if (v <= ~std::uint64_t{0}) {
        // 64-bit trial loop; u128 division is an order of magnitude slower.
        std::uint64_t w = static_cast<std::uint64_t>(v);
        for (const std::uint32_t p : small_primes()) {
            if (static_cast<std::uint64_t>(p) * p > w) break;
            while (w % p == 0) {
                primes.push_back(p);
                w /= p;
            }
        }
        v = w;
    } else {
        for (const std::uint32_t p : small_primes()) {
            if (static_cast<u128>(p) * p > v) break;
            while (v % p == 0) {
                primes.push_back(p);
                v /= p;
            }
            if (v <= ~std::uint64_t{0}) break;
        }
        if (v > 1 && v <= ~std::uint64_t{0}) {
            std::uint64_t w = static_cast<std::uint64_t>(v);
            for (const std::uint32_t p : small_primes()) {
                if (static_cast<std::uint64_t>(p) * p > w) break;
                while (w % p == 0) {
                    primes.push_back(p);
                    w /= p;
                }
            }
            v = w;
        }
    }
    Rng64 rng{0xdecafbadull};
    if (v > 1) factor_into(v, primes, rng);

    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.prime_powers.emplace_back(primes[i], static_cast<unsigned>(j - i));
        i = j;
    }
    return out;
}

std::vector<u128> divisors(const FactoredInteger& v) {
    std::vector<u128> out{1};
    for (const auto& [p, e] : v.prime_powers) {
        const std::size_t base = out.size();
        u128 pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int moebius(const FactoredInteger& v) {
    for (const auto& [p, e] : v.prime_powers)
        if (e >= 2) return 0;
    return v.prime_powers.size() % 2 == 0 ? 1 : -1;
}

namespace {

std::uint64_t lcm_u64_checked(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t g = static_cast<std::uint64_t>(gcd_u128(a, b));
    const u128 l = static_cast<u128>(a / g) * b;
    if (l > ~std::uint64_t{0}) throw std::overflow_error("lcm: exceeds 64 bits");
    return static_cast<std::uint64_t>(l);
}

} // namespace

std::uint64_t gamma2(std::uint64_t n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("gamma2: n must be odd and >= 3");
    // Carmichael bound: lambda(n) = lcm of p^(e-1) (p-1) over prime powers.
    const FactoredInteger fn = factorize(n);
    std::uint64_t bound = 1;
    for (const auto& [p128, e] : fn.prime_powers) {
        const std::uint64_t p = static_cast<std::uint64_t>(p128);
        std::uint64_t lam = p - 1;
        for (unsigned k = 1; k < e; ++k) lam *= p;
        bound = lcm_u64_checked(bound, lam);
    }
    std::uint64_t t = bound;
    const FactoredInteger ft = factorize(bound);
    for (const auto& [p, e] : ft.prime_powers) {
        while (t % static_cast<std::uint64_t>(p) == 0 &&
               powmod(2, t / static_cast<std::uint64_t>(p), n) == 1)
            t /= static_cast<std::uint64_t>(p);
    }
    if (powmod(2, t, n) != 1) throw std::logic_error("gamma2: descent failed");
    return t;
}

u128 q_of(std::uint64_t n) {
    const std::uint64_t g = gamma2(n);
    if (g % 2 == 0) {
        const std::uint64_t half = g / 2;
        if (half >= 128) throw std::overflow_error("q_of: exceeds 128 bits");
        const u128 pw = (u128{1} << half) - 1;
        const u128 q = pw * n;
        if (n != 0 && q / n != pw) throw std::overflow_error("q_of: exceeds 128 bits");
        return q;
    }
    if (g >= 128) throw std::overflow_error("q_of: exceeds 128 bits");
    return (u128{1} << g) - 1;
}

} // namespace deltagraph
