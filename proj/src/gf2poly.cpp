#include "deltagraph/gf2poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace deltagraph {

namespace {

constexpr std::size_t kWordBits = 64;

// Deterministic stream for the equal-degree splitting trials; a fixed seed
// keeps factorizations (and everything downstream) byte-reproducible.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

} // namespace

Gf2Poly Gf2Poly::one_plus_x() {
    Gf2Poly p;
    p.words_ = {0b11};
    return p;
}

Gf2Poly Gf2Poly::monomial(std::size_t d) {
    Gf2Poly p;
    p.words_.assign(d / kWordBits + 1, 0);
    p.words_.back() = std::uint64_t{1} << (d % kWordBits);
    return p;
}

std::optional<std::size_t> Gf2Poly::degree() const {
    if (words_.empty()) return std::nullopt;
    const std::size_t top = words_.size() - 1;
    return top * kWordBits + (kWordBits - 1 - std::countl_zero(words_[top]));
}

bool Gf2Poly::coeff(std::size_t i) const {
    const std::size_t w = i / kWordBits;
    if (w >= words_.size()) return false;
    return (words_[w] >> (i % kWordBits)) & 1;
}

void Gf2Poly::set_coeff(std::size_t i, bool v) {
    const std::size_t w = i / kWordBits;
    if (w >= words_.size()) {
        if (!v) return;
        words_.resize(w + 1, 0);
    }
    const std::uint64_t bit = std::uint64_t{1} << (i % kWordBits);
    if (v)
        words_[w] |= bit;
    else
        words_[w] &= ~bit;
    trim();
}

Gf2Poly& Gf2Poly::operator^=(const Gf2Poly& other) {
    if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
    for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] ^= other.words_[w];
    trim();
    return *this;
}

void Gf2Poly::trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

void Gf2Poly::xor_shifted_into(std::vector<std::uint64_t>& res, std::size_t shift_bits) const {
    const std::size_t off = shift_bits / kWordBits;
    const std::size_t sh = shift_bits % kWordBits;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        res[off + w] ^= words_[w] << sh;
        if (sh != 0) res[off + w + 1] ^= words_[w] >> (kWordBits - sh);
    }
}

Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b) {
    if (a.is_zero() || b.is_zero()) return Gf2Poly::zero();
    // Schoolbook over words: XOR a shifted copy of b in for every set bit
    // of a. Degrees stay desk-scale here, no need for anything fancier.
    std::vector<std::uint64_t> res(a.words_.size() + b.words_.size() + 1, 0);
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
        std::uint64_t bits = a.words_[w];
        while (bits != 0) {
            const int k = std::countr_zero(bits);
            bits &= bits - 1;
            b.xor_shifted_into(res, w * kWordBits + static_cast<std::size_t>(k));
        }
    }
    Gf2Poly out;
    out.words_ = std::move(res);
    out.trim();
    return out;
}

PolyDivMod poly_divmod(const Gf2Poly& a, const Gf2Poly& b) {
    const auto db = b.degree();
    if (!db) throw std::domain_error("poly_divmod: division by the zero polynomial");
    Gf2Poly r = a;
    Gf2Poly q;
    auto dr = r.degree();
    while (dr && *dr >= *db) {
        const std::size_t shift = *dr - *db;
        std::vector<std::uint64_t> rw(r.words().begin(), r.words().end());
        rw.resize(rw.size() + 1, 0);
        b.xor_shifted_into(rw, shift);
        Gf2Poly nr;
        nr.words_ = std::move(rw);
        nr.trim();
        r = std::move(nr);
        q.set_coeff(shift, true);
        dr = r.degree();
    }
    return {std::move(q), std::move(r)};
}

Gf2Poly poly_mod(const Gf2Poly& a, const Gf2Poly& modulus) {
    return poly_divmod(a, modulus).remainder;
}

Gf2Poly poly_mul_mod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& modulus) {
    return poly_mod(poly_mul(a, b), modulus);
}

Gf2Poly poly_powmod(const Gf2Poly& base, u128 e, const Gf2Poly& modulus) {
    if (modulus.is_zero()) throw std::domain_error("poly_powmod: zero modulus");
    Gf2Poly result = poly_mod(Gf2Poly::one(), modulus);
    Gf2Poly b = poly_mod(base, modulus);
    while (e != 0) {
        if (e & 1) result = poly_mul_mod(result, b, modulus);
        e >>= 1;
        if (e != 0) b = poly_mul_mod(b, b, modulus);
    }
    return result;
}

Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b) {
    // Monic normalization is automatic over GF(2).
    while (!b.is_zero()) {
        Gf2Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Gf2Poly poly_divexact(const Gf2Poly& a, const Gf2Poly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("poly_divexact: not divisible");
    return q;
}

Gf2Poly xn_plus_1(std::size_t n) {
    Gf2Poly p = Gf2Poly::monomial(n);
    p.set_coeff(0, true);
    return p;
}

Gf2Poly embed(const BitSequence& f) {
    const std::size_t n = f.size();
    Gf2Poly p;
    for (std::size_t i = 1; i <= n; ++i)
        if (f.get(i)) p.set_coeff(n - i, true);
    return p;
}

BitSequence unembed(const Gf2Poly& p, std::size_t n) {
    const auto d = p.degree();
    if (d && *d >= n) throw std::invalid_argument("unembed: degree must be < n");
    BitSequence f(n);
    for (std::size_t i = 1; i <= n; ++i)
        if (p.coeff(n - i)) f.set(i, true);
    return f;
}

std::vector<std::vector<std::uint64_t>> cyclotomic_cosets(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("cyclotomic_cosets: m must be >= 1");
    std::vector<bool> seen(m, false);
    std::vector<std::vector<std::uint64_t>> cosets;
    for (std::uint64_t a = 0; a < m; ++a) {
        if (seen[a]) continue;
        std::vector<std::uint64_t> coset;
        std::uint64_t r = a;
        do {
            seen[r] = true;
            coset.push_back(r);
            r = (r * 2) % m;
        } while (r != a);
        std::sort(coset.begin(), coset.end());
        cosets.push_back(std::move(coset));
    }
    return cosets;
}

namespace {

// x^(2^d) mod u via d squarings (the exponent itself may not fit any
// machine integer).
Gf2Poly frobenius_power_of_x(std::size_t d, const Gf2Poly& u) {
    Gf2Poly xp = poly_mod(Gf2Poly::x(), u);
    for (std::size_t j = 0; j < d; ++j) xp = poly_mul_mod(xp, xp, u);
    return xp;
}

Gf2Poly random_poly_below(std::size_t deg_bound, SplitMix64& rng) {
    Gf2Poly t;
    const std::size_t words = (deg_bound + kWordBits - 1) / kWordBits;
    for (std::size_t w = 0; w < words; ++w) {
        const std::uint64_t v = rng.next();
        for (std::size_t b = 0; b < kWordBits; ++b) {
            const std::size_t pos = w * kWordBits + b;
            if (pos >= deg_bound) break;
            if ((v >> b) & 1) t.set_coeff(pos, true);
        }
    }
    return t;
}

// Equal-degree splitting in characteristic 2: gcd with the trace map
// T(t) = t + t^2 + ... + t^(2^(d-1)) splits a product of distinct
// degree-d irreducibles with probability about 1/2 per trial.
void equal_degree_split(const Gf2Poly& u, std::size_t d, SplitMix64& rng,
                        std::vector<Gf2Poly>& out) {
    const std::size_t du = *u.degree();
    if (du == d) {
        out.push_back(u);
        return;
    }
    for (;;) {
        Gf2Poly t = random_poly_below(du, rng);
        if (t.is_zero()) continue;
        Gf2Poly trace = t;
        Gf2Poly power = t;
        for (std::size_t j = 1; j < d; ++j) {
            power = poly_mul_mod(power, power, u);
            trace ^= power;
        }
        const Gf2Poly g = poly_gcd(u, trace);
        const auto dg = g.degree();
        if (!dg || *dg == 0 || *dg == du) continue;
        equal_degree_split(g, d, rng, out);
        equal_degree_split(poly_divexact(u, g), d, rng, out);
        return;
    }
}

} // namespace

CyclotomicFactorization factor_xm_plus_1(std::uint64_t m) {
    if (m == 0 || m % 2 == 0)
        throw std::invalid_argument("factor_xm_plus_1: m must be odd and >= 1");

    CyclotomicFactorization result;
    result.m = m;
    result.cosets = cyclotomic_cosets(m);
    result.multiplicity = 1;

    // Coset sizes tell us the complete degree profile of the factorization
    // (m odd makes x^m+1 squarefree), so distinct-degree splitting can peel
    // the degrees off in ascending order.
    std::vector<std::size_t> degrees;
    for (const auto& c : result.cosets) degrees.push_back(c.size());
    std::vector<std::size_t> order = degrees;
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());

    SplitMix64 rng{0x5eedc0de5eedc0deull ^ m};
    Gf2Poly rem = xn_plus_1(m);
    std::vector<std::vector<Gf2Poly>> by_degree(*std::max_element(order.begin(), order.end()) + 1);
    for (const std::size_t d : order) {
        const auto count =
            static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), d));
        Gf2Poly probe = frobenius_power_of_x(d, rem) ^ poly_mod(Gf2Poly::x(), rem);
        Gf2Poly product = poly_gcd(rem, probe);
        if (!product.degree() || *product.degree() != d * count)
            throw std::logic_error("factor_xm_plus_1: distinct-degree split disagrees with cosets");
        std::vector<Gf2Poly> pieces;
        equal_degree_split(product, d, rng, pieces);
        std::sort(pieces.begin(), pieces.end(), [](const Gf2Poly& a, const Gf2Poly& b) {
            return std::lexicographical_compare(a.words().rbegin(), a.words().rend(),
                                                b.words().rbegin(), b.words().rend());
        });
        by_degree[d] = std::move(pieces);
        rem = poly_divexact(rem, product);
    }
    if (!rem.is_one()) throw std::logic_error("factor_xm_plus_1: leftover factor");

    // Attach factors to cosets by degree, consuming the sorted pieces in
    // coset order.
    std::vector<std::size_t> used(by_degree.size(), 0);
    Gf2Poly check = Gf2Poly::one();
    for (const auto& coset : result.cosets) {
        const std::size_t d = coset.size();
        const Gf2Poly& f = by_degree[d].at(used[d]++);
        result.factors.push_back({f, d});
        check = poly_mul(check, f);
    }
    if (!(check == xn_plus_1(m)))
        throw std::logic_error("factor_xm_plus_1: re-multiplication check failed");
    return result;
}

CyclotomicFactorization factor_xn_plus_1(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor_xn_plus_1: n must be >= 1");
    std::uint64_t m = n;
    std::uint64_t mult = 1;
    while (m % 2 == 0) {
        m /= 2;
        mult *= 2;
    }
    CyclotomicFactorization result = factor_xm_plus_1(m);
    result.multiplicity = mult;
    return result;
}

namespace {

bool parse_hex_digit(char c, unsigned& out) {
    if (c >= '0' && c <= '9') {
        out = static_cast<unsigned>(c - '0');
        return true;
    }
    const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lc >= 'a' && lc <= 'f') {
        out = static_cast<unsigned>(lc - 'a') + 10;
        return true;
    }
    return false;
}

Gf2Poly parse_monomial_list(std::string_view text) {
    Gf2Poly p;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('+', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view term = text.substr(pos, end - pos);
        if (term.empty()) throw std::invalid_argument("Gf2Poly::parse: empty term");
        if (term == "1") {
            p.set_coeff(0, !p.coeff(0));
        } else if (term == "x") {
            p.set_coeff(1, !p.coeff(1));
        } else if (term.size() > 2 && term[0] == 'x' && term[1] == '^') {
            std::size_t e = 0;
            for (const char c : term.substr(2)) {
                if (c < '0' || c > '9') throw std::invalid_argument("Gf2Poly::parse: bad exponent");
                e = e * 10 + static_cast<std::size_t>(c - '0');
            }
            p.set_coeff(e, !p.coeff(e));
        } else {
            throw std::invalid_argument("Gf2Poly::parse: unrecognized term '" + std::string(term) +
                                        "'");
        }
        pos = end + 1;
    }
    return p;
}

} // namespace

Gf2Poly Gf2Poly::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("Gf2Poly::parse: empty string");
    const bool prefixed = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
    const bool has_x = text.find('x') != std::string_view::npos ||
                       text.find('X') != std::string_view::npos;
    if (prefixed || !has_x) {
        std::string_view hex = prefixed ? text.substr(2) : text;
        Gf2Poly p;
        std::size_t bit = 0;
        for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
            unsigned digit = 0;
            if (!parse_hex_digit(*it, digit))
                throw std::invalid_argument("Gf2Poly::parse: bad hex digit");
            for (unsigned b = 0; b < 4; ++b)
                if ((digit >> b) & 1) p.set_coeff(bit + b, true);
        }
        return p;
    }
    return parse_monomial_list(text);
}

std::string Gf2Poly::to_monomial_string() const {
    if (is_zero()) return "0";
    std::string out;
    const std::size_t d = *degree();
    for (std::size_t i = d + 1; i-- > 0;) {
        if (!coeff(i)) continue;
        if (!out.empty()) out += '+';
        if (i == 0)
            out += '1';
        else if (i == 1)
            out += 'x';
        else
            out += "x^" + std::to_string(i);
    }
    return out;
}

std::string Gf2Poly::to_hex_string() const {
    if (is_zero()) return "0x0";
    static const char* digits = "0123456789abcdef";
    std::string out;
    const std::size_t nibbles = (*degree() / 4) + 1;
    for (std::size_t k = nibbles; k-- > 0;) {
        unsigned v = 0;
        for (unsigned b = 0; b < 4; ++b)
            if (coeff(k * 4 + b)) v |= 1u << b;
        out += digits[v];
    }
    return "0x" + out;
}

} // namespace deltagraph
