#include "deltagraph/bitseq.hpp"

#include <bit>
#include <stdexcept>

#include "deltagraph/gf2poly.hpp"

namespace deltagraph {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

std::uint64_t top_mask(std::size_t n) {
    const std::size_t rem = n % kWordBits;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

// Switch-over from repeated application to ring exponentiation.
constexpr std::uint64_t kIterThresholdFactor = 2;

} // namespace

BitSequence::BitSequence(std::size_t n) : n_(n), words_(word_count(n), 0) {
    if (n == 0) throw std::invalid_argument("BitSequence: length must be >= 1");
}

BitSequence BitSequence::ones(std::size_t n) {
    BitSequence f(n);
    for (auto& w : f.words_) w = ~std::uint64_t{0};
    f.trim_top();
    return f;
}

BitSequence BitSequence::unit(std::size_t n, std::size_t k) {
    BitSequence f(n);
    if (k < 1 || k > n) throw std::out_of_range("BitSequence::unit: position out of range");
    f.set(k, true);
    return f;
}

BitSequence BitSequence::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("BitSequence::parse: empty string");
    BitSequence f(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '0' && c != '1') throw std::invalid_argument("BitSequence::parse: expected only '0'/'1'");
        if (c == '1') f.set(i + 1, true);
    }
    return f;
}

BitSequence BitSequence::from_bits(std::size_t n, std::uint64_t v) {
    if (n > 64) throw std::invalid_argument("BitSequence::from_bits: n must be <= 64");
    BitSequence f(n);
    f.words_[0] = v & top_mask(n);
    return f;
}

bool BitSequence::get(std::size_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("BitSequence::get: position out of range");
    const std::size_t j = i - 1;
    return (words_[j / kWordBits] >> (j % kWordBits)) & 1;
}

void BitSequence::set(std::size_t i, bool v) {
    if (i < 1 || i > n_) throw std::out_of_range("BitSequence::set: position out of range");
    const std::size_t j = i - 1;
    const std::uint64_t bit = std::uint64_t{1} << (j % kWordBits);
    if (v)
        words_[j / kWordBits] |= bit;
    else
        words_[j / kWordBits] &= ~bit;
}

std::size_t BitSequence::weight() const {
    std::size_t w = 0;
    for (const auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
}

bool BitSequence::is_zero() const {
    for (const auto word : words_)
        if (word != 0) return false;
    return true;
}

std::string BitSequence::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 1; i <= n_; ++i)
        if (get(i)) s[i - 1] = '1';
    return s;
}

std::uint64_t BitSequence::to_bits() const {
    if (n_ > 64) throw std::logic_error("BitSequence::to_bits: n must be <= 64");
    return words_[0];
}

BitSequence& BitSequence::operator^=(const BitSequence& other) {
    if (other.n_ != n_) throw std::invalid_argument("BitSequence: length mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

void BitSequence::trim_top() { words_.back() &= top_mask(n_); }

std::size_t BitSequenceHash::operator()(const BitSequence& f) const noexcept {
    // FNV-1a over the packed words plus the length.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(f.size());
    for (const auto w : f.words()) mix(w);
    return static_cast<std::size_t>(h);
}

BitSequence delta(const BitSequence& f) {
    const std::size_t n = f.size();
    const auto& in = f.words_;
    // rotate(f)(x) = f(x+1): shift the packed bits down by one and feed the
    // old bit 0 back in at position n-1, then XOR with f itself.
    BitSequence out(n);
    for (std::size_t w = 0; w < in.size(); ++w) {
        std::uint64_t rot = in[w] >> 1;
        if (w + 1 < in.size()) rot |= in[w + 1] << 63;
        out.words_[w] = in[w] ^ rot;
    }
    const std::size_t top = n - 1;
    out.words_[top / 64] ^= (in[0] & 1) << (top % 64);
    return out;
}

BitSequence delta_iter(const BitSequence& f, std::uint64_t k) {
    const std::size_t n = f.size();
    if (k <= kIterThresholdFactor * n) {
        BitSequence g = f;
        for (std::uint64_t i = 0; i < k; ++i) g = delta(g);
        return g;
    }
    const Gf2Poly modulus = xn_plus_1(n);
    const Gf2Poly step = poly_powmod(Gf2Poly::one_plus_x(), k, modulus);
    return unembed(poly_mul_mod(step, embed(f), modulus), n);
}

std::vector<BitSequence> delta_kernel_preimages(const BitSequence& g) {
    const std::size_t n = g.size();
    // Integrate: fix f(1) = 0 and propagate f(x+1) = g(x) + f(x); the
    // wrap-around equation g(n) = f(n) + f(1) then either holds for both
    // completions (f and f + ones) or for neither.
    BitSequence f(n);
    bool cur = false;
    for (std::size_t x = 1; x < n; ++x) {
        cur = cur ^ g.get(x);
        f.set(x + 1, cur);
    }
    if ((f.get(n) ^ f.get(1)) != g.get(n)) return {};
    BitSequence alt = f ^ BitSequence::ones(n);
    std::vector<BitSequence> out;
    if (f.get(1) == false) {
        out.push_back(std::move(f));
        out.push_back(std::move(alt));
    } else {
        out.push_back(std::move(alt));
        out.push_back(std::move(f));
    }
    return out;
}

OrbitSummary orbit_summary(const BitSequence& f) {
    // Brent: main phase finds the cycle length, re-synchronized walk the tail.
    std::uint64_t power = 1, lambda = 1;
    BitSequence tortoise = f;
    BitSequence hare = delta(f);
    while (!(tortoise == hare)) {
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        hare = delta(hare);
        ++lambda;
    }
    BitSequence front = f;
    BitSequence back = delta_iter(f, lambda);
    std::uint64_t mu = 0;
    while (!(front == back)) {
        front = delta(front);
        back = delta(back);
        ++mu;
    }
    return OrbitSummary{mu, lambda};
}

} // namespace deltagraph
