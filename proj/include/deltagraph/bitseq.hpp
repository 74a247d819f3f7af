#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace deltagraph {

/// A Z_2-valued sequence f(1..n) on the cyclic index set {1,...,n}.
///
/// Bit-packing convention (the one place it is defined): domain position i
/// (1-based) lives at machine bit j = i-1, i.e. bit j of words()[j/64] is
/// f(j+1). The text form is a '0'/'1' string whose leftmost character is
/// f(1). All operations on sequences are pure; values are immutable once
/// built except through set().
class BitSequence {
  public:
    explicit BitSequence(std::size_t n);

    static BitSequence zero(std::size_t n) { return BitSequence(n); }
    static BitSequence ones(std::size_t n);
    /// The indicator function of position k (1-based), delta_k.
    static BitSequence unit(std::size_t n, std::size_t k);
    /// Parses a '0'/'1' string; leftmost character is f(1).
    static BitSequence parse(std::string_view text);
    /// Unpacks the low n bits of v (bit j = f(j+1)); requires n <= 64.
    static BitSequence from_bits(std::size_t n, std::uint64_t v);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const;       // 1-based, 1 <= i <= n
    void set(std::size_t i, bool v);     // 1-based
    std::size_t weight() const;
    bool is_zero() const;
    std::string to_string() const;
    /// Packs into a single word (inverse of from_bits); requires n <= 64.
    std::uint64_t to_bits() const;

    const std::vector<std::uint64_t>& words() const { return words_; }

    BitSequence& operator^=(const BitSequence& other);
    friend BitSequence operator^(BitSequence a, const BitSequence& b) {
        a ^= b;
        return a;
    }
    bool operator==(const BitSequence& other) const = default;

  private:
    std::size_t n_;
    std::vector<std::uint64_t> words_;

    void trim_top();

    friend BitSequence delta(const BitSequence& f);
};

struct BitSequenceHash {
    std::size_t operator()(const BitSequence& f) const noexcept;
};

/// The cyclic difference operator: (delta f)(x) = f(x) + f(x+1) mod 2,
/// with f(n+1) read as f(1). Realized as f XOR rotate(f) where
/// rotate(f)(x) = f(x+1).
BitSequence delta(const BitSequence& f);

/// delta applied k times. Large k (above a small multiple of n) is routed
/// through (1+x)^k mod x^n+1, so k up to 2^64-1 costs O(log k) ring
/// multiplications instead of k sequence passes.
BitSequence delta_iter(const BitSequence& f, std::uint64_t k);

/// All f with delta(f) = g. Empty when g has odd weight, otherwise exactly
/// two solutions differing by the all-ones sequence (ker delta = {0, ones}).
std::vector<BitSequence> delta_kernel_preimages(const BitSequence& g);

/// Minimal (tail, cycle) shape of the trajectory f, delta f, delta^2 f, ...
struct OrbitSummary {
    std::uint64_t tail_length;
    std::uint64_t cycle_length;
    bool operator==(const OrbitSummary&) const = default;
};

/// Brent cycle detection: O(tail + cycle) delta applications, constant
/// memory, so cycle lengths around 10^9 stay feasible.
OrbitSummary orbit_summary(const BitSequence& f);

} // namespace deltagraph
