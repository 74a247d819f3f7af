#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "deltagraph/bitseq.hpp"
#include "deltagraph/numth.hpp"

namespace deltagraph {

mpz_class mpz_from_u128(u128 v);

/// n = 2^l * m with m odd, plus the dimension (2^l) and cardinality
/// (2^(2^l)) of the polynomial subspace Pol = ker(delta^n).
struct PolDimension {
    std::uint64_t n;
    unsigned l;
    std::uint64_t m;
    std::uint64_t dim;
    mpz_class count;
};
PolDimension pol_dimension(std::uint64_t n);

enum class Engine { Brute, Algebraic };

/// Maximal cycle length in the graph of delta on length-n sequences.
/// Brute: cycle length of the delta_1 orbit (Brent). Algebraic: the
/// multiplicative order of 1+x in GF(2)[x]/h, h = (x^n+1)/(x+1)^(2^l),
/// found by factoring the bound 2^l * lcm(2^|C|-1) over the nonzero
/// cyclotomic cosets C and descending prime by prime. For n a power of
/// two h = 1 (the zero ring) and s(n) = 1 by convention.
u128 s_of_n(std::uint64_t n, Engine engine);

/// The unique splitting f = p + r with p in Pol (delta^(2^l) p = 0) and
/// r in Exp (delta^(s(n)) r = r).
struct Decomposition {
    BitSequence p;
    BitSequence r;
};
Decomposition fitting_decompose(const BitSequence& f);

/// deg(f) = degree of the polynomial part (0 for constants and for 0),
/// ord(f) = order of the exp part (0 only for r = 0). Both are read off
/// one orbit walk: degree = max(tail-1, 0), order = cycle length unless
/// the orbit ends on the zero fixed point.
std::uint64_t degree_of(const BitSequence& f);
u128 order_of(const BitSequence& f);

/// Arnold's functional complexity: order first, degree as tie-break.
struct ComplexityKey {
    u128 order;
    std::uint64_t degree;
    friend std::strong_ordering operator<=>(const ComplexityKey& a, const ComplexityKey& b) {
        if (a.order != b.order) return a.order < b.order ? std::strong_ordering::less
                                                         : std::strong_ordering::greater;
        return a.degree <=> b.degree;
    }
    bool operator==(const ComplexityKey&) const = default;
};
ComplexityKey complexity_key(const BitSequence& f);
std::strong_ordering compare_complexity(const BitSequence& f, const BitSequence& g);

/// One class of connected components: `multiplicity` components, each a
/// cycle of length s with the tree of r = 2^(2^l) vertices rooted at
/// every cycle vertex.
struct ComponentClass {
    u128 s;
    mpz_class r;
    mpz_class multiplicity;
    bool operator==(const ComponentClass&) const = default;
};

struct ComponentCensus {
    std::uint64_t n = 0;
    unsigned l = 0;
    std::uint64_t m = 1;
    mpz_class tree_size;                 // 2^(2^l), shared by every class
    std::vector<ComponentClass> classes; // sorted by cycle length, distinct s
    mpz_class total_mass() const;        // sum multiplicity * s * r
    mpz_class component_count() const;
    bool operator==(const ComponentCensus&) const = default;
};

/// Exact component census from the ring structure: for each divisor d of
/// s(n), the fixed points of delta^d number 2^deg gcd((1+x)^d + 1, x^n+1);
/// Moebius inversion over the divisor lattice isolates exact periods.
ComponentCensus census_algebraic(std::uint64_t n);

/// Oracle engine: enumerates the cyclic subspace (image of delta^(2^l))
/// state by state and walks every cycle. Exponential in n - 2^l; refuses
/// n above the cap.
ComponentCensus census_bruteforce(std::uint64_t n, std::uint64_t cap = 22);

/// The cyclic subspace Exp = image of delta^(2^l), held as a reduced
/// row-echelon basis so that membership tests and state<->coordinate maps
/// are cheap. dimension() is n - 2^l.
class ExpSubspace {
  public:
    explicit ExpSubspace(std::uint64_t n);
    std::uint64_t n() const { return n_; }
    std::size_t dimension() const { return basis_.size(); }
    bool contains(const BitSequence& v) const;
    /// Pivot-bit coordinates of a member (requires contains(v)).
    std::uint64_t coordinates(const BitSequence& v) const;
    BitSequence element(std::uint64_t coords) const;

  private:
    std::uint64_t n_;
    std::vector<BitSequence> basis_;
    std::vector<std::size_t> pivots_;
};

/// The closed-form component identities for n = base * 2^m,
/// base in {3, 5, 7, 11} (families a-d). k_start selects the first index
/// of the k-indexed union: 1 reproduces the published census lists, 2 is
/// the literal printed range (kept available because the two disagree at
/// every m; see README).
enum class GarberFamily : char { A = 'a', B = 'b', C = 'c', D = 'd' };
ComponentCensus garber_family(GarberFamily family, unsigned m, unsigned k_start = 1);

/// One row of the prime scan around the open problem on s vs q.
struct PrimeScanRow {
    std::uint64_t p;
    std::uint64_t gamma2;
    u128 s;
    u128 q;
    bool s_equals_q;
    bool q_divisible_by_s;
};
std::vector<PrimeScanRow> conjecture_scan(std::uint64_t p_max);

/// Arnold's power-of-two question at a single n: when n divides s(n),
/// report s(n)/n + 1 and whether it is a power of two.
struct PowerCheckResult {
    std::uint64_t n;
    u128 s;
    bool applicable;
    u128 value;        // meaningful only when applicable
    bool power_of_two; // meaningful only when applicable
};
PowerCheckResult arnold_power_check(std::uint64_t n);

} // namespace deltagraph
