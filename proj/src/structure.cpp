#include "deltagraph/structure.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "deltagraph/gf2poly.hpp"

namespace deltagraph {

mpz_class mpz_from_u128(u128 v) {
    mpz_class hi(static_cast<unsigned long>(v >> 64));
    mpz_class lo(static_cast<unsigned long>(v & ~std::uint64_t{0}));
    return (hi << 64) | lo;
}

namespace {

struct TwoAdicSplit {
    unsigned l;
    std::uint64_t m;         // odd part
    std::uint64_t two_pow_l; // 2^l
};

TwoAdicSplit split_two_adic(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    TwoAdicSplit s{0, n, 1};
    while (s.m % 2 == 0) {
        s.m /= 2;
        ++s.l;
        s.two_pow_l *= 2;
    }
    return s;
}

mpz_class pow2_mpz(std::uint64_t e) {
    mpz_class v = 1;
    v <<= e;
    return v;
}

} // namespace

PolDimension pol_dimension(std::uint64_t n) {
    const TwoAdicSplit s = split_two_adic(n);
    return PolDimension{n, s.l, s.m, s.two_pow_l, pow2_mpz(s.two_pow_l)};
}

namespace {

u128 s_of_n_algebraic(std::uint64_t n) {
    const TwoAdicSplit sp = split_two_adic(n);
    if (sp.m == 1) return 1; // Exp = {0}; the zero ring's unit group is trivial
    // Order bound: ord(1+x) mod f^(2^l) divides (2^deg f - 1) * 2^l.
    u128 bound = sp.two_pow_l;
    for (const auto& coset : cyclotomic_cosets(sp.m)) {
        if (coset.size() == 1 && coset[0] == 0) continue;
        if (coset.size() >= 128) throw std::overflow_error("s_of_n: order bound exceeds 128 bits");
        const u128 term = (u128{1} << coset.size()) - 1;
        const u128 g = gcd_u128(bound, term);
        const u128 lcm = bound / g;
        if (term != 0 && lcm > static_cast<u128>(-1) / term)
            throw std::overflow_error("s_of_n: order bound exceeds 128 bits");
        bound = lcm * term;
    }
    const Gf2Poly h = poly_divexact(xn_plus_1(n), xn_plus_1(sp.two_pow_l));
    const Gf2Poly base = Gf2Poly::one_plus_x();
    const Gf2Poly one = Gf2Poly::one();
    u128 s = bound;
    for (const auto& [p, e] : factorize(bound).prime_powers) {
        for (unsigned k = 0; k < e; ++k) {
            if (s % p != 0) break;
            if (poly_powmod(base, s / p, h) == one)
                s /= p;
            else
                break;
        }
    }
    if (!(poly_powmod(base, s, h) == one)) throw std::logic_error("s_of_n: descent failed");
    return s;
}

} // namespace

u128 s_of_n(std::uint64_t n, Engine engine) {
    if (n == 0) throw std::invalid_argument("s_of_n: n must be >= 1");
    switch (engine) {
        case Engine::Brute:
            return orbit_summary(BitSequence::unit(n, 1)).cycle_length;
        case Engine::Algebraic:
            return s_of_n_algebraic(n);
    }
    throw std::invalid_argument("s_of_n: unknown engine");
}

Decomposition fitting_decompose(const BitSequence& f) {
    const std::uint64_t n = f.size();
    const TwoAdicSplit sp = split_two_adic(n);
    const u128 s = s_of_n_algebraic(n);
    // Projector exponent: smallest multiple of s(n) that is >= 2^l, so that
    // delta^t kills Pol and fixes Exp pointwise.
    const u128 t = s * ((sp.two_pow_l + s - 1) / s);
    BitSequence r(n);
    if (t <= 2 * n) {
        r = delta_iter(f, static_cast<std::uint64_t>(t));
    } else {
        const Gf2Poly modulus = xn_plus_1(n);
        const Gf2Poly proj = poly_powmod(Gf2Poly::one_plus_x(), t, modulus);
        r = unembed(poly_mul_mod(proj, embed(f), modulus), n);
    }
    return Decomposition{f ^ r, r};
}

namespace {

// Shared by degree_of / order_of / complexity_key: one Brent walk gives
// tail and cycle; the exp part is zero exactly when the cycle is the
// fixed point 0, i.e. when delta^tail f = 0.
ComplexityKey key_from_orbit(const BitSequence& f) {
    const OrbitSummary os = orbit_summary(f);
    const bool exp_part_zero = delta_iter(f, os.tail_length).is_zero();
    return ComplexityKey{exp_part_zero ? u128{0} : u128{os.cycle_length},
                         os.tail_length > 0 ? os.tail_length - 1 : 0};
}

} // namespace

std::uint64_t degree_of(const BitSequence& f) { return key_from_orbit(f).degree; }

u128 order_of(const BitSequence& f) { return key_from_orbit(f).order; }

ComplexityKey complexity_key(const BitSequence& f) { return key_from_orbit(f); }

std::strong_ordering compare_complexity(const BitSequence& f, const BitSequence& g) {
    if (f.size() != g.size())
        throw std::invalid_argument("compare_complexity: sequences must share n");
    return complexity_key(f) <=> complexity_key(g);
}

mpz_class ComponentCensus::total_mass() const {
    mpz_class mass = 0;
    for (const auto& c : classes) mass += c.multiplicity * mpz_from_u128(c.s) * c.r;
    return mass;
}

mpz_class ComponentCensus::component_count() const {
    mpz_class count = 0;
    for (const auto& c : classes) count += c.multiplicity;
    return count;
}

ComponentCensus census_algebraic(std::uint64_t n) {
    const TwoAdicSplit sp = split_two_adic(n);
    ComponentCensus census;
    census.n = n;
    census.l = sp.l;
    census.m = sp.m;
    census.tree_size = pow2_mpz(sp.two_pow_l);

    const u128 s = s_of_n_algebraic(n);
    const FactoredInteger fs = factorize(s);
    const std::vector<u128> divs = divisors(fs);

    // Fixed points of delta^d: kernel of multiplication by (1+x)^d + 1 on
    // GF(2)[x]/(x^n+1); its dimension is the degree of the gcd below.
    const Gf2Poly modulus = xn_plus_1(n);
    std::map<u128, mpz_class> dividing_count;
    for (const u128 d : divs) {
        const Gf2Poly g = poly_powmod(Gf2Poly::one_plus_x(), d, modulus) ^ Gf2Poly::one();
        const Gf2Poly common = poly_gcd(g, modulus);
        const std::size_t dim = common.is_zero() ? n : *common.degree();
        dividing_count[d] = pow2_mpz(dim);
    }

    for (const u128 d : divs) {
        // Exact-period count by Moebius inversion over divisors of d.
        mpz_class exact = 0;
        for (const u128 e : divs) {
            if (d % e != 0) continue;
            const u128 ratio = d / e;
            const int mu = moebius(factorize(ratio));
            if (mu == 0) continue;
            exact += mu * dividing_count[e];
        }
        if (exact == 0) continue;
        if (exact < 0 || !mpz_divisible_p(exact.get_mpz_t(), mpz_from_u128(d).get_mpz_t()))
            throw std::logic_error("census_algebraic: exact-period count not divisible by d");
        ComponentClass cls{d, census.tree_size, exact / mpz_from_u128(d)};
        census.classes.push_back(std::move(cls));
    }
    if (census.total_mass() != pow2_mpz(n))
        throw std::logic_error("census_algebraic: mass conservation failed");
    return census;
}

ExpSubspace::ExpSubspace(std::uint64_t n) : n_(n) {
    const TwoAdicSplit sp = split_two_adic(n);
    // Exp is the image of delta^(2^l): push each standard basis vector
    // through and Gauss-eliminate into reduced row echelon form.
    for (std::uint64_t k = 1; k <= n; ++k) {
        BitSequence v = delta_iter(BitSequence::unit(n, k), sp.two_pow_l);
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (v.get(pivots_[i] + 1)) v ^= basis_[i];
        if (v.is_zero()) continue;
        std::size_t pivot = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (v.get(j + 1)) {
                pivot = j;
                break;
            }
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].get(pivot + 1)) basis_[i] ^= v;
        basis_.push_back(std::move(v));
        pivots_.push_back(pivot);
    }
    // Keep pivot order ascending for reproducible coordinates.
    std::vector<std::size_t> order(basis_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [this](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    std::vector<BitSequence> nb;
    std::vector<std::size_t> np;
    nb.reserve(basis_.size());
    for (const std::size_t i : order) {
        nb.push_back(std::move(basis_[i]));
        np.push_back(pivots_[i]);
    }
    basis_ = std::move(nb);
    pivots_ = std::move(np);
    if (dimension() != n - sp.two_pow_l)
        throw std::logic_error("ExpSubspace: dimension mismatch");
    if (dimension() > 63) throw std::overflow_error("ExpSubspace: dimension above 63");
}

bool ExpSubspace::contains(const BitSequence& v) const {
    BitSequence w = v;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (w.get(pivots_[i] + 1)) w ^= basis_[i];
    return w.is_zero();
}

std::uint64_t ExpSubspace::coordinates(const BitSequence& v) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (v.get(pivots_[i] + 1)) c |= std::uint64_t{1} << i;
    return c;
}

BitSequence ExpSubspace::element(std::uint64_t coords) const {
    BitSequence v(n_);
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if ((coords >> i) & 1) v ^= basis_[i];
    return v;
}

ComponentCensus census_bruteforce(std::uint64_t n, std::uint64_t cap) {
    if (n > cap) throw std::invalid_argument("census_bruteforce: n above the configured cap");
    const TwoAdicSplit sp = split_two_adic(n);
    ComponentCensus census;
    census.n = n;
    census.l = sp.l;
    census.m = sp.m;
    census.tree_size = pow2_mpz(sp.two_pow_l);

    const ExpSubspace exp(n);
    const std::uint64_t count = std::uint64_t{1} << exp.dimension();
    std::vector<bool> visited(count, false);
    std::map<std::uint64_t, std::uint64_t> cycles_by_length;
    for (std::uint64_t c = 0; c < count; ++c) {
        if (visited[c]) continue;
        const BitSequence start = exp.element(c);
        BitSequence cur = start;
        std::uint64_t len = 0;
        do {
            visited[exp.coordinates(cur)] = true;
            cur = delta(cur);
            ++len;
        } while (!(cur == start));
        cycles_by_length[len] += 1;
    }
    for (const auto& [len, mult] : cycles_by_length)
        census.classes.push_back(
            {len, census.tree_size, mpz_class(static_cast<unsigned long>(mult))});
    if (census.total_mass() != pow2_mpz(n))
        throw std::logic_error("census_bruteforce: mass conservation failed");
    return census;
}

namespace {

struct GarberSpec {
    std::uint64_t base;        // odd part of n
    std::uint64_t small_cycle; // cycle length of the second fixed class
    std::uint64_t small_mult;
    std::uint64_t family_cycle; // k-indexed classes run over family_cycle * 2^k
    std::uint64_t divisor;      // leading 1/divisor in the multiplicity формула
};

GarberSpec garber_spec(GarberFamily family) {
    switch (family) {
        case GarberFamily::A: return {3, 3, 1, 3, 1};
        case GarberFamily::B: return {5, 15, 1, 15, 3};
        case GarberFamily::C: return {7, 7, 9, 7, 1};
        case GarberFamily::D: return {11, 341, 3, 341, 31};
    }
    throw std::invalid_argument("garber_family: unknown family");
}

} // namespace

ComponentCensus garber_family(GarberFamily family, unsigned m, unsigned k_start) {
    if (m < 1) throw std::invalid_argument("garber_family: m must be >= 1");
    const GarberSpec spec = garber_spec(family);

    ComponentCensus census;
    census.n = spec.base << m;
    census.l = m;
    census.m = spec.base;
    census.tree_size = pow2_mpz(std::uint64_t{1} << m);

    census.classes.push_back({1, census.tree_size, 1});
    census.classes.push_back({spec.small_cycle, census.tree_size,
                              mpz_class(static_cast<unsigned long>(spec.small_mult))});
    for (unsigned k = k_start; k <= m; ++k) {
        // (2^(base*2^k) - 2^((base+1)*2^(k-1))) / (divisor * base*2^k * 2^(2^k))
        const mpz_class numerator =
            pow2_mpz(spec.base << k) - pow2_mpz((spec.base + 1) << (k - 1));
        mpz_class denominator(static_cast<unsigned long>(spec.divisor));
        denominator *= static_cast<unsigned long>(spec.base) << k;
        denominator *= pow2_mpz(std::uint64_t{1} << k);
        if (!mpz_divisible_p(numerator.get_mpz_t(), denominator.get_mpz_t()))
            throw std::logic_error("garber_family: multiplicity formula is not integral");
        census.classes.push_back(
            {u128{spec.family_cycle} << k, census.tree_size, numerator / denominator});
    }
    std::sort(census.classes.begin(), census.classes.end(),
              [](const ComponentClass& a, const ComponentClass& b) { return a.s < b.s; });
    return census;
}

std::vector<PrimeScanRow> conjecture_scan(std::uint64_t p_max) {
    if (p_max < 3) throw std::invalid_argument("conjecture_scan: p_max must be >= 3");
    std::vector<PrimeScanRow> rows;
    for (std::uint64_t p = 3; p <= p_max; p += 2) {
        if (!is_probable_prime(p)) continue;
        PrimeScanRow row;
        row.p = p;
        row.gamma2 = gamma2(p);
        row.s = s_of_n(p, Engine::Algebraic);
        row.q = q_of(p);
        row.s_equals_q = row.s == row.q;
        row.q_divisible_by_s = row.q % row.s == 0;
        rows.push_back(row);
    }
    return rows;
}

PowerCheckResult arnold_power_check(std::uint64_t n) {
    const u128 s = s_of_n(n, Engine::Algebraic);
    PowerCheckResult res{n, s, false, 0, false};
    if (s % n == 0) {
        res.applicable = true;
        res.value = s / n + 1;
        res.power_of_two = is_power_of_two(res.value);
    }
    return res;
}

} // namespace deltagraph
