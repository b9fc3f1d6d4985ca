// analysis.hpp -- closed-form quantities and combinatorial oracles:
// q-ary entropy, Hamming-ball volume, the random-error theorem bounds,
// exhaustive bad-pattern counting, inverse-Markov checks, capacity gaps.
//
// The oracles run on exact integers and rationals; only the closed-form
// bound values themselves are floating point.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ldlab/bigint.hpp"
#include "ldlab/channel.hpp"
#include "ldlab/codes.hpp"
#include "ldlab/decode.hpp"
#include "ldlab/rational.hpp"

namespace ldlab {

// x log_q(q-1) - x log_q(x) - (1-x) log_q(1-x), with 0 log 0 = 0
double entropy_q(double x, std::uint64_t q);

// sum_{i=0}^{r} C(n,i) (q-1)^i, exact
BigUint hamming_ball_volume(std::uint64_t q, std::size_t n, std::size_t r);

struct BoundReport {
    double value = 0.0;
    bool preconditions_met = false;
    bool vacuous = false;  // bound >= 1, nothing to gate on
};

// q^(-eps*n/6); valid for n >= 3/eps and q >= 2^(6/eps), both checked in
// exact rational arithmetic. Experiments must not gate on an unmet bound.
BoundReport thm31a_bound(std::uint64_t q, Rational eps, std::size_t n);

// (q-1)^(-((1-gamma)eps/2 - (1-delta)gamma) n); valid for
// q > max(n, (e/(1-delta+eps))^ceil(1/gamma)) and n >= 4/((1-gamma)eps).
BoundReport thm31b_bound(std::uint64_t q, Rational gamma, Rational eps,
                         Rational delta, std::size_t n);

// Exact fraction of error patterns (support [n] \ clean_set, values nonzero)
// whose received word c+e has another codeword within `radius`. This is the
// ground truth that Monte Carlo estimates and the theorem bounds.
Rational bad_fraction_exhaustive(const LinearCode& code, std::span<const Fe> c,
                                 std::span<const std::size_t> clean_set,
                                 std::size_t radius,
                                 std::uint64_t pattern_cap = 1ull << 16,
                                 std::uint64_t enum_cap = kDefaultEnumCap);

// Diagnostic refinement of the same sweep: histogram, over the pattern
// space, of the best agreement count any other codeword achieves with c+e.
// The bad fraction at radius r is the mass at agreement >= n - r.
std::map<std::size_t, std::uint64_t> agreement_histogram_exhaustive(
    const LinearCode& code, std::span<const Fe> c,
    std::span<const std::size_t> clean_set,
    std::uint64_t pattern_cap = 1ull << 16,
    std::uint64_t enum_cap = kDefaultEnumCap);

struct BipartiteGraph {
    std::size_t left = 0, right = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    BipartiteGraph(std::size_t l, std::size_t r,
                   std::vector<std::pair<std::size_t, std::size_t>> e);

    std::vector<std::size_t> left_degrees() const;
    std::vector<std::size_t> right_degrees() const;
};

// P[d(v) <= eps * avg right degree] for a uniform random edge (u,v); always
// at most eps. Exact rational arithmetic throughout.
Rational inverse_markov_edge_prob(const BipartiteGraph& g, Rational eps);

// Same bound for the two-step process (uniform left vertex, then uniform
// neighbor); requires a left-regular graph.
Rational inverse_markov_process_prob(const BipartiteGraph& g, Rational eps);

struct CapacityGaps {
    double error_gap;    // R - (1 - H_q(rho))
    double erasure_gap;  // R - (1 - rho)
};
CapacityGaps capacity_gap(double rate, std::uint64_t q, double rho);

}  // namespace ldlab
