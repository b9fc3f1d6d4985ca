#include "ldlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldlab {

double entropy_q(double x, std::uint64_t q) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("entropy_q: x outside [0,1]");
    if (q < 2) throw std::invalid_argument("entropy_q: q < 2");
    const double logq = std::log(double(q));
    double h = x * std::log(double(q - 1)) / logq;
    if (x > 0.0) h -= x * std::log(x) / logq;
    if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x) / logq;
    return h;
}

BigUint hamming_ball_volume(std::uint64_t q, std::size_t n, std::size_t r) {
    if (r > n) throw std::invalid_argument("hamming_ball_volume: r > n");
    BigUint vol(0);
    BigUint binom(1);  // C(n,i), updated incrementally
    for (std::size_t i = 0; i <= r; ++i) {
        if (i > 0) {
            binom.mul_small(static_cast<std::uint32_t>(n - i + 1));
            binom.div_exact_small(static_cast<std::uint32_t>(i));
        }
        vol += binom * BigUint::pow(q - 1, i);
    }
    return vol;
}

BoundReport thm31a_bound(std::uint64_t q, Rational eps, std::size_t n) {
    if (eps.is_zero()) throw std::invalid_argument("thm31a_bound: eps = 0");
    BoundReport report;
    // n >= 3/eps  <=>  n*num >= 3*den
    const bool n_ok = static_cast<unsigned __int128>(n) * eps.num >=
                      static_cast<unsigned __int128>(3) * eps.den;
    // q >= 2^(6/eps)  <=>  q^num >= 2^(6*den); exact for small rationals,
    // where the acceptance configs sit right on the boundary
    bool q_ok;
    if (eps.num <= 512 && eps.den <= 512) {
        q_ok = BigUint::pow(q, eps.num) >= BigUint::pow(2, 6 * eps.den);
    } else {
        q_ok = std::log2(double(q)) * eps.to_double() >= 6.0 - 1e-9;
    }
    report.preconditions_met = n_ok && q_ok;
    report.value =
        std::pow(double(q), -eps.to_double() * double(n) / 6.0);
    report.vacuous = report.value >= 1.0;
    return report;
}

BoundReport thm31b_bound(std::uint64_t q, Rational gamma, Rational eps,
                         Rational delta, std::size_t n) {
    if (gamma.is_zero() || gamma > Rational(1, 1))
        throw std::invalid_argument("thm31b_bound: gamma outside (0,1]");
    if (delta > Rational(1, 1))
        throw std::invalid_argument("thm31b_bound: delta > 1");
    BoundReport report;

    // exponent (1-gamma)*eps/2 - (1-delta)*gamma, exact sign via rationals
    const Rational lhs = gamma.complement() * eps * Rational(1, 2);
    const Rational rhs = delta.complement() * gamma;
    report.vacuous = lhs <= rhs;

    // q > max(n, (e/(1-delta+eps))^ceil(1/gamma))
    const std::uint64_t inv_gamma_ceil = (gamma.den + gamma.num - 1) / gamma.num;
    const double base =
        std::exp(1.0) / (delta.complement().to_double() + eps.to_double());
    const double power = std::pow(base, double(inv_gamma_ceil));
    const bool q_ok = double(q) > double(n) && double(q) > power;
    // n >= 4/((1-gamma)*eps)
    const Rational denom = gamma.complement() * eps;
    const bool n_ok = static_cast<unsigned __int128>(n) * denom.num >=
                      static_cast<unsigned __int128>(4) * denom.den;
    report.preconditions_met = q_ok && n_ok;

    const double exponent = (lhs.to_double() - rhs.to_double()) * double(n);
    report.value = std::pow(double(q - 1), -exponent);
    return report;
}

namespace {

// Sweep every error pattern with support [n] \ clean_set and nonzero values,
// presenting the received word c+e to the visitor. Returns the pattern count.
template <typename Visit>
std::uint64_t sweep_error_patterns(const LinearCode& code, std::span<const Fe> c,
                                   std::span<const std::size_t> clean_set,
                                   std::uint64_t pattern_cap, Visit&& visit) {
    if (c.size() != code.n)
        throw std::invalid_argument("pattern sweep: codeword length mismatch");
    const Field& f = *code.field;
    const std::uint64_t q = f.order();

    std::vector<bool> clean(code.n, false);
    for (const std::size_t i : clean_set) {
        if (i >= code.n)
            throw std::invalid_argument("pattern sweep: clean position out of range");
        clean[i] = true;
    }
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < code.n; ++i)
        if (!clean[i]) support.push_back(i);
    const std::size_t w = support.size();

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < w; ++i) {
        if (total > pattern_cap / (q - 1))
            throw std::length_error("pattern sweep: pattern space exceeds cap");
        total *= (q - 1);
    }
    if (total > pattern_cap)
        throw std::length_error("pattern sweep: pattern space exceeds cap");

    // odometer over nonzero values on the support
    std::vector<Fe> y(c.begin(), c.end());
    std::vector<Fe> val(w, 1);
    for (const std::size_t pos : support) y[pos] = f.add(c[pos], 1);
    for (;;) {
        visit(std::span<const Fe>(y));
        std::size_t pos = 0;
        for (; pos < w; ++pos) {
            if (std::uint64_t(val[pos]) + 1 < q) {
                val[pos] += 1;
                y[support[pos]] = f.add(c[support[pos]], val[pos]);
                break;
            }
            val[pos] = 1;
            y[support[pos]] = f.add(c[support[pos]], 1);
        }
        if (pos == w) break;
    }
    return total;
}

}  // namespace

Rational bad_fraction_exhaustive(const LinearCode& code, std::span<const Fe> c,
                                 std::span<const std::size_t> clean_set,
                                 std::size_t radius, std::uint64_t pattern_cap,
                                 std::uint64_t enum_cap) {
    const Codebook book(code, enum_cap);
    std::uint64_t bad = 0;
    const std::uint64_t total = sweep_error_patterns(
        code, c, clean_set, pattern_cap, [&](std::span<const Fe> y) {
            if (second_codeword_within(book, y, radius, c)) ++bad;
        });
    return Rational(bad, total);
}

std::map<std::size_t, std::uint64_t> agreement_histogram_exhaustive(
    const LinearCode& code, std::span<const Fe> c,
    std::span<const std::size_t> clean_set, std::uint64_t pattern_cap,
    std::uint64_t enum_cap) {
    const Codebook book(code, enum_cap);
    std::map<std::size_t, std::uint64_t> histogram;
    sweep_error_patterns(
        code, c, clean_set, pattern_cap, [&](std::span<const Fe> y) {
            std::size_t best = 0;
            for (std::size_t i = 0; i < book.size(); ++i) {
                const auto cw = book.codeword(i);
                if (std::equal(cw.begin(), cw.end(), c.begin(), c.end()))
                    continue;
                std::size_t agree = 0;
                for (std::size_t j = 0; j < cw.size(); ++j)
                    agree += (cw[j] == y[j]);
                best = std::max(best, agree);
            }
            ++histogram[best];
        });
    return histogram;
}

BipartiteGraph::BipartiteGraph(
    std::size_t l, std::size_t r,
    std::vector<std::pair<std::size_t, std::size_t>> e)
    : left(l), right(r), edges(std::move(e)) {
    for (const auto& [u, v] : edges)
        if (u >= left || v >= right)
            throw std::invalid_argument("BipartiteGraph: edge endpoint out of range");
}

std::vector<std::size_t> BipartiteGraph::left_degrees() const {
    std::vector<std::size_t> d(left, 0);
    for (const auto& [u, v] : edges) {
        (void)v;
        ++d[u];
    }
    return d;
}

std::vector<std::size_t> BipartiteGraph::right_degrees() const {
    std::vector<std::size_t> d(right, 0);
    for (const auto& [u, v] : edges) {
        (void)u;
        ++d[v];
    }
    return d;
}

Rational inverse_markov_edge_prob(const BipartiteGraph& g, Rational eps) {
    if (g.edges.empty())
        throw std::invalid_argument("inverse_markov_edge_prob: empty graph");
    const auto rdeg = g.right_degrees();
    const std::uint64_t e_count = g.edges.size();
    // d(v) <= eps * |E| / n_R  <=>  d(v) * n_R * den <= num * |E|
    std::uint64_t hit = 0;
    for (std::size_t v = 0; v < g.right; ++v) {
        const unsigned __int128 lhs =
            static_cast<unsigned __int128>(rdeg[v]) * g.right * eps.den;
        const unsigned __int128 rhs =
            static_cast<unsigned __int128>(eps.num) * e_count;
        if (lhs <= rhs) hit += rdeg[v];
    }
    return Rational(hit, e_count);
}

Rational inverse_markov_process_prob(const BipartiteGraph& g, Rational eps) {
    if (g.edges.empty())
        throw std::invalid_argument("inverse_markov_process_prob: empty graph");
    const auto ldeg = g.left_degrees();
    const std::size_t d = ldeg[0];
    for (const std::size_t x : ldeg)
        if (x != d)
            throw std::invalid_argument(
                "inverse_markov_process_prob: graph is not left-regular");
    if (d == 0)
        throw std::invalid_argument("inverse_markov_process_prob: isolated vertices");

    const auto rdeg = g.right_degrees();
    // bad(v): d(v) <= eps * d * n_L / n_R
    auto bad = [&](std::size_t v) {
        const unsigned __int128 lhs =
            static_cast<unsigned __int128>(rdeg[v]) * g.right * eps.den;
        const unsigned __int128 rhs =
            static_cast<unsigned __int128>(eps.num) * d * g.left;
        return lhs <= rhs;
    };
    // direct summation over the two-step process: sum_u #bad neighbors / (n_L d)
    std::uint64_t hits = 0;
    for (const auto& [u, v] : g.edges) {
        (void)u;
        if (bad(v)) ++hits;
    }
    return Rational(hits, std::uint64_t(g.left) * d);
}

CapacityGaps capacity_gap(double rate, std::uint64_t q, double rho) {
    return {rate - (1.0 - entropy_q(rho, q)), rate - (1.0 - rho)};
}

}  // namespace ldlab
