// codes.hpp -- code constructions and structural queries: Reed-Solomon,
// folded Reed-Solomon, random linear, and concatenated codes; exhaustive
// minimum distance; independence profiles of codeword tuples and the
// matching counting bound.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ldlab/bigint.hpp"
#include "ldlab/field.hpp"
#include "ldlab/rational.hpp"
#include "ldlab/rng.hpp"

namespace ldlab {

inline constexpr std::uint64_t kDefaultEnumCap = 1ull << 24;

enum class CodeKind { Rs, RandomLinear, Concatenated, Custom };

struct LinearCode {
    FieldPtr field;
    std::size_t n = 0;  // block length
    std::size_t k = 0;  // dimension
    Matrix generator;   // k x n

    CodeKind kind = CodeKind::Custom;
    std::vector<Fe> rs_points;   // Rs: evaluation points
    std::uint64_t seed = 0;      // RandomLinear: sampling seed
    std::size_t inner_len = 0;   // Concatenated: inner block length
    std::size_t outer_len = 0;   // Concatenated: outer block length

    LinearCode(FieldPtr f, std::size_t n_, std::size_t k_, Matrix g);

    std::vector<Fe> encode(std::span<const Fe> message) const;
    double rate() const { return double(k) / double(n); }
    // q^k if it is at most cap, otherwise throws (silent truncation would
    // corrupt every oracle built on enumeration)
    std::uint64_t message_count(std::uint64_t cap = kDefaultEnumCap) const;
};

// Generator row i is (x_j^i)_j: encoding a message equals evaluating the
// degree-<k polynomial with those coefficients at the points. Default
// points are the first n elements in canonical order.
LinearCode rs_code(FieldPtr field, std::size_t n, std::size_t k);
LinearCode rs_code(FieldPtr field, std::size_t n, std::size_t k,
                   std::vector<Fe> points);

// Every generator entry i.i.d. uniform; rank is not conditioned.
LinearCode random_linear_code(FieldPtr field, std::size_t n, std::size_t k,
                              Rng& rng);

std::size_t min_distance_exhaustive(const LinearCode& code,
                                    std::uint64_t enum_cap = kDefaultEnumCap);

// Visit all q^k (message, codeword) pairs in canonical message order,
// maintaining the codeword incrementally. Visitor returns false to stop.
template <typename Visitor>
void for_each_codeword(const LinearCode& code, Visitor&& visit) {
    const Field& f = *code.field;
    const std::uint64_t q = f.order();
    std::vector<Fe> msg(code.k, 0);
    std::vector<Fe> cw(code.n, 0);
    for (;;) {
        if (!visit(std::span<const Fe>(msg), std::span<const Fe>(cw))) return;
        std::size_t pos = 0;
        for (; pos < code.k; ++pos) {
            const Fe old = msg[pos];
            const Fe next = (std::uint64_t(old) + 1 == q) ? 0 : old + 1;
            msg[pos] = next;
            const Fe delta = f.sub(next, old);
            const auto row = code.generator.row(pos);
            for (std::size_t j = 0; j < code.n; ++j)
                cw[j] = f.add(cw[j], f.mul(delta, row[j]));
            if (next != 0) break;  // no carry
        }
        if (pos == code.k) return;  // wrapped all digits
    }
}

// --- outer codes for concatenation ---

// One outer codeword with symbols expanded over the prime subfield:
// `length` symbols, each a vector of `symbol_dim` subfield elements.
struct OuterCodeword {
    std::size_t symbol_dim = 0;
    std::vector<Fe> flat;

    std::size_t length() const { return symbol_dim ? flat.size() / symbol_dim : 0; }
    std::span<const Fe> symbol(std::size_t i) const {
        return std::span<const Fe>(flat).subspan(i * symbol_dim, symbol_dim);
    }
};

class OuterCode {
  public:
    virtual ~OuterCode() = default;
    virtual std::size_t length() const = 0;       // N
    virtual std::size_t symbol_dim() const = 0;   // n, over the subfield
    virtual std::size_t message_dim() const = 0;  // message digits over the subfield
    virtual FieldPtr subfield() const = 0;
    // message given as subfield digits, length message_dim()
    virtual OuterCodeword encode_digits(std::span<const Fe> digits) const = 0;
};

// Underlying RS code of length s*N and dimension s*K over the base field;
// outer symbol i bundles RS positions s*i .. s*i+s-1, each expanded to
// base-field coefficient vectors over the prime subfield. s = 1 degenerates
// to plain RS.
class FoldedRsCode final : public OuterCode {
  public:
    FoldedRsCode(FieldPtr base, std::size_t N, std::size_t K, std::size_t s);

    std::size_t length() const override { return N_; }
    std::size_t symbol_dim() const override { return s_ * base_->degree(); }
    std::size_t message_dim() const override { return s_ * K_ * base_->degree(); }
    FieldPtr subfield() const override { return prime_; }
    OuterCodeword encode_digits(std::span<const Fe> digits) const override;

    // message and codeword over the base field (s*K in, s*N out)
    std::vector<Fe> encode_base(std::span<const Fe> message) const;
    const LinearCode& underlying_rs() const { return rs_; }
    std::size_t folding() const { return s_; }

  private:
    FieldPtr base_;
    FieldPtr prime_;
    std::size_t N_, K_, s_;
    LinearCode rs_;
};

// Outer code generated by a K x N matrix with i.i.d. uniform entries over
// the symbol field GF(p^n).
class RandomLinearOuterCode final : public OuterCode {
  public:
    RandomLinearOuterCode(FieldPtr symbol_field, std::size_t N, std::size_t K,
                          Rng& rng);

    std::size_t length() const override { return code_.n; }
    std::size_t symbol_dim() const override { return symbol_field_->degree(); }
    std::size_t message_dim() const override {
        return code_.k * symbol_field_->degree();
    }
    FieldPtr subfield() const override { return prime_; }
    OuterCodeword encode_digits(std::span<const Fe> digits) const override;

    std::vector<Fe> encode_symbols(std::span<const Fe> message) const;
    const LinearCode& underlying() const { return code_; }

  private:
    FieldPtr symbol_field_;
    FieldPtr prime_;
    LinearCode code_;
};

// Concatenation with N rate-1 inner codes over the prime subfield.
// Returns the composite code over GF(p): block length n*N, dimension
// message_dim, with the full composite generator, so erasure decoding can
// run by linear algebra. Inner dimension must equal the outer symbol_dim.
LinearCode concatenate(const OuterCode& outer,
                       const std::vector<LinearCode>& inners);

// --- independence profiles (ordered codeword tuples) ---

// d_1 = wt(c^1); for j > 1, d_j counts positions i where symbol vector
// c_i^j lies outside the subfield-span of {c_i^1, ..., c_i^{j-1}}.
std::vector<std::size_t> independence_profile(
    std::span<const OuterCodeword> tuple, const Field& subfield);

// wraps a plain codeword as an outer codeword with 1-dim symbols
OuterCodeword as_outer_codeword(std::span<const Fe> codeword,
                                std::size_t symbol_dim = 1);

// q^(N*J*(J+1)) * prod_j Q^max(d_j - N(1-R) + 1, 0); N*R must be integral.
BigUint independent_tuple_count_bound(std::size_t N, std::size_t J, Rational R,
                                      std::span<const std::size_t> d,
                                      std::uint64_t q, std::uint64_t Q);

// --- serialization (replayable text format) ---

std::string serialize_code(const LinearCode& code);
LinearCode parse_code(const std::string& text,
                      std::uint64_t size_limit = Field::kDefaultSizeLimit);

}  // namespace ldlab
