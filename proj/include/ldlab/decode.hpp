// decode.hpp -- decoders: exhaustive ball list decoding (the ground-truth
// oracle every other decoder is tested against), the two trivial RS
// decoders, the subset-search RS decoder, and exact erasure list decoding
// for linear codes.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ldlab/channel.hpp"
#include "ldlab/codes.hpp"

namespace ldlab {

inline constexpr std::size_t kDefaultListCap = 1ull << 16;

struct DecodeResult {
    // distinct codewords, lexicographically sorted
    std::vector<std::vector<Fe>> codewords;
    std::uint64_t work = 0;  // candidate checks performed
    bool truncated = false;  // list cap was hit

    bool contains(std::span<const Fe> cw) const;
};

// Exactly { c in C : distance(c, y) <= radius }, by full enumeration of the
// q^k messages. y must have no erasures.
DecodeResult ball_list_decode(const LinearCode& code, const ReceivedWord& y,
                              std::size_t radius,
                              std::uint64_t enum_cap = kDefaultEnumCap,
                              std::size_t list_cap = kDefaultListCap);

// For each of the C(n,e) candidate error-location sets, interpolate on the
// complement and verify; returns all codewords agreeing with y on at least
// n-e positions. Requires e < n - k so the check is overdetermined.
DecodeResult rs_error_location_decode(const LinearCode& rs,
                                      const ReceivedWord& y, std::size_t errors);

// For each of the C(n,t) position subsets of size t, check whether y
// projected to the subset lies in the projected RS code (interpolate on the
// first k, verify the other t-k); returns every codeword agreeing with y in
// at least t positions. Requires k+1 <= t <= n.
DecodeResult rs_subset_decode(const LinearCode& rs, const ReceivedWord& y,
                              std::size_t agreement);

// Restrict the generator to unerased columns and solve the affine system.
// The message-solution count is exactly q^dimension when consistent;
// dimension is empty when no codeword matches. The codeword list is
// enumerated only when q^dimension <= list_cap (else truncated is set).
struct ErasureDecodeResult {
    DecodeResult list;
    std::optional<std::size_t> dimension;
};
ErasureDecodeResult erasure_list_decode(const LinearCode& code,
                                        const ReceivedWord& y,
                                        std::size_t list_cap = kDefaultListCap);

// dimension only, skipping list enumeration
std::optional<std::size_t> erasure_solution_dimension(const LinearCode& code,
                                                      const ReceivedWord& y);

// Materialized list of all q^k codewords of a small code, reusable across
// many decode calls against the same code.
class Codebook {
  public:
    Codebook(const LinearCode& code, std::uint64_t enum_cap = kDefaultEnumCap);

    std::size_t size() const { return count_; }
    std::size_t block_length() const { return n_; }
    std::span<const Fe> codeword(std::size_t i) const {
        return std::span<const Fe>(flat_).subspan(i * n_, n_);
    }

  private:
    std::size_t n_;
    std::size_t count_;
    std::vector<Fe> flat_;
};

// true iff some codeword other than `transmitted` lies within `radius` of y
bool second_codeword_within(const Codebook& book, std::span<const Fe> y,
                            std::size_t radius, std::span<const Fe> transmitted);

// number of codebook entries within radius (counts duplicates once)
std::size_t count_codewords_within(const Codebook& book, std::span<const Fe> y,
                                   std::size_t radius);

}  // namespace ldlab
