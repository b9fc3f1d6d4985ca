// channel.hpp -- noise processes: adversarial-support random-value errors,
// the q-ary symmetric channel, and erasure patterns.
//
// An error pattern fixes its support outside the declared clean set and
// draws an i.i.d. uniform nonzero value per position, which makes the
// sample space exactly the counting space of the random-error analyses.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ldlab/field.hpp"
#include "ldlab/rational.hpp"
#include "ldlab/rng.hpp"

namespace ldlab {

inline constexpr Fe kErased = 0xffffffffu;

struct ReceivedWord {
    FieldPtr field;
    std::vector<Fe> symbols;  // kErased marks an erasure

    std::size_t size() const { return symbols.size(); }
    bool erased(std::size_t i) const { return symbols[i] == kErased; }
    bool has_erasures() const;
    std::string to_string() const;  // comma list, '?' for erasures
};

// matches(c, y): c agrees with y at every unerased position
bool matches(std::span<const Fe> codeword, const ReceivedWord& y);

std::size_t hamming_distance(std::span<const Fe> a, std::span<const Fe> b);
std::size_t hamming_weight(std::span<const Fe> a);

struct ErrorPattern {
    FieldPtr field;
    std::size_t n = 0;
    std::vector<std::size_t> support;  // strictly increasing
    std::vector<Fe> values;            // nonzero, parallel to support

    ErrorPattern(FieldPtr f, std::size_t n_, std::vector<std::size_t> support_,
                 std::vector<Fe> values_);

    std::size_t weight() const { return support.size(); }
};

struct ErasurePattern {
    std::size_t n = 0;
    std::vector<std::size_t> erased;  // strictly increasing

    ErasurePattern(std::size_t n_, std::vector<std::size_t> erased_);

    std::size_t weight() const { return erased.size(); }
};

// Support is exactly [n] \ clean_set (so |clean_set| must be (1-rho)n and
// rho*n integral); values i.i.d. uniform over the q-1 nonzero elements.
ErrorPattern sample_error_pattern(FieldPtr field, std::size_t n, Rational rho,
                                  std::span<const std::size_t> clean_set,
                                  Rng& rng);

// support uniform among w-subsets, values uniform nonzero
ErrorPattern sample_error_pattern_weight(FieldPtr field, std::size_t n,
                                         std::size_t weight, Rng& rng);

// uniform over all patterns of weight at most max_weight (the Hamming-ball
// pattern space: weight w drawn with probability C(n,w)(q-1)^w / Vol)
ErrorPattern sample_error_pattern_ball(FieldPtr field, std::size_t n,
                                       std::size_t max_weight, Rng& rng);

ReceivedWord apply_error(std::span<const Fe> codeword, const ErrorPattern& e);

// each symbol kept with probability 1-rho, else uniform different symbol
ReceivedWord qsc_transmit(FieldPtr field, std::span<const Fe> codeword,
                          double rho, Rng& rng);

ErasurePattern sample_erasure_pattern(std::size_t n, std::size_t weight,
                                      Rng& rng);
ErasurePattern erasure_pattern_from_set(std::size_t n,
                                        std::vector<std::size_t> erased);
// adversarial presets
ErasurePattern prefix_erasures(std::size_t n, std::size_t weight);
// erase whole outer segments of an (inner_len, outer_len) concatenated layout
ErasurePattern segment_aligned_erasures(std::size_t inner_len,
                                        std::size_t outer_len,
                                        std::size_t segments, Rng& rng);

ReceivedWord apply_erasures(FieldPtr field, std::span<const Fe> codeword,
                            const ErasurePattern& p);

// clean-set presets for the random-error experiments
std::vector<std::size_t> random_clean_set(std::size_t n, std::size_t size,
                                          Rng& rng);
std::vector<std::size_t> prefix_clean_set(std::size_t n, std::size_t size);

// JSON-lines serialization (one object per line) for replay
std::string error_pattern_to_json(const ErrorPattern& e);
std::string erasure_pattern_to_json(const ErasurePattern& p);
ErrorPattern error_pattern_from_json(const std::string& line, FieldPtr field);
ErasurePattern erasure_pattern_from_json(const std::string& line);

}  // namespace ldlab
