// experiments.hpp -- reproducible experiment runner: flat key=value
// configuration, deterministic per-trial seeding, parallel execution with
// order-independent merging, CSV emission, and replay.
//
// Determinism contract: per-trial seed = hash(master seed, experiment name,
// trial index); the same config yields byte-identical CSV regardless of the
// worker count. Per-trial wall time goes into the `ms` column only when
// `timing = true`, since measured times would break that contract.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldlab/channel.hpp"
#include "ldlab/codes.hpp"
#include "ldlab/rational.hpp"

namespace ldlab {

// raised on invalid or out-of-contract configuration (CLI exit code 2)
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class Config {
  public:
    Config() = default;
    static Config from_file(const std::string& path);
    static Config from_text(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool contains(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& def) const;
    std::uint64_t get_u64(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t def) const;
    double get_double(const std::string& key, double def) const;
    Rational get_rational(const std::string& key) const;
    Rational get_rational(const std::string& key, Rational def) const;
    bool get_bool(const std::string& key, bool def) const;

    // sorted "# key = value" lines; embedded in the CSV so a result file
    // carries everything replay needs
    std::string preamble() const;

  private:
    std::vector<std::pair<std::string, std::string>> kv_;
    const std::string* find(const std::string& key) const;
};

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    std::int64_t outcome = 0;
    std::uint64_t list_size = 0;
    std::int64_t dimension = 0;
    std::uint64_t work = 0;
    std::uint64_t ms = 0;
    std::uint64_t digest = 0;  // over the sampled objects; not serialized

    bool same_measurements(const TrialRecord& other) const {
        return outcome == other.outcome && list_size == other.list_size &&
               dimension == other.dimension && work == other.work;
    }
};

struct ExperimentReport {
    std::string name;
    Config config;
    std::vector<TrialRecord> trials;
    std::vector<std::pair<std::string, std::string>> summary;
    bool pass = true;

    std::string csv() const;
    std::string summary_text() const;
    std::string summary_value(const std::string& key) const;
    double summary_number(const std::string& key) const;
};

// experiment = thm31a | thm31b | cor32 | lemma34 | thm41 | thm42 | bench
ExperimentReport run_experiment(const Config& config);
TrialRecord run_single_trial(const Config& config, std::uint64_t trial_index);

struct ParsedCsv {
    Config config;
    std::vector<TrialRecord> rows;
};
ParsedCsv parse_experiment_csv(const std::string& text);

// re-runs one recorded trial and compares measurements; 0 match, 1 mismatch
int replay_trial(const std::string& csv_text, std::uint64_t trial_index,
                 std::string& log);

// The sampled objects of one concatenated-code trial (thm41/thm42),
// rebuilt bit-exactly from the config and trial index, for external
// cross-checks against brute-force enumeration.
struct ConcatTrialObjects {
    LinearCode composite;
    std::vector<ErasurePattern> patterns;
    std::vector<std::vector<Fe>> messages;  // transmitted per pattern
    std::vector<std::size_t> dimensions;    // solution-space dim per pattern
};
ConcatTrialObjects thm4x_trial_objects(const Config& config,
                                       std::uint64_t trial_index);

std::uint64_t comb_u64(std::uint64_t n, std::uint64_t k);

}  // namespace ldlab
