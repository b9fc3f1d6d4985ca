#include "ldlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "ldlab/analysis.hpp"
#include "ldlab/decode.hpp"

namespace ldlab {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

struct Digest {
    std::uint64_t h = 0xcbf29ce484222325ull;
    void add(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    }
    template <typename Range>
    void add_range(const Range& r) {
        for (const auto x : r) add(static_cast<std::uint64_t>(x));
    }
};

std::vector<Fe> random_message(const Field& f, std::size_t k, Rng& rng) {
    std::vector<Fe> msg(k);
    for (auto& m : msg) m = static_cast<Fe>(rng.below(f.order()));
    return msg;
}

FieldPtr field_from(const Config& cfg) {
    const std::uint64_t limit =
        cfg.get_u64("field_limit", Field::kDefaultSizeLimit);
    try {
        if (cfg.contains("q")) {
            const auto [p, m] = prime_power_split(cfg.get_u64("q"));
            return field_build(p, m, limit);
        }
        return field_build(cfg.get_u64("p"),
                           static_cast<std::uint32_t>(cfg.get_u64("m", 1)), limit);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const std::length_error& e) {
        throw ConfigError(e.what());
    }
}

template <typename Fn>
std::vector<TrialRecord> run_trials(std::size_t count, std::uint64_t jobs,
                                    Fn&& fn) {
    std::vector<TrialRecord> out(count);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            out[i] = fn(i);
        }
    };
    std::vector<std::thread> pool;
    const std::uint64_t threads = std::min<std::uint64_t>(jobs, count ? count : 1);
    pool.reserve(threads);
    for (std::uint64_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

template <typename Fn>
TrialRecord timed_trial(bool timing, Fn&& fn) {
    if (!timing) return fn();
    const auto t0 = std::chrono::steady_clock::now();
    TrialRecord rec = fn();
    const auto t1 = std::chrono::steady_clock::now();
    rec.ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
    return rec;
}

void add_summary(ExperimentReport& report, const std::string& key,
                 const std::string& value) {
    report.summary.emplace_back(key, value);
}

void add_gate(ExperimentReport& report, const std::string& key, bool ok) {
    add_summary(report, key, ok ? "pass" : "fail");
    report.pass = report.pass && ok;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (out > UINT64_MAX / base) return UINT64_MAX;
        out *= base;
    }
    return out;
}

// ---------------------------------------------------------------------------
// thm31a / thm31b: random errors against a fixed adversarial clean set
// ---------------------------------------------------------------------------

struct RandomErrorRunner {
    std::string name;
    Config cfg;
    FieldPtr F;
    std::optional<LinearCode> code;
    std::optional<Codebook> book;
    std::size_t n = 0, k = 0, weight = 0, radius = 0;
    Rational rho{0, 1}, eps{0, 1}, delta{0, 1};
    BoundReport bound;
    std::vector<std::size_t> fixed_clean;
    bool per_trial_clean = false;
    std::string clean_preset;
    bool use_ball = false;
    std::uint64_t master = 0, trials = 0, enum_cap = 0;
    bool timing = false;

    RandomErrorRunner(const Config& c, bool part_b) : cfg(c) {
        name = part_b ? "thm31b" : "thm31a";
        F = field_from(cfg);
        n = cfg.get_u64("n");
        k = cfg.get_u64("k");
        master = cfg.get_u64("seed", 1);
        trials = cfg.get_u64("trials");
        enum_cap = cfg.get_u64("enum_cap", kDefaultEnumCap);
        timing = cfg.get_bool("timing", false);
        if (k < 1 || k > n) throw ConfigError(name + ": need 1 <= k <= n");
        if (n > F->order()) throw ConfigError(name + ": n exceeds field size");

        delta = Rational(n - k + 1, n);
        eps = cfg.get_rational("eps");
        if (eps > delta) throw ConfigError(name + ": eps exceeds delta");

        if (part_b) {
            weight = cfg.get_u64("weight");
            if (weight > n) throw ConfigError(name + ": weight > n");
            rho = Rational(weight, n);
        } else {
            rho = cfg.get_rational("rho");
            try {
                weight = rho.times_integral(n);
            } catch (const std::exception&) {
                throw ConfigError(name + ": rho*n must be an integer");
            }
        }
        if (rho > delta - eps)
            throw ConfigError(name + ": rho must be at most delta - eps");

        if (part_b) {
            Rational rad = delta - eps;
            std::uint64_t r;
            try {
                r = rad.times_integral(n);
            } catch (const std::exception&) {
                throw ConfigError(name + ": (delta - eps)*n must be an integer");
            }
            radius = r;
        } else {
            radius = weight;
        }

        if (part_b) {
            const Rational gamma = cfg.get_rational("gamma");
            bound = thm31b_bound(F->order(), gamma, eps, delta, n);
        } else {
            bound = thm31a_bound(F->order(), eps, n);
        }
        const std::string policy =
            cfg.get_string("precondition_policy", "enforce");
        if (policy != "enforce" && policy != "report")
            throw ConfigError(name + ": unknown precondition_policy");
        if (policy == "enforce" && !bound.preconditions_met)
            throw ConfigError(name +
                              ": bound preconditions not met (set "
                              "precondition_policy = report to run anyway)");

        code.emplace(rs_code(F, n, k));

        const std::string mode = cfg.get_string("clean_set_mode", "fixed");
        clean_preset = cfg.get_string("clean_set_preset", "random");
        if (mode == "per_trial") {
            per_trial_clean = true;
        } else if (mode != "fixed") {
            throw ConfigError(name + ": unknown clean_set_mode");
        }
        if (!per_trial_clean) {
            Rng setup_rng(derive_seed(master, name + "/setup", 0));
            fixed_clean = clean_preset == "prefix"
                              ? prefix_clean_set(n, n - weight)
                              : random_clean_set(n, n - weight, setup_rng);
        }

        std::string decoder = cfg.get_string("decoder", part_b ? "subset" : "auto");
        if (decoder == "auto") {
            try {
                code->message_count(enum_cap);
                decoder = "ball";
            } catch (const std::length_error&) {
                decoder = "subset";
            }
        }
        if (decoder == "ball") {
            use_ball = true;
            book.emplace(*code, enum_cap);
        } else if (decoder == "subset") {
            if (n - radius <= k)
                throw ConfigError(name +
                                  ": subset decoder needs n - radius >= k + 1");
        } else {
            throw ConfigError(name + ": unknown decoder");
        }
    }

    TrialRecord trial(std::uint64_t i) const {
        return timed_trial(timing, [&] {
            const std::uint64_t seed = derive_seed(master, name, i);
            Rng rng(seed);
            const std::vector<Fe> msg = random_message(*F, k, rng);
            const std::vector<Fe> c = code->encode(msg);
            std::vector<std::size_t> clean;
            if (per_trial_clean)
                clean = clean_preset == "prefix"
                            ? prefix_clean_set(n, n - weight)
                            : random_clean_set(n, n - weight, rng);
            const auto& clean_set = per_trial_clean ? clean : fixed_clean;
            const ErrorPattern e = sample_error_pattern(F, n, rho, clean_set, rng);
            const ReceivedWord y = apply_error(c, e);

            std::size_t count;
            std::uint64_t work;
            if (use_ball) {
                count = count_codewords_within(*book, y.symbols, radius);
                work = book->size();
            } else {
                const DecodeResult res = rs_subset_decode(*code, y, n - radius);
                count = res.codewords.size();
                work = res.work;
            }

            Digest digest;
            digest.add_range(msg);
            digest.add_range(clean_set);
            digest.add_range(e.support);
            digest.add_range(e.values);

            TrialRecord rec;
            rec.trial = i;
            rec.seed = seed;
            rec.outcome = count >= 2 ? 1 : 0;
            rec.list_size = count;
            rec.dimension = 0;
            rec.work = work;
            rec.digest = digest.h;
            return rec;
        });
    }

    void summarize(ExperimentReport& report) const {
        std::uint64_t bad = 0;
        for (const auto& t : report.trials) bad += (t.outcome == 1);
        const double frac = double(bad) / double(report.trials.size());
        add_summary(report, "bad_count", std::to_string(bad));
        add_summary(report, "bad_fraction",
                    Rational(bad, report.trials.size()).to_string());
        add_summary(report, "bad_fraction_value", format_double(frac));
        add_summary(report, "bound_value", format_double(bound.value));
        add_summary(report, "bound_preconditions_met",
                    bound.preconditions_met ? "true" : "false");
        add_summary(report, "bound_vacuous", bound.vacuous ? "true" : "false");
        const bool gate_on =
            (bound.preconditions_met || cfg.get_bool("gate_unmet_bound", false)) &&
            !bound.vacuous;
        const double sigma =
            std::sqrt(bound.value * (1.0 - bound.value) /
                      double(report.trials.size()));
        const double threshold = bound.value + 3.0 * sigma;
        add_summary(report, "gate_threshold", format_double(threshold));
        if (gate_on)
            add_gate(report, "gate", frac <= threshold);
        else
            add_summary(report, "gate", "skipped");
    }
};

// ---------------------------------------------------------------------------
// cor32: RS unique decoding via 4k-agreement subsets
// ---------------------------------------------------------------------------

struct Cor32Runner {
    Config cfg;
    FieldPtr F;
    std::optional<LinearCode> code;
    std::size_t n = 0, k = 0, max_weight = 0;
    std::uint64_t master = 0, trials = 0, crosscheck = 0, enum_cap = 0;
    std::string preset;
    bool timing = false;

    explicit Cor32Runner(const Config& c) : cfg(c) {
        F = field_from(cfg);
        n = cfg.get_u64("n");
        k = cfg.get_u64("k");
        master = cfg.get_u64("seed", 1);
        trials = cfg.get_u64("trials");
        crosscheck = cfg.get_u64("crosscheck", 100);
        enum_cap = cfg.get_u64("enum_cap", kDefaultEnumCap);
        timing = cfg.get_bool("timing", false);
        preset = cfg.get_string("support_preset", "random");
        if (preset != "random" && preset != "prefix")
            throw ConfigError("cor32: unknown support_preset");
        const std::uint64_t q = F->order();
        if (k < 1 || k > n || n > q) throw ConfigError("cor32: bad (n, k, q)");
        // q > (n/k)^2  <=>  q*k^2 > n^2
        if (q * k * k <= std::uint64_t(n) * n)
            throw ConfigError("cor32: need q > (n/k)^2");
        if (4 * k > n) throw ConfigError("cor32: need 4k <= n");
        max_weight = cfg.get_u64("max_weight", n - 4 * k);
        if (max_weight > n - 4 * k)
            throw ConfigError("cor32: max_weight exceeds n - 4k");
        code.emplace(rs_code(F, n, k));
    }

    TrialRecord trial(std::uint64_t i) const {
        return timed_trial(timing, [&] {
            const std::uint64_t seed = derive_seed(master, "cor32", i);
            Rng rng(seed);
            const std::vector<Fe> msg = random_message(*F, k, rng);
            const std::vector<Fe> c = code->encode(msg);
            const std::size_t w = static_cast<std::size_t>(rng.below(max_weight + 1));
            ErrorPattern e = [&] {
                if (preset == "prefix") {
                    std::vector<std::size_t> support(w);
                    for (std::size_t j = 0; j < w; ++j) support[j] = j;
                    std::vector<Fe> values(w);
                    for (auto& v : values)
                        v = static_cast<Fe>(1 + rng.below(F->order() - 1));
                    return ErrorPattern(F, n, std::move(support), std::move(values));
                }
                return sample_error_pattern_weight(F, n, w, rng);
            }();
            const ReceivedWord y = apply_error(c, e);
            const DecodeResult res = rs_subset_decode(*code, y, 4 * k);

            std::int64_t outcome = res.codewords.size() >= 2 ? 1 : 0;
            if (!res.contains(c)) outcome = 2;  // decoder bug, gate fails
            if (i < crosscheck) {
                const DecodeResult oracle =
                    ball_list_decode(*code, y, n - 4 * k, enum_cap);
                if (oracle.codewords != res.codewords) outcome = 2;
            }

            Digest digest;
            digest.add_range(msg);
            digest.add_range(e.support);
            digest.add_range(e.values);

            TrialRecord rec;
            rec.trial = i;
            rec.seed = seed;
            rec.outcome = outcome;
            rec.list_size = res.codewords.size();
            rec.dimension = static_cast<std::int64_t>(w);
            rec.work = res.work;
            rec.digest = digest.h;
            return rec;
        });
    }

    void summarize(ExperimentReport& report) const {
        std::uint64_t failures = 0, mismatches = 0;
        for (const auto& t : report.trials) {
            failures += (t.outcome == 1);
            mismatches += (t.outcome == 2);
        }
        add_summary(report, "failure_count", std::to_string(failures));
        add_summary(report, "failure_fraction",
                    Rational(failures, report.trials.size()).to_string());
        add_summary(report, "oracle_crosschecked_trials",
                    std::to_string(std::min<std::uint64_t>(crosscheck, trials)));
        add_summary(report, "oracle_mismatches", std::to_string(mismatches));
        // the failure probability bound has an unspecified constant, so the
        // failure fraction is reported, not gated
        add_gate(report, "gate", mismatches == 0);
    }
};

// ---------------------------------------------------------------------------
// lemma34: random codes above capacity have a mostly-bad codeword
// ---------------------------------------------------------------------------

struct Lemma34Runner {
    Config cfg;
    FieldPtr F;
    std::size_t n = 0, k = 0, max_weight = 0;
    Rational rho{0, 1};
    std::uint64_t master = 0, codes = 0, codeword_samples = 0,
                  pattern_samples = 0, enum_cap = 0;
    bool timing = false;

    explicit Lemma34Runner(const Config& c) : cfg(c) {
        F = field_from(cfg);
        n = cfg.get_u64("n");
        k = cfg.get_u64("k");
        master = cfg.get_u64("seed", 1);
        codes = cfg.get_u64("codes");
        codeword_samples = cfg.get_u64("codeword_samples", 5);
        pattern_samples = cfg.get_u64("pattern_samples", 200);
        enum_cap = cfg.get_u64("enum_cap", kDefaultEnumCap);
        timing = cfg.get_bool("timing", false);
        rho = cfg.get_rational("rho");
        max_weight = rho.times_floor(n);
        if (k < 1 || k > n) throw ConfigError("lemma34: need 1 <= k <= n");

        // above-capacity check: rate >= 1 - H_q(rho) + gamma, gamma > 0
        const double gamma = cfg.get_double("gamma", 0.0);
        if (gamma <= 0.0) throw ConfigError("lemma34: need gamma > 0");
        const CapacityGaps gaps =
            capacity_gap(double(k) / double(n), F->order(), rho.to_double());
        if (gaps.error_gap < gamma)
            throw ConfigError("lemma34: rate is not above capacity by gamma");

        std::uint64_t count = 1;
        for (std::size_t i = 0; i < k; ++i) {
            if (count > enum_cap / F->order())
                throw ConfigError("lemma34: q^k exceeds enumeration cap");
            count *= F->order();
        }
    }

    TrialRecord trial(std::uint64_t i) const {
        return timed_trial(timing, [&] {
            const std::uint64_t seed = derive_seed(master, "lemma34", i);
            Rng rng(seed);
            const LinearCode code = random_linear_code(F, n, k, rng);
            const Codebook book(code, enum_cap);

            std::uint64_t best_bad = 0;
            bool witness = false;
            for (std::uint64_t cs = 0; cs < codeword_samples; ++cs) {
                const std::vector<Fe> msg = random_message(*F, k, rng);
                const std::vector<Fe> c = code.encode(msg);
                std::uint64_t bad = 0;
                for (std::uint64_t ps = 0; ps < pattern_samples; ++ps) {
                    const ErrorPattern e =
                        sample_error_pattern_ball(F, n, max_weight, rng);
                    const ReceivedWord y = apply_error(c, e);
                    if (second_codeword_within(book, y.symbols, max_weight, c))
                        ++bad;
                }
                best_bad = std::max(best_bad, bad);
                if (2 * bad > pattern_samples) witness = true;
            }

            Digest digest;
            for (std::size_t r = 0; r < code.k; ++r)
                digest.add_range(code.generator.row(r));

            TrialRecord rec;
            rec.trial = i;
            rec.seed = seed;
            rec.outcome = witness ? 1 : 0;
            rec.list_size = best_bad;
            rec.dimension = 0;
            rec.work = codeword_samples * pattern_samples;
            rec.digest = digest.h;
            return rec;
        });
    }

    void summarize(ExperimentReport& report) const {
        std::uint64_t witnesses = 0, best = 0;
        for (const auto& t : report.trials) {
            witnesses += (t.outcome == 1);
            best = std::max(best, t.list_size);
        }
        add_summary(report, "witness_codes", std::to_string(witnesses));
        add_summary(report, "witness_fraction",
                    Rational(witnesses, report.trials.size()).to_string());
        add_summary(report, "max_bad_fraction",
                    Rational(best, pattern_samples).to_string());
        const Rational min_frac =
            cfg.get_rational("min_witness_fraction", Rational(4, 5));
        add_gate(report, "gate",
                 Rational(witnesses, report.trials.size()) >= min_frac);
    }
};

// ---------------------------------------------------------------------------
// thm41 / thm42: concatenated codes under erasures
// ---------------------------------------------------------------------------

struct ConcatRunner {
    std::string name;
    Config cfg;
    FieldPtr F;       // prime symbol field GF(q)
    FieldPtr big;     // GF(q^n) for the random outer
    std::shared_ptr<const FoldedRsCode> fixed_outer;  // thm41
    bool folded = false;
    std::size_t n = 0, N = 0, K = 0, s = 1;
    std::size_t max_erase = 0, seg_count = 0;
    Rational rho{0, 1};
    std::uint64_t master = 0, codes = 0, patterns = 0, list_gate = 16;
    bool timing = false;

    ConcatRunner(const Config& c, bool folded_outer) : cfg(c) {
        folded = folded_outer;
        name = folded ? "thm41" : "thm42";
        F = field_from(cfg);
        if (F->degree() != 1)
            throw ConfigError(name + ": the inner symbol field must be prime");
        n = cfg.get_u64("n");
        N = cfg.get_u64("N");
        K = cfg.get_u64("K");
        master = cfg.get_u64("seed", 1);
        codes = cfg.get_u64("codes");
        patterns = cfg.get_u64("patterns");
        list_gate = cfg.get_u64("list_gate", 16);
        timing = cfg.get_bool("timing", false);
        if (K < 1 || K > N) throw ConfigError(name + ": need 1 <= K <= N");

        const Rational eps = cfg.get_rational("eps");
        const Rational R(K, N);
        if (eps.is_zero()) throw ConfigError(name + ": need eps > 0");
        try {
            rho = Rational(1, 1) - R - eps;
        } catch (const std::exception&) {
            throw ConfigError(name + ": need eps <= 1 - R");
        }
        max_erase = rho.times_floor(n * N);
        seg_count = rho.times_floor(N);

        const std::uint64_t limit =
            cfg.get_u64("field_limit", Field::kDefaultSizeLimit);
        if (folded) {
            s = cfg.get_u64("s", 1);
            if (s < 1 || n % s != 0)
                throw ConfigError(name + ": folding parameter must divide n");
            const std::uint32_t b = static_cast<std::uint32_t>(n / s);
            FieldPtr base;
            try {
                base = field_build(F->characteristic(), b, limit);
                fixed_outer = std::make_shared<const FoldedRsCode>(base, N, K, s);
            } catch (const std::exception& e) {
                throw ConfigError(name + ": " + e.what());
            }
        } else {
            try {
                big = field_build(F->characteristic(),
                                  static_cast<std::uint32_t>(n), limit);
            } catch (const std::exception& e) {
                throw ConfigError(name + ": " + e.what());
            }
        }
    }

    ConcatTrialObjects trial_objects(std::uint64_t i) const {
        const std::uint64_t seed = derive_seed(master, name, i);
        Rng rng(seed);

        std::unique_ptr<RandomLinearOuterCode> sampled_outer;
        const OuterCode* outer;
        if (folded) {
            outer = fixed_outer.get();
        } else {
            sampled_outer =
                std::make_unique<RandomLinearOuterCode>(big, N, K, rng);
            outer = sampled_outer.get();
        }
        std::vector<LinearCode> inners;
        inners.reserve(N);
        for (std::size_t j = 0; j < N; ++j)
            inners.push_back(random_linear_code(F, n, n, rng));

        ConcatTrialObjects objs{concatenate(*outer, inners), {}, {}, {}};
        objs.patterns.reserve(patterns);
        objs.messages.reserve(patterns);
        objs.dimensions.reserve(patterns);
        const LinearCode& composite = objs.composite;
        for (std::uint64_t j = 0; j < patterns; ++j) {
            ErasurePattern p = (j % 2 == 0)
                                   ? sample_erasure_pattern(
                                         n * N,
                                         static_cast<std::size_t>(
                                             rng.below(max_erase + 1)),
                                         rng)
                                   : segment_aligned_erasures(n, N, seg_count, rng);
            std::vector<Fe> msg = random_message(*F, composite.k, rng);
            const std::vector<Fe> cw = composite.encode(msg);
            const ReceivedWord y = apply_erasures(F, cw, p);
            const auto dim = erasure_solution_dimension(composite, y);
            if (!dim)
                throw std::logic_error(name +
                                       ": transmitted codeword inconsistent");
            objs.patterns.push_back(std::move(p));
            objs.messages.push_back(std::move(msg));
            objs.dimensions.push_back(*dim);
        }
        return objs;
    }

    TrialRecord trial(std::uint64_t i) const {
        return timed_trial(timing, [&] {
            const ConcatTrialObjects objs = trial_objects(i);
            const std::size_t rank = mat_rank(objs.composite.generator);
            const bool full_rank = rank == objs.composite.k;
            std::size_t max_dim = 0;
            for (const std::size_t d : objs.dimensions)
                max_dim = std::max(max_dim, d);

            Digest digest;
            for (std::size_t r = 0; r < objs.composite.k; ++r)
                digest.add_range(objs.composite.generator.row(r));

            TrialRecord rec;
            rec.trial = i;
            rec.seed = derive_seed(master, name, i);
            rec.outcome = full_rank ? 1 : 0;
            rec.list_size = saturating_pow(F->order(), max_dim);
            rec.dimension = static_cast<std::int64_t>(max_dim);
            rec.work = patterns;
            rec.digest = digest.h;
            return rec;
        });
    }

    void summarize(ExperimentReport& report) const {
        std::uint64_t full_rank = 0, list_ok = 0;
        std::map<std::uint64_t, std::uint64_t> histogram;  // max list -> codes
        for (const auto& t : report.trials) {
            full_rank += (t.outcome == 1);
            list_ok += (t.list_size <= list_gate);
            ++histogram[t.list_size];
        }
        add_summary(report, "full_rank_count", std::to_string(full_rank));
        add_summary(report, "full_rank_fraction",
                    Rational(full_rank, report.trials.size()).to_string());
        add_summary(report, "list_ok_count", std::to_string(list_ok));
        add_summary(report, "list_ok_fraction",
                    Rational(list_ok, report.trials.size()).to_string());
        add_summary(report, "list_gate", std::to_string(list_gate));
        std::string hist;
        for (const auto& [size, count] : histogram) {
            if (!hist.empty()) hist += " ";
            hist += std::to_string(size) + ":" + std::to_string(count);
        }
        add_summary(report, "max_list_histogram", hist);
        const Rational min_full =
            cfg.get_rational("min_full_rank_fraction", Rational(9, 10));
        const Rational min_ok =
            cfg.get_rational("min_list_ok_fraction", Rational(19, 20));
        add_gate(report, "rank_gate",
                 Rational(full_rank, report.trials.size()) >= min_full);
        add_gate(report, "list_gate_result",
                 Rational(list_ok, report.trials.size()) >= min_ok);
    }
};

// ---------------------------------------------------------------------------
// bench: work counters and timings of the three RS decoders
// ---------------------------------------------------------------------------

struct BenchPoint {
    std::size_t n, k, e;
};

struct BenchRunner {
    Config cfg;
    FieldPtr F;
    std::vector<BenchPoint> points;
    std::uint64_t master = 0, enum_cap = 0;
    bool timing = false;

    explicit BenchRunner(const Config& c) : cfg(c) {
        Config with_default = c;
        if (!c.contains("q") && !c.contains("p")) with_default.set("q", "4096");
        F = field_from(with_default);
        master = cfg.get_u64("seed", 1);
        enum_cap = cfg.get_u64("enum_cap", kDefaultEnumCap);
        timing = cfg.get_bool("timing", false);
        const std::string spec =
            cfg.get_string("points", "8:1:4;12:1:8;16:1:11");
        std::istringstream in(spec);
        std::string part;
        while (std::getline(in, part, ';')) {
            part = trim(part);
            if (part.empty()) continue;
            BenchPoint pt{};
            if (std::sscanf(part.c_str(), "%zu:%zu:%zu", &pt.n, &pt.k, &pt.e) != 3)
                throw ConfigError("bench: bad point '" + part + "'");
            if (pt.n > F->order() || pt.k < 1 || pt.k > pt.n)
                throw ConfigError("bench: bad (n, k) in point");
            if (4 * pt.k > pt.n)
                throw ConfigError("bench: need 4k <= n for the subset decoder");
            if (pt.e + pt.k >= pt.n)
                throw ConfigError("bench: need e < n - k");
            points.push_back(pt);
        }
        if (points.empty()) throw ConfigError("bench: no grid points");
    }

    // trial index = point * 3 + algorithm (0 subset, 1 errloc, 2 ball)
    TrialRecord trial(std::uint64_t index) const {
        const std::size_t point = index / 3;
        const std::size_t algo = index % 3;
        if (point >= points.size()) throw std::out_of_range("bench: trial index");
        const BenchPoint pt = points[point];

        const std::uint64_t seed = derive_seed(master, "bench", point);
        Rng rng(seed);
        const LinearCode code = rs_code(F, pt.n, pt.k);
        const std::vector<Fe> msg = random_message(*F, pt.k, rng);
        const std::vector<Fe> c = code.encode(msg);
        const ErrorPattern e = sample_error_pattern_weight(F, pt.n, pt.e, rng);
        const ReceivedWord y = apply_error(c, e);

        TrialRecord rec;
        rec.trial = index;
        rec.seed = seed;
        rec.dimension = static_cast<std::int64_t>(pt.e);

        const auto t0 = std::chrono::steady_clock::now();
        if (algo == 0) {
            const DecodeResult res = rs_subset_decode(code, y, 4 * pt.k);
            rec.outcome = res.contains(c) ? 0 : 2;
            rec.list_size = res.codewords.size();
            rec.work = res.work;
            if (res.work != comb_u64(pt.n, 4 * pt.k)) rec.outcome = 2;
        } else if (algo == 1) {
            const DecodeResult res = rs_error_location_decode(code, y, pt.e);
            rec.outcome = res.contains(c) ? 0 : 2;
            rec.list_size = res.codewords.size();
            rec.work = res.work;
            if (res.work != comb_u64(pt.n, pt.e)) rec.outcome = 2;
        } else {
            std::uint64_t expected;
            try {
                expected = code.message_count(enum_cap);
            } catch (const std::length_error&) {
                rec.outcome = -1;  // enumeration over cap, skipped
                rec.work = 0;
                return rec;
            }
            const DecodeResult res = ball_list_decode(code, y, pt.e, enum_cap);
            rec.outcome = res.contains(c) ? 0 : 2;
            rec.list_size = res.codewords.size();
            rec.work = res.work;
            if (res.work != expected) rec.outcome = 2;
        }
        if (timing) {
            const auto t1 = std::chrono::steady_clock::now();
            rec.ms = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                    .count());
        }
        return rec;
    }

    void summarize(ExperimentReport& report) const {
        bool counters_ok = true;
        for (std::size_t p = 0; p < points.size(); ++p) {
            const BenchPoint pt = points[p];
            std::ostringstream line;
            line << "n=" << pt.n << " k=" << pt.k << " e=" << pt.e;
            const char* names[3] = {"subset", "errloc", "ball"};
            for (std::size_t a = 0; a < 3; ++a) {
                const TrialRecord& rec = report.trials[p * 3 + a];
                if (rec.outcome == 2) counters_ok = false;
                line << " " << names[a] << "_work=";
                if (rec.outcome == -1)
                    line << "skipped";
                else
                    line << rec.work;
            }
            add_summary(report, "point_" + std::to_string(p), line.str());
        }
        add_gate(report, "counters_gate", counters_ok);
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

Config Config::from_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line without '=': " + t);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line with empty key");
        cfg.set(key, value);
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : kv_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    kv_.emplace_back(key, value);
}

const std::string* Config::find(const std::string& key) const {
    for (const auto& [k, v] : kv_)
        if (k == key) return &v;
    return nullptr;
}

bool Config::contains(const std::string& key) const { return find(key) != nullptr; }

std::string Config::get_string(const std::string& key) const {
    const std::string* v = find(key);
    if (!v) throw ConfigError("missing config key: " + key);
    return *v;
}

std::string Config::get_string(const std::string& key,
                               const std::string& def) const {
    const std::string* v = find(key);
    return v ? *v : def;
}

std::uint64_t Config::get_u64(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not an integer: " + v);
    }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t def) const {
    return contains(key) ? get_u64(key) : def;
}

double Config::get_double(const std::string& key, double def) const {
    if (!contains(key)) return def;
    const std::string v = get_string(key);
    try {
        if (v.find('/') != std::string::npos)
            return parse_rational(v).to_double();
        return std::stod(v);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not a number: " + v);
    }
}

Rational Config::get_rational(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        return parse_rational(v);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not a rational: " + v);
    }
}

Rational Config::get_rational(const std::string& key, Rational def) const {
    return contains(key) ? get_rational(key) : def;
}

bool Config::get_bool(const std::string& key, bool def) const {
    if (!contains(key)) return def;
    const std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key '" + key + "' is not a boolean: " + v);
}

std::string Config::preamble() const {
    std::vector<std::pair<std::string, std::string>> sorted = kv_;
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (const auto& [k, v] : sorted) {
        // execution-only keys do not define the experiment and must not
        // perturb the output bytes (the worker count in particular)
        if (k == "jobs" || k == "out") continue;
        out += "# " + k + " = " + v + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// reports, CSV, replay
// ---------------------------------------------------------------------------

std::string ExperimentReport::csv() const {
    std::ostringstream out;
    out << config.preamble();
    out << "trial,seed,outcome,list_size,dimension,work,ms\n";
    for (const auto& t : trials)
        out << t.trial << ',' << t.seed << ',' << t.outcome << ',' << t.list_size
            << ',' << t.dimension << ',' << t.work << ',' << t.ms << '\n';
    return out.str();
}

std::string ExperimentReport::summary_text() const {
    std::ostringstream out;
    out << "experiment = " << name << "\n";
    out << "trials = " << trials.size() << "\n";
    for (const auto& [k, v] : summary) out << k << " = " << v << "\n";
    out << "result = " << (pass ? "pass" : "fail") << "\n";
    return out.str();
}

std::string ExperimentReport::summary_value(const std::string& key) const {
    for (const auto& [k, v] : summary)
        if (k == key) return v;
    throw std::out_of_range("no summary entry: " + key);
}

double ExperimentReport::summary_number(const std::string& key) const {
    const std::string v = summary_value(key);
    if (v.find('/') != std::string::npos) return parse_rational(v).to_double();
    return std::stod(v);
}

namespace {

template <typename Runner>
ExperimentReport run_with(Runner&& runner, const Config& cfg, std::size_t count,
                          const std::string& name) {
    ExperimentReport report;
    report.name = name;
    report.config = cfg;
    report.config.set("experiment", name);
    const std::uint64_t jobs = cfg.get_u64("jobs", 1);
    report.trials =
        run_trials(count, jobs, [&](std::size_t i) { return runner.trial(i); });
    runner.summarize(report);
    return report;
}

}  // namespace

ExperimentReport run_experiment(const Config& config) {
    const std::string name = config.get_string("experiment");
    if (name == "thm31a" || name == "thm31b") {
        RandomErrorRunner runner(config, name == "thm31b");
        return run_with(runner, config, runner.trials, name);
    }
    if (name == "cor32") {
        Cor32Runner runner(config);
        return run_with(runner, config, runner.trials, name);
    }
    if (name == "lemma34") {
        Lemma34Runner runner(config);
        return run_with(runner, config, runner.codes, name);
    }
    if (name == "thm41" || name == "thm42") {
        ConcatRunner runner(config, name == "thm41");
        return run_with(runner, config, runner.codes, name);
    }
    if (name == "bench") {
        BenchRunner runner(config);
        return run_with(runner, config, runner.points.size() * 3, name);
    }
    throw ConfigError("unknown experiment: " + name);
}

TrialRecord run_single_trial(const Config& config, std::uint64_t trial_index) {
    const std::string name = config.get_string("experiment");
    if (name == "thm31a" || name == "thm31b")
        return RandomErrorRunner(config, name == "thm31b").trial(trial_index);
    if (name == "cor32") return Cor32Runner(config).trial(trial_index);
    if (name == "lemma34") return Lemma34Runner(config).trial(trial_index);
    if (name == "thm41" || name == "thm42")
        return ConcatRunner(config, name == "thm41").trial(trial_index);
    if (name == "bench") return BenchRunner(config).trial(trial_index);
    throw ConfigError("unknown experiment: " + name);
}

ParsedCsv parse_experiment_csv(const std::string& text) {
    ParsedCsv parsed;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            const std::string body = line.substr(2);
            const auto eq = body.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("csv preamble line without '='");
            parsed.config.set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
            continue;
        }
        if (!header_seen) {
            if (trim(line) != "trial,seed,outcome,list_size,dimension,work,ms")
                throw std::invalid_argument("csv header mismatch");
            header_seen = true;
            continue;
        }
        if (trim(line).empty()) continue;
        std::istringstream row(line);
        std::string tok;
        TrialRecord rec;
        auto next_tok = [&]() {
            if (!std::getline(row, tok, ','))
                throw std::invalid_argument("csv row too short");
            return tok;
        };
        rec.trial = std::stoull(next_tok());
        rec.seed = std::stoull(next_tok());
        rec.outcome = std::stoll(next_tok());
        rec.list_size = std::stoull(next_tok());
        rec.dimension = std::stoll(next_tok());
        rec.work = std::stoull(next_tok());
        rec.ms = std::stoull(next_tok());
        parsed.rows.push_back(rec);
    }
    if (!header_seen) throw std::invalid_argument("csv has no header row");
    return parsed;
}

int replay_trial(const std::string& csv_text, std::uint64_t trial_index,
                 std::string& log) {
    const ParsedCsv parsed = parse_experiment_csv(csv_text);
    const TrialRecord* recorded = nullptr;
    for (const auto& r : parsed.rows)
        if (r.trial == trial_index) recorded = &r;
    if (!recorded) {
        log = "trial " + std::to_string(trial_index) + " not found in CSV";
        return 1;
    }
    const TrialRecord rerun = run_single_trial(parsed.config, trial_index);
    std::ostringstream out;
    out << "recorded: outcome=" << recorded->outcome
        << " list_size=" << recorded->list_size
        << " dimension=" << recorded->dimension << " work=" << recorded->work
        << " seed=" << recorded->seed << "\n";
    out << "replayed: outcome=" << rerun.outcome
        << " list_size=" << rerun.list_size << " dimension=" << rerun.dimension
        << " work=" << rerun.work << " seed=" << rerun.seed << "\n";
    const bool ok =
        recorded->same_measurements(rerun) && recorded->seed == rerun.seed;
    out << (ok ? "trial reproduced exactly" : "MISMATCH") << "\n";
    log = out.str();
    return ok ? 0 : 1;
}

ConcatTrialObjects thm4x_trial_objects(const Config& config,
                                       std::uint64_t trial_index) {
    const std::string name = config.get_string("experiment");
    if (name != "thm41" && name != "thm42")
        throw ConfigError("thm4x_trial_objects: not a concatenation experiment");
    return ConcatRunner(config, name == "thm41").trial_objects(trial_index);
}

std::uint64_t comb_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > UINT64_MAX) throw std::overflow_error("comb_u64 overflow");
    }
    return static_cast<std::uint64_t>(c);
}

}  // namespace ldlab
