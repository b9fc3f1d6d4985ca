// Acceptance suite: end-to-end gates for the whole laboratory, one line of
// output per criterion. Exit code 0 only if every gate passes.
//
// Monte Carlo gates run at pinned master seeds; the *_fixture constants were
// recorded from the first run at those seeds and lock the outcomes exactly
// (everything here is deterministic by construction, so equality is stable).

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "ldlab/analysis.hpp"
#include "ldlab/channel.hpp"
#include "ldlab/codes.hpp"
#include "ldlab/decode.hpp"
#include "ldlab/experiments.hpp"

using namespace ldlab;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& label,
            const std::string& detail) {
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << " - "
              << label << " (" << detail << ")" << std::endl;
    if (!pass) ++g_failures;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// ---- criterion 1: thm31a desk-scale gate -----------------------------------

void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    Config cfg = Config::from_text(
        "experiment = thm31a\n"
        "p = 2\n"
        "m = 12\n"
        "n = 6\n"
        "k = 1\n"
        "rho = 1/2\n"
        "eps = 1/2\n"
        "trials = 10000\n"
        "seed = 2026\n"
        "clean_set_mode = fixed\n"
        "clean_set_preset = random\n");
    const ExperimentReport rep = run_experiment(cfg);
    const double bound = rep.summary_number("bound_value");
    const double frac = rep.summary_number("bad_fraction");
    const double threshold = rep.summary_number("gate_threshold");
    const bool bound_exact = std::abs(bound - 1.0 / 64.0) < 1e-12;
    const bool pass = rep.pass && bound_exact &&
                      rep.summary_value("bound_preconditions_met") == "true";
    std::ostringstream detail;
    detail << "fraction=" << frac << " bound=1/64 threshold=" << threshold
           << " runtime=" << elapsed_s(t0) << "s";
    report(1, pass, "thm31a: unique decoding of rho=delta-eps random errors",
           detail.str());
}

// ---- criterion 2: thm31b desk-scale gate -----------------------------------

void criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    Config cfg = Config::from_text(
        "experiment = thm31b\n"
        "p = 2\n"
        "m = 12\n"
        "n = 6\n"
        "k = 2\n"
        "eps = 1/3\n"
        "gamma = 1/4\n"
        "weight = 2\n"
        "trials = 10000\n"
        "seed = 2026\n"
        "decoder = subset\n"
        "precondition_policy = report\n"
        "gate_unmet_bound = true\n");
    const ExperimentReport rep = run_experiment(cfg);
    const double bound = rep.summary_number("bound_value");
    const double frac = rep.summary_number("bad_fraction");
    const bool bound_exact = std::abs(bound - std::pow(4095.0, -0.5)) < 1e-12;
    const bool pass = rep.pass && bound_exact;
    std::ostringstream detail;
    detail << "fraction=" << frac << " bound=(q-1)^-1/2=" << bound
           << " decode_radius=3 runtime=" << elapsed_s(t0) << "s";
    report(2, pass, "thm31b: decoding radius beyond the error weight",
           detail.str());
}

// ---- criterion 3: oracle equivalence grid ---------------------------------

void criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t checks = 0, mismatches = 0;
    for (const std::uint64_t q : {2ull, 4ull, 5ull, 16ull}) {
        const auto [p, m] = prime_power_split(q);
        const FieldPtr f = field_build(p, m);
        const std::size_t n_max = std::min<std::uint64_t>(q, 8);
        for (std::size_t n = 2; n <= n_max; ++n) {
            for (std::size_t k = 1; k <= std::min<std::size_t>(2, n); ++k) {
                const LinearCode code = rs_code(f, n, k);
                Rng rng(derive_seed(2026, "acceptance/oracle", q * 100 + n * 10 + k));
                for (int word_i = 0; word_i < 100; ++word_i) {
                    std::vector<Fe> y(n);
                    for (auto& s : y) s = static_cast<Fe>(rng.below(q));
                    const ReceivedWord w{f, y};
                    for (std::size_t t = k + 1; t <= n; ++t) {
                        const auto subset = rs_subset_decode(code, w, t);
                        const auto ball = ball_list_decode(code, w, n - t);
                        ++checks;
                        if (subset.codewords != ball.codewords) ++mismatches;
                    }
                    for (std::size_t e = 0; e + k < n; ++e) {
                        const auto errloc = rs_error_location_decode(code, w, e);
                        const auto ball = ball_list_decode(code, w, e);
                        ++checks;
                        if (errloc.codewords != ball.codewords) ++mismatches;
                    }
                    // erasure decode vs brute-force matching enumeration
                    const std::size_t weight = rng.below(n + 1);
                    const ErasurePattern pat =
                        sample_erasure_pattern(n, weight, rng);
                    const ReceivedWord ye = apply_erasures(f, y, pat);
                    const auto er = erasure_list_decode(code, ye);
                    std::vector<std::vector<Fe>> expected;
                    std::uint64_t message_matches = 0;
                    for_each_codeword(
                        code, [&](std::span<const Fe>, std::span<const Fe> cw) {
                            if (matches(cw, ye)) {
                                expected.emplace_back(cw.begin(), cw.end());
                                ++message_matches;
                            }
                            return true;
                        });
                    std::sort(expected.begin(), expected.end());
                    expected.erase(std::unique(expected.begin(), expected.end()),
                                   expected.end());
                    ++checks;
                    bool ok = er.list.codewords == expected;
                    if (er.dimension) {
                        std::uint64_t qd = 1;
                        for (std::size_t i = 0; i < *er.dimension; ++i) qd *= q;
                        ok = ok && qd == message_matches;
                    } else {
                        ok = ok && message_matches == 0;
                    }
                    if (!ok) ++mismatches;
                }
            }
        }
    }
    std::ostringstream detail;
    detail << checks << " checks, " << mismatches
           << " mismatches, runtime=" << elapsed_s(t0) << "s";
    report(3, mismatches == 0,
           "oracle equivalence: subset/error-location/erasure vs ball decoding",
           detail.str());
}

// ---- criterion 4: Monte Carlo within 3 sigma of the exhaustive oracle -----

void criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Instance {
        FieldPtr f;
        LinearCode code;
        std::vector<std::size_t> clean;
        std::size_t radius;
    };
    std::vector<Instance> instances;
    {
        const FieldPtr f5 = field_build(5, 1);
        instances.push_back({f5, rs_code(f5, 4, 2), {0, 1}, 2});
        instances.push_back({f5, rs_code(f5, 4, 1), {1, 3}, 2});
        const FieldPtr f16 = field_build(2, 4);
        instances.push_back({f16, rs_code(f16, 6, 1), {0, 1, 2}, 3});
        const FieldPtr f4 = field_build(2, 2);
        instances.push_back({f4, rs_code(f4, 4, 2), {0, 3}, 1});
        const FieldPtr f2 = field_build(2, 1);
        instances.push_back({f2, rs_code(f2, 2, 1), {0}, 1});
    }

    const std::uint64_t samples = 10000;
    bool all_pass = true;
    std::ostringstream detail;
    for (std::size_t idx = 0; idx < instances.size(); ++idx) {
        const Instance& inst = instances[idx];
        const std::size_t n = inst.code.n;
        const Rational rho(n - inst.clean.size(), n);
        const std::vector<Fe> c(n, 0);  // zero codeword; fractions are
                                        // translation-invariant for linear codes
        const Rational exact =
            bad_fraction_exhaustive(inst.code, c, inst.clean, inst.radius);
        const double p = exact.to_double();
        const double sigma = std::sqrt(p * (1 - p) / double(samples));
        const Codebook book(inst.code);

        std::size_t seeds_ok = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            std::uint64_t bad = 0;
            Rng rng(derive_seed(2026 + seed, "acceptance/mc", idx));
            for (std::uint64_t s = 0; s < samples; ++s) {
                const ErrorPattern e =
                    sample_error_pattern(inst.f, n, rho, inst.clean, rng);
                const ReceivedWord y = apply_error(c, e);
                if (second_codeword_within(book, y.symbols, inst.radius, c)) ++bad;
            }
            const double estimate = double(bad) / double(samples);
            if (std::abs(estimate - p) <= 3 * sigma) ++seeds_ok;
        }
        if (seeds_ok < 99) all_pass = false;
        detail << "inst" << idx << "=" << seeds_ok << "/100 (exact "
               << exact.to_string() << ") ";
    }
    detail << "runtime=" << elapsed_s(t0) << "s";
    report(4, all_pass, "Monte Carlo estimates track bad_fraction_exhaustive",
           detail.str());
}

// ---- criterion 5: inverse Markov inequality, exact rationals --------------

void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(derive_seed(2026, "acceptance/markov", 0));
    std::size_t violations = 0;
    for (int round = 0; round < 1000; ++round) {
        const std::size_t nl = 1 + rng.below(10);
        const std::size_t nr = 1 + rng.below(10);
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t u = 0; u < nl; ++u)
            for (std::size_t v = 0; v < nr; ++v)
                if (rng.below(3) == 0) edges.emplace_back(u, v);
        if (edges.empty()) edges.emplace_back(rng.below(nl), rng.below(nr));
        const BipartiteGraph g(nl, nr, edges);
        const Rational eps(1 + rng.below(25), 25);
        if (!(inverse_markov_edge_prob(g, eps) <= eps)) ++violations;

        // left-regular instance for the two-step process form
        const std::size_t d = 1 + rng.below(nr);
        std::vector<std::pair<std::size_t, std::size_t>> reg_edges;
        for (std::size_t u = 0; u < nl; ++u)
            for (const std::size_t v : rng.subset(nr, d))
                reg_edges.emplace_back(u, v);
        const BipartiteGraph reg(nl, nr, reg_edges);
        if (!(inverse_markov_process_prob(reg, eps) <= eps)) ++violations;
    }
    std::ostringstream detail;
    detail << "2000 exact probabilities on 1000 graphs, " << violations
           << " violations, runtime=" << elapsed_s(t0) << "s";
    report(5, violations == 0, "inverse Markov bounds hold exactly", detail.str());
}

// ---- criterion 6: lemma34, random codes above capacity ---------------------

void criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    Config cfg = Config::from_text(
        "experiment = lemma34\n"
        "p = 2\n"
        "n = 14\n"
        "k = 11\n"
        "rho = 3/14\n"
        "gamma = 0.03\n"
        "codes = 50\n"
        "codeword_samples = 5\n"
        "pattern_samples = 200\n"
        "seed = 2026\n"
        "min_witness_fraction = 4/5\n");
    const ExperimentReport rep = run_experiment(cfg);
    // fixture recorded from the first run at seed 2026
    const std::string witness_fixture = "50";
    const bool fixture_ok = rep.summary_value("witness_codes") == witness_fixture;
    std::ostringstream detail;
    detail << "witness_codes=" << rep.summary_value("witness_codes") << "/50"
           << " max_bad_fraction=" << rep.summary_value("max_bad_fraction")
           << " runtime=" << elapsed_s(t0) << "s";
    report(6, rep.pass && fixture_ok,
           "lemma34: above-capacity codes exhibit witness codewords",
           detail.str());
}

// ---- criterion 7: thm41/thm42, concatenated codes under erasures -----------

void criterion7() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string base_cfg =
        "q = 2\n"
        "n = 4\n"
        "N = 8\n"
        "K = 4\n"
        "eps = 1/4\n"
        "codes = 200\n"
        "patterns = 500\n"
        "list_gate = 16\n"
        "seed = 2026\n"
        "min_full_rank_fraction = 9/10\n"
        "min_list_ok_fraction = 19/20\n";

    bool pass = true;
    std::ostringstream detail;
    // fixtures recorded from the first run at seed 2026
    const std::map<std::string, std::pair<std::string, std::string>> fixtures{
        {"thm41", {"200", "200"}},  // full_rank_count, list_ok_count
        {"thm42", {"199", "200"}}};

    for (const std::string name : {"thm41", "thm42"}) {
        Config cfg = Config::from_text(base_cfg);
        cfg.set("experiment", name);
        if (name == "thm41") cfg.set("s", "1");
        const ExperimentReport rep = run_experiment(cfg);
        pass = pass && rep.pass;

        // brute-force cross-check on subsampled codes and patterns
        std::uint64_t brute_mismatches = 0;
        for (std::uint64_t trial = 0; trial < 10; ++trial) {
            const ConcatTrialObjects objs = thm4x_trial_objects(cfg, trial);
            for (std::size_t j = 0; j < 3; ++j) {
                const std::vector<Fe> cw =
                    objs.composite.encode(objs.messages[j]);
                const ReceivedWord y =
                    apply_erasures(objs.composite.field, cw, objs.patterns[j]);
                std::uint64_t count = 0;
                for_each_codeword(
                    objs.composite,
                    [&](std::span<const Fe>, std::span<const Fe> w) {
                        if (matches(w, y)) ++count;
                        return true;
                    });
                std::uint64_t qd = 1;
                for (std::size_t i = 0; i < objs.dimensions[j]; ++i) qd *= 2;
                if (count != qd) ++brute_mismatches;
            }
        }
        pass = pass && brute_mismatches == 0;

        const auto& fixture = fixtures.at(name);
        const bool fixture_ok =
            rep.summary_value("full_rank_count") == fixture.first &&
            rep.summary_value("list_ok_count") == fixture.second;
        pass = pass && fixture_ok;

        detail << name << ": full_rank=" << rep.summary_value("full_rank_fraction")
               << " list_ok=" << rep.summary_value("list_ok_fraction")
               << " hist=[" << rep.summary_value("max_list_histogram")
               << "] brute_mismatches=" << brute_mismatches << " ";
    }
    detail << "runtime=" << elapsed_s(t0) << "s";
    report(7, pass, "thm41/thm42: erasure list sizes and rate of concatenations",
           detail.str());
}

// ---- criterion 8: independent-tuple counting bound -------------------------

void criterion8() {
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t violations = 0, profiles = 0;
    for (const std::uint64_t q : {2ull, 3ull, 4ull, 5ull}) {
        const auto [p, m] = prime_power_split(q);
        const FieldPtr f = field_build(p, m);
        for (std::size_t N = 2; N <= std::min<std::uint64_t>(q, 4); ++N) {
            const LinearCode code = rs_code(f, N, 1);
            std::vector<std::vector<Fe>> codewords;
            for_each_codeword(code,
                              [&](std::span<const Fe>, std::span<const Fe> cw) {
                                  codewords.emplace_back(cw.begin(), cw.end());
                                  return true;
                              });
            for (const std::size_t J : {2ull, 3ull}) {
                std::map<std::vector<std::size_t>, std::uint64_t> counts;
                std::vector<std::size_t> pick(J, 0);
                for (;;) {
                    std::vector<OuterCodeword> tuple;
                    for (const std::size_t i : pick)
                        tuple.push_back(as_outer_codeword(codewords[i]));
                    ++counts[independence_profile(tuple, *f)];
                    std::size_t pos = 0;
                    for (; pos < J; ++pos) {
                        pick[pos] = (pick[pos] + 1) % codewords.size();
                        if (pick[pos] != 0) break;
                    }
                    if (pos == J) break;
                }
                for (const auto& [d, count] : counts) {
                    ++profiles;
                    const BigUint bound = independent_tuple_count_bound(
                        N, J, Rational(1, N), d, q, q);
                    if (BigUint(count) > bound) ++violations;
                }
            }
        }
    }
    std::ostringstream detail;
    detail << profiles << " profiles tallied, " << violations
           << " violations, runtime=" << elapsed_s(t0) << "s";
    report(8, violations == 0,
           "exhaustive independent-tuple counts never exceed the counting bound",
           detail.str());
}

// ---- criterion 9: benchmark work counters ---------------------------------

void criterion9() {
    const auto t0 = std::chrono::steady_clock::now();
    Config cfg = Config::from_text(
        "experiment = bench\n"
        "q = 4096\n"
        "points = 8:1:4;12:1:8;16:1:11\n"
        "seed = 2026\n");
    const ExperimentReport rep = run_experiment(cfg);
    // trial layout: 3 rows per point (subset, errloc, ball)
    const std::uint64_t subset_16 = rep.trials[6].work;
    const std::uint64_t errloc_16 = rep.trials[7].work;
    const std::uint64_t ball_16 = rep.trials[8].work;
    const bool strict =
        subset_16 == 1820 && errloc_16 == 4368 && ball_16 == 4096 &&
        subset_16 < errloc_16 && subset_16 < ball_16;
    const bool equality_point =
        rep.trials[0].work == 70 && rep.trials[1].work == 70;
    std::ostringstream detail;
    detail << "C(16,4)=" << subset_16 << " < C(16,11)=" << errloc_16
           << " and < q^k=" << ball_16 << "; C(8,4)=70 equality point; runtime="
           << elapsed_s(t0) << "s";
    report(9, rep.pass && strict && equality_point,
           "subset decoder beats both trivial decoders at (n=16,k=1,e=11)",
           detail.str());
}

// ---- criterion 10: byte-identical CSV under reruns and parallelism --------

void criterion10() {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;

    Config thm31a = Config::from_text(
        "experiment = thm31a\n"
        "p = 2\n"
        "m = 12\n"
        "n = 6\n"
        "k = 1\n"
        "rho = 1/2\n"
        "eps = 1/2\n"
        "trials = 200\n"
        "seed = 2026\n");
    const std::string csv_a = run_experiment(thm31a).csv();
    pass = pass && run_experiment(thm31a).csv() == csv_a;
    for (const char* jobs : {"2", "3"}) {
        Config cfg = thm31a;
        cfg.set("jobs", jobs);
        pass = pass && run_experiment(cfg).csv() == csv_a;
    }

    Config thm42 = Config::from_text(
        "experiment = thm42\n"
        "q = 2\n"
        "n = 4\n"
        "N = 8\n"
        "K = 4\n"
        "eps = 1/4\n"
        "codes = 6\n"
        "patterns = 30\n"
        "seed = 2026\n");
    const std::string csv42 = run_experiment(thm42).csv();
    pass = pass && run_experiment(thm42).csv() == csv42;

    // replay reproduces recorded trials from the CSV alone
    std::string log;
    pass = pass && replay_trial(csv_a, 5, log) == 0;
    pass = pass && replay_trial(csv42, 3, log) == 0;

    std::ostringstream detail;
    detail << "thm31a x2 + jobs{2,3}, thm42 x2, replay x2, runtime="
           << elapsed_s(t0) << "s";
    report(10, pass, "determinism: identical CSV bytes and exact replay",
           detail.str());
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT")
              << " (" << elapsed_s(t0) << "s total)" << std::endl;
    return g_failures == 0 ? 0 : 1;
}
