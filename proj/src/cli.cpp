#include "ldlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ldlab/channel.hpp"
#include "ldlab/codes.hpp"
#include "ldlab/decode.hpp"
#include "ldlab/experiments.hpp"

namespace ldlab {

namespace {

// "rs:q=5,n=4,k=1", "random:q=2,n=3,k=2,seed=7", or "file:path"
LinearCode code_from_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ConfigError("code spec needs a kind prefix, e.g. rs:q=5,n=4,k=1");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);

    if (kind == "file") {
        std::ifstream in(rest);
        if (!in) throw ConfigError("cannot open code file: " + rest);
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_code(buf.str());
    }

    Config params;
    std::istringstream in(rest);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ConfigError("bad code parameter: " + item);
        params.set(item.substr(0, eq), item.substr(eq + 1));
    }
    FieldPtr field;
    if (params.contains("q")) {
        const auto [p, m] = prime_power_split(params.get_u64("q"));
        field = field_build(p, m);
    } else {
        field = field_build(params.get_u64("p"),
                            static_cast<std::uint32_t>(params.get_u64("m", 1)));
    }
    const std::size_t n = params.get_u64("n");
    const std::size_t k = params.get_u64("k");
    if (kind == "rs") return rs_code(field, n, k);
    if (kind == "random") {
        Rng rng(params.get_u64("seed", 1));
        LinearCode code = random_linear_code(field, n, k, rng);
        code.seed = params.get_u64("seed", 1);
        return code;
    }
    throw ConfigError("unknown code kind: " + kind);
}

ReceivedWord word_from_text(const FieldPtr& field, const std::string& text) {
    ReceivedWord y{field, {}};
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok == "?") {
            y.symbols.push_back(kErased);
        } else {
            const std::uint64_t v = std::stoull(tok);
            y.symbols.push_back(field->element(v));
        }
    }
    return y;
}

std::vector<Fe> symbols_from_text(const FieldPtr& field, const std::string& text) {
    const ReceivedWord w = word_from_text(field, text);
    if (w.has_erasures()) throw ConfigError("erasures not allowed here");
    return w.symbols;
}

std::string format_codeword(std::span<const Fe> cw) {
    std::string out = "(";
    for (std::size_t i = 0; i < cw.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(cw[i]);
    }
    return out + ")";
}

void emit_csv(const ExperimentReport& report, const std::string& out_path,
              std::ostream& out) {
    if (out_path.empty()) {
        out << report.csv();
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw ConfigError("cannot write output file: " + out_path);
    file << report.csv();
}

struct ExperimentArgs {
    std::string name;
    std::string config_path;
    std::string out_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> jobs;
};

Config make_config(const ExperimentArgs& args) {
    Config cfg = args.config_path.empty() ? Config()
                                          : Config::from_file(args.config_path);
    cfg.set("experiment", args.name);
    if (args.seed) cfg.set("seed", std::to_string(*args.seed));
    if (args.jobs) cfg.set("jobs", std::to_string(*args.jobs));
    for (const auto& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--set expects key=value, got: " + kv);
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"coding-theory laboratory: exact finite-field codes, noise "
                 "models, list decoders, and reproducible experiments"};
    app.require_subcommand(1);

    // encode
    auto* encode_cmd = app.add_subcommand("encode", "encode a message");
    std::string enc_code, enc_message, enc_save;
    encode_cmd->add_option("--code", enc_code, "code spec, e.g. rs:q=5,n=4,k=1")
        ->required();
    encode_cmd->add_option("--message", enc_message, "comma-separated symbols")
        ->required();
    encode_cmd->add_option("--save-code", enc_save,
                           "write the full code description to this path");

    // corrupt
    auto* corrupt_cmd =
        app.add_subcommand("corrupt", "apply noise to a word");
    std::string cor_word;
    std::uint64_t cor_q = 0, cor_seed = 1;
    std::uint64_t cor_weight = 0, cor_erase = 0;
    bool cor_erase_set = false, cor_pattern = false;
    corrupt_cmd->add_option("--q", cor_q, "field size")->required();
    corrupt_cmd->add_option("--word", cor_word, "comma-separated symbols")
        ->required();
    corrupt_cmd->add_option("--weight", cor_weight,
                            "number of random nonzero errors");
    corrupt_cmd->add_option("--erase", cor_erase, "number of erased positions")
        ->trigger_on_parse()
        ->each([&](const std::string&) { cor_erase_set = true; });
    corrupt_cmd->add_option("--seed", cor_seed, "rng seed");
    corrupt_cmd->add_flag("--emit-pattern", cor_pattern,
                          "also print the pattern as a JSON line");

    // decode
    auto* decode_cmd = app.add_subcommand("decode", "list-decode a word");
    std::string dec_code, dec_word, dec_algo = "auto";
    std::int64_t dec_radius = -1, dec_errors = -1, dec_agreement = -1;
    decode_cmd->add_option("--code", dec_code, "code spec")->required();
    decode_cmd->add_option("--word", dec_word, "received word; ? marks erasure")
        ->required();
    decode_cmd->add_option("--radius", dec_radius, "ball decoding radius");
    decode_cmd->add_option("--errors", dec_errors,
                           "error-location decoding count");
    decode_cmd->add_option("--agreement", dec_agreement,
                           "subset decoding agreement threshold");
    decode_cmd->add_option("--algo", dec_algo,
                           "auto | ball | errloc | subset | erasure");

    // experiment run / replay
    auto* experiment_cmd =
        app.add_subcommand("experiment", "run or replay an experiment");
    experiment_cmd->require_subcommand(1);
    auto* run_cmd = experiment_cmd->add_subcommand("run", "run an experiment");
    ExperimentArgs run_args;
    std::uint64_t opt_seed = 0, opt_jobs = 0;
    run_cmd->add_option("name", run_args.name,
                        "thm31a | thm31b | cor32 | lemma34 | thm41 | thm42 | bench")
        ->required();
    run_cmd->add_option("--config", run_args.config_path, "key = value file");
    run_cmd->add_option("--out", run_args.out_path, "CSV output path");
    run_cmd->add_option("--set", run_args.overrides,
                        "extra key=value overrides");
    auto* seed_opt = run_cmd->add_option("--seed", opt_seed, "master seed");
    auto* jobs_opt = run_cmd->add_option("--jobs", opt_jobs, "worker threads");

    auto* replay_cmd =
        experiment_cmd->add_subcommand("replay", "re-run one recorded trial");
    std::string replay_csv;
    std::uint64_t replay_index = 0;
    replay_cmd->add_option("csv", replay_csv, "CSV produced by experiment run")
        ->required();
    replay_cmd->add_option("--trial", replay_index, "trial index")->required();

    // bench
    auto* bench_cmd =
        app.add_subcommand("bench", "decoder work-counter benchmark");
    ExperimentArgs bench_args;
    bench_args.name = "bench";
    bench_cmd->add_option("--config", bench_args.config_path, "key = value file");
    bench_cmd->add_option("--out", bench_args.out_path, "CSV output path");
    bench_cmd->add_option("--set", bench_args.overrides, "key=value overrides");
    auto* bseed_opt = bench_cmd->add_option("--seed", opt_seed, "master seed");
    auto* bjobs_opt = bench_cmd->add_option("--jobs", opt_jobs, "worker threads");

    try {
        app.parse(argc, argv);

        if (*encode_cmd) {
            const LinearCode code = code_from_spec(enc_code);
            const std::vector<Fe> msg = symbols_from_text(code.field, enc_message);
            out << format_codeword(code.encode(msg)) << "\n";
            if (!enc_save.empty()) {
                std::ofstream f(enc_save);
                if (!f) throw ConfigError("cannot write code file: " + enc_save);
                f << serialize_code(code);
            }
            return 0;
        }

        if (*corrupt_cmd) {
            const auto [p, m] = prime_power_split(cor_q);
            const FieldPtr field = field_build(p, m);
            const std::vector<Fe> word = symbols_from_text(field, cor_word);
            Rng rng(cor_seed);
            if (cor_erase_set) {
                const ErasurePattern pat =
                    sample_erasure_pattern(word.size(), cor_erase, rng);
                out << apply_erasures(field, word, pat).to_string() << "\n";
                if (cor_pattern) out << erasure_pattern_to_json(pat) << "\n";
            } else {
                const ErrorPattern pat =
                    sample_error_pattern_weight(field, word.size(), cor_weight, rng);
                out << apply_error(word, pat).to_string() << "\n";
                if (cor_pattern) out << error_pattern_to_json(pat) << "\n";
            }
            return 0;
        }

        if (*decode_cmd) {
            const LinearCode code = code_from_spec(dec_code);
            const ReceivedWord y = word_from_text(code.field, dec_word);
            std::string algo = dec_algo;
            if (algo == "auto") {
                if (y.has_erasures())
                    algo = "erasure";
                else if (dec_radius >= 0)
                    algo = "ball";
                else if (dec_errors >= 0)
                    algo = "errloc";
                else if (dec_agreement >= 0)
                    algo = "subset";
                else
                    throw ConfigError(
                        "decode: give --radius, --errors, --agreement, or an "
                        "erased word");
            }
            DecodeResult result;
            if (algo == "ball") {
                if (dec_radius < 0) throw ConfigError("decode: --radius required");
                result = ball_list_decode(code, y, dec_radius);
            } else if (algo == "errloc") {
                if (dec_errors < 0) throw ConfigError("decode: --errors required");
                result = rs_error_location_decode(code, y, dec_errors);
            } else if (algo == "subset") {
                if (dec_agreement < 0)
                    throw ConfigError("decode: --agreement required");
                result = rs_subset_decode(code, y, dec_agreement);
            } else if (algo == "erasure") {
                const ErasureDecodeResult er = erasure_list_decode(code, y);
                result = er.list;
                err << "dimension = "
                    << (er.dimension ? std::to_string(*er.dimension) : "none")
                    << "\n";
            } else {
                throw ConfigError("decode: unknown algorithm: " + algo);
            }
            for (const auto& cw : result.codewords)
                out << format_codeword(cw) << "\n";
            err << "list_size = " << result.codewords.size()
                << " work = " << result.work
                << (result.truncated ? " (truncated)" : "") << "\n";
            return 0;
        }

        if (*run_cmd || *bench_cmd) {
            ExperimentArgs& args = *run_cmd ? run_args : bench_args;
            if (*run_cmd) {
                if (*seed_opt) args.seed = opt_seed;
                if (*jobs_opt) args.jobs = opt_jobs;
            } else {
                if (*bseed_opt) args.seed = opt_seed;
                if (*bjobs_opt) args.jobs = opt_jobs;
            }
            const Config cfg = make_config(args);
            const ExperimentReport report = run_experiment(cfg);
            const std::string out_path = args.out_path.empty()
                                             ? cfg.get_string("out", "")
                                             : args.out_path;
            emit_csv(report, out_path, out);
            err << report.summary_text();
            return report.pass ? 0 : 1;
        }

        if (*replay_cmd) {
            std::ifstream in(replay_csv);
            if (!in) throw ConfigError("cannot open CSV: " + replay_csv);
            std::ostringstream buf;
            buf << in.rdbuf();
            std::string log;
            const int rc = replay_trial(buf.str(), replay_index, log);
            out << log;
            return rc;
        }

        err << "no subcommand given\n" << app.help();
        return 2;
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    std::vector<std::string> with_prog;
    with_prog.reserve(args.size() + 1);
    with_prog.push_back("ldlab");
    with_prog.insert(with_prog.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(with_prog.size());
    for (const auto& a : with_prog) argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ldlab
