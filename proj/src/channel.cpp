#include "ldlab/channel.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ldlab {

bool ReceivedWord::has_erasures() const {
    return std::any_of(symbols.begin(), symbols.end(),
                       [](Fe s) { return s == kErased; });
}

std::string ReceivedWord::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i) out += ",";
        out += erased(i) ? "?" : std::to_string(symbols[i]);
    }
    return out;
}

bool matches(std::span<const Fe> codeword, const ReceivedWord& y) {
    if (codeword.size() != y.size())
        throw std::invalid_argument("matches: length mismatch");
    for (std::size_t i = 0; i < codeword.size(); ++i)
        if (!y.erased(i) && codeword[i] != y.symbols[i]) return false;
    return true;
}

std::size_t hamming_distance(std::span<const Fe> a, std::span<const Fe> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
    return d;
}

std::size_t hamming_weight(std::span<const Fe> a) {
    std::size_t w = 0;
    for (const Fe s : a) w += (s != 0);
    return w;
}

ErrorPattern::ErrorPattern(FieldPtr f, std::size_t n_,
                           std::vector<std::size_t> support_,
                           std::vector<Fe> values_)
    : field(std::move(f)), n(n_), support(std::move(support_)),
      values(std::move(values_)) {
    if (!field) throw std::invalid_argument("ErrorPattern: null field");
    if (support.size() != values.size())
        throw std::invalid_argument("ErrorPattern: support/value count mismatch");
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] >= n)
            throw std::invalid_argument("ErrorPattern: position out of range");
        if (i > 0 && support[i] <= support[i - 1])
            throw std::invalid_argument("ErrorPattern: support not increasing");
        field->check_element(values[i]);
        if (values[i] == 0)
            throw std::invalid_argument("ErrorPattern: zero error value");
    }
}

ErasurePattern::ErasurePattern(std::size_t n_, std::vector<std::size_t> erased_)
    : n(n_), erased(std::move(erased_)) {
    if (erased.size() > n)
        throw std::invalid_argument("ErasurePattern: weight exceeds length");
    for (std::size_t i = 0; i < erased.size(); ++i) {
        if (erased[i] >= n)
            throw std::invalid_argument("ErasurePattern: position out of range");
        if (i > 0 && erased[i] <= erased[i - 1])
            throw std::invalid_argument("ErasurePattern: positions not increasing");
    }
}

ErrorPattern sample_error_pattern(FieldPtr field, std::size_t n, Rational rho,
                                  std::span<const std::size_t> clean_set,
                                  Rng& rng) {
    const std::uint64_t weight = rho.times_integral(n);  // throws if not integral
    if (clean_set.size() != n - weight)
        throw std::invalid_argument(
            "sample_error_pattern: clean set size must be (1-rho)n");
    std::vector<bool> clean(n, false);
    for (const std::size_t i : clean_set) {
        if (i >= n)
            throw std::invalid_argument("sample_error_pattern: clean position out of range");
        if (clean[i])
            throw std::invalid_argument("sample_error_pattern: duplicate clean position");
        clean[i] = true;
    }
    std::vector<std::size_t> support;
    support.reserve(weight);
    for (std::size_t i = 0; i < n; ++i)
        if (!clean[i]) support.push_back(i);
    const std::uint64_t q = field->order();
    std::vector<Fe> values(support.size());
    for (auto& v : values) v = static_cast<Fe>(1 + rng.below(q - 1));
    return ErrorPattern(std::move(field), n, std::move(support), std::move(values));
}

ErrorPattern sample_error_pattern_weight(FieldPtr field, std::size_t n,
                                         std::size_t weight, Rng& rng) {
    if (weight > n)
        throw std::invalid_argument("sample_error_pattern_weight: weight > n");
    std::vector<std::size_t> support = rng.subset(n, weight);
    const std::uint64_t q = field->order();
    std::vector<Fe> values(weight);
    for (auto& v : values) v = static_cast<Fe>(1 + rng.below(q - 1));
    return ErrorPattern(std::move(field), n, std::move(support), std::move(values));
}

ErrorPattern sample_error_pattern_ball(FieldPtr field, std::size_t n,
                                       std::size_t max_weight, Rng& rng) {
    if (max_weight > n)
        throw std::invalid_argument("sample_error_pattern_ball: weight > n");
    const std::uint64_t q = field->order();
    // layer sizes C(n,w)(q-1)^w; the ball must fit in 64 bits to sample
    std::vector<std::uint64_t> layer(max_weight + 1);
    std::uint64_t total = 0;
    for (std::size_t w = 0; w <= max_weight; ++w) {
        unsigned __int128 c = 1;
        for (std::size_t i = 1; i <= w; ++i) c = c * (n - w + i) / i;
        for (std::size_t i = 0; i < w; ++i) {
            c *= (q - 1);
            if (c > UINT64_MAX)
                throw std::length_error("sample_error_pattern_ball: ball too large");
        }
        layer[w] = static_cast<std::uint64_t>(c);
        if (total > UINT64_MAX - layer[w])
            throw std::length_error("sample_error_pattern_ball: ball too large");
        total += layer[w];
    }
    std::uint64_t pick = rng.below(total);
    std::size_t w = 0;
    while (pick >= layer[w]) {
        pick -= layer[w];
        ++w;
    }
    return sample_error_pattern_weight(std::move(field), n, w, rng);
}

ReceivedWord apply_error(std::span<const Fe> codeword, const ErrorPattern& e) {
    if (codeword.size() != e.n)
        throw std::invalid_argument("apply_error: length mismatch");
    ReceivedWord y{e.field, std::vector<Fe>(codeword.begin(), codeword.end())};
    const Field& f = *e.field;
    for (std::size_t i = 0; i < e.support.size(); ++i)
        y.symbols[e.support[i]] = f.add(y.symbols[e.support[i]], e.values[i]);
    return y;
}

ReceivedWord qsc_transmit(FieldPtr field, std::span<const Fe> codeword,
                          double rho, Rng& rng) {
    const std::uint64_t q = field->order();
    if (rho < 0.0 || rho > 1.0 - 1.0 / double(q))
        throw std::invalid_argument("qsc_transmit: rho out of [0, 1-1/q]");
    ReceivedWord y{field, std::vector<Fe>(codeword.begin(), codeword.end())};
    for (auto& s : y.symbols) {
        field->check_element(s);
        if (rng.bernoulli(rho)) {
            // uniform over the q-1 symbols different from s
            const std::uint64_t shift = 1 + rng.below(q - 1);
            s = static_cast<Fe>((s + shift) % q);
        }
    }
    return y;
}

ErasurePattern sample_erasure_pattern(std::size_t n, std::size_t weight,
                                      Rng& rng) {
    if (weight > n)
        throw std::invalid_argument("sample_erasure_pattern: weight > n");
    return ErasurePattern(n, rng.subset(n, weight));
}

ErasurePattern erasure_pattern_from_set(std::size_t n,
                                        std::vector<std::size_t> erased) {
    std::sort(erased.begin(), erased.end());
    return ErasurePattern(n, std::move(erased));
}

ErasurePattern prefix_erasures(std::size_t n, std::size_t weight) {
    if (weight > n) throw std::invalid_argument("prefix_erasures: weight > n");
    std::vector<std::size_t> erased(weight);
    for (std::size_t i = 0; i < weight; ++i) erased[i] = i;
    return ErasurePattern(n, std::move(erased));
}

ErasurePattern segment_aligned_erasures(std::size_t inner_len,
                                        std::size_t outer_len,
                                        std::size_t segments, Rng& rng) {
    if (segments > outer_len)
        throw std::invalid_argument("segment_aligned_erasures: too many segments");
    const std::vector<std::size_t> which = rng.subset(outer_len, segments);
    std::vector<std::size_t> erased;
    erased.reserve(segments * inner_len);
    for (const std::size_t s : which)
        for (std::size_t j = 0; j < inner_len; ++j)
            erased.push_back(s * inner_len + j);
    std::sort(erased.begin(), erased.end());
    return ErasurePattern(inner_len * outer_len, std::move(erased));
}

ReceivedWord apply_erasures(FieldPtr field, std::span<const Fe> codeword,
                            const ErasurePattern& p) {
    if (codeword.size() != p.n)
        throw std::invalid_argument("apply_erasures: length mismatch");
    ReceivedWord y{std::move(field), std::vector<Fe>(codeword.begin(), codeword.end())};
    for (const std::size_t i : p.erased) y.symbols[i] = kErased;
    return y;
}

std::vector<std::size_t> random_clean_set(std::size_t n, std::size_t size,
                                          Rng& rng) {
    return rng.subset(n, size);
}

std::vector<std::size_t> prefix_clean_set(std::size_t n, std::size_t size) {
    if (size > n) throw std::invalid_argument("prefix_clean_set: size > n");
    std::vector<std::size_t> out(size);
    for (std::size_t i = 0; i < size; ++i) out[i] = i;
    return out;
}

namespace {

std::string hex_str(Fe v) {
    std::ostringstream out;
    out << std::hex << v;
    return out.str();
}

}  // namespace

std::string error_pattern_to_json(const ErrorPattern& e) {
    nlohmann::json j;
    j["type"] = "error";
    j["n"] = e.n;
    j["support"] = e.support;
    std::vector<std::string> vals;
    vals.reserve(e.values.size());
    for (const Fe v : e.values) vals.push_back(hex_str(v));
    j["values"] = vals;
    return j.dump();
}

std::string erasure_pattern_to_json(const ErasurePattern& p) {
    nlohmann::json j;
    j["type"] = "erasure";
    j["n"] = p.n;
    j["erased"] = p.erased;
    return j.dump();
}

ErrorPattern error_pattern_from_json(const std::string& line, FieldPtr field) {
    const auto j = nlohmann::json::parse(line);
    if (j.at("type") != "error")
        throw std::invalid_argument("error_pattern_from_json: wrong type");
    std::vector<Fe> values;
    for (const auto& v : j.at("values"))
        values.push_back(
            static_cast<Fe>(std::stoul(v.get<std::string>(), nullptr, 16)));
    return ErrorPattern(std::move(field), j.at("n").get<std::size_t>(),
                        j.at("support").get<std::vector<std::size_t>>(),
                        std::move(values));
}

ErasurePattern erasure_pattern_from_json(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    if (j.at("type") != "erasure")
        throw std::invalid_argument("erasure_pattern_from_json: wrong type");
    return ErasurePattern(j.at("n").get<std::size_t>(),
                          j.at("erased").get<std::vector<std::size_t>>());
}

}  // namespace ldlab
