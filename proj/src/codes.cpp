#include "ldlab/codes.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ldlab {

LinearCode::LinearCode(FieldPtr f, std::size_t n_, std::size_t k_, Matrix g)
    : field(std::move(f)), n(n_), k(k_), generator(std::move(g)) {
    if (!field) throw std::invalid_argument("LinearCode: null field");
    if (k < 1 || k > n) throw std::invalid_argument("LinearCode: need 1 <= k <= n");
    if (generator.rows() != k || generator.cols() != n)
        throw std::invalid_argument("LinearCode: generator shape mismatch");
    if (!generator.field()->same(*field))
        throw std::invalid_argument("LinearCode: generator field mismatch");
}

std::vector<Fe> LinearCode::encode(std::span<const Fe> message) const {
    if (message.size() != k)
        throw std::invalid_argument("LinearCode::encode: message length mismatch");
    return vec_mat_mul(*field, message, generator);
}

std::uint64_t LinearCode::message_count(std::uint64_t cap) const {
    const std::uint64_t q = field->order();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (count > cap / q)
            throw std::length_error("LinearCode: q^k exceeds enumeration cap");
        count *= q;
    }
    if (count > cap)
        throw std::length_error("LinearCode: q^k exceeds enumeration cap");
    return count;
}

LinearCode rs_code(FieldPtr field, std::size_t n, std::size_t k) {
    if (!field) throw std::invalid_argument("rs_code: null field");
    if (n > field->order())
        throw std::invalid_argument("rs_code: n exceeds field size");
    std::vector<Fe> points(n);
    for (std::size_t i = 0; i < n; ++i) points[i] = static_cast<Fe>(i);
    return rs_code(std::move(field), n, k, std::move(points));
}

LinearCode rs_code(FieldPtr field, std::size_t n, std::size_t k,
                   std::vector<Fe> points) {
    if (!field) throw std::invalid_argument("rs_code: null field");
    if (n > field->order())
        throw std::invalid_argument("rs_code: n exceeds field size");
    if (points.size() != n)
        throw std::invalid_argument("rs_code: need n evaluation points");
    for (std::size_t i = 0; i < n; ++i) {
        field->check_element(points[i]);
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("rs_code: duplicate evaluation points");
    }
    Matrix g(field, k, n);
    for (std::size_t j = 0; j < n; ++j) {
        Fe power = 1;
        for (std::size_t i = 0; i < k; ++i) {
            g.at(i, j) = power;
            power = field->mul(power, points[j]);
        }
    }
    LinearCode code(field, n, k, std::move(g));
    code.kind = CodeKind::Rs;
    code.rs_points = std::move(points);
    return code;
}

LinearCode random_linear_code(FieldPtr field, std::size_t n, std::size_t k,
                              Rng& rng) {
    if (!field) throw std::invalid_argument("random_linear_code: null field");
    Matrix g(field, k, n);
    const std::uint64_t q = field->order();
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < n; ++c)
            g.at(r, c) = static_cast<Fe>(rng.below(q));
    LinearCode code(field, n, k, std::move(g));
    code.kind = CodeKind::RandomLinear;
    return code;
}

std::size_t min_distance_exhaustive(const LinearCode& code,
                                    std::uint64_t enum_cap) {
    code.message_count(enum_cap);
    std::size_t best = code.n + 1;
    bool first = true;
    for_each_codeword(code, [&](std::span<const Fe> msg, std::span<const Fe> cw) {
        if (first) {  // skip the zero message
            first = false;
            return true;
        }
        (void)msg;
        std::size_t w = 0;
        for (const Fe s : cw) w += (s != 0);
        best = std::min(best, w);
        return best > 0;
    });
    if (best > code.n)
        throw std::logic_error("min_distance_exhaustive: no nonzero codeword");
    return best;
}

// --- folded RS ---

FoldedRsCode::FoldedRsCode(FieldPtr base, std::size_t N, std::size_t K,
                           std::size_t s)
    : base_(std::move(base)),
      N_(N),
      K_(K),
      s_(s),
      rs_([&] {
          if (!base_) throw std::invalid_argument("FoldedRsCode: null field");
          if (s < 1) throw std::invalid_argument("FoldedRsCode: s must be >= 1");
          if (K < 1 || K > N)
              throw std::invalid_argument("FoldedRsCode: need 1 <= K <= N");
          if (s * N > base_->order())
              throw std::invalid_argument(
                  "FoldedRsCode: underlying RS length exceeds base field size");
          return rs_code(base_, s * N, s * K);
      }()) {
    prime_ = field_build(base_->characteristic(), 1);
}

std::vector<Fe> FoldedRsCode::encode_base(std::span<const Fe> message) const {
    return rs_.encode(message);
}

OuterCodeword FoldedRsCode::encode_digits(std::span<const Fe> digits) const {
    if (digits.size() != message_dim())
        throw std::invalid_argument("FoldedRsCode: message digit count mismatch");
    const std::uint32_t b = base_->degree();
    std::vector<Fe> message(s_ * K_);
    for (std::size_t i = 0; i < message.size(); ++i)
        message[i] = ext_vector_pack(*base_, digits.subspan(i * b, b));
    const std::vector<Fe> rs_word = rs_.encode(message);
    OuterCodeword out;
    out.symbol_dim = symbol_dim();
    out.flat.reserve(N_ * out.symbol_dim);
    for (const Fe sym : rs_word) {
        const auto coords = ext_vector_view(*base_, sym);
        out.flat.insert(out.flat.end(), coords.begin(), coords.end());
    }
    return out;
}

// --- random linear outer ---

RandomLinearOuterCode::RandomLinearOuterCode(FieldPtr symbol_field,
                                             std::size_t N, std::size_t K,
                                             Rng& rng)
    : symbol_field_(std::move(symbol_field)),
      code_([&] {
          if (!symbol_field_)
              throw std::invalid_argument("RandomLinearOuterCode: null field");
          return random_linear_code(symbol_field_, N, K, rng);
      }()) {
    prime_ = field_build(symbol_field_->characteristic(), 1);
}

std::vector<Fe> RandomLinearOuterCode::encode_symbols(
    std::span<const Fe> message) const {
    return code_.encode(message);
}

OuterCodeword RandomLinearOuterCode::encode_digits(
    std::span<const Fe> digits) const {
    if (digits.size() != message_dim())
        throw std::invalid_argument(
            "RandomLinearOuterCode: message digit count mismatch");
    const std::uint32_t n = symbol_field_->degree();
    std::vector<Fe> message(code_.k);
    for (std::size_t i = 0; i < message.size(); ++i)
        message[i] = ext_vector_pack(*symbol_field_, digits.subspan(i * n, n));
    const std::vector<Fe> word = code_.encode(message);
    OuterCodeword out;
    out.symbol_dim = n;
    out.flat.reserve(word.size() * n);
    for (const Fe sym : word) {
        const auto coords = ext_vector_view(*symbol_field_, sym);
        out.flat.insert(out.flat.end(), coords.begin(), coords.end());
    }
    return out;
}

// --- concatenation ---

LinearCode concatenate(const OuterCode& outer,
                       const std::vector<LinearCode>& inners) {
    const std::size_t N = outer.length();
    const std::size_t n = outer.symbol_dim();
    if (inners.size() != N)
        throw std::invalid_argument("concatenate: need one inner code per position");
    const FieldPtr sub = outer.subfield();
    for (const LinearCode& inner : inners) {
        if (!inner.field->same(*sub))
            throw std::invalid_argument("concatenate: inner code field mismatch");
        if (inner.k != n || inner.n != n)
            throw std::invalid_argument(
                "concatenate: inner codes must be rate 1 with dimension equal to "
                "the outer symbol dimension");
    }

    const std::size_t message_dim = outer.message_dim();
    Matrix composite(sub, message_dim, n * N);
    const Field& f = *sub;
    std::vector<Fe> unit(message_dim, 0);
    for (std::size_t r = 0; r < message_dim; ++r) {
        unit[r] = 1;
        const OuterCodeword word = outer.encode_digits(unit);
        unit[r] = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const std::vector<Fe> seg =
                vec_mat_mul(f, word.symbol(i), inners[i].generator);
            for (std::size_t j = 0; j < n; ++j) composite.at(r, i * n + j) = seg[j];
        }
    }
    LinearCode code(sub, n * N, message_dim, std::move(composite));
    code.kind = CodeKind::Concatenated;
    code.inner_len = n;
    code.outer_len = N;
    return code;
}

// --- independence profiles ---

namespace {

// echelon basis over `f`; returns true (and inserts) if v was independent
bool basis_insert(const Field& f, std::vector<std::vector<Fe>>& basis,
                  std::vector<Fe> v) {
    for (const auto& bv : basis) {
        std::size_t lead = 0;
        while (lead < bv.size() && bv[lead] == 0) ++lead;
        if (lead < v.size() && v[lead] != 0) {
            const Fe factor = f.div(v[lead], bv[lead]);
            for (std::size_t j = lead; j < v.size(); ++j)
                v[j] = f.sub(v[j], f.mul(factor, bv[j]));
        }
    }
    if (std::all_of(v.begin(), v.end(), [](Fe x) { return x == 0; })) return false;
    basis.push_back(std::move(v));
    // keep the basis ordered by leading position
    std::sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) {
        std::size_t la = 0, lb = 0;
        while (la < a.size() && a[la] == 0) ++la;
        while (lb < b.size() && b[lb] == 0) ++lb;
        return la < lb;
    });
    return true;
}

}  // namespace

std::vector<std::size_t> independence_profile(
    std::span<const OuterCodeword> tuple, const Field& subfield) {
    if (tuple.empty())
        throw std::invalid_argument("independence_profile: empty tuple");
    const std::size_t N = tuple[0].length();
    const std::size_t dim = tuple[0].symbol_dim;
    for (const auto& cw : tuple)
        if (cw.length() != N || cw.symbol_dim != dim)
            throw std::invalid_argument("independence_profile: length mismatch");
    for (const Fe x : tuple[0].flat) subfield.check_element(x);

    std::vector<std::vector<std::vector<Fe>>> bases(N);
    std::vector<std::size_t> d(tuple.size(), 0);
    for (std::size_t j = 0; j < tuple.size(); ++j) {
        std::size_t count = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const auto sym = tuple[j].symbol(i);
            if (basis_insert(subfield, bases[i],
                             std::vector<Fe>(sym.begin(), sym.end())))
                ++count;
        }
        d[j] = count;
    }
    return d;
}

OuterCodeword as_outer_codeword(std::span<const Fe> codeword,
                                std::size_t symbol_dim) {
    if (symbol_dim == 0 || codeword.size() % symbol_dim != 0)
        throw std::invalid_argument("as_outer_codeword: bad symbol dimension");
    OuterCodeword out;
    out.symbol_dim = symbol_dim;
    out.flat.assign(codeword.begin(), codeword.end());
    return out;
}

BigUint independent_tuple_count_bound(std::size_t N, std::size_t J, Rational R,
                                      std::span<const std::size_t> d,
                                      std::uint64_t q, std::uint64_t Q) {
    if (d.size() != J)
        throw std::invalid_argument("independent_tuple_count_bound: |d| != J");
    const std::uint64_t K = R.times_integral(N);  // N*R must be integral
    if (K > N)
        throw std::invalid_argument("independent_tuple_count_bound: R > 1");
    BigUint bound = BigUint::pow(q, std::uint64_t(N) * J * (J + 1));
    for (const std::size_t dj : d) {
        if (dj > N)
            throw std::invalid_argument("independent_tuple_count_bound: d_j > N");
        const std::int64_t e =
            std::int64_t(dj) - std::int64_t(N - K) + 1;  // d_j - N(1-R) + 1
        if (e > 0) bound *= BigUint::pow(Q, std::uint64_t(e));
    }
    return bound;
}

// --- serialization ---

namespace {

const char* kind_name(CodeKind k) {
    switch (k) {
        case CodeKind::Rs: return "rs";
        case CodeKind::RandomLinear: return "random";
        case CodeKind::Concatenated: return "concatenated";
        case CodeKind::Custom: return "custom";
    }
    return "custom";
}

CodeKind kind_from_name(const std::string& s) {
    if (s == "rs") return CodeKind::Rs;
    if (s == "random") return CodeKind::RandomLinear;
    if (s == "concatenated") return CodeKind::Concatenated;
    if (s == "custom") return CodeKind::Custom;
    throw std::invalid_argument("parse_code: unknown code kind '" + s + "'");
}

}  // namespace

std::string serialize_code(const LinearCode& code) {
    std::ostringstream out;
    out << "code v1\n";
    out << "field p=" << code.field->characteristic()
        << " m=" << code.field->degree() << "\n";
    out << "kind " << kind_name(code.kind) << "\n";
    out << "n " << code.n << "\n";
    out << "k " << code.k << "\n";
    if (code.kind == CodeKind::Rs) {
        out << "points";
        for (const Fe pt : code.rs_points) out << " " << std::hex << pt << std::dec;
        out << "\n";
    }
    if (code.kind == CodeKind::RandomLinear) out << "seed " << code.seed << "\n";
    if (code.kind == CodeKind::Concatenated)
        out << "segments " << code.inner_len << " " << code.outer_len << "\n";
    for (std::size_t r = 0; r < code.k; ++r) {
        out << "row";
        for (std::size_t c = 0; c < code.n; ++c)
            out << " " << std::hex << code.generator.at(r, c) << std::dec;
        out << "\n";
    }
    out << "end\n";
    return out.str();
}

LinearCode parse_code(const std::string& text, std::uint64_t size_limit) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "code v1")
        throw std::invalid_argument("parse_code: bad header");

    std::uint64_t p = 0;
    std::uint32_t m = 0;
    std::size_t n = 0, k = 0, inner_len = 0, outer_len = 0;
    std::uint64_t seed = 0;
    CodeKind kind = CodeKind::Custom;
    std::vector<Fe> points;
    std::vector<std::vector<Fe>> rows;

    while (std::getline(in, line)) {
        if (line == "end") break;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "field") {
            std::string pf, mf;
            ls >> pf >> mf;
            if (pf.rfind("p=", 0) != 0 || mf.rfind("m=", 0) != 0)
                throw std::invalid_argument("parse_code: bad field line");
            p = std::stoull(pf.substr(2));
            m = static_cast<std::uint32_t>(std::stoul(mf.substr(2)));
        } else if (tag == "kind") {
            std::string name;
            ls >> name;
            kind = kind_from_name(name);
        } else if (tag == "n") {
            ls >> n;
        } else if (tag == "k") {
            ls >> k;
        } else if (tag == "points") {
            std::string tok;
            while (ls >> tok) points.push_back(static_cast<Fe>(std::stoul(tok, nullptr, 16)));
        } else if (tag == "seed") {
            ls >> seed;
        } else if (tag == "segments") {
            ls >> inner_len >> outer_len;
        } else if (tag == "row") {
            std::vector<Fe> row;
            std::string tok;
            while (ls >> tok) row.push_back(static_cast<Fe>(std::stoul(tok, nullptr, 16)));
            rows.push_back(std::move(row));
        } else if (!tag.empty()) {
            throw std::invalid_argument("parse_code: unknown tag '" + tag + "'");
        }
    }

    if (p == 0 || n == 0 || k == 0)
        throw std::invalid_argument("parse_code: missing field or dimensions");
    if (rows.size() != k)
        throw std::invalid_argument("parse_code: row count mismatch");
    FieldPtr field = field_build(p, m, size_limit);
    Matrix g(field, k, n);
    for (std::size_t r = 0; r < k; ++r) {
        if (rows[r].size() != n)
            throw std::invalid_argument("parse_code: row length mismatch");
        for (std::size_t c = 0; c < n; ++c) {
            field->check_element(rows[r][c]);
            g.at(r, c) = rows[r][c];
        }
    }
    LinearCode code(field, n, k, std::move(g));
    code.kind = kind;
    code.rs_points = std::move(points);
    code.seed = seed;
    code.inner_len = inner_len;
    code.outer_len = outer_len;
    return code;
}

}  // namespace ldlab
