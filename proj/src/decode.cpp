#include "ldlab/decode.hpp"

#include <algorithm>
#include <stdexcept>

namespace ldlab {

namespace {

void sort_dedup(std::vector<std::vector<Fe>>& list) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
}

// lexicographic size-t subsets of {0,...,n-1}
struct CombinationIter {
    std::size_t n, t;
    std::vector<std::size_t> idx;
    bool done = false;

    CombinationIter(std::size_t n_, std::size_t t_) : n(n_), t(t_), idx(t_) {
        for (std::size_t i = 0; i < t; ++i) idx[i] = i;
        done = t > n;
    }

    bool advance() {
        if (t == 0) {
            done = true;
            return false;
        }
        std::size_t i = t;
        while (i-- > 0) {
            if (idx[i] != i + n - t) {
                ++idx[i];
                for (std::size_t j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        done = true;
        return false;
    }
};

void require_no_erasures(const ReceivedWord& y, const char* who) {
    if (y.has_erasures())
        throw std::invalid_argument(std::string(who) + ": erased received word");
}

void require_same_field(const LinearCode& code, const ReceivedWord& y,
                        const char* who) {
    if (!y.field || !y.field->same(*code.field))
        throw std::invalid_argument(std::string(who) + ": field mismatch");
    if (y.size() != code.n)
        throw std::invalid_argument(std::string(who) + ": length mismatch");
}

}  // namespace

bool DecodeResult::contains(std::span<const Fe> cw) const {
    const std::vector<Fe> key(cw.begin(), cw.end());
    return std::binary_search(codewords.begin(), codewords.end(), key);
}

DecodeResult ball_list_decode(const LinearCode& code, const ReceivedWord& y,
                              std::size_t radius, std::uint64_t enum_cap,
                              std::size_t list_cap) {
    require_same_field(code, y, "ball_list_decode");
    require_no_erasures(y, "ball_list_decode");
    const std::uint64_t total = code.message_count(enum_cap);

    DecodeResult result;
    for_each_codeword(code, [&](std::span<const Fe>, std::span<const Fe> cw) {
        std::size_t dist = 0;
        for (std::size_t i = 0; i < cw.size() && dist <= radius; ++i)
            dist += (cw[i] != y.symbols[i]);
        if (dist <= radius) {
            if (result.codewords.size() < list_cap)
                result.codewords.emplace_back(cw.begin(), cw.end());
            else
                result.truncated = true;
        }
        return true;
    });
    result.work = total;
    sort_dedup(result.codewords);
    return result;
}

DecodeResult rs_error_location_decode(const LinearCode& rs,
                                      const ReceivedWord& y,
                                      std::size_t errors) {
    require_same_field(rs, y, "rs_error_location_decode");
    require_no_erasures(y, "rs_error_location_decode");
    if (rs.kind != CodeKind::Rs)
        throw std::invalid_argument("rs_error_location_decode: not an RS code");
    if (errors + rs.k >= rs.n)
        throw std::invalid_argument(
            "rs_error_location_decode: e must satisfy e < n - k");

    const Field& f = *rs.field;
    DecodeResult result;
    CombinationIter comb(rs.n, errors);
    std::vector<std::pair<Fe, Fe>> pts;
    pts.reserve(rs.n - errors);
    do {
        ++result.work;
        pts.clear();
        std::size_t next = 0;
        for (std::size_t i = 0; i < rs.n; ++i) {
            if (next < errors && comb.idx[next] == i) {
                ++next;  // purported error location, skipped
                continue;
            }
            pts.emplace_back(rs.rs_points[i], y.symbols[i]);
        }
        const auto coeffs = poly_interpolate(f, pts, rs.k);
        if (coeffs) {
            std::vector<Fe> cw(rs.n);
            for (std::size_t i = 0; i < rs.n; ++i)
                cw[i] = poly_eval(f, *coeffs, rs.rs_points[i]);
            result.codewords.push_back(std::move(cw));
        }
    } while (comb.advance());
    sort_dedup(result.codewords);
    return result;
}

DecodeResult rs_subset_decode(const LinearCode& rs, const ReceivedWord& y,
                              std::size_t agreement) {
    require_same_field(rs, y, "rs_subset_decode");
    require_no_erasures(y, "rs_subset_decode");
    if (rs.kind != CodeKind::Rs)
        throw std::invalid_argument("rs_subset_decode: not an RS code");
    if (agreement <= rs.k)
        throw std::invalid_argument(
            "rs_subset_decode: agreement threshold must exceed k");
    if (agreement > rs.n)
        throw std::invalid_argument("rs_subset_decode: agreement exceeds n");

    const Field& f = *rs.field;
    DecodeResult result;
    CombinationIter comb(rs.n, agreement);
    std::vector<std::pair<Fe, Fe>> pts(agreement);
    do {
        ++result.work;
        for (std::size_t j = 0; j < agreement; ++j)
            pts[j] = {rs.rs_points[comb.idx[j]], y.symbols[comb.idx[j]]};
        const auto coeffs = poly_interpolate(f, pts, rs.k);
        if (coeffs) {
            std::vector<Fe> cw(rs.n);
            for (std::size_t i = 0; i < rs.n; ++i)
                cw[i] = poly_eval(f, *coeffs, rs.rs_points[i]);
            result.codewords.push_back(std::move(cw));
        }
    } while (comb.advance());
    sort_dedup(result.codewords);
    return result;
}

namespace {

struct AffineSystem {
    std::optional<AffineSolution> solution;
};

AffineSystem erasure_system(const LinearCode& code, const ReceivedWord& y) {
    require_same_field(code, y, "erasure_list_decode");
    std::vector<std::size_t> unerased;
    unerased.reserve(code.n);
    for (std::size_t i = 0; i < code.n; ++i)
        if (!y.erased(i)) unerased.push_back(i);
    const Matrix restricted = code.generator.columns(unerased).transposed();
    std::vector<Fe> rhs(unerased.size());
    for (std::size_t i = 0; i < unerased.size(); ++i)
        rhs[i] = y.symbols[unerased[i]];
    return {mat_solve_affine(restricted, rhs)};
}

}  // namespace

ErasureDecodeResult erasure_list_decode(const LinearCode& code,
                                        const ReceivedWord& y,
                                        std::size_t list_cap) {
    const AffineSystem sys = erasure_system(code, y);
    ErasureDecodeResult out;
    if (!sys.solution) return out;  // empty list, no dimension

    const std::size_t dim = sys.solution->kernel_basis.size();
    out.dimension = dim;

    // q^dim message solutions; enumerate only when the list fits the cap
    const std::uint64_t q = code.field->order();
    std::uint64_t count = 1;
    bool fits = true;
    for (std::size_t i = 0; i < dim && fits; ++i) {
        if (count > std::uint64_t(list_cap) / q)
            fits = false;
        else
            count *= q;
    }
    if (!fits || count > list_cap) {
        out.list.truncated = true;
        out.list.work = 0;
        return out;
    }

    const Field& f = *code.field;
    std::vector<Fe> message = sys.solution->particular;
    std::vector<Fe> lambda(dim, 0);
    for (;;) {
        out.list.codewords.push_back(code.encode(message));
        ++out.list.work;
        std::size_t pos = 0;
        for (; pos < dim; ++pos) {
            const Fe old = lambda[pos];
            const Fe next = (std::uint64_t(old) + 1 == q) ? 0 : old + 1;
            lambda[pos] = next;
            const Fe delta = f.sub(next, old);
            const auto& basis = sys.solution->kernel_basis[pos];
            for (std::size_t j = 0; j < message.size(); ++j)
                message[j] = f.add(message[j], f.mul(delta, basis[j]));
            if (next != 0) break;
        }
        if (pos == dim) break;
    }
    sort_dedup(out.list.codewords);
    return out;
}

std::optional<std::size_t> erasure_solution_dimension(const LinearCode& code,
                                                      const ReceivedWord& y) {
    const AffineSystem sys = erasure_system(code, y);
    if (!sys.solution) return std::nullopt;
    return sys.solution->kernel_basis.size();
}

Codebook::Codebook(const LinearCode& code, std::uint64_t enum_cap)
    : n_(code.n), count_(code.message_count(enum_cap)) {
    flat_.reserve(count_ * n_);
    for_each_codeword(code, [&](std::span<const Fe>, std::span<const Fe> cw) {
        flat_.insert(flat_.end(), cw.begin(), cw.end());
        return true;
    });
}

bool second_codeword_within(const Codebook& book, std::span<const Fe> y,
                            std::size_t radius, std::span<const Fe> transmitted) {
    for (std::size_t i = 0; i < book.size(); ++i) {
        const auto cw = book.codeword(i);
        std::size_t dist = 0;
        bool within = true;
        for (std::size_t j = 0; j < cw.size(); ++j) {
            dist += (cw[j] != y[j]);
            if (dist > radius) {
                within = false;
                break;
            }
        }
        if (within && !std::equal(cw.begin(), cw.end(), transmitted.begin(),
                                  transmitted.end()))
            return true;
    }
    return false;
}

std::size_t count_codewords_within(const Codebook& book, std::span<const Fe> y,
                                   std::size_t radius) {
    std::vector<std::vector<Fe>> found;
    for (std::size_t i = 0; i < book.size(); ++i) {
        const auto cw = book.codeword(i);
        std::size_t dist = 0;
        bool within = true;
        for (std::size_t j = 0; j < cw.size(); ++j) {
            dist += (cw[j] != y[j]);
            if (dist > radius) {
                within = false;
                break;
            }
        }
        if (within) found.emplace_back(cw.begin(), cw.end());
    }
    sort_dedup(found);
    return found.size();
}

}  // namespace ldlab
