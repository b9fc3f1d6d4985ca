#include "ldlab/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace ldlab {

namespace {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// polynomials over GF(p) as digit vectors, ascending powers

std::vector<std::uint32_t> unpack_poly(std::uint64_t p, std::uint64_t v) {
    std::vector<std::uint32_t> digits;
    while (v) {
        digits.push_back(static_cast<std::uint32_t>(v % p));
        v /= p;
    }
    return digits;
}

std::uint64_t pack_poly(std::uint64_t p, std::span<const std::uint32_t> digits) {
    std::uint64_t v = 0;
    for (std::size_t i = digits.size(); i-- > 0;) v = v * p + digits[i];
    return v;
}

void trim(std::vector<std::uint32_t>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a mod b, b monic-normalized on the fly
std::vector<std::uint32_t> poly_mod(std::uint64_t p, std::vector<std::uint32_t> a,
                                    const std::vector<std::uint32_t>& b) {
    trim(a);
    const std::size_t db = b.size() - 1;
    // inverse of b's leading coefficient mod p (prime field, Fermat)
    std::uint64_t lead = b.back();
    std::uint64_t lead_inv = 1, base = lead, e = p - 2;
    while (e) {
        if (e & 1) lead_inv = lead_inv * base % p;
        base = base * base % p;
        e >>= 1;
    }
    while (a.size() > db) {
        const std::uint64_t factor = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            const std::uint64_t sub = factor * b[i] % p;
            a[shift + i] =
                static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

std::vector<std::uint32_t> poly_mul_mod(std::uint64_t p,
                                        std::span<const std::uint32_t> a,
                                        std::span<const std::uint32_t> b,
                                        const std::vector<std::uint32_t>& mod) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = static_cast<std::uint32_t>(
                (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p);
        }
    }
    return poly_mod(p, std::move(prod), mod);
}

bool poly_is_zero(const std::vector<std::uint32_t>& a) { return a.empty(); }

// no monic factor of degree in [1, deg/2]
bool is_irreducible(std::uint64_t p, const std::vector<std::uint32_t>& f) {
    const std::size_t deg = f.size() - 1;
    std::uint64_t pd = 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        pd *= p;  // p^d
        for (std::uint64_t low = 0; low < pd; ++low) {
            std::vector<std::uint32_t> g = unpack_poly(p, low);
            g.resize(d + 1, 0);
            g[d] = 1;
            if (poly_is_zero(poly_mod(p, f, g))) return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

Field::Field(std::uint64_t p, std::uint32_t m, std::uint64_t size_limit) {
    if (!is_prime(p)) throw std::invalid_argument("Field: p must be prime");
    if (m < 1) throw std::invalid_argument("Field: m must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        if (q > size_limit / p)
            throw std::length_error("Field: p^m exceeds size limit");
        q *= p;
    }
    if (q > size_limit) throw std::length_error("Field: p^m exceeds size limit");
    p_ = p;
    m_ = m;
    q_ = q;

    // smallest packed monic irreducible of degree m
    bool found = false;
    for (std::uint64_t low = 0; low < q_; ++low) {
        std::vector<std::uint32_t> f = unpack_poly(p_, low);
        f.resize(m_ + 1, 0);
        f[m_] = 1;
        if (is_irreducible(p_, f)) {
            modulus_ = std::move(f);
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("Field: no irreducible modulus found");

    build_tables();
}

void Field::build_tables() {
    auto slow_mul = [&](Fe a, Fe b) -> Fe {
        const auto pa = unpack_poly(p_, a);
        const auto pb = unpack_poly(p_, b);
        return static_cast<Fe>(pack_poly(p_, poly_mul_mod(p_, pa, pb, modulus_)));
    };
    auto slow_pow = [&](Fe a, std::uint64_t e) -> Fe {
        Fe r = 1, base = a;
        while (e) {
            if (e & 1) r = slow_mul(r, base);
            base = slow_mul(base, base);
            e >>= 1;
        }
        return r;
    };

    if (q_ == 2) {
        generator_ = 1;
    } else {
        const auto factors = prime_factors(q_ - 1);
        generator_ = 0;
        for (Fe g = 2; g < q_; ++g) {
            bool ok = true;
            for (const std::uint64_t f : factors) {
                if (slow_pow(g, (q_ - 1) / f) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                generator_ = g;
                break;
            }
        }
        if (generator_ == 0)
            throw std::logic_error("Field: no multiplicative generator found");
    }

    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    Fe cur = 1;
    for (std::uint64_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = cur;
        log_[cur] = static_cast<Fe>(i);
        cur = slow_mul(cur, generator_);
    }
    if (cur != 1) throw std::logic_error("Field: generator order mismatch");
}

void Field::check_element(Fe a) const {
    if (a >= q_)
        throw std::invalid_argument("Field: value is not an element of GF(" +
                                    std::to_string(q_) + ")");
}

Fe Field::element(std::uint64_t v) const {
    if (v >= q_) throw std::invalid_argument("Field: value out of range");
    return static_cast<Fe>(v);
}

Fe Field::add(Fe a, Fe b) const {
    check_element(a);
    check_element(b);
    if (p_ == 2) return a ^ b;
    if (m_ == 1) return static_cast<Fe>((std::uint64_t(a) + b) % p_);
    Fe out = 0;
    std::uint64_t mult = 1;
    std::uint64_t x = a, y = b;
    for (std::uint32_t i = 0; i < m_; ++i) {
        const std::uint64_t d = (x % p_ + y % p_) % p_;
        out += static_cast<Fe>(d * mult);
        x /= p_;
        y /= p_;
        mult *= p_;
    }
    return out;
}

Fe Field::neg(Fe a) const {
    check_element(a);
    if (p_ == 2) return a;
    if (m_ == 1) return static_cast<Fe>((p_ - a) % p_);
    Fe out = 0;
    std::uint64_t mult = 1;
    std::uint64_t x = a;
    for (std::uint32_t i = 0; i < m_; ++i) {
        const std::uint64_t d = (p_ - x % p_) % p_;
        out += static_cast<Fe>(d * mult);
        x /= p_;
        mult *= p_;
    }
    return out;
}

Fe Field::sub(Fe a, Fe b) const {
    if (p_ == 2) {
        check_element(a);
        check_element(b);
        return a ^ b;
    }
    return add(a, neg(b));
}

Fe Field::mul(Fe a, Fe b) const {
    check_element(a);
    check_element(b);
    if (a == 0 || b == 0) return 0;
    return exp_[(std::uint64_t(log_[a]) + log_[b]) % (q_ - 1)];
}

Fe Field::div(Fe a, Fe b) const {
    check_element(a);
    check_element(b);
    if (b == 0) throw std::domain_error("Field: division by zero");
    if (a == 0) return 0;
    return exp_[(std::uint64_t(log_[a]) + (q_ - 1) - log_[b]) % (q_ - 1)];
}

Fe Field::inv(Fe a) const {
    check_element(a);
    if (a == 0) throw std::domain_error("Field: zero has no inverse");
    return exp_[((q_ - 1) - log_[a]) % (q_ - 1)];
}

Fe Field::pow(Fe a, std::uint64_t e) const {
    check_element(a);
    if (a == 0) return e == 0 ? 1 : 0;
    return exp_[std::uint64_t(log_[a]) * (e % (q_ - 1)) % (q_ - 1)];
}

FieldPtr field_build(std::uint64_t p, std::uint32_t m, std::uint64_t size_limit) {
    return std::make_shared<const Field>(p, m, size_limit);
}

std::pair<std::uint64_t, std::uint32_t> prime_power_split(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("prime_power_split: q < 2");
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    std::uint32_t m = 0;
    std::uint64_t v = q;
    while (v % p == 0) {
        v /= p;
        ++m;
    }
    if (v != 1)
        throw std::invalid_argument("prime_power_split: q is not a prime power");
    return {p, m};
}

Fe poly_eval(const Field& f, std::span<const Fe> coeffs, Fe x) {
    f.check_element(x);
    Fe acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = f.add(f.mul(acc, x), coeffs[i]);
    return acc;
}

std::optional<std::vector<Fe>> poly_interpolate(
    const Field& f, std::span<const std::pair<Fe, Fe>> points, std::size_t k) {
    if (k < 1) throw std::invalid_argument("poly_interpolate: k < 1");
    if (points.size() < k)
        throw std::invalid_argument("poly_interpolate: fewer than k points");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                throw std::invalid_argument("poly_interpolate: duplicate x-values");

    // P(x) = prod (x - x_i) over the first k points
    std::vector<Fe> master{1};
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Fe> next(master.size() + 1, 0);
        const Fe neg_xi = f.neg(points[i].first);
        for (std::size_t j = 0; j < master.size(); ++j) {
            next[j]     = f.add(next[j], f.mul(master[j], neg_xi));
            next[j + 1] = f.add(next[j + 1], master[j]);
        }
        master = std::move(next);
    }

    std::vector<Fe> coeffs(k, 0);
    std::vector<Fe> quotient(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        // Q_i = P / (x - x_i) by synthetic division
        const Fe xi = points[i].first;
        Fe carry = 0;
        for (std::size_t j = k; j-- > 0;) {
            carry = f.add(master[j + 1], f.mul(carry, xi));
            quotient[j] = carry;
        }
        const Fe denom = poly_eval(f, quotient, xi);
        const Fe scale = f.div(points[i].second, denom);
        for (std::size_t j = 0; j < k; ++j)
            coeffs[j] = f.add(coeffs[j], f.mul(scale, quotient[j]));
    }

    for (std::size_t i = k; i < points.size(); ++i)
        if (poly_eval(f, coeffs, points[i].first) != points[i].second)
            return std::nullopt;
    return coeffs;
}

std::vector<Fe> ext_vector_view(const Field& ext, Fe a, std::uint32_t d) {
    if (d < 1 || ext.degree() % d != 0)
        throw std::invalid_argument(
            "ext_vector_view: field is not an extension of the requested subfield");
    ext.check_element(a);
    const std::uint64_t p = ext.characteristic();
    std::uint64_t sub_q = 1;
    for (std::uint32_t i = 0; i < d; ++i) sub_q *= p;
    std::vector<Fe> out(ext.degree() / d);
    std::uint64_t v = a;
    for (auto& coord : out) {
        coord = static_cast<Fe>(v % sub_q);
        v /= sub_q;
    }
    return out;
}

Fe ext_vector_pack(const Field& ext, std::span<const Fe> v, std::uint32_t d) {
    if (d < 1 || ext.degree() % d != 0)
        throw std::invalid_argument(
            "ext_vector_pack: field is not an extension of the requested subfield");
    if (v.size() != ext.degree() / d)
        throw std::invalid_argument("ext_vector_pack: wrong coordinate count");
    const std::uint64_t p = ext.characteristic();
    std::uint64_t sub_q = 1;
    for (std::uint32_t i = 0; i < d; ++i) sub_q *= p;
    std::uint64_t out = 0;
    for (std::size_t i = v.size(); i-- > 0;) {
        if (v[i] >= sub_q)
            throw std::invalid_argument("ext_vector_pack: coordinate out of range");
        out = out * sub_q + v[i];
    }
    return ext.element(out);
}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    if (!field_) throw std::invalid_argument("Matrix: null field");
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Matrix Matrix::columns(std::span<const std::size_t> keep) const {
    Matrix out(field_, rows_, keep.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < keep.size(); ++c) {
            if (keep[c] >= cols_)
                throw std::out_of_range("Matrix::columns: index out of range");
            out.at(r, c) = at(r, keep[c]);
        }
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    return out;
}

std::size_t mat_rank(const Matrix& m) {
    const Field& f = *m.field();
    Matrix w = m;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < w.cols() && rank < w.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < w.rows() && w.at(pivot, col) == 0) ++pivot;
        if (pivot == w.rows()) continue;
        for (std::size_t c = 0; c < w.cols(); ++c)
            std::swap(w.at(rank, c), w.at(pivot, c));
        const Fe piv_inv = f.inv(w.at(rank, col));
        for (std::size_t c = col; c < w.cols(); ++c)
            w.at(rank, c) = f.mul(w.at(rank, c), piv_inv);
        for (std::size_t r = 0; r < w.rows(); ++r) {
            if (r == rank || w.at(r, col) == 0) continue;
            const Fe factor = w.at(r, col);
            for (std::size_t c = col; c < w.cols(); ++c)
                w.at(r, c) = f.sub(w.at(r, c), f.mul(factor, w.at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

std::optional<AffineSolution> mat_solve_affine(const Matrix& a,
                                               std::span<const Fe> b) {
    if (b.size() != a.rows())
        throw std::invalid_argument("mat_solve_affine: dimension mismatch");
    const Field& f = *a.field();
    const std::size_t rows = a.rows(), cols = a.cols();

    // Gauss-Jordan on [A | b]
    Matrix w(a.field(), rows, cols + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) w.at(r, c) = a.at(r, c);
        w.at(r, cols) = b[r];
    }

    std::vector<std::size_t> pivot_col;  // pivot_col[i] = column of i-th pivot row
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && w.at(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        for (std::size_t c = 0; c <= cols; ++c)
            std::swap(w.at(rank, c), w.at(pivot, c));
        const Fe piv_inv = f.inv(w.at(rank, col));
        for (std::size_t c = col; c <= cols; ++c)
            w.at(rank, c) = f.mul(w.at(rank, c), piv_inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || w.at(r, col) == 0) continue;
            const Fe factor = w.at(r, col);
            for (std::size_t c = col; c <= cols; ++c)
                w.at(r, c) = f.sub(w.at(r, c), f.mul(factor, w.at(rank, c)));
        }
        pivot_col.push_back(col);
        ++rank;
    }

    for (std::size_t r = rank; r < rows; ++r)
        if (w.at(r, cols) != 0) return std::nullopt;

    AffineSolution sol;
    sol.particular.assign(cols, 0);
    for (std::size_t i = 0; i < rank; ++i)
        sol.particular[pivot_col[i]] = w.at(i, cols);

    std::vector<bool> is_pivot(cols, false);
    for (const std::size_t c : pivot_col) is_pivot[c] = true;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Fe> v(cols, 0);
        v[free_col] = 1;
        for (std::size_t i = 0; i < rank; ++i)
            v[pivot_col[i]] = f.neg(w.at(i, free_col));
        sol.kernel_basis.push_back(std::move(v));
    }
    return sol;
}

std::vector<Fe> vec_mat_mul(const Field& f, std::span<const Fe> v,
                            const Matrix& m) {
    if (v.size() != m.rows())
        throw std::invalid_argument("vec_mat_mul: dimension mismatch");
    std::vector<Fe> out(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (v[r] == 0) continue;
        for (std::size_t c = 0; c < m.cols(); ++c)
            out[c] = f.add(out[c], f.mul(v[r], m.at(r, c)));
    }
    return out;
}

}  // namespace ldlab
