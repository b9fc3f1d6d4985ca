// field.hpp -- exact arithmetic in GF(p^m), polynomial evaluation and
// interpolation, and linear algebra over finite fields.
//
// An element of GF(p^m) is stored as its canonical packed value: the
// integer whose base-p digits are the coefficients of the reduced
// representative, ascending powers first. Packing GF(2^m) this way makes
// addition a XOR; multiplication runs on log/exp tables over a fixed
// generator, built once at construction. The same ascending-power
// convention is used for every polynomial and vector view in the library.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ldlab {

using Fe = std::uint32_t;  // packed field element

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
  public:
    static constexpr std::uint64_t kDefaultSizeLimit = 1ull << 20;

    // Modulus is the lexicographically smallest monic irreducible of
    // degree m over GF(p) (equivalently: smallest packed value), found by
    // exhaustive search, so a (p, m) pair names the same field on every run.
    Field(std::uint64_t p, std::uint32_t m,
          std::uint64_t size_limit = kDefaultSizeLimit);

    std::uint64_t characteristic() const { return p_; }
    std::uint32_t degree() const { return m_; }
    std::uint64_t order() const { return q_; }
    // modulus coefficients over GF(p), ascending powers, length m+1, monic
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    Fe generator() const { return generator_; }

    Fe add(Fe a, Fe b) const;
    Fe sub(Fe a, Fe b) const;
    Fe neg(Fe a) const;
    Fe mul(Fe a, Fe b) const;
    Fe div(Fe a, Fe b) const;  // throws on zero divisor
    Fe inv(Fe a) const;        // throws on zero
    Fe pow(Fe a, std::uint64_t e) const;

    bool same(const Field& other) const {
        return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
    }
    void check_element(Fe a) const;
    Fe element(std::uint64_t v) const;  // checked construction

  private:
    std::uint64_t p_;
    std::uint32_t m_;
    std::uint64_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<Fe> exp_;  // exp_[i] = g^i, i in [0, q-1)
    std::vector<Fe> log_;  // log_[a] for a != 0
    Fe generator_ = 1;

    void build_tables();
};

FieldPtr field_build(std::uint64_t p, std::uint32_t m,
                     std::uint64_t size_limit = Field::kDefaultSizeLimit);

// q must be a prime power; returns the (p, m) decomposition
std::pair<std::uint64_t, std::uint32_t> prime_power_split(std::uint64_t q);

// --- polynomials (coefficients ascending, over one field) ---

Fe poly_eval(const Field& f, std::span<const Fe> coeffs, Fe x);

// Unique degree-<k polynomial through the first k points; any further
// points are verified and a mismatch yields nullopt ("inconsistent").
// Throws on duplicate x-values or |points| < k.
std::optional<std::vector<Fe>> poly_interpolate(
    const Field& f, std::span<const std::pair<Fe, Fe>> points, std::size_t k);

// --- vector views over subfields ---

// View a GF(p^m) element as m/d coefficients over GF(p^d) (d | m), by
// chunking base-p digits; additive and bijective. d = 1 gives the plain
// polynomial-coefficient view.
std::vector<Fe> ext_vector_view(const Field& ext, Fe a, std::uint32_t d = 1);
Fe ext_vector_pack(const Field& ext, std::span<const Fe> v, std::uint32_t d = 1);

// --- matrices ---

class Matrix {
  public:
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

    static Matrix identity(FieldPtr field, std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    Fe& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    Fe at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    std::span<const Fe> row(std::size_t r) const {
        return std::span<const Fe>(a_).subspan(r * cols_, cols_);
    }

    Matrix columns(std::span<const std::size_t> keep) const;  // column restriction
    Matrix transposed() const;

    bool same_entries(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
    }

  private:
    FieldPtr field_;
    std::size_t rows_, cols_;
    std::vector<Fe> a_;
};

std::size_t mat_rank(const Matrix& m);

// Solution set of A x = b described exactly: x solves iff
// x = particular + span(kernel_basis). nullopt when inconsistent.
struct AffineSolution {
    std::vector<Fe> particular;
    std::vector<std::vector<Fe>> kernel_basis;
};
std::optional<AffineSolution> mat_solve_affine(const Matrix& a,
                                               std::span<const Fe> b);

// row vector times matrix
std::vector<Fe> vec_mat_mul(const Field& f, std::span<const Fe> v,
                            const Matrix& m);

}  // namespace ldlab
