#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "ldlab/field.hpp"
#include "ldlab/rng.hpp"

using namespace ldlab;

namespace {

// test-side oracle: irreducibility of a packed monic GF(2) polynomial of
// degree m via exhaustive trial division on bit masks
bool gf2_irreducible(std::uint32_t poly, std::uint32_t m) {
    for (std::uint32_t d = 1; d <= m / 2; ++d) {
        for (std::uint32_t g = 1u << d; g < (2u << d); ++g) {
            // remainder of poly mod g over GF(2)
            std::uint32_t r = poly;
            while (true) {
                std::uint32_t top = 0, tmp = r;
                while (tmp) {
                    ++top;
                    tmp >>= 1;
                }
                if (top < d + 1) break;
                r ^= g << (top - (d + 1));
            }
            if (r == 0) return false;  // divisible
        }
    }
    return true;
}

void check_axioms_exhaustive(const Field& f) {
    const std::uint64_t q = f.order();
    for (Fe a = 0; a < q; ++a) {
        CHECK(f.add(a, 0) == a);
        CHECK(f.mul(a, 1) == a);
        CHECK(f.add(a, f.neg(a)) == 0);
        if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        for (Fe b = 0; b < q; ++b) {
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            for (Fe c = 0; c < q; ++c) {
                CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
}

}  // namespace

TEST_CASE("field_build picks the smallest irreducible modulus") {
    // GF(2): modulus x
    const FieldPtr f2 = field_build(2, 1);
    CHECK(f2->modulus() == std::vector<std::uint32_t>{0, 1});

    // GF(16): x^4 + x + 1, cross-checked by exhaustive search on bit masks
    const FieldPtr f16 = field_build(2, 4);
    CHECK(f16->modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
    std::uint32_t smallest = 0;
    for (std::uint32_t cand = 1u << 4; cand < (2u << 4); ++cand) {
        if (gf2_irreducible(cand, 4)) {
            smallest = cand;
            break;
        }
    }
    CHECK(smallest == 0b10011);  // x^4 + x + 1

    // GF(5): 2 * 3 = 1
    const FieldPtr f5 = field_build(5, 1);
    CHECK(f5->mul(2, 3) == 1);
    CHECK(f5->inv(2) == 3);
}

TEST_CASE("field_build rejects bad parameters") {
    CHECK_THROWS(field_build(4, 2));   // non-prime p
    CHECK_THROWS(field_build(1, 1));
    CHECK_THROWS(field_build(2, 0));
    CHECK_THROWS(field_build(2, 21));  // over the default size limit
    CHECK_NOTHROW(field_build(2, 21, 1ull << 22));
}

TEST_CASE("field axioms hold exhaustively for q <= 64") {
    for (const auto& [p, m] : std::vector<std::pair<std::uint64_t, std::uint32_t>>{
             {2, 1}, {2, 2}, {3, 1}, {5, 1}, {2, 4}, {3, 2}, {7, 2}, {2, 6}}) {
        const FieldPtr f = field_build(p, m);
        check_axioms_exhaustive(*f);
    }
}

TEST_CASE("field axioms hold on random triples for GF(4096)") {
    const FieldPtr f = field_build(2, 12);
    Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        const Fe a = static_cast<Fe>(rng.below(4096));
        const Fe b = static_cast<Fe>(rng.below(4096));
        const Fe c = static_cast<Fe>(rng.below(4096));
        CHECK(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
        CHECK(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
        CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
        if (a != 0) CHECK(f->mul(a, f->inv(a)) == 1);
        CHECK(f->sub(f->add(a, b), b) == a);
        if (b != 0) CHECK(f->mul(f->div(a, b), b) == a);
    }
}

TEST_CASE("characteristic-2 and mod-p arithmetic facts") {
    const FieldPtr f16 = field_build(2, 4);
    for (Fe a = 0; a < 16; ++a) CHECK(f16->add(a, a) == 0);
    // x^3 * x = x + 1 under modulus x^4 + x + 1 (packed: 8 * 2 = 3)
    CHECK(f16->mul(8, 2) == 3);

    const FieldPtr f5 = field_build(5, 1);
    CHECK(f5->mul(4, 4) == 1);
    CHECK_THROWS(f5->div(1, 0));
    CHECK_THROWS(f5->inv(0));
    CHECK_THROWS(f5->add(5, 0));  // out of range
}

TEST_CASE("poly_eval") {
    const FieldPtr f5 = field_build(5, 1);
    // constant
    const std::vector<Fe> constant{3};
    CHECK(poly_eval(*f5, constant, 0) == 3);
    CHECK(poly_eval(*f5, constant, 4) == 3);
    // identity polynomial
    const std::vector<Fe> ident{0, 1};
    for (Fe x = 0; x < 5; ++x) CHECK(poly_eval(*f5, ident, x) == x);
    // 1 + 2x + 3x^2 at x=2: 1 + 4 + 12 = 17 = 2 mod 5
    const std::vector<Fe> poly{1, 2, 3};
    CHECK(poly_eval(*f5, poly, 2) == 2);
}

TEST_CASE("poly_interpolate consistency checking") {
    const FieldPtr f5 = field_build(5, 1);
    // k=1 constants
    {
        const std::vector<std::pair<Fe, Fe>> pts{{0, 4}, {3, 4}};
        const auto c = poly_interpolate(*f5, pts, 1);
        REQUIRE(c.has_value());
        CHECK(*c == std::vector<Fe>{4});
    }
    // p(x) = 1 + 2x through (0,1),(1,3); p(2) = 5 = 0 mod 5, consistent
    {
        const std::vector<std::pair<Fe, Fe>> pts{{0, 1}, {1, 3}, {2, 0}};
        const auto c = poly_interpolate(*f5, pts, 2);
        REQUIRE(c.has_value());
        CHECK(*c == std::vector<Fe>{1, 2});
    }
    // same first two points but p(2) != 1: inconsistent
    {
        const std::vector<std::pair<Fe, Fe>> pts{{0, 1}, {1, 3}, {2, 1}};
        CHECK_FALSE(poly_interpolate(*f5, pts, 2).has_value());
    }
    // duplicate x
    {
        const std::vector<std::pair<Fe, Fe>> pts{{1, 1}, {1, 2}};
        CHECK_THROWS(poly_interpolate(*f5, pts, 2));
    }
}

TEST_CASE("poly_interpolate inverts poly_eval") {
    for (const auto& [p, m] : std::vector<std::pair<std::uint64_t, std::uint32_t>>{
             {5, 1}, {2, 4}, {2, 12}}) {
        const FieldPtr f = field_build(p, m);
        Rng rng(p + m);
        for (int round = 0; round < 40; ++round) {
            const std::size_t n =
                2 + rng.below(std::min<std::uint64_t>(f->order(), 8) - 1);
            const std::size_t k = 1 + rng.below(n);
            std::vector<Fe> coeffs(k);
            for (auto& c : coeffs) c = static_cast<Fe>(rng.below(f->order()));
            std::vector<std::pair<Fe, Fe>> pts(n);
            for (std::size_t i = 0; i < n; ++i)
                pts[i] = {static_cast<Fe>(i),
                          poly_eval(*f, coeffs, static_cast<Fe>(i))};
            const auto back = poly_interpolate(*f, pts, k);
            REQUIRE(back.has_value());
            CHECK(*back == coeffs);
        }
    }
}

TEST_CASE("ext_vector_view is additive, bijective, and matches digits") {
    const FieldPtr f16 = field_build(2, 4);
    // x + 1 -> (1,1,0,0) in ascending powers
    CHECK(ext_vector_view(*f16, 3) == std::vector<Fe>{1, 1, 0, 0});
    CHECK(ext_vector_view(*f16, 0) == std::vector<Fe>{0, 0, 0, 0});

    // exhaustive bijection and round trip
    std::set<std::vector<Fe>> seen;
    for (Fe a = 0; a < 16; ++a) {
        const auto v = ext_vector_view(*f16, a);
        seen.insert(v);
        CHECK(ext_vector_pack(*f16, v) == a);
    }
    CHECK(seen.size() == 16);

    // additivity
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const Fe a = static_cast<Fe>(rng.below(16));
        const Fe b = static_cast<Fe>(rng.below(16));
        const auto va = ext_vector_view(*f16, a);
        const auto vb = ext_vector_view(*f16, b);
        const auto vsum = ext_vector_view(*f16, f16->add(a, b));
        for (std::size_t j = 0; j < va.size(); ++j)
            CHECK(vsum[j] == (va[j] ^ vb[j]));
    }

    // chunked view over GF(4) inside GF(16)
    const auto chunks = ext_vector_view(*f16, 0b1110, 2);
    CHECK(chunks == std::vector<Fe>{2, 3});
    CHECK(ext_vector_pack(*f16, chunks, 2) == 0b1110);
    CHECK_THROWS(ext_vector_view(*f16, 3, 3));  // 3 does not divide 4
}

TEST_CASE("mat_rank") {
    const FieldPtr f2 = field_build(2, 1);
    CHECK(mat_rank(Matrix::identity(f2, 4)) == 4);
    CHECK(mat_rank(Matrix(f2, 3, 3)) == 0);

    Matrix m(f2, 2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;
    CHECK(mat_rank(m) == 1);
}

TEST_CASE("mat_solve_affine on the GF(2) all-ones system") {
    const FieldPtr f2 = field_build(2, 1);
    Matrix a(f2, 2, 2);
    a.at(0, 0) = 1;
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    a.at(1, 1) = 1;
    const std::vector<Fe> b{1, 1};
    const auto sol = mat_solve_affine(a, b);
    REQUIRE(sol.has_value());
    REQUIRE(sol->kernel_basis.size() == 1);
    CHECK(sol->kernel_basis[0] == std::vector<Fe>{1, 1});
    // solution set must be {(1,0), (0,1)}: enumerate all 4 vectors
    std::set<std::vector<Fe>> solutions;
    for (Fe x0 = 0; x0 < 2; ++x0)
        for (Fe x1 = 0; x1 < 2; ++x1)
            if (((x0 ^ x1) == 1)) solutions.insert({x0, x1});
    std::set<std::vector<Fe>> described;
    described.insert(sol->particular);
    described.insert({static_cast<Fe>(sol->particular[0] ^ 1),
                      static_cast<Fe>(sol->particular[1] ^ 1)});
    CHECK(described == solutions);

    // inconsistent system: x + y = 0 and x + y = 1
    Matrix a2(f2, 2, 2);
    a2.at(0, 0) = 1;
    a2.at(0, 1) = 1;
    a2.at(1, 0) = 1;
    a2.at(1, 1) = 1;
    CHECK_FALSE(mat_solve_affine(a2, std::vector<Fe>{0, 1}).has_value());
}

TEST_CASE("mat_solve_affine equals brute-force enumeration") {
    for (const auto& [p, m, cols] :
         std::vector<std::tuple<std::uint64_t, std::uint32_t, std::size_t>>{
             {2, 1, 8}, {5, 1, 4}, {2, 4, 3}}) {
        const FieldPtr f = field_build(p, m);
        const std::uint64_t q = f->order();
        Rng rng(p * 100 + cols);
        for (int round = 0; round < 20; ++round) {
            const std::size_t rows = 1 + rng.below(4);
            Matrix a(f, rows, cols);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    a.at(r, c) = static_cast<Fe>(rng.below(q));
            std::vector<Fe> b(rows);
            for (auto& x : b) x = static_cast<Fe>(rng.below(q));

            // brute force over all q^cols vectors
            std::set<std::vector<Fe>> expected;
            std::vector<Fe> v(cols, 0);
            for (;;) {
                std::vector<Fe> av(rows, 0);
                for (std::size_t r = 0; r < rows; ++r)
                    for (std::size_t c = 0; c < cols; ++c)
                        av[r] = f->add(av[r], f->mul(a.at(r, c), v[c]));
                if (av == b) expected.insert(v);
                std::size_t pos = 0;
                for (; pos < cols; ++pos) {
                    v[pos] = static_cast<Fe>((std::uint64_t(v[pos]) + 1) % q);
                    if (v[pos] != 0) break;
                }
                if (pos == cols) break;
            }

            const auto sol = mat_solve_affine(a, b);
            if (!sol) {
                CHECK(expected.empty());
                continue;
            }
            REQUIRE(!expected.empty());
            // enumerate particular + span(kernel)
            std::set<std::vector<Fe>> described;
            const std::size_t dim = sol->kernel_basis.size();
            std::vector<Fe> lambda(dim, 0);
            for (;;) {
                std::vector<Fe> x = sol->particular;
                for (std::size_t j = 0; j < dim; ++j)
                    for (std::size_t c = 0; c < cols; ++c)
                        x[c] = f->add(x[c],
                                      f->mul(lambda[j], sol->kernel_basis[j][c]));
                described.insert(std::move(x));
                std::size_t pos = 0;
                for (; pos < dim; ++pos) {
                    lambda[pos] = static_cast<Fe>((std::uint64_t(lambda[pos]) + 1) % q);
                    if (lambda[pos] != 0) break;
                }
                if (pos == dim) break;
            }
            CHECK(described == expected);
        }
    }
}

TEST_CASE("vec_mat_mul and column restriction") {
    const FieldPtr f5 = field_build(5, 1);
    Matrix m(f5, 2, 3);
    // rows (1,2,3) and (0,1,4)
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(0, 2) = 3;
    m.at(1, 1) = 1;
    m.at(1, 2) = 4;
    const std::vector<Fe> v{2, 3};
    CHECK(vec_mat_mul(*f5, v, m) == std::vector<Fe>{2, 2, 3});

    const std::vector<std::size_t> keep{0, 2};
    const Matrix r = m.columns(keep);
    CHECK(r.cols() == 2);
    CHECK(r.at(0, 1) == 3);
    CHECK(r.at(1, 1) == 4);
}
