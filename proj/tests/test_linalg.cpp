#include <doctest.h>

#include <random>
#include <sstream>

#include "silt/linalg.hpp"

using namespace silt;

namespace {

Mat<Fp> fpmat(int64_t p, std::initializer_list<std::initializer_list<int64_t>> rows) {
    Index r = static_cast<Index>(rows.size());
    Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
    Mat<Fp> m(r, c);
    Index i = 0;
    for (auto& row : rows) {
        Index j = 0;
        for (auto v : row) m(i, j++) = Fp(v, p);
        ++i;
    }
    return m;
}

Mat<Rat> qmat(std::initializer_list<std::initializer_list<int64_t>> rows) {
    Index r = static_cast<Index>(rows.size());
    Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
    Mat<Rat> m(r, c);
    Index i = 0;
    for (auto& row : rows) {
        Index j = 0;
        for (auto v : row) m(i, j++) = Rat(v);
        ++i;
    }
    return m;
}

// Independent oracle: count solutions of a x = 0 over F_2 by exhaustion.
int64_t count_kernel_f2(const Mat<Fp>& a) {
    Index n = a.cols();
    int64_t count = 0;
    for (int64_t mask = 0; mask < (int64_t(1) << n); ++mask) {
        ColVec<Fp> x(n);
        for (Index j = 0; j < n; ++j) x(j) = Fp((mask >> j) & 1, 2);
        if (mat_is_zero<Fp>(a * x)) ++count;
    }
    return count;
}

Mat<Fp> random_f2(std::mt19937& rng, Index r, Index c) {
    Mat<Fp> m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j) m(i, j) = Fp(static_cast<int64_t>(rng() & 1), 2);
    return m;
}

}  // namespace

TEST_CASE("kernel_basis on the stated instances") {
    Mat<Fp> empty(0, 0);
    CHECK(kernel_basis<Fp>(empty).cols() == 0);

    Mat<Fp> id3 = fpmat(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(kernel_basis<Fp>(id3).cols() == 0);

    Mat<Fp> ones = fpmat(2, {{1, 1}, {1, 1}});
    Mat<Fp> k = kernel_basis<Fp>(ones);
    REQUIRE(k.cols() == 1);
    CHECK(k(0, 0) == Fp(1, 2));
    CHECK(k(1, 0) == Fp(1, 2));
}

TEST_CASE("solve on the stated instances") {
    Mat<Fp> id2 = fpmat(2, {{1, 0}, {0, 1}});
    ColVec<Fp> b(2);
    b << Fp(1, 2), Fp(0, 2);
    auto x = solve<Fp>(id2, b);
    REQUIRE(x.has_value());
    CHECK(mat_eq<Fp>(Mat<Fp>(*x), Mat<Fp>(b)));

    Mat<Fp> zero2 = fpmat(2, {{0, 0}, {0, 0}});
    CHECK(!solve<Fp>(zero2, b).has_value());

    Mat<Fp> row = fpmat(2, {{1, 1}});
    ColVec<Fp> one(1);
    one << Fp(1, 2);
    auto y = solve<Fp>(row, one);
    REQUIRE(y.has_value());
    CHECK((*y)(0) == Fp(1, 2));  // free variable zeroed
    CHECK((*y)(1) == Fp(0, 2));
}

TEST_CASE("quotient_basis on the stated instances") {
    Mat<Fp> none(2, 0);
    auto q0 = quotient_basis<Fp>(none, 2);
    CHECK(q0.dim == 2);
    CHECK(mat_eq<Fp>(q0.proj, mat_identity<Fp>(2)));

    Mat<Fp> full = fpmat(2, {{1, 0}, {0, 1}});
    CHECK(quotient_basis<Fp>(full, 2).dim == 0);

    Mat<Fp> diag(2, 1);
    diag(0, 0) = Fp(1, 2);
    diag(1, 0) = Fp(1, 2);
    auto q1 = quotient_basis<Fp>(diag, 2);
    CHECK(q1.dim == 1);
    CHECK(mat_eq<Fp>(q1.proj * q1.lift, mat_identity<Fp>(1)));
    CHECK(mat_is_zero<Fp>(q1.proj * diag));
}

TEST_CASE("rank-nullity and solve consistency on random F_2 matrices") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        Index r = 1 + rng() % 5, c = 1 + rng() % 5;
        Mat<Fp> a = random_f2(rng, r, c);
        Mat<Fp> k = kernel_basis<Fp>(a);
        CHECK(rank_of<Fp>(a) + k.cols() == c);
        CHECK(mat_is_zero<Fp>(a * k));
        // oracle: solution count matches 2^nullity
        CHECK(count_kernel_f2(a) == (int64_t(1) << k.cols()));

        ColVec<Fp> b = random_f2(rng, r, 1).col(0);
        auto x = solve<Fp>(a, b);
        Mat<Fp> aug = hcat<Fp>(a, Mat<Fp>(b));
        bool consistent = rank_of<Fp>(aug) == rank_of<Fp>(a);
        CHECK(x.has_value() == consistent);
        if (x) CHECK(mat_eq<Fp>(Mat<Fp>(a * *x), Mat<Fp>(b)));
    }
}

TEST_CASE("rational echelon avoids overflow and stays exact") {
    Mat<Rat> a = qmat({{2, 4, 1}, {3, 5, 7}, {1, 1, 1}});
    auto inv = inverse<Rat>(a);
    REQUIRE(inv.has_value());
    CHECK(mat_eq<Rat>(a * *inv, mat_identity<Rat>(3)));

    // Hilbert-style matrix: entries 1/(i+j+1); classic exact-arithmetic stress.
    Mat<Rat> h(5, 5);
    for (Index i = 0; i < 5; ++i)
        for (Index j = 0; j < 5; ++j) h(i, j) = Rat(BigInt(1), BigInt(i + j + 1));
    CHECK(rank_of<Rat>(h) == 5);
    auto hi = inverse<Rat>(h);
    REQUIRE(hi.has_value());
    CHECK(mat_eq<Rat>(h * *hi, mat_identity<Rat>(5)));
}

TEST_CASE("deterministic output across runs") {
    std::mt19937 rng(7);
    Mat<Fp> a = random_f2(rng, 6, 7);
    Mat<Fp> k1 = kernel_basis<Fp>(a);
    Mat<Fp> k2 = kernel_basis<Fp>(a);
    CHECK(mat_eq<Fp>(k1, k2));
    std::ostringstream s1, s2;
    for (Index i = 0; i < k1.rows(); ++i)
        for (Index j = 0; j < k1.cols(); ++j) s1 << scalar_to_string(k1(i, j)) << ',';
    for (Index i = 0; i < k2.rows(); ++i)
        for (Index j = 0; j < k2.cols(); ++j) s2 << scalar_to_string(k2(i, j)) << ',';
    CHECK(s1.str() == s2.str());
}

TEST_CASE("row-convention helpers") {
    Mat<Fp> a = fpmat(2, {{1, 1, 0}, {0, 1, 1}});
    Mat<Fp> lk = left_kernel<Fp>(a);  // rows x with x a = 0
    CHECK(lk.rows() == 0);

    Mat<Fp> b = fpmat(2, {{1, 1}, {1, 1}, {0, 0}});
    Mat<Fp> lkb = left_kernel<Fp>(b);
    CHECK(lkb.rows() == 2);
    CHECK(mat_is_zero<Fp>(lkb * b));

    Mat<Fp> sub = fpmat(2, {{1, 1}});
    auto rq = row_quotient<Fp>(sub, 2);
    CHECK(rq.dim == 1);
    CHECK(mat_eq<Fp>(rq.lift * rq.proj, mat_identity<Fp>(1)));
    CHECK(mat_is_zero<Fp>(sub * rq.proj));

    Mat<Fp> m = fpmat(2, {{1, 0, 1}, {0, 1, 1}});
    RowVec<Fp> v = flatten<Fp>(m);
    CHECK(mat_eq<Fp>(unflatten<Fp>(v, 2, 3), m));
}

TEST_CASE("column space basis spans the image") {
    Mat<Fp> a = fpmat(2, {{1, 1, 0}, {1, 1, 0}, {0, 1, 1}});
    Mat<Fp> b = column_space_basis<Fp>(a);
    CHECK(b.cols() == rank_of<Fp>(a));
    CHECK(rank_of<Fp>(hcat<Fp>(a, b)) == rank_of<Fp>(a));
}

TEST_CASE("kron matches row-major index flattening") {
    Mat<Fp> a = fpmat(2, {{1, 0}, {1, 1}});
    Mat<Fp> b = fpmat(2, {{0, 1}, {1, 1}});
    Mat<Fp> k = kron<Fp>(a, b);
    REQUIRE(k.rows() == 4);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j)
            for (Index r = 0; r < 2; ++r)
                for (Index c = 0; c < 2; ++c)
                    CHECK(k(i * 2 + r, j * 2 + c) == a(i, j) * b(r, c));
}
