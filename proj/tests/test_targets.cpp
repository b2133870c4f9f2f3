#include <gtest/gtest.h>

#include <cmath>

#include "stairnet/staircase.hpp"
#include "stairnet/targets.hpp"

using namespace stairnet;

TEST(Targets, Staircase) {
    SparsePolynomial g = make_staircase(5, 3);
    EXPECT_EQ(g.sparsity(), 3u);
    EXPECT_DOUBLE_EQ(g.coefficient(Subset::of({1})), 1.0);
    EXPECT_DOUBLE_EQ(g.coefficient(Subset::of({1, 2})), 1.0);
    EXPECT_DOUBLE_EQ(g.coefficient(Subset::of({1, 2, 3})), 1.0);
    double x[] = {1, -1, -1, 1, 1};
    EXPECT_DOUBLE_EQ(g(x), 1.0 - 1.0 + 1.0);
    EXPECT_THROW(make_staircase(3, 4), std::out_of_range);
}

TEST(Targets, ParityTruncatedDouble) {
    SparsePolynomial chi = make_parity(6, 4);
    EXPECT_EQ(chi.sparsity(), 1u);
    EXPECT_DOUBLE_EQ(chi.coefficient(Subset::range(1, 4)), 1.0);

    // S_{j->k} = sum_{i=j}^k chi_{i:k}
    SparsePolynomial tr = make_truncated(6, 2, 4);
    EXPECT_EQ(tr.sparsity(), 3u);
    EXPECT_DOUBLE_EQ(tr.coefficient(Subset::range(2, 4)), 1.0);
    EXPECT_DOUBLE_EQ(tr.coefficient(Subset::range(3, 4)), 1.0);
    EXPECT_DOUBLE_EQ(tr.coefficient(Subset::range(4, 4)), 1.0);
    EXPECT_THROW(make_truncated(6, 3, 2), std::out_of_range);

    // S_{k,l}: second chain grows from x_1 through x_{k+1}..x_{k+l-1}
    SparsePolynomial d = make_double(8, 3, 3);
    EXPECT_EQ(d.sparsity(), 5u);
    EXPECT_DOUBLE_EQ(d.coefficient(Subset::of({1, 4})), 1.0);
    EXPECT_DOUBLE_EQ(d.coefficient(Subset::of({1, 4, 5})), 1.0);
    EXPECT_THROW(make_double(4, 3, 3), std::out_of_range);
}

TEST(Targets, Normalization) {
    SparsePolynomial g = normalize_to_unit(make_staircase(6, 4));
    EXPECT_NEAR(g.parseval_norm(), 1.0, 1e-12);
    EXPECT_NEAR(g.coefficient(Subset::of({1})), 1.0 / std::sqrt(4.0), 1e-12);
    EXPECT_THROW(normalize_to_unit(SparsePolynomial(3)), std::invalid_argument);
}

TEST(Targets, BiasedCentering) {
    const double p = 0.75;
    double plus = center_biased_coord(1.0, p);
    double minus = center_biased_coord(-1.0, p);
    // mean zero, variance one under P(x=1)=p
    EXPECT_NEAR(p * plus + (1 - p) * minus, 0.0, 1e-12);
    EXPECT_NEAR(p * plus * plus + (1 - p) * minus * minus, 1.0, 1e-12);
    EXPECT_THROW(center_biased_coord(1.0, 0.0), std::out_of_range);
}

TEST(Targets, HermiteValues) {
    const double y = 1.5;
    EXPECT_DOUBLE_EQ(hermite_eval(0, y), 1.0);
    EXPECT_DOUBLE_EQ(hermite_eval(1, y), y);
    EXPECT_NEAR(hermite_eval(2, y), (y * y - 1.0) / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(hermite_eval(3, y), (y * y * y - 3.0 * y) / std::sqrt(6.0), 1e-12);
    EXPECT_THROW(hermite_eval(-1, y), std::out_of_range);
}

TEST(Targets, GeneralHierarchicalMatchesSparse) {
    SparsePolynomial g = make_staircase(4, 3);
    auto f = GeneralHierarchicalPolynomial::from_sparse(g, BasisKind::IdentitySign);
    double x[] = {1, -1, 1, -1};
    EXPECT_DOUBLE_EQ(f(x), g(x));
    auto fh = GeneralHierarchicalPolynomial::from_sparse(g, BasisKind::Hermite);
    double y[] = {0.3, -0.7, 1.2, 0.0};
    // degree-1 Hermite is the identity, so values agree on real inputs too
    EXPECT_NEAR(fh(y), g(y), 1e-12);
}

TEST(Staircase, CanonicalTargetsPass) {
    auto r = check_staircase(make_staircase(8, 5), 1.0);
    EXPECT_TRUE(r.satisfies);
    EXPECT_DOUBLE_EQ(*r.m_required, 1.0);
    EXPECT_TRUE(check_staircase(make_double(8, 4, 3), 1.0).satisfies);
}

TEST(Staircase, ParityFailsWithWitness) {
    auto r = check_staircase(make_parity(6, 3), 1.0);
    EXPECT_FALSE(r.satisfies);
    ASSERT_TRUE(r.violating_subset.has_value());
    EXPECT_EQ(*r.violating_subset, Subset::range(1, 3));
    EXPECT_FALSE(r.m_required.has_value());
}

TEST(Staircase, MissingLinkFailsWithWitness) {
    // x1 + x1 x2 x3: the degree-3 term has no degree-2 predecessor
    SparsePolynomial g(3);
    g.set(Subset::of({1}), 1.0);
    g.set(Subset::of({1, 2, 3}), 1.0);
    auto r = check_staircase(g, 1.0);
    EXPECT_FALSE(r.satisfies);
    EXPECT_EQ(*r.violating_subset, Subset::of({1, 2, 3}));
}

TEST(Staircase, MagnitudeBounds) {
    SparsePolynomial g(2);
    g.set(Subset::of({1}), 3.0);
    g.set(Subset::of({1, 2}), 0.25);
    auto tight = check_staircase(g, 4.0);
    EXPECT_TRUE(tight.satisfies);
    EXPECT_DOUBLE_EQ(*tight.m_required, 4.0);
    auto loose = check_staircase(g, 3.5);
    EXPECT_FALSE(loose.satisfies);
    EXPECT_TRUE(loose.violating_subset.has_value());
    EXPECT_THROW(check_staircase(g, 0.5), std::invalid_argument);
}
