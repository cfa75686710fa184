#include <gtest/gtest.h>

#include <algorithm>
#include <limits>

#include "polyspan/algebra.hpp"
#include "polyspan/random.hpp"

namespace polyspan {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(ReduceBag, MinPlusTakesMinimum) {
    EXPECT_EQ(reduce_bag(min_plus<double>(), Bag<double>{3, 5, 5}), 3);
    EXPECT_EQ(reduce_bag(min_plus<double>(), Bag<double>{}), kInf);
}

TEST(ReduceBag, RealSums) { EXPECT_DOUBLE_EQ(reduce_bag(real_sum_product<double>(), Bag<double>{1.5, 2.5}), 4.0); }

TEST(ReduceBag, CountsMultiplicity) {
    EXPECT_EQ(reduce_bag(real_sum_product<double>(), Bag<double>{2, 2, 2}), 6);
}

TEST(FoldList, MinPlusAdds) {
    EXPECT_EQ(fold_list(min_plus<double>(), OrderedList<double>{2, 7}), 9);
    EXPECT_EQ(fold_list(min_plus<double>(), OrderedList<double>{2, kInf}), kInf);
}

TEST(FoldList, EmptyIsOne) {
    for (const auto& s : {min_plus<double>(), real_sum_product<double>(), max_plus<double>(), boolean_or_and<double>()}) {
        EXPECT_EQ(fold_list(s, OrderedList<double>{}), s.one) << s.name;
    }
}

TEST(FoldList, RealProduct) { EXPECT_DOUBLE_EQ(fold_list(real_sum_product<double>(), OrderedList<double>{2.0, 3.0, 0.5}), 3.0); }

TEST(FoldList, IsALeftFold) {
    Semiring<double> s = real_sum_product<double>();
    s.times = [](double a, double b) { return a - b; };
    s.times_commutative = false;
    EXPECT_EQ(fold_list(s, OrderedList<double>{5, 2, 1}), ((1 - 5) - 2) - 1);
}

TEST(MapBag, MergesMultiplicities) {
    EXPECT_EQ(map_bag([](int v) { return v + 1; }, Bag<int>{1, 1, 2}), (Bag<int>{2, 2, 3}));
    const auto zeros = map_bag([](int) { return 0; }, Bag<int>{4, 9});
    EXPECT_EQ(zeros.multiplicity(0), 2u);
    EXPECT_EQ(zeros.distinct(), 1u);
    EXPECT_EQ(map_bag([](int v) { return v; }, Bag<int>{7, 3, 3}), (Bag<int>{3, 7, 3}));
}

TEST(JoinBag, Flattens) {
    EXPECT_EQ(join_bag(Bag<Bag<int>>{Bag<int>{1, 2}, Bag<int>{2}}), (Bag<int>{1, 2, 2}));
    EXPECT_EQ(join_bag(Bag<Bag<int>>{Bag<int>{4}}), Bag<int>{4});
    EXPECT_TRUE(join_bag(Bag<Bag<int>>{}).empty());
}

TEST(JoinBag, OuterMultiplicityScalesInner) {
    Bag<Bag<int>> bb;
    bb.insert(Bag<int>{1, 2}, 3);
    const auto flat = join_bag(bb);
    EXPECT_EQ(flat.multiplicity(1), 3u);
    EXPECT_EQ(flat.size(), 6u);
}

TEST(Distribute, AllOrderedSelections) {
    using L = OrderedList<char>;
    const auto d = distribute(OrderedList<Bag<char>>{Bag<char>{'a', 'b'}, Bag<char>{'c'}});
    EXPECT_EQ(d, (Bag<L>{L{'a', 'c'}, L{'b', 'c'}}));
    EXPECT_EQ(distribute(OrderedList<Bag<char>>{Bag<char>{'x'}}), Bag<L>{L{'x'}});
    EXPECT_TRUE(distribute(OrderedList<Bag<char>>{Bag<char>{'a'}, Bag<char>{}}).empty());
}

TEST(Distribute, EmptyListGivesUnitSelection) {
    EXPECT_EQ(distribute(OrderedList<Bag<int>>{}), Bag<OrderedList<int>>{OrderedList<int>{}});
}

TEST(Semirings, MinPlusSaturatesAtInfinity) {
    const auto s = min_plus<double>();
    EXPECT_EQ(s.times(kInf, 3), kInf);
    EXPECT_EQ(s.times(3, kInf), kInf);
    EXPECT_EQ(s.times(kInf, kInf), kInf);
    EXPECT_EQ(s.plus(kInf, 3), 3);
}

TEST(Semirings, ByName) {
    EXPECT_EQ(semiring_by_name<double>("min-plus").name, "min-plus");
    EXPECT_EQ(semiring_by_name<double>("bool").kind, ValueKind::Boolean);
    EXPECT_THROW(semiring_by_name<double>("tropical"), InputError);
}

TEST(Tolerance, RelativeWithAbsoluteFloor) {
    EXPECT_TRUE(approx_equal(1e6, 1e6 * (1 + 5e-10)));
    EXPECT_FALSE(approx_equal(1e6, 1e6 * (1 + 5e-9)));
    EXPECT_TRUE(approx_equal(0.0, 5e-13));
    EXPECT_FALSE(approx_equal(0.0, 5e-12));
    EXPECT_FALSE(approx_equal(kInf, 1e308));
    EXPECT_TRUE(approx_equal(kInf, kInf));
}

TEST(CheckLaws, ShippedInstancesPass) {
    Rng rng(11);
    for (const auto& s : {min_plus<double>(), real_sum_product<double>(), max_plus<double>(), boolean_or_and<double>()}) {
        const auto report = check_laws(s, random_triples(rng, s.kind, 1000));
        for (const auto& law : report.laws) EXPECT_TRUE(law.passed) << s.name << " " << law.law << " " << law.counterexample;
        EXPECT_EQ(report.laws.front().checked, 1000u);
    }
}

TEST(CheckLaws, MinPlusHundredTriples) {
    Rng rng(0);
    EXPECT_TRUE(check_laws(min_plus<double>(), random_triples(rng, ValueKind::TropicalNat, 100)).all_passed());
}

TEST(CheckLaws, RealWithinToleranceAtThousandMagnitude) {
    Rng rng(5);
    std::uniform_real_distribution<double> unif(-1e3, 1e3);
    std::vector<std::array<double, 3>> samples(500);
    for (auto& t : samples) {
        for (auto& v : t) v = unif(rng);
    }
    const auto report = check_laws(real_sum_product<double>(), samples);
    EXPECT_TRUE(report.find("plus-associative")->passed);
    EXPECT_TRUE(report.find("times-associative")->passed);
}

TEST(CheckLaws, BrokenInstanceFailsAssociativity) {
    const auto report = check_laws(broken_subtraction<double>(), {{{1, 2, 3}}});
    ASSERT_NE(report.find("plus-associative"), nullptr);
    EXPECT_FALSE(report.find("plus-associative")->passed);
    EXPECT_FALSE(report.find("plus-associative")->counterexample.empty());
    EXPECT_FALSE(report.all_passed());
}

TEST(CheckLaws, NonCommutativeTimesSkipsCommutativity) {
    Semiring<double> s = real_sum_product<double>();
    s.times_commutative = false;
    EXPECT_EQ(check_laws(s, {{{1, 2, 3}}}).find("times-commutative"), nullptr);
}

// Properties over random nestings.

class MonadLaws : public ::testing::TestWithParam<int> {};

Bag<int> random_bag(Rng& rng) {
    Bag<int> b;
    const int size = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int k = 0; k < size; ++k) b.insert(std::uniform_int_distribution<int>(0, 4)(rng));
    return b;
}

OrderedList<int> random_list(Rng& rng) {
    OrderedList<int> l;
    const int size = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int k = 0; k < size; ++k) l.items.push_back(std::uniform_int_distribution<int>(0, 4)(rng));
    return l;
}

TEST_P(MonadLaws, BagUnitAndAssociativity) {
    Rng rng(static_cast<std::uint64_t>(GetParam()));
    Bag<Bag<Bag<int>>> bbb;
    for (int k = 0; k < 3; ++k) {
        Bag<Bag<int>> bb;
        for (int j = 0; j < 3; ++j) bb.insert(random_bag(rng));
        bbb.insert(bb);
    }
    const Bag<int> b = random_bag(rng);
    EXPECT_EQ(join_bag(unit_bag(b)), b);
    EXPECT_EQ(join_bag(map_bag([](int v) { return unit_bag(v); }, b)), b);
    EXPECT_EQ(join_bag(join_bag(bbb)), join_bag(map_bag([](const Bag<Bag<int>>& x) { return join_bag(x); }, bbb)));
}

TEST_P(MonadLaws, ListUnitAndAssociativity) {
    Rng rng(static_cast<std::uint64_t>(GetParam()) + 1000);
    OrderedList<OrderedList<OrderedList<int>>> lll;
    for (int k = 0; k < 3; ++k) {
        OrderedList<OrderedList<int>> ll;
        for (int j = 0; j < 2; ++j) ll.items.push_back(random_list(rng));
        lll.items.push_back(ll);
    }
    const auto l = random_list(rng);
    EXPECT_EQ(join_list(unit_list(l)), l);
    EXPECT_EQ(join_list(map_list([](int v) { return unit_list(v); }, l)), l);
    EXPECT_EQ(join_list(join_list(lll)),
              join_list(map_list([](const OrderedList<OrderedList<int>>& x) { return join_list(x); }, lll)));
}

TEST_P(MonadLaws, DistributeExpandsProductOfSums) {
    Rng rng(static_cast<std::uint64_t>(GetParam()) + 2000);
    for (const auto& s : {min_plus<double>(), real_sum_product<double>(), max_plus<double>(), boolean_or_and<double>()}) {
        OrderedList<Bag<double>> factors;
        const int count = std::uniform_int_distribution<int>(0, 3)(rng);
        for (int f = 0; f < count; ++f) {
            Bag<double> b;
            const int size = std::uniform_int_distribution<int>(0, 3)(rng);
            for (int e = 0; e < size; ++e) b.insert(random_value(rng, s.kind));
            factors.items.push_back(b);
        }
        const double expanded =
            reduce_bag(s, map_bag([&](const OrderedList<double>& l) { return fold_list(s, l); }, distribute(factors)));
        double direct = s.one;
        for (const auto& b : factors.items) direct = s.times(direct, reduce_bag(s, b));
        EXPECT_TRUE(values_equal(s, expanded, direct)) << s.name;
    }
}

TEST_P(MonadLaws, ReduceIgnoresPresentationOrder) {
    Rng rng(static_cast<std::uint64_t>(GetParam()) + 3000);
    for (const auto& s : {min_plus<double>(), real_sum_product<double>(), max_plus<double>(), boolean_or_and<double>()}) {
        std::vector<double> values(7);
        for (auto& v : values) v = random_value(rng, s.kind);
        Bag<double> bag;
        for (double v : values) bag.insert(v);
        std::shuffle(values.begin(), values.end(), rng);
        double sequential = s.zero;
        for (double v : values) sequential = s.plus(sequential, v);
        EXPECT_TRUE(values_equal(s, reduce_bag(s, bag), sequential)) << s.name;
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, MonadLaws, ::testing::Range(0, 50));

}  // namespace
}  // namespace polyspan
