#include <doctest.h>

#include "support.hpp"
#include "ufc/core.hpp"

using namespace ufc;

TEST_CASE("transaction utilities of the worked example") {
    Database db = testsupport::example_db();
    REQUIRE(db.size() == 5);
    const Money expected[] = {13, 23, 16, 10, 12};
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(transaction_utility(db.transactions()[i], db) == expected[i]);
    CHECK(db.total_utility() == 74);
    CHECK(db.item_universe() == Itemset{1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("item utility inside a transaction") {
    Database db = testsupport::example_db();
    const Transaction& t1 = db.transactions()[0];
    CHECK(item_utility(1, t1, db) == 5);  // qty 1 x $5
    CHECK(item_utility(2, t1, db) == 6);  // qty 2 x $3
    CHECK(item_utility(3, t1, db) == 2);
    CHECK_THROWS_AS(item_utility(7, t1, db), AbsentItemError);
}

TEST_CASE("itemset measures: support is min-quantity mass") {
    Database db = testsupport::example_db();
    struct Row {
        Itemset x;
        Money u;
        Count s;
    };
    // values cross-checked against the exhaustive classifier
    const Row rows[] = {
        {{1}, 15, 3},       {{2}, 24, 8},       {{3}, 10, 5}, {{4}, 3, 3},
        {{5}, 8, 2},        {{6}, 10, 5},       {{7}, 4, 4},  {{1, 2}, 24, 3},
        {{2, 6}, 15, 3},    {{3, 6}, 12, 3},    {{3, 7}, 9, 3},
        {{1, 2, 6}, 20, 2}, {{2, 4, 5}, 16, 2},
    };
    for (const Row& r : rows) {
        CHECK(itemset_support(r.x, db) == r.s);
        CHECK(itemset_utility(r.x, db) == r.u);
    }
}

TEST_CASE("twu sums whole-transaction utilities") {
    Database db = testsupport::example_db();
    CHECK(twu({1}, db) == 36);
    CHECK(twu({2}, db) == 64);
    CHECK(twu({3}, db) == 35);
    CHECK(twu({4}, db) == 26);
    CHECK(twu({5}, db) == 16);
    CHECK(twu({6}, db) == 45);
    CHECK(twu({7}, db) == 22);
    CHECK(twu({3, 6}, db) == 22);    // T4 + T5
    CHECK(twu({1, 2, 6}, db) == 23); // T2 only
    CHECK(twu({1, 7}, db) == 0);     // never together
}

TEST_CASE("min_quantity and containment") {
    Database db = testsupport::example_db();
    const Transaction& t5 = db.transactions()[4]; // 2:1 3:2 6:2 7:1
    CHECK(min_quantity({2, 6}, t5) == 1);
    CHECK(min_quantity({3, 6}, t5) == 2);
    CHECK(!min_quantity({1, 2}, t5).has_value());
    CHECK(!min_quantity({}, t5).has_value());
}

TEST_CASE("measures reject non-canonical itemsets") {
    Database db = testsupport::example_db();
    CHECK_THROWS_AS(itemset_support({2, 1}, db), ContractViolation);
    CHECK_THROWS_AS(itemset_utility({1, 1}, db), ContractViolation);
    CHECK_THROWS_AS(twu({3, 2}, db), ContractViolation);
}

TEST_CASE("classify covers all four quadrants with >= boundaries") {
    Thresholds th{15, 3};
    CHECK(classify(15, 3, th) == PatternClass::HFHUI); // both exactly at threshold
    CHECK(classify(14, 3, th) == PatternClass::HFLUI);
    CHECK(classify(15, 2, th) == PatternClass::LFHUI);
    CHECK(classify(14, 2, th) == PatternClass::LFLUI);
    CHECK(classify(0, 0, Thresholds{0, 0}) == PatternClass::HFHUI);
}

TEST_CASE("threshold parsing: absolute, decimal, percent") {
    Database db = testsupport::example_db(); // total utility 74, 5 transactions
    CHECK(ThresholdSpec::parse("15").resolve_util(db) == 15);
    CHECK(ThresholdSpec::parse("3").resolve_fre(db) == 3);
    // 20% of $74 = $14.8, ceil -> $15
    CHECK(ThresholdSpec::parse("20%").resolve_util(db) == 15);
    // 50% of 5 transactions -> 3
    CHECK(ThresholdSpec::parse("50%").resolve_fre(db) == 3);
    // fractions above 100% are legal and simply unreachable
    CHECK(ThresholdSpec::parse("200%").resolve_util(db) == 148);
    // fractional absolute count rounds up
    CHECK(ThresholdSpec::parse("2.5").resolve_fre(db) == 3);
    CHECK(ThresholdSpec::parse(" 15 ").resolve_util(db) == 15);
}

TEST_CASE("relative thresholds resolve exactly, no float drift") {
    // 25% of a $400 total must be exactly $100, never 101
    auto db = testsupport::make_db({{{1, 4}}}, {{1, 100}});
    REQUIRE(db.total_utility() == 400);
    CHECK(ThresholdSpec::parse("25%").resolve_util(db) == 100);
    CHECK(ThresholdSpec::fraction(1, 4).resolve_util(db) == 100);
    CHECK(ThresholdSpec::parse("0.1%").resolve_util(db) == 1); // ceil(0.4)
}

TEST_CASE("absolute money thresholds scale with the table") {
    // utilities carry cents -> money scale 100
    auto db = testsupport::make_db({{{1, 1}}}, {{1, 150}}, 100);
    CHECK(ThresholdSpec::parse("1.5").resolve_util(db) == 150);
    CHECK(ThresholdSpec::parse("1.25").resolve_util(db) == 125);
    // sub-unit boundary rounds up: utilities are whole internal units anyway
    CHECK(ThresholdSpec::parse("1.005").resolve_util(db) == 101);
}

TEST_CASE("malformed thresholds are rejected") {
    for (const char* bad : {"", "abc", "1.2.3", "-5", "5%%", "%", "1..2", "12e3"})
        CHECK_THROWS_AS(ThresholdSpec::parse(bad), ConfigError);
}

TEST_CASE("transaction construction validates entries") {
    CHECK_THROWS_AS(Transaction(1, {{3, 1}, {3, 2}}), ConfigError); // duplicate item
    CHECK_THROWS_AS(Transaction(1, {{3, 0}}), ConfigError);        // zero quantity
    CHECK_THROWS_AS(Transaction(1, {{-1, 2}}), ConfigError);       // negative id
    Transaction t(7, {{5, 2}, {3, 1}});
    CHECK(t.entries().front().item == 3); // sorted on construction
    CHECK(t.quantity_of(5) == 2);
    CHECK(!t.quantity_of(4).has_value());
}

TEST_CASE("database construction validates shape") {
    UtilityTable table;
    table.set(1, 5);
    CHECK_THROWS_AS(UtilityTable().at(1), AbsentItemError);
    CHECK_THROWS_AS(table.set(2, 0), ConfigError);
    CHECK_THROWS_AS(table.set(2, -3), ConfigError);
    // occurring item without a utility entry
    CHECK_THROWS_AS(Database({Transaction(1, {{9, 1}})}, table), AbsentItemError);
    // non-increasing tids
    CHECK_THROWS_AS(Database({Transaction(2, {{1, 1}}), Transaction(2, {{1, 1}})}, table),
                    ConfigError);
    CHECK_THROWS_AS(Database({Transaction(0, {{1, 1}})}, table), ConfigError);
}

TEST_CASE("database prefix keeps the leading transactions") {
    Database db = testsupport::example_db();
    Database head = db.prefix(2);
    CHECK(head.size() == 2);
    CHECK(head.total_utility() == 36);
    CHECK(head.item_universe() == Itemset{1, 2, 3, 6});
    CHECK(db.prefix(0).empty());
    CHECK(db.prefix(5) == db);
    CHECK_THROWS_AS(db.prefix(6), ConfigError);
}

TEST_CASE("empty database edge cases") {
    UtilityTable table;
    table.set(1, 2);
    Database db({}, table);
    CHECK(db.total_utility() == 0);
    CHECK(db.item_universe().empty());
    CHECK(itemset_support({1}, db) == 0);
    CHECK(itemset_utility({1}, db) == 0);
    // relative thresholds against nothing resolve to zero
    CHECK(ThresholdSpec::parse("20%").resolve_util(db) == 0);
    CHECK(ThresholdSpec::parse("20%").resolve_fre(db) == 0);
}

TEST_CASE("empty transactions are legal and contribute nothing") {
    auto db = testsupport::make_db({{}, {{1, 2}}, {}}, {{1, 3}});
    CHECK(db.size() == 3);
    CHECK(transaction_utility(db.transactions()[0], db) == 0);
    CHECK(db.total_utility() == 6);
    CHECK(itemset_support({1}, db) == 2);
}

TEST_CASE("itemset ordering helper") {
    CHECK(itemset_less({1}, {1, 2}));
    CHECK(itemset_less({1, 2}, {2}));
    CHECK(!itemset_less({2}, {1, 9}));
    CHECK(itemset_canonical({1, 5, 9}));
    CHECK(!itemset_canonical({1, 1}));
    CHECK(!itemset_canonical({5, 1}));
}
