#pragma once

// Core data model: quantitative transactions, external utility table,
// the four utility/frequency measures and the HFHUI/HFLUI/LFHUI taxonomy.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ufc {

// Money is carried in the smallest currency unit (integer cents, say).
// Database::money_scale() tells how many units make one displayed currency unit.
using Money = std::int64_t;
using ItemId = std::int32_t;
using Tid = std::int32_t;
using Count = std::int64_t;

// Always sorted ascending by item id, duplicate-free.
using Itemset = std::vector<ItemId>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AbsentItemError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ImportError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
// Thrown when two structures that must agree on shape don't (e.g. joining
// itemsets of different length).
struct ContractViolation : Error {
    using Error::Error;
};

struct ItemQty {
    ItemId item = 0;
    std::int32_t qty = 0;

    bool operator==(const ItemQty&) const = default;
};

class UtilityTable {
public:
    UtilityTable() = default;

    void set(ItemId item, Money value);
    // Throws AbsentItemError when the item has no entry.
    Money at(ItemId item) const;
    std::optional<Money> find(ItemId item) const;
    bool contains(ItemId item) const { return values_.count(item) != 0; }
    std::size_t size() const { return values_.size(); }

    const std::map<ItemId, Money>& entries() const { return values_; }

    bool operator==(const UtilityTable&) const = default;

private:
    std::map<ItemId, Money> values_;
};

class Transaction {
public:
    Transaction() = default;
    // Entries get sorted by item id; duplicate items are rejected.
    Transaction(Tid tid, std::vector<ItemQty> entries);

    Tid tid() const { return tid_; }
    const std::vector<ItemQty>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    // Purchase quantity of `item` in this transaction, if present.
    std::optional<std::int32_t> quantity_of(ItemId item) const;
    bool contains(ItemId item) const { return quantity_of(item).has_value(); }

    bool operator==(const Transaction&) const = default;

private:
    Tid tid_ = 0;
    std::vector<ItemQty> entries_;
};

class Database {
public:
    Database() = default;
    // Validates: positive quantities/utilities, strictly increasing tids,
    // and that every occurring item has a utility entry.
    Database(std::vector<Transaction> transactions, UtilityTable utilities,
             Money money_scale = 1);

    const std::vector<Transaction>& transactions() const { return transactions_; }
    const UtilityTable& utilities() const { return utilities_; }
    Money money_scale() const { return money_scale_; }
    std::size_t size() const { return transactions_.size(); }
    bool empty() const { return transactions_.empty(); }

    // Distinct items occurring in at least one transaction, ascending.
    const Itemset& item_universe() const { return universe_; }
    // Sum of all transaction utilities.
    Money total_utility() const { return total_utility_; }

    // Database restricted to the first n transactions (same utility table).
    Database prefix(std::size_t n) const;

    bool operator==(const Database& other) const {
        return transactions_ == other.transactions_ &&
               utilities_ == other.utilities_ && money_scale_ == other.money_scale_;
    }

private:
    std::vector<Transaction> transactions_;
    UtilityTable utilities_;
    Money money_scale_ = 1;
    Itemset universe_;
    Money total_utility_ = 0;
};

// ---- measures -------------------------------------------------------------

// u(i, T) = q(i, T) * v(i). AbsentItemError if i is missing from T or the table.
Money item_utility(ItemId item, const Transaction& t, const Database& db);

// TU(T) = sum of item utilities in T.
Money transaction_utility(const Transaction& t, const Database& db);

// v(X) = sum of external utilities over X. AbsentItemError on unknown items.
Money external_utility(const Itemset& x, const UtilityTable& table);

// min quantity of X's items inside T, if T contains all of X. Empty X -> nullopt.
std::optional<std::int32_t> min_quantity(const Itemset& x, const Transaction& t);

// S(X) = sum over containing transactions of the minimum purchase quantity.
Count itemset_support(const Itemset& x, const Database& db);

// U(X) = S(X) * v(X) (equivalently the per-transaction sum of minq * v(X)).
Money itemset_utility(const Itemset& x, const Database& db);

// TWU(X) = sum of TU over transactions containing X.
Money twu(const Itemset& x, const Database& db);

// ---- thresholds & classification -------------------------------------------

struct Thresholds {
    Money min_util = 0; // internal money units
    Count min_fre = 0;

    bool operator==(const Thresholds&) const = default;
};

// A user-facing threshold value: either an absolute amount/count or a fraction
// of the database total. Stored as an exact decimal rational so resolution
// never suffers floating-point round-off.
class ThresholdSpec {
public:
    // value: decimal string like "15", "1.5", "0.15". relative=true means
    // a fraction of the database aggregate (ΣTU or |D|).
    ThresholdSpec(const std::string& value, bool relative);

    // Parses the CLI surface form: "15" / "1.5" absolute, "20%" relative.
    static ThresholdSpec parse(const std::string& text);

    static ThresholdSpec absolute(Money display_units);
    static ThresholdSpec fraction(std::int64_t num, std::int64_t den);

    bool relative() const { return relative_; }

    // ceil(fraction * ΣTU) for relative specs; absolute amounts are scaled
    // into the database's money units, rounding a fractional boundary up.
    Money resolve_util(const Database& db) const;
    // ceil(fraction * |D|) for relative specs; absolute counts use ceil too.
    Count resolve_fre(const Database& db) const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    bool relative_ = false;
};

enum class PatternClass { HFHUI, HFLUI, LFHUI, LFLUI };

const char* to_string(PatternClass c);

// The two-predicate taxonomy: utility >= min_util x support >= min_fre.
PatternClass classify(Money utility, Count support, const Thresholds& th);

struct ClassifiedPattern {
    Itemset items;
    Money utility = 0;
    Count support = 0;
    PatternClass cls = PatternClass::LFLUI;

    bool operator==(const ClassifiedPattern&) const = default;
};

// Lexicographic itemset order: {1} < {1,2} < {2}.
bool itemset_less(const Itemset& a, const Itemset& b);

// Sorted ascending, duplicate-free?
bool itemset_canonical(const Itemset& x);

} // namespace ufc
