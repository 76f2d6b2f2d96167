#include "ufc/report.hpp"

namespace ufc {

void ClassificationReport::add(ClassifiedPattern p) {
    switch (p.cls) {
    case PatternClass::HFHUI: hfhui_.push_back(std::move(p)); break;
    case PatternClass::HFLUI: hflui_.push_back(std::move(p)); break;
    case PatternClass::LFHUI: lfhui_.push_back(std::move(p)); break;
    case PatternClass::LFLUI:
        throw ContractViolation("LFLUI patterns are discarded, not reported");
    }
}

const std::vector<ClassifiedPattern>& ClassificationReport::of(PatternClass c) const {
    switch (c) {
    case PatternClass::HFHUI: return hfhui_;
    case PatternClass::HFLUI: return hflui_;
    case PatternClass::LFHUI: return lfhui_;
    default: throw ContractViolation("no pattern list for LFLUI");
    }
}

void ClassificationReport::sort_canonical() {
    auto by_items = [](const ClassifiedPattern& a, const ClassifiedPattern& b) {
        return itemset_less(a.items, b.items);
    };
    std::sort(hfhui_.begin(), hfhui_.end(), by_items);
    std::sort(hflui_.begin(), hflui_.end(), by_items);
    std::sort(lfhui_.begin(), lfhui_.end(), by_items);
}

const ClassifiedPattern* ClassificationReport::find(const Itemset& items) const {
    for (const auto* lst : {&hfhui_, &hflui_, &lfhui_})
        for (const ClassifiedPattern& p : *lst)
            if (p.items == items) return &p;
    return nullptr;
}

bool same_patterns(const ClassificationReport& a, const ClassificationReport& b) {
    auto sorted = [](std::vector<ClassifiedPattern> v) {
        std::sort(v.begin(), v.end(),
                  [](const ClassifiedPattern& x, const ClassifiedPattern& y) {
                      return itemset_less(x.items, y.items);
                  });
        return v;
    };
    return sorted(a.hfhui()) == sorted(b.hfhui()) &&
           sorted(a.hflui()) == sorted(b.hflui()) &&
           sorted(a.lfhui()) == sorted(b.lfhui());
}

} // namespace ufc
