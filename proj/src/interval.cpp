#include "haar/interval.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "haar/errors.hpp"

namespace haar {

IntervalSet::IntervalSet(std::vector<Interval> parts) {
    parts_.reserve(parts.size());
    for (const Interval& iv : parts) {
        if (iv.empty()) {
            if (iv.lo > iv.hi)
                throw ConstructionError("interval with lo > hi");
            continue;
        }
        parts_.push_back(iv);
    }
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const Interval& iv : parts_) {
        if (!merged.empty()) {
            Interval& last = merged.back();
            if (iv.lo < last.hi)
                throw ConstructionError("overlapping intervals in set");
            if (iv.lo == last.hi) {
                last.hi = iv.hi;
                continue;
            }
        }
        merged.push_back(iv);
    }
    parts_ = std::move(merged);
}

namespace {

double parse_endpoint(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    std::size_t start = pos;
    if (text.compare(pos, 4, "-inf") == 0) {
        pos += 4;
        return -kInf;
    }
    if (text.compare(pos, 3, "inf") == 0) {
        pos += 3;
        return kInf;
    }
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '.' || text[pos] == '-' || text[pos] == '+' ||
                                 text[pos] == 'e' || text[pos] == 'E'))
        ++pos;
    const std::string token(text.substr(start, pos - start));
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size())
        throw ParseError("malformed interval endpoint", start);
    return v;
}

}  // namespace

IntervalSet IntervalSet::parse(std::string_view text) {
    std::vector<Interval> parts;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };
    skip_ws();
    if (text.compare(pos, 2, "{}") == 0)
        return IntervalSet();
    for (;;) {
        skip_ws();
        if (pos >= text.size() || text[pos] != '[')
            throw ParseError("expected '['", pos);
        ++pos;
        const double lo = parse_endpoint(text, pos);
        skip_ws();
        if (pos >= text.size() || text[pos] != ',')
            throw ParseError("expected ','", pos);
        ++pos;
        const double hi = parse_endpoint(text, pos);
        skip_ws();
        if (pos >= text.size() || text[pos] != ')')
            throw ParseError("expected ')'", pos);
        ++pos;
        parts.push_back({lo, hi});
        skip_ws();
        if (pos < text.size() && (text[pos] == 'u' || text[pos] == 'U')) {
            ++pos;
            continue;
        }
        break;
    }
    std::size_t tail = pos;
    while (tail < text.size() && std::isspace(static_cast<unsigned char>(text[tail])))
        ++tail;
    if (tail != text.size())
        throw ParseError("unexpected trailing input after interval set", tail);
    return IntervalSet(std::move(parts));
}

std::string IntervalSet::str() const {
    if (parts_.empty())
        return "{}";
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i)
            os << " u ";
        os << '[' << parts_[i].lo << ',' << parts_[i].hi << ')';
    }
    return os.str();
}

double IntervalSet::total_length() const {
    double sum = 0.0;
    for (const Interval& iv : parts_)
        sum += iv.length();
    return sum;
}

bool IntervalSet::contains(double x) const {
    for (const Interval& iv : parts_)
        if (iv.contains(x))
            return true;
    return false;
}

bool IntervalSet::inside(const Interval& hull) const {
    for (const Interval& iv : parts_)
        if (!hull.contains(iv))
            return false;
    return true;
}

IntervalSet IntervalSet::intersect(const Interval& window) const {
    std::vector<Interval> out;
    for (const Interval& iv : parts_) {
        Interval clipped = iv.intersect(window);
        if (!clipped.empty())
            out.push_back(clipped);
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    std::vector<Interval> out;
    for (const Interval& a : parts_) {
        for (const Interval& b : other.parts_) {
            Interval clipped = a.intersect(b);
            if (!clipped.empty())
                out.push_back(clipped);
        }
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    // Sweep endpoints; tolerates overlap between the two operands.
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    std::sort(all.begin(), all.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const Interval& iv : all) {
        if (iv.empty())
            continue;
        if (!out.empty() && iv.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    IntervalSet r;
    r.parts_ = std::move(out);
    return r;
}

IntervalSet IntervalSet::translate(double shift) const {
    std::vector<Interval> out;
    out.reserve(parts_.size());
    for (const Interval& iv : parts_)
        out.push_back({iv.lo + shift, iv.hi + shift});
    return IntervalSet(std::move(out));
}

Interval IntervalSet::hull() const {
    if (parts_.empty())
        return {0.0, 0.0};
    return {parts_.front().lo, parts_.back().hi};
}

}  // namespace haar
