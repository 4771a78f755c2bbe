#include "haar/groups.hpp"

#include <cmath>
#include <sstream>

#include "haar/errors.hpp"

namespace haar {

Carrier Carrier::open_interval(double a, double b) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw ConstructionError("open interval needs finite endpoints with a < b");
    return {Kind::OpenInterval, a, b, 1};
}

Carrier Carrier::product(int n) {
    if (n < 1)
        throw ConstructionError("invalid dimension: product space needs n >= 1");
    return {Kind::Product, -kInf, kInf, n};
}

bool Carrier::contains(double x) const {
    switch (kind) {
        case Kind::FullLine:
            return std::isfinite(x);
        case Kind::OpenInterval:
            return lo < x && x < hi;
        case Kind::HalfLine:
            return x > 0.0;
        case Kind::Circle:
            return 0.0 <= x && x < 1.0;
        case Kind::Product:
            return false;
    }
    return false;
}

bool Carrier::contains(const Point& p) const {
    if (kind == Kind::Product) {
        if (static_cast<int>(p.size()) != dim)
            return false;
        for (double v : p)
            if (!std::isfinite(v))
                return false;
        return true;
    }
    return p.size() == 1 && contains(p[0]);
}

std::string Carrier::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::FullLine:
            os << "R";
            break;
        case Kind::OpenInterval:
            os << "(" << lo << "," << hi << ")";
            break;
        case Kind::HalfLine:
            os << "(0,inf)";
            break;
        case Kind::Circle:
            os << "[0,1) mod 1";
            break;
        case Kind::Product:
            os << "R^" << dim;
            break;
    }
    return os.str();
}

std::string to_string(Compactness c) {
    switch (c) {
        case Compactness::Compact:
            return "compact";
        case Compactness::LocallyCompactNoncompact:
            return "locally-compact-noncompact";
        case Compactness::NonLocallyCompact:
            return "non-locally-compact";
    }
    return "?";
}

double mod1(double x) {
    double r = std::fmod(x, 1.0);
    if (r < 0.0)
        r += 1.0;
    // fmod can round -1e-17 + 1 up to 1.0; fold it back.
    if (r >= 1.0)
        r -= 1.0;
    return r;
}

namespace {

Point scalar_point(double v) { return Point{v}; }

GroupSpec make_real_line_group() {
    GroupSpec g;
    g.name = "real-line";
    g.carrier = Carrier::full_line();
    g.op = [](const Point& a, const Point& b) { return scalar_point(a[0] + b[0]); };
    g.identity = {0.0};
    g.invert = [](const Point& a) { return scalar_point(-a[0]); };
    g.metric = [](const Point& a, const Point& b) { return std::abs(a[0] - b[0]); };
    g.tags = {true, Compactness::LocallyCompactNoncompact, true};
    return g;
}

}  // namespace

std::pair<GroupSpec, MeasureSpec> base_real_line() {
    MeasureSpec m;
    m.name = "lebesgue";
    m.carrier = Carrier::full_line();
    m.density = [](double) { return 1.0; };
    m.density_desc = "1";
    m.mass_class = MassClass::SigmaFiniteNonFinite;
    return {make_real_line_group(), m};
}

std::pair<GroupSpec, MeasureSpec> base_circle() {
    GroupSpec g;
    g.name = "circle";
    g.carrier = Carrier::circle();
    g.op = [](const Point& a, const Point& b) { return scalar_point(mod1(a[0] + b[0])); };
    g.identity = {0.0};
    g.invert = [](const Point& a) { return scalar_point(a[0] == 0.0 ? 0.0 : 1.0 - a[0]); };
    g.metric = [](const Point& a, const Point& b) {
        const double d = std::abs(a[0] - b[0]);
        return std::min(d, 1.0 - d);
    };
    g.tags = {true, Compactness::Compact, true};

    MeasureSpec m;
    m.name = "circle-lebesgue";
    m.carrier = Carrier::circle();
    m.density = [](double) { return 1.0; };
    m.density_desc = "1";
    m.mass_class = MassClass::Probability;
    return {g, m};
}

std::pair<GroupSpec, MeasureSpec> base_real_n(int n) {
    if (n < 1)
        throw ConstructionError("invalid dimension: base_real_n needs n >= 1");
    GroupSpec g;
    g.name = "real-" + std::to_string(n);
    g.carrier = Carrier::product(n);
    g.op = [n](const Point& a, const Point& b) {
        if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
            throw ConstructionError("dimension mismatch in componentwise addition");
        Point r(n);
        for (int i = 0; i < n; ++i)
            r[i] = a[i] + b[i];
        return r;
    };
    g.identity = Point(n, 0.0);
    g.invert = [n](const Point& a) {
        Point r(n);
        for (int i = 0; i < n; ++i)
            r[i] = -a[i];
        return r;
    };
    g.metric = [n](const Point& a, const Point& b) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        return std::sqrt(s);
    };
    g.tags = {true, Compactness::LocallyCompactNoncompact, true};

    MeasureSpec m;
    m.name = "lebesgue-" + std::to_string(n);
    m.carrier = Carrier::product(n);
    m.density = [](double) { return 1.0; };
    m.density_desc = "1";
    m.mass_class = MassClass::SigmaFiniteNonFinite;
    return {g, m};
}

}  // namespace haar
