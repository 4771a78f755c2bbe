#include "haar/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "haar/errors.hpp"

namespace haar {

namespace {

constexpr double kPi = 3.141592653589793;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

SetTranslator line_base_translator(const Bijection1D& f) {
    return [f](double g1, double g2, const IntervalSet& s) {
        const double shift = f.inv(g1) + f.inv(g2);
        return image_set(f, preimage_set(f, s).translate(shift));
    };
}

void cross_check_closed_form(const GroupSpec& closed, const GroupSpec& generic, double scale,
                             double tol) {
    // Deterministic interior pairs; residuals scaled by the carrier size so
    // the check is meaningful for carriers as large as (-3e8, 3e8).
    const Interval iv = closed.carrier.as_interval();
    const int n = 8;
    auto sample = [&](double u) {
        if (iv.bounded())
            return iv.lo + (iv.hi - iv.lo) * u;
        if (iv.lo == 0.0)
            return std::exp(6.0 * u - 3.0);
        return 8.0 * u - 4.0;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double x = sample((i + 0.7) / (n + 1));
            const double y = sample((j + 0.3) / (n + 1));
            const double a = closed.op1(x, y);
            const double b = generic.op1(x, y);
            if (std::abs(a - b) > tol * std::max(1.0, scale))
                throw ConstructionError("closed-form operation disagrees with generic transport");
        }
    }
}

}  // namespace

GroupSpec transport_group(const GroupSpec& base, const Bijection1D& f) {
    if (!base.carrier.scalar())
        throw ConstructionError("transport through an expression bijection needs a scalar base");
    f.validate();

    GroupSpec g;
    g.name = base.name + "-transported";
    g.carrier = [&] {
        if (f.codomain.lo == -kInf && f.codomain.hi == kInf)
            return Carrier::full_line();
        if (f.codomain.lo == 0.0 && f.codomain.hi == kInf)
            return Carrier::half_line();
        return Carrier::open_interval(f.codomain.lo, f.codomain.hi);
    }();

    const Bijection1D map = f;
    const GroupSpec base_copy = base;
    g.op = [map, base_copy](const Point& x, const Point& y) {
        if (!map.codomain.contains(x[0]) || !map.codomain.contains(y[0]))
            throw DomainError("point outside the transported carrier");
        return Point{map.fwd(base_copy.op1(map.inv(x[0]), map.inv(y[0])))};
    };
    g.identity = {f.fwd(base.identity1())};
    g.invert = [map, base_copy](const Point& x) {
        return Point{map.fwd(base_copy.invert1(map.inv(x[0])))};
    };
    g.metric = [map, base_copy](const Point& x, const Point& y) {
        return base_copy.metric1(map.inv(x[0]), map.inv(y[0]));
    };
    g.tags = base.tags;  // items (ii), (iv)-(vii): declared, propagated
    return g;
}

MeasureSpec transport_measure(const MeasureSpec& base_measure, const Bijection1D& f) {
    return pushforward(base_measure, f);
}

TransportResult transport(const GroupSpec& base, const MeasureSpec& base_measure,
                          const Bijection1D& f, const std::string& name) {
    TransportResult r;
    r.group = transport_group(base, f);
    r.group.name = name;
    r.measure = pushforward(base_measure, f);
    r.measure.name = name + "-haar";
    r.witness = f;
    r.provenance = "transport of " + base.name + " under " +
                   (f.desc.empty() ? std::string("f") : f.desc);
    if (base.carrier.kind == Carrier::Kind::FullLine)
        r.translate = line_base_translator(f);
    return r;
}

Bijection1D velocity_bijection(double c) {
    if (!(c > 0.0))
        throw ConstructionError("velocity group needs c > 0");
    Bijection1D f;
    // c*tanh(x/c), written overflow-safe; the inverse is the rapidity map.
    f.forward = Expr::parse("c*(1 - 2/(exp(2*x/c) + 1))");
    f.inverse = Expr::parse("(c/2)*ln((c + x)/(c - x))");
    f.params = {{"c", c}};
    f.domain = {-kInf, kInf};
    f.codomain = {-c, c};
    f.increasing = true;
    f.desc = "f(y)=c*tanh(y/c)";
    return f;
}

TransportResult velocity_group(double c) {
    const Bijection1D f = velocity_bijection(c);
    const auto [base, lebesgue] = base_real_line();

    TransportResult r;
    r.group = transport_group(base, f);
    r.group.name = "velocity:" + fmt(c);

    // Closed forms for op and inverse; metric stays the transported one.
    r.group.op = [c](const Point& x, const Point& y) {
        if (std::abs(x[0]) >= c || std::abs(y[0]) >= c)
            throw DomainError("velocity outside (-c,c)");
        return Point{(x[0] + y[0]) / (1.0 + x[0] * y[0] / (c * c))};
    };
    r.group.identity = {0.0};
    r.group.invert = [c](const Point& x) { return Point{-x[0]}; };

    cross_check_closed_form(r.group, transport_group(base, f), c, 1e-12);

    r.measure.name = r.group.name + "-haar";
    r.measure.carrier = Carrier::open_interval(-c, c);
    r.measure.density = [c](double t) {
        if (std::abs(t) >= c)
            throw DomainError("density pole at the carrier boundary");
        return c * c / ((c - t) * (c + t));
    };
    r.measure.density_desc = "c^2/(c^2-t^2), c=" + fmt(c);
    r.measure.mass_class = MassClass::SigmaFiniteNonFinite;

    r.witness = f;
    r.provenance = "transport of (R,+,| |) under " + f.desc;
    r.translate = line_base_translator(f);
    return r;
}

Bijection1D log_bijection() {
    Bijection1D f;
    f.forward = Expr::parse("exp(x)");
    f.inverse = Expr::parse("ln(x)");
    f.domain = {-kInf, kInf};
    f.codomain = {0.0, kInf};
    f.increasing = true;
    f.desc = "f(y)=exp(y)";
    return f;
}

TransportResult log_group() {
    const Bijection1D f = log_bijection();
    const auto [base, lebesgue] = base_real_line();

    TransportResult r;
    r.group = transport_group(base, f);
    r.group.name = "log";
    r.group.op = [](const Point& x, const Point& y) {
        if (x[0] <= 0.0 || y[0] <= 0.0)
            throw DomainError("log-group point must be positive");
        return Point{x[0] * y[0]};
    };
    r.group.identity = {1.0};
    r.group.invert = [](const Point& x) { return Point{1.0 / x[0]}; };
    r.group.metric = [](const Point& x, const Point& y) {
        return std::abs(std::log(x[0]) - std::log(y[0]));
    };

    cross_check_closed_form(r.group, transport_group(base, f), 1.0, 1e-12);

    r.measure.name = "log-haar";
    r.measure.carrier = Carrier::half_line();
    r.measure.density = [](double t) {
        if (t <= 0.0)
            throw DomainError("density defined on (0,inf)");
        return 1.0 / t;
    };
    r.measure.density_desc = "1/x";
    r.measure.mass_class = MassClass::SigmaFiniteNonFinite;

    r.witness = f;
    r.provenance = "transport of (R,+,| |) under " + f.desc;
    r.translate = line_base_translator(f);
    return r;
}

Bijection1D arctan_bijection(double c) {
    if (!(c > 0.0))
        throw ConstructionError("arctan group needs c > 0");
    Bijection1D f;
    f.forward = Expr::parse("(2*c/pi)*atan(x)");
    f.inverse = Expr::parse("tan(pi*x/(2*c))");
    f.params = {{"c", c}, {"pi", kPi}};
    f.domain = {-kInf, kInf};
    f.codomain = {-c, c};
    f.increasing = true;
    f.desc = "f(y)=2c*atan(y)/pi";
    return f;
}

TransportResult arctan_group(double c) {
    const Bijection1D f = arctan_bijection(c);
    const auto [base, lebesgue] = base_real_line();

    TransportResult r;
    r.group = transport_group(base, f);
    r.group.name = "arctan:" + fmt(c);
    r.group.op = [c](const Point& x, const Point& y) {
        if (std::abs(x[0]) >= c || std::abs(y[0]) >= c)
            throw DomainError("arctan-group point outside (-c,c)");
        const double tx = std::tan(kPi * x[0] / (2.0 * c));
        const double ty = std::tan(kPi * y[0] / (2.0 * c));
        return Point{(2.0 * c / kPi) * std::atan(tx + ty)};
    };
    r.group.identity = {0.0};
    r.group.invert = [](const Point& x) { return Point{-x[0]}; };

    cross_check_closed_form(r.group, transport_group(base, f), c, 1e-12);

    // No closed form is claimed for the density; it is computed by the
    // change-of-variables route.
    r.measure = pushforward(lebesgue, f);
    r.measure.name = r.group.name + "-haar";

    r.witness = f;
    r.provenance = "transport of (R,+,| |) under " + f.desc;
    r.translate = line_base_translator(f);
    return r;
}

namespace {

template <class T>
std::vector<T> shear_fwd_impl(const std::vector<T>& x) {
    std::vector<T> r = x;
    r[1] = x[0] * x[0] + x[1];
    return r;
}

template <class T>
std::vector<T> shear_inv_impl(const std::vector<T>& x) {
    std::vector<T> r = x;
    r[1] = x[1] - x[0] * x[0];
    return r;
}

}  // namespace

Point shear_forward(const Point& x) { return shear_fwd_impl(x); }
Point shear_inverse(const Point& x) { return shear_inv_impl(x); }

TransportResult shear_group(int n) {
    if (n < 3)
        throw ConstructionError("shear group is defined for n >= 3");
    const auto [base, lebesgue] = base_real_n(n);

    TransportResult r;
    r.group.name = "shear:" + std::to_string(n);
    r.group.carrier = Carrier::product(n);
    r.group.op = [n](const Point& x, const Point& y) {
        if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
            throw ConstructionError("dimension mismatch in shear operation");
        Point a = shear_inverse(x);
        const Point b = shear_inverse(y);
        for (int i = 0; i < n; ++i)
            a[i] += b[i];
        return shear_forward(a);
    };
    r.group.identity = Point(n, 0.0);
    r.group.invert = [n](const Point& x) {
        if (static_cast<int>(x.size()) != n)
            throw ConstructionError("dimension mismatch in shear inversion");
        Point a = shear_inverse(x);
        for (double& v : a)
            v = -v;
        return shear_forward(a);
    };
    const GroupSpec base_copy = base;
    r.group.metric = [base_copy](const Point& x, const Point& y) {
        return base_copy.metric(shear_inverse(x), shear_inverse(y));
    };
    r.group.tags = base.tags;

    // f and f^-1 preserve Lebesgue measure, so the transported Haar measure
    // is Lebesgue itself.
    r.measure = lebesgue;
    r.measure.name = r.group.name + "-haar";
    r.provenance = "transport of (R^n,+) under the shear (x1, x1^2+x2, x3, ...)";
    return r;
}

std::function<std::vector<Dual>(const Point&, const std::vector<Dual>&)> shear_dual_op(int n) {
    if (n < 3)
        throw ConstructionError("shear group is defined for n >= 3");
    return [n](const Point& g, const std::vector<Dual>& x) {
        if (static_cast<int>(g.size()) != n || static_cast<int>(x.size()) != n)
            throw ConstructionError("dimension mismatch in shear operation");
        std::vector<Dual> gx(n);
        for (int i = 0; i < n; ++i)
            gx[i] = Dual{g[i]};
        std::vector<Dual> a = shear_inv_impl(gx);
        const std::vector<Dual> b = shear_inv_impl(x);
        for (int i = 0; i < n; ++i)
            a[i] = a[i] + b[i];
        return shear_fwd_impl(a);
    };
}

ChainCertificate one_dimensionality_certificate(
    const std::function<double(const Point&, const Point&)>& metric,
    const std::vector<Point>& points, const std::function<double(const Point&)>& sort_key,
    double tol) {
    const std::size_t n = points.size();
    ChainCertificate cert;
    if (n < 2) {
        cert.holds = true;
        for (std::size_t i = 0; i < n; ++i)
            cert.order.push_back(i);
        return cert;
    }

    auto chain_residual = [&](const std::vector<std::size_t>& order) {
        double sum = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k)
            sum += metric(points[order[k]], points[order[k + 1]]);
        return std::abs(metric(points[order.front()], points[order.back()]) - sum);
    };

    std::vector<std::vector<std::size_t>> candidates;
    if (sort_key) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return sort_key(points[a]) < sort_key(points[b]);
        });
        candidates.push_back(order);
        std::reverse(order.begin(), order.end());
        candidates.push_back(order);
    } else {
        if (n > 8)
            throw ConstructionError("exhaustive chain search is limited to 8 points");
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        do {
            candidates.push_back(order);
        } while (std::next_permutation(order.begin(), order.end()));
    }

    double best = kInf;
    for (const auto& order : candidates) {
        const double r = chain_residual(order);
        if (r <= tol) {
            cert.holds = true;
            cert.order = order;
            cert.residual = r;
            return cert;
        }
        best = std::min(best, r);
    }
    cert.holds = false;
    cert.residual = best;
    return cert;
}

}  // namespace haar
