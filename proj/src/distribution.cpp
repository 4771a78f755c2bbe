#include "haar/distribution.hpp"

#include <cmath>
#include <sstream>

#include "haar/errors.hpp"
#include "haar/quadrature.hpp"

namespace haar {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kPi = 3.141592653589793;

double parse_number(const std::string& text, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConstructionError(std::string("malformed ") + what + " '" + text + "'");
    }
    if (used != text.size())
        throw ConstructionError(std::string("malformed ") + what + " '" + text + "'");
    return v;
}

}  // namespace

double numeric_quantile(const std::function<double(double)>& cdf,
                        const std::function<double(double)>& pdf, const Interval& support,
                        double u, double tol) {
    if (!(u > 0.0 && u < 1.0))
        throw DomainError("quantile argument must lie in (0,1)");

    // Bracket the root. Finite support endpoints bracket immediately;
    // infinite sides expand geometrically.
    double lo = support.lo, hi = support.hi;
    if (lo == -kInf) {
        lo = std::isfinite(hi) ? hi - 1.0 : -1.0;
        double step = 1.0;
        while (cdf(lo) > u) {
            lo -= step;
            step *= 2.0;
            if (step > 1e300)
                throw ConstructionError("quantile bracketing failed toward -inf");
        }
    }
    if (hi == kInf) {
        hi = std::isfinite(support.lo) ? support.lo + 1.0 : 1.0;
        if (hi <= lo)
            hi = lo + 1.0;
        double step = 1.0;
        while (cdf(hi) < u) {
            hi += step;
            step *= 2.0;
            if (step > 1e300)
                throw ConstructionError("quantile bracketing failed toward +inf");
        }
    }

    // Safeguarded Newton: bisection step whenever Newton leaves the bracket.
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = cdf(x) - u;
        if (std::abs(fx) <= tol)
            return x;
        if (fx > 0.0)
            hi = x;
        else
            lo = x;
        double nx = x;
        const double dx = pdf(x);
        if (dx > 0.0)
            nx = x - fx / dx;
        if (!(nx > lo && nx < hi))
            nx = 0.5 * (lo + hi);
        if (nx == x)
            nx = 0.5 * (lo + hi);
        x = nx;
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(x)))
            return x;  // bracket exhausted at double resolution
    }
    throw ConstructionError("quantile iteration did not converge");
}

double Distribution::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw DomainError("quantile argument must lie in (0,1)");
    if (quantile_closed)
        return quantile_closed(u);
    return numeric_quantile(cdf, pdf, support, u);
}

MeasureSpec Distribution::as_measure() const {
    MeasureSpec m;
    m.name = name;
    if (support.lo == -kInf && support.hi == kInf)
        m.carrier = Carrier::full_line();
    else if (support.lo == 0.0 && support.hi == kInf)
        m.carrier = Carrier::half_line();
    else if (support.lo == 0.0 && support.hi == 1.0)
        m.carrier = Carrier::circle();
    else
        m.carrier = Carrier::open_interval(support.lo, support.hi);
    m.density = pdf;
    m.density_desc = pdf_desc;
    m.mass_class = MassClass::Probability;
    return m;
}

Distribution uniform_01() {
    Distribution d;
    d.name = "uniform";
    d.support = {0.0, 1.0};
    d.closed_left = true;
    d.pdf = [](double x) { return (0.0 <= x && x < 1.0) ? 1.0 : 0.0; };
    d.cdf = [](double x) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x); };
    d.quantile_closed = [](double u) { return u; };
    d.pdf_desc = "1 on [0,1)";
    return d;
}

Distribution exponential_dist(double rate) {
    if (!(rate > 0.0))
        throw ConstructionError("exponential rate must be positive");
    Distribution d;
    std::ostringstream name;
    name << "exponential:" << rate;
    d.name = name.str();
    d.support = {0.0, kInf};
    d.closed_left = true;
    d.pdf = [rate](double x) { return x < 0.0 ? 0.0 : rate * std::exp(-rate * x); };
    d.cdf = [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); };
    d.quantile_closed = [rate](double u) { return -std::log1p(-u) / rate; };
    d.pdf_desc = "rate*exp(-rate*x)";
    return d;
}

Distribution normal_dist(double mean, double sd) {
    if (!(sd > 0.0))
        throw ConstructionError("normal sd must be positive");
    Distribution d;
    std::ostringstream name;
    name << "normal:" << mean << "," << sd;
    d.name = name.str();
    d.support = {-kInf, kInf};
    d.closed_left = false;
    const double inv_norm = 1.0 / (sd * std::sqrt(2.0 * kPi));
    d.pdf = [mean, sd, inv_norm](double x) {
        const double z = (x - mean) / sd;
        return inv_norm * std::exp(-0.5 * z * z);
    };
    d.cdf = [mean, sd](double x) {
        return 0.5 * std::erfc(-(x - mean) / (sd * kSqrt2));
    };
    d.pdf_desc = "Gaussian";
    return d;
}

Distribution cauchy_dist(double location, double scale) {
    if (!(scale > 0.0))
        throw ConstructionError("cauchy scale must be positive");
    Distribution d;
    std::ostringstream name;
    name << "cauchy:" << location << "," << scale;
    d.name = name.str();
    d.support = {-kInf, kInf};
    d.closed_left = false;
    d.pdf = [location, scale](double x) {
        const double z = (x - location) / scale;
        return 1.0 / (kPi * scale * (1.0 + z * z));
    };
    d.cdf = [location, scale](double x) {
        return 0.5 + std::atan((x - location) / scale) / kPi;
    };
    d.quantile_closed = [location, scale](double u) {
        return location + scale * std::tan(kPi * (u - 0.5));
    };
    d.pdf_desc = "Cauchy";
    return d;
}

Distribution beta_dist(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw ConstructionError("beta shape parameters must be positive");
    Distribution d;
    std::ostringstream name;
    name << "beta:" << alpha << "," << beta;
    d.name = name.str();
    d.support = {0.0, 1.0};
    d.closed_left = true;
    const double norm = 1.0 / std::beta(alpha, beta);
    auto pdf = [alpha, beta, norm](double x) {
        if (x <= 0.0 || x >= 1.0)
            return 0.0;
        return norm * std::pow(x, alpha - 1.0) * std::pow(1.0 - x, beta - 1.0);
    };
    d.pdf = pdf;
    // No closed form: the CDF integrates the density from the nearer
    // support endpoint. The upper tail integrates the mirrored density
    // (B(a,b) = B(b,a)) so the shape-<1 singularity always sits at 0,
    // where quadrature nodes keep full relative precision.
    auto mirrored = [alpha, beta, norm](double t) {
        if (t <= 0.0 || t >= 1.0)
            return 0.0;
        return norm * std::pow(t, beta - 1.0) * std::pow(1.0 - t, alpha - 1.0);
    };
    d.cdf = [pdf, mirrored](double x) {
        if (x <= 0.0)
            return 0.0;
        if (x >= 1.0)
            return 1.0;
        if (x <= 0.5)
            return quad(pdf, 0.0, x, 1e-13);
        return 1.0 - quad(mirrored, 0.0, 1.0 - x, 1e-13);
    };
    d.pdf_desc = "x^(a-1)*(1-x)^(b-1)/B(a,b)";
    return d;
}

Distribution parse_distribution(const std::string& selector) {
    const auto colon = selector.find(':');
    const std::string head = selector.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : selector.substr(colon + 1);

    auto split2 = [&](const char* what) -> std::pair<double, double> {
        const auto comma = args.find(',');
        if (comma == std::string::npos)
            throw ConstructionError(std::string(what) + " needs two comma-separated parameters");
        return {parse_number(args.substr(0, comma), what),
                parse_number(args.substr(comma + 1), what)};
    };

    if (head == "uniform")
        return uniform_01();
    if (head == "exponential")
        return exponential_dist(parse_number(args.empty() ? "1" : args, "rate"));
    if (head == "normal") {
        if (args.empty())
            return normal_dist(0.0, 1.0);
        auto [mean, sd] = split2("normal");
        return normal_dist(mean, sd);
    }
    if (head == "cauchy") {
        if (args.empty())
            return cauchy_dist(0.0, 1.0);
        auto [loc, scale] = split2("cauchy");
        return cauchy_dist(loc, scale);
    }
    if (head == "beta") {
        auto [a, b] = split2("beta");
        return beta_dist(a, b);
    }
    throw ConstructionError("unknown distribution '" + selector + "'");
}

}  // namespace haar
