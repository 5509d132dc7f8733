#include "branescope/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "branescope/errors.hpp"

namespace branescope::gauge {

namespace {

double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return s;
}

// Uniform double in [-1, 1), deterministic across platforms.
double unit_draw(std::mt19937_64& gen) {
    return 2.0 * ((gen() >> 11) * 0x1.0p-53) - 1.0;
}

cplx cplx_draw(std::mt19937_64& gen) {
    double re = unit_draw(gen);
    double im = unit_draw(gen);
    return {re, im};
}

// Coefficients of eq restricted to the line p + t*q, degree-indexed.
std::vector<cplx> line_restriction(const HypersurfaceEquation& eq, const std::vector<cplx>& p,
                                   const std::vector<cplx>& q) {
    std::vector<cplx> acc(eq.degree + 1, cplx(0.0, 0.0));
    for (const auto& term : eq.terms) {
        std::vector<cplx> poly{term.coeff};
        for (std::size_t var = 0; var < eq.vars; ++var) {
            for (unsigned e = 0; e < term.exps[var]; ++e) {
                // multiply by (p_var + t q_var)
                std::vector<cplx> next(poly.size() + 1, cplx(0.0, 0.0));
                for (std::size_t i = 0; i < poly.size(); ++i) {
                    next[i] += poly[i] * p[var];
                    next[i + 1] += poly[i] * q[var];
                }
                poly = std::move(next);
            }
        }
        for (std::size_t i = 0; i < poly.size(); ++i) acc[i] += poly[i];
    }
    return acc;
}

// Simultaneous (Weierstrass) iteration; returns false when it fails to
// converge, which counts as a dissenting trial.
bool find_roots(std::vector<cplx> coeffs, std::vector<cplx>& roots) {
    std::size_t deg = coeffs.size() - 1;
    cplx lead = coeffs[deg];
    for (auto& c : coeffs) c /= lead;

    roots.resize(deg);
    cplx base(0.4, 0.9);
    cplx p(1.0, 0.0);
    for (std::size_t j = 0; j < deg; ++j) {
        p *= base;
        roots[j] = p;
    }
    auto eval = [&](cplx z) {
        cplx r(0.0, 0.0);
        for (std::size_t i = coeffs.size(); i-- > 0;) r = r * z + coeffs[i];
        return r;
    };
    // Rounding envelope of Horner evaluation at |z|; a value inside it is an
    // exact root of a polynomial within working precision of this one.
    auto noise = [&](double x) {
        double s = 0.0, p = 1.0;
        for (const cplx& c : coeffs) {
            s += std::abs(c) * p;
            p *= x;
        }
        return 1e-12 * s;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double shift = 0.0;
        for (std::size_t j = 0; j < deg; ++j) {
            cplx denom(1.0, 0.0);
            for (std::size_t k = 0; k < deg; ++k)
                if (k != j) denom *= roots[j] - roots[k];
            if (std::abs(denom) < 1e-300) denom = cplx(1e-300, 0.0);
            cplx delta = eval(roots[j]) / denom;
            roots[j] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-13) return true;
        // multiple roots stall the shift at the noise floor; accept once every
        // residual sits inside the evaluation envelope
        bool settled = true;
        for (std::size_t j = 0; j < deg && settled; ++j)
            settled = std::abs(eval(roots[j])) <= noise(std::abs(roots[j]));
        if (settled) return true;
    }
    return false;
}

} // namespace

ConnectionSample connection_form_at(const AffinePoint& p) {
    double denom = 1.0 + norm2(p.v);
    ConnectionSample s;
    s.alpha.resize(p.v.size());
    for (std::size_t i = 0; i < p.v.size(); ++i) s.alpha[i] = -std::conj(p.v[i]) / denom;
    return s;
}

CurvatureSample curvature_form_at(const AffinePoint& p) {
    double denom = 1.0 + norm2(p.v);
    CurvatureSample s;
    s.f.assign(p.v.size(), std::vector<cplx>(p.v.size()));
    for (std::size_t i = 0; i < p.v.size(); ++i)
        for (std::size_t j = 0; j < p.v.size(); ++j) {
            cplx num = -std::conj(p.v[i]) * p.v[j];
            if (i == j) num += denom;
            s.f[i][j] = num / (denom * denom);
        }
    return s;
}

AffinePoint to_chart(const std::vector<cplx>& z, std::size_t chart) {
    if (chart >= z.size()) throw std::invalid_argument("chart index out of range");
    if (std::abs(z[chart]) == 0.0)
        throw std::invalid_argument("projective point does not lie in the chart");
    AffinePoint p;
    p.chart = chart;
    for (std::size_t i = 0; i < z.size(); ++i)
        if (i != chart) p.v.push_back(z[i] / z[chart]);
    return p;
}

std::vector<cplx> chart_velocity(const std::vector<cplx>& z, const std::vector<cplx>& w,
                                 std::size_t chart) {
    std::vector<cplx> dv;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i == chart) continue;
        // d/dt (z_i + t w_i)/(z_k + t w_k) at t = 0
        dv.push_back((w[i] * z[chart] - z[i] * w[chart]) / (z[chart] * z[chart]));
    }
    return dv;
}

cplx pair_connection(const ConnectionSample& a, const std::vector<cplx>& dv) {
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.alpha.size(); ++i) s += a.alpha[i] * dv[i];
    return s;
}

cplx pair_curvature(const CurvatureSample& f, const std::vector<cplx>& dv,
                    const std::vector<cplx>& dw) {
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < f.f.size(); ++i)
        for (std::size_t j = 0; j < f.f.size(); ++j) s += f.f[i][j] * dv[i] * std::conj(dw[j]);
    return s;
}

cplx transition_term(const std::vector<cplx>& z, const std::vector<cplx>& w, std::size_t k,
                     std::size_t l) {
    return w[k] / z[k] - w[l] / z[l];
}

long long degree_probe(const HypersurfaceEquation& eq, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("degree probe needs at least one trial");
    if (eq.terms.empty()) throw std::invalid_argument("hypersurface equation is zero");
    std::mt19937_64 gen(seed);

    std::map<long long, std::size_t> counts;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<cplx> p(eq.vars), q(eq.vars);
        for (auto& x : p) x = cplx_draw(gen);
        for (auto& x : q) x = cplx_draw(gen);

        std::vector<cplx> poly = line_restriction(eq, p, q);
        double top = 0.0;
        for (const cplx& c : poly) top = std::max(top, std::abs(c));
        while (poly.size() > 1 && std::abs(poly.back()) <= 1e-12 * top) poly.pop_back();

        long long count = -1; // dissent marker
        std::vector<cplx> roots;
        if (poly.size() > 1 && find_roots(poly, roots))
            count = static_cast<long long>(roots.size());
        ++counts[count];
    }

    long long mode = -1;
    std::size_t best = 0;
    for (const auto& [value, freq] : counts)
        if (freq > best || (freq == best && value > mode)) {
            mode = value;
            best = freq;
        }
    if (mode < 0 || best * 20 < trials * 19)
        throw NumericalInstability("root counts disagree across more than 5% of the lines");
    return mode;
}

YmResult ym_value(const HypersurfaceEquation& eq, std::size_t ambient_dim, std::size_t trials,
                  std::uint64_t seed) {
    if (eq.vars != ambient_dim + 1)
        throw std::invalid_argument("variable count does not match the ambient dimension");
    YmResult out;
    constexpr double pi = 3.141592653589793238462643383279502884;
    if (ambient_dim == 2) {
        out.probe = degree_probe(eq, trials, seed);
        out.probe_checked = true;
        out.degree = out.probe;
    } else {
        out.degree = eq.degree;
    }
    out.value = 4.0 * pi * pi * static_cast<double>(out.degree);
    return out;
}

} // namespace branescope::gauge
