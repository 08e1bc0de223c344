#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rootgeo/errors.hpp"
#include "rootgeo/poly.hpp"
#include "rootgeo/sturm.hpp"

namespace rootgeo {

struct ComplexRootApprox {
    double re = 0;
    double im = 0;
    double radius = 0;  // certified error bound around (re, im)
    unsigned multiplicity = 1;

    std::complex<double> value() const { return {re, im}; }
    bool is_real() const { return im == 0.0; }
};

// Simultaneous-iteration budget exhausted; best_radius reports how far the
// residual certificate got.
struct NoConvergence : std::runtime_error {
    NoConvergence(const std::string& msg, double best) : std::runtime_error(msg), best_radius(best) {}
    double best_radius;
};

namespace detail {

// Complex arithmetic over GMP floats. The coefficients of the generated
// polynomials grow far beyond what double evaluation can resolve near
// clustered roots, so the iteration runs at explicit bit precision instead.
struct BigComplex {
    mpf_class re, im;

    explicit BigComplex(mp_bitcnt_t prec) : re(0, prec), im(0, prec) {}
    BigComplex(mpf_class r, mpf_class i) : re(std::move(r)), im(std::move(i)) {}

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {mpf_class(a.re + b.re), mpf_class(a.im + b.im)};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {mpf_class(a.re - b.re), mpf_class(a.im - b.im)};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {mpf_class(a.re * b.re - a.im * b.im), mpf_class(a.re * b.im + a.im * b.re)};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        mpf_class n(b.re * b.re + b.im * b.im);
        return {mpf_class((a.re * b.re + a.im * b.im) / n),
                mpf_class((a.im * b.re - a.re * b.im) / n)};
    }

    bool is_zero() const { return re == 0 && im == 0; }

    mpf_class abs2() const { return mpf_class(re * re + im * im); }

    double abs_double() const {
        mpf_class a(abs2());
        mpf_sqrt(a.get_mpf_t(), a.get_mpf_t());
        return a.get_d();
    }

    std::complex<double> to_double() const { return {re.get_d(), im.get_d()}; }
};

inline std::vector<mpf_class> monic_mpf_coeffs(const RatPoly& p, mp_bitcnt_t prec) {
    std::vector<mpf_class> c;
    c.reserve(p.coefficients().size());
    const Rational& lead = p.leading();
    for (const Rational& a : p.coefficients()) {
        Rational m = a / lead;
        mpf_class num(m.num(), prec), den(m.den(), prec);
        c.emplace_back(num / den);
    }
    return c;
}

inline BigComplex horner(const std::vector<mpf_class>& c, const BigComplex& z) {
    BigComplex acc(mpf_class(c.back()), mpf_class(0, z.re.get_prec()));
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        acc = acc * z;
        acc.re += c[i];
    }
    return acc;
}

inline BigComplex horner_derivative(const std::vector<mpf_class>& c, const BigComplex& z) {
    mp_bitcnt_t prec = z.re.get_prec();
    BigComplex acc(prec);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        acc = acc * z;
        acc.re += c[i + 1] * static_cast<unsigned long>(i + 1);
    }
    return acc;
}

struct AberthResult {
    std::vector<std::complex<double>> roots;
    std::vector<double> radius;  // Weierstrass inclusion radii, deg * |p/prod|
    bool certified = false;
};

// Ehrlich-Aberth simultaneous iteration on a monic polynomial, seeded from a
// perturbed circle around the root centroid (warm-started when a previous
// round supplies approximants). Residual certificate: for monic p and
// pairwise distinct z_i, the disks centered z_i with radius
// deg * |p(z_i) / prod_{j != i} (z_i - z_j)| jointly cover the root set.
inline AberthResult aberth_round(const std::vector<mpf_class>& coeffs, mp_bitcnt_t prec,
                                 double tol, unsigned max_iter,
                                 const std::vector<std::complex<double>>* warm) {
    const std::size_t deg = coeffs.size() - 1;
    std::vector<BigComplex> z(deg, BigComplex(prec));

    double centroid = -coeffs[deg - 1].get_d() / static_cast<double>(deg);
    BigComplex c0(prec);
    c0.re = centroid;
    double radius = std::pow(horner(coeffs, c0).abs_double(), 1.0 / static_cast<double>(deg));
    if (!std::isfinite(radius) || radius <= 0) radius = 1.0;
    for (std::size_t i = 0; i < deg; ++i) {
        if (warm) {
            z[i].re = (*warm)[i].real();
            z[i].im = (*warm)[i].imag();
            continue;
        }
        double angle = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(deg) + 0.4;
        double r = radius * (1.0 + 0.05 * std::cos(7.0 * angle));
        z[i].re = centroid + r * std::cos(angle);
        z[i].im = r * std::sin(angle);
    }

    AberthResult res;
    res.roots.resize(deg);
    res.radius.assign(deg, std::numeric_limits<double>::infinity());

    auto residual_pass = [&]() {
        double worst = 0;
        for (std::size_t i = 0; i < deg; ++i) {
            BigComplex w = horner(coeffs, z[i]);
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) w = w / (z[i] - z[j]);
            res.radius[i] = static_cast<double>(deg) * w.abs_double();
            worst = std::max(worst, res.radius[i]);
        }
        return worst;
    };

    double step_scale = radius;
    for (unsigned iter = 0; iter < max_iter; ++iter) {
        double worst_rel_step = 0;
        for (std::size_t i = 0; i < deg; ++i) {
            BigComplex pv = horner(coeffs, z[i]);
            BigComplex dv = horner_derivative(coeffs, z[i]);
            BigComplex newton = dv.is_zero() ? BigComplex(prec) : pv / dv;
            BigComplex sum(prec);
            BigComplex one(prec);
            one.re = 1;
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) sum = sum + one / (z[i] - z[j]);
            BigComplex denom = one - newton * sum;
            BigComplex step = denom.is_zero() ? newton : newton / denom;
            double step_mag = step.abs_double();
            if (!std::isfinite(step_mag)) {
                step = BigComplex(prec);
                step.re = 0.1 * step_scale;
                step.im = 0.05 * step_scale;
                step_mag = step.abs_double();
            }
            z[i] = z[i] - step;
            worst_rel_step = std::max(worst_rel_step, step_mag / (1.0 + z[i].abs_double()));
        }
        // the residual pass costs a full sweep, so gate it on step stagnation
        if (worst_rel_step < 1e-3 || iter + 1 == max_iter) {
            double worst = residual_pass();
            for (std::size_t i = 0; i < deg; ++i) res.roots[i] = z[i].to_double();
            if (worst <= tol) {
                res.certified = true;
                return res;
            }
            // stagnated at this precision: report back for a retry higher up
            if (worst_rel_step < std::ldexp(1.0, -static_cast<int>(prec) / 2)) return res;
        }
    }
    for (std::size_t i = 0; i < deg; ++i) res.roots[i] = z[i].to_double();
    return res;
}

inline AberthResult aberth(const RatPoly& monic_src, double tol, unsigned max_iter) {
    std::size_t coeff_bits = 0;
    for (const Rational& c : monic_src.coefficients()) {
        coeff_bits = std::max(coeff_bits, mpz_sizeinbase(c.num().get_mpz_t(), 2));
        coeff_bits = std::max(coeff_bits, mpz_sizeinbase(c.den().get_mpz_t(), 2));
    }
    // enough headroom that sum_k |c_k| |z|^k stays resolvable at the roots
    mp_bitcnt_t prec = std::max<mp_bitcnt_t>(
        128, coeff_bits + 2 * static_cast<std::size_t>(monic_src.degree()) + 64);

    AberthResult best;
    const std::vector<std::complex<double>>* warm = nullptr;
    for (int attempt = 0; attempt < 4; ++attempt) {
        auto coeffs = monic_mpf_coeffs(monic_src, prec);
        AberthResult r = aberth_round(coeffs, prec, tol, std::min(max_iter, 250u), warm);
        if (r.certified) return r;
        best = std::move(r);
        warm = &best.roots;
        prec *= 2;
    }
    double worst = 0;
    for (double w : best.radius) worst = std::max(worst, w);
    throw NoConvergence("complex_roots: certificate not reached, residual radius " +
                            std::to_string(worst),
                        worst);
}

// Snap near-real roots onto the axis and average the rest into exactly
// conjugate pairs.
inline void enforce_conjugate_symmetry(std::vector<ComplexRootApprox>& roots) {
    std::vector<std::size_t> complex_idx;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (std::abs(roots[i].im) <= roots[i].radius)
            roots[i].im = 0.0;
        else
            complex_idx.push_back(i);
    }
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i : complex_idx) {
        if (used[i]) continue;
        std::size_t mate = i;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j : complex_idx) {
            if (j == i || used[j]) continue;
            double d = std::abs(roots[i].value() - std::conj(roots[j].value()));
            if (d < best) {
                best = d;
                mate = j;
            }
        }
        if (mate == i) {  // unpaired leftover: parity forces it onto the axis
            roots[i].im = 0.0;
            continue;
        }
        used[i] = used[mate] = true;
        std::complex<double> avg = (roots[i].value() + std::conj(roots[mate].value())) / 2.0;
        double r = std::max(roots[i].radius, roots[mate].radius);
        roots[i] = {avg.real(), avg.imag(), r, roots[i].multiplicity};
        roots[mate] = {avg.real(), -avg.imag(), r, roots[mate].multiplicity};
    }
}

}  // namespace detail

// All complex roots of p with multiplicity, approximated by Ehrlich-Aberth
// simultaneous iteration in adaptive extended precision. Multiple roots are
// handled exactly: the square-free decomposition splits p first, so the
// iteration only ever sees simple roots.
inline std::vector<ComplexRootApprox> complex_roots(const RatPoly& p, double tol = 1e-10,
                                                    unsigned max_iter = 1000) {
    if (p.degree() < 1) throw std::invalid_argument("complex_roots: degree must be >= 1");
    if (tol <= 0) throw std::invalid_argument("complex_roots: tol must be > 0");
    std::vector<ComplexRootApprox> out;
    for (auto& [factor, mult] : squarefree_decomposition(p)) {
        if (factor.degree() < 1) continue;
        if (factor.degree() == 1) {
            Rational root = -factor.coeff(0) / factor.coeff(1);
            out.push_back({root.to_double(), 0.0, 0.0, mult});
            continue;
        }
        auto st = detail::aberth(factor, tol, max_iter);
        std::vector<ComplexRootApprox> approx(st.roots.size());
        for (std::size_t i = 0; i < st.roots.size(); ++i)
            approx[i] = {st.roots[i].real(), st.roots[i].imag(), st.radius[i], mult};
        detail::enforce_conjugate_symmetry(approx);
        for (auto& r : approx) out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](const ComplexRootApprox& a, const ComplexRootApprox& b) {
        return a.re < b.re || (a.re == b.re && a.im < b.im);
    });
    return out;
}

}  // namespace rootgeo
