#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "rootgeo/errors.hpp"
#include "rootgeo/quadext.hpp"
#include "rootgeo/rational.hpp"

namespace rootgeo {

// Dense univariate polynomial over an exact scalar ring T, stored lowest degree
// first with no trailing zero coefficient. The zero polynomial is the empty
// list and reports degree -1.
template <class T>
class Poly {
public:
    Poly() = default;
    Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }

    static Poly monomial(T coeff, std::size_t deg) {
        std::vector<T> c(deg + 1, T{});
        c[deg] = std::move(coeff);
        return Poly(std::move(c));
    }

    // The identity polynomial z.
    static Poly z() { return monomial(T(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const std::vector<T>& coefficients() const { return c_; }

    // Coefficient of z^i, zero beyond the degree.
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T{}; }

    const T& leading() const {
        if (c_.empty()) throw ZeroPolynomial("Poly: zero polynomial has no leading coefficient");
        return c_.back();
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T{});
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T{});
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return Poly(std::move(c));
    }

    Poly operator-() const {
        std::vector<T> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
        return Poly(std::move(c));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T{});
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }

    friend Poly operator*(const Poly& a, const T& s) { return a * constant(s); }
    friend Poly operator*(const T& s, const Poly& a) { return a * constant(s); }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(c));
    }

    // Horner evaluation in any scalar X the coefficients embed into.
    template <class X>
    X eval(const X& x) const {
        if (c_.empty()) return X{};
        X acc(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + X(c_[i]);
        return acc;
    }

    // Euclidean division; requires T to be a field and q nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly& p, const Poly& q) {
        if (q.is_zero()) throw ZeroPolynomial("Poly: division by zero polynomial");
        Poly rem = p;
        if (p.degree() < q.degree()) return {Poly(), rem};
        std::vector<T> quot(p.c_.size() - q.c_.size() + 1, T{});
        const T& lead = q.leading();
        while (!rem.is_zero() && rem.degree() >= q.degree()) {
            std::size_t shift = static_cast<std::size_t>(rem.degree() - q.degree());
            T factor = rem.leading() / lead;
            quot[shift] = factor;
            // rem -= factor * z^shift * q, done in place
            for (std::size_t i = 0; i < q.c_.size(); ++i)
                rem.c_[i + shift] = rem.c_[i + shift] - factor * q.c_[i];
            rem.c_.pop_back();  // leading term cancels exactly
            rem.trim();
        }
        return {Poly(std::move(quot)), std::move(rem)};
    }

    std::string str(const std::string& var = "z") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == T{}) c_.pop_back();
    }

    std::vector<T> c_;
};

using RatPoly = Poly<Rational>;

// Evaluation entry point: a Rational argument embeds as the radicand-0 element.
template <class T, class X>
X poly_eval(const Poly<T>& p, const X& x) {
    return p.template eval<X>(x);
}

// Exact quotient p / q; NonZeroRemainder when q does not divide p.
template <class T>
Poly<T> poly_divide_exact(const Poly<T>& p, const Poly<T>& q) {
    auto [quot, rem] = divmod(p, q);
    if (!rem.is_zero())
        throw NonZeroRemainder("Poly: exact division left remainder " + rem.str());
    return quot;
}

template <class T>
std::string Poly<T>::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == T{}) continue;
        if (!out.empty()) out += " + ";
        std::string coeff;
        if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, QuadExt>) {
            coeff = c_[i].str();
        } else {
            coeff = std::to_string(c_[i]);
        }
        if (i == 0) {
            out += coeff;
        } else {
            if (coeff != "1") out += "(" + coeff + ")*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

// --- exact helpers on rational polynomials ---------------------------------

// Positive rational c with p/c primitive (integer coefficients, gcd 1).
inline Rational content(const RatPoly& p) {
    if (p.is_zero()) return Rational(0);
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const Rational& c : p.coefficients()) {
        if (c.is_zero()) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
    }
    return Rational(num_gcd, den_lcm);
}

// p divided by its content: primitive integer coefficients, sign pattern kept.
inline RatPoly primitive_part(const RatPoly& p) {
    if (p.is_zero()) return p;
    Rational c = content(p);
    std::vector<Rational> out;
    out.reserve(p.coefficients().size());
    for (const Rational& a : p.coefficients()) out.push_back(a / c);
    return RatPoly(std::move(out));
}

// Primitive gcd with positive leading coefficient (pseudo-remainder sequence).
inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
    a = primitive_part(a);
    b = primitive_part(b);
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = std::move(b);
        b = primitive_part(r);
    }
    if (a.is_zero()) return a;
    return a.leading().sign() < 0 ? -a : a;
}

// Yun square-free decomposition: returns (factor, multiplicity) pairs with
// primitive square-free factors, pairwise coprime, whose weighted product is p
// up to a rational constant.
inline std::vector<std::pair<RatPoly, unsigned>> squarefree_decomposition(const RatPoly& p) {
    std::vector<std::pair<RatPoly, unsigned>> out;
    if (p.degree() < 1) return out;
    RatPoly dp = p.derivative();
    RatPoly g = poly_gcd(p, dp);
    if (g.degree() == 0) {
        out.emplace_back(primitive_part(p), 1);
        return out;
    }
    RatPoly b = poly_divide_exact(p, g);
    RatPoly c = poly_divide_exact(dp, g);
    RatPoly d = c - b.derivative();
    for (unsigned i = 1; b.degree() > 0; ++i) {
        RatPoly a = poly_gcd(b, d);
        if (a.degree() > 0) out.emplace_back(a, i);
        b = poly_divide_exact(b, a);
        c = poly_divide_exact(d, a);
        d = c - b.derivative();
    }
    return out;
}

// Product of the distinct irreducible factors, primitive.
inline RatPoly squarefree_part(const RatPoly& p) {
    if (p.degree() < 1) return primitive_part(p);
    RatPoly g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) return primitive_part(p);
    return primitive_part(poly_divide_exact(p, g));
}

// Multiplicity of the exact rational root x0 in p, by repeated exact division.
inline unsigned multiplicity_at(const RatPoly& p, const Rational& x0) {
    if (p.is_zero()) throw ZeroPolynomial("multiplicity_at: zero polynomial");
    RatPoly lin{-x0, Rational(1)};
    RatPoly cur = p;
    unsigned m = 0;
    while (!cur.is_zero() && poly_eval(cur, x0).is_zero()) {
        cur = poly_divide_exact(cur, lin);
        ++m;
    }
    return m;
}

}  // namespace rootgeo
