#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "rootgeo/errors.hpp"
#include "rootgeo/rational.hpp"

namespace rootgeo {

namespace detail {

// Strips the even part of every small prime factor: n = s^2 * m with m free of
// squares of primes below the trial bound; a remaining perfect-square cofactor
// is folded in as well. Returns s. Radicands seen here come from parameter
// discriminants, so the trial bound covers them completely at desk scale.
inline mpz_class extract_square_part(mpz_class& n) {
    static const std::array<unsigned long, 168> primes = [] {
        std::array<unsigned long, 168> ps{};
        std::size_t k = 0;
        for (unsigned long cand = 2; cand < 1000; ++cand) {
            bool prime = true;
            for (unsigned long d = 2; d * d <= cand; ++d)
                if (cand % d == 0) { prime = false; break; }
            if (prime) ps[k++] = cand;
        }
        return ps;
    }();

    mpz_class s = 1;
    for (unsigned long p : primes) {
        if (n < mpz_class(p) * p) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p * p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p * p);
            s *= p;
        }
    }
    if (n > 1 && mpz_perfect_square_p(n.get_mpz_t())) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        s *= r;
        n = 1;
    }
    return s;
}

}  // namespace detail

// Element q0 + q1*sqrt(radicand) of a real quadratic extension of the rationals.
//
// Canonical form: the radicand is a square-reduced nonnegative integer, and it is
// zero exactly when the element is rational (perfect-square radicands fold into
// the rational part). Sign and order are decided exactly, never in floating
// point; ordering works across distinct radicands, arithmetic does not.
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(const Rational& r) : q0_(r) {}  // NOLINT: rationals embed implicitly
    QuadExt(long n) : q0_(n) {}             // NOLINT

    QuadExt(Rational q0, Rational q1, Rational radicand)
        : q0_(std::move(q0)), q1_(std::move(q1)), rad_(std::move(radicand)) {
        normalize();
    }

    static QuadExt sqrt(const Rational& r) { return QuadExt(Rational(0), Rational(1), r); }

    const Rational& q0() const { return q0_; }
    const Rational& q1() const { return q1_; }
    const Rational& radicand() const { return rad_; }

    bool is_rational() const { return q1_.is_zero(); }

    // The rational value; only valid when is_rational().
    const Rational& rational() const {
        if (!is_rational()) throw std::logic_error("QuadExt: not a rational value");
        return q0_;
    }

    bool is_zero() const { return q0_.is_zero() && q1_.is_zero(); }

    // Exact sign of q0 + q1*sqrt(rad), by comparing q0^2 against q1^2*rad.
    int sign() const {
        if (q1_.is_zero()) return q0_.sign();
        if (q0_.is_zero()) return q1_.sign();
        int s0 = q0_.sign(), s1 = q1_.sign();
        if (s0 == s1) return s0;
        int c = (q0_ * q0_ - q1_ * q1_ * rad_).sign();
        if (c == 0) return 0;  // unreachable for square-reduced radicands
        return c > 0 ? s0 : s1;
    }

    // Exact three-way comparison; valid even when a and b live over distinct
    // radicands (sign of a difference of two square roots is decidable by
    // isolating one root and squaring, with sign bookkeeping).
    static int compare(const QuadExt& a, const QuadExt& b) {
        if (a.is_rational() || b.is_rational() || a.rad_ == b.rad_) {
            QuadExt d = a;
            d.sub_same_field(b);
            return d.sign();
        }
        // sign of (a.q0 - b.q0 + a.q1*sqrt(r)) - b.q1*sqrt(s)
        QuadExt lhs(a.q0_ - b.q0_, a.q1_, a.rad_);
        int sl = lhs.sign();
        int sr = b.q1_.sign();
        if (sl != sr) return sl < sr ? -1 : 1;
        if (sl == 0) return 0;
        QuadExt diff_sq = lhs * lhs;
        diff_sq.sub_same_field(QuadExt(b.q1_ * b.q1_ * b.rad_));
        int d = diff_sq.sign();
        return sl > 0 ? d : -d;
    }

    friend QuadExt operator+(QuadExt a, const QuadExt& b) {
        a.reconcile(b);
        a.q0_ += b.q0_;
        a.q1_ += b.q1_;
        a.normalize();
        return a;
    }
    friend QuadExt operator-(QuadExt a, const QuadExt& b) {
        a.reconcile(b);
        a.sub_same_field(b);
        return a;
    }
    friend QuadExt operator*(QuadExt a, const QuadExt& b) {
        a.reconcile(b);
        Rational p0 = a.q0_ * b.q0_ + a.q1_ * b.q1_ * a.rad_;
        Rational p1 = a.q0_ * b.q1_ + a.q1_ * b.q0_;
        a.q0_ = std::move(p0);
        a.q1_ = std::move(p1);
        a.normalize();
        return a;
    }
    friend QuadExt operator/(QuadExt a, const QuadExt& b) {
        a.reconcile(b);
        Rational nrm = b.q0_ * b.q0_ - b.q1_ * b.q1_ * a.rad_;
        if (nrm.is_zero()) {
            if (b.is_zero()) throw std::domain_error("QuadExt: division by zero");
            throw std::logic_error("QuadExt: radicand not square-reduced");
        }
        QuadExt conj(b.q0_ / nrm, -b.q1_ / nrm, a.rad_);
        return a * conj;
    }
    QuadExt operator-() const {
        QuadExt r = *this;
        r.q0_ = -r.q0_;
        r.q1_ = -r.q1_;
        return r;
    }
    QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
    QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
    QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
    QuadExt& operator/=(const QuadExt& o) { return *this = *this / o; }

    QuadExt pow(unsigned long e) const {
        QuadExt acc(Rational(1));
        QuadExt base = *this;
        for (; e; e >>= 1) {
            if (e & 1) acc = acc * base;
            if (e > 1) base = base * base;
        }
        return acc;
    }

    friend bool operator==(const QuadExt& a, const QuadExt& b) { return compare(a, b) == 0; }
    friend bool operator!=(const QuadExt& a, const QuadExt& b) { return compare(a, b) != 0; }
    friend bool operator<(const QuadExt& a, const QuadExt& b) { return compare(a, b) < 0; }
    friend bool operator<=(const QuadExt& a, const QuadExt& b) { return compare(a, b) <= 0; }
    friend bool operator>(const QuadExt& a, const QuadExt& b) { return compare(a, b) > 0; }
    friend bool operator>=(const QuadExt& a, const QuadExt& b) { return compare(a, b) >= 0; }

    double to_double() const {
        return q0_.to_double() + q1_.to_double() * std::sqrt(rad_.to_double());
    }

    // Least integer >= value, decided exactly.
    mpz_class ceil() const {
        if (is_rational()) return q0_.ceil();
        mpz_class k(static_cast<long>(std::ceil(to_double())));
        while (compare(*this, QuadExt(Rational(k, 1))) > 0) ++k;
        while (compare(QuadExt(Rational(k - 1, 1)), *this) >= 0) --k;
        return k;
    }

    std::string str() const {
        if (is_rational()) return q0_.str();
        std::string out;
        if (!q0_.is_zero()) out += q0_.str() + " + ";
        out += q1_.str() + "*sqrt(" + rad_.str() + ")";
        return out;
    }

private:
    void normalize() {
        if (rad_.sign() < 0) throw Undefined("QuadExt: negative radicand");
        if (q1_.is_zero() || rad_.is_zero()) {
            q1_ = Rational(0);
            rad_ = Rational(0);
            return;
        }
        // sqrt(p/q) = sqrt(p*q)/q, then pull squares out of the integer radicand
        mpz_class p = rad_.num(), q = rad_.den();
        if (q != 1) {
            q1_ /= Rational(q, 1);
            p *= q;
        }
        mpz_class s = detail::extract_square_part(p);
        if (s != 1) q1_ *= Rational(s, 1);
        if (p == 1) {
            q0_ += q1_;
            q1_ = Rational(0);
            rad_ = Rational(0);
        } else {
            rad_ = Rational(std::move(p), mpz_class(1));
        }
    }

    // In-place subtraction assuming compatible fields (callers reconcile first).
    void sub_same_field(const QuadExt& o) {
        if (is_rational()) rad_ = o.rad_;
        q0_ -= o.q0_;
        q1_ -= o.q1_;
        normalize();
    }

    // Ensures *this and o share a radicand, widening rational embeddings.
    void reconcile(const QuadExt& o) {
        if (o.is_rational()) return;
        if (is_rational()) {
            rad_ = o.rad_;
            return;
        }
        if (rad_ != o.rad_)
            throw MixedRadicand("QuadExt: arithmetic across sqrt(" + rad_.str() +
                                ") and sqrt(" + o.rad_.str() + ")");
    }

    Rational q0_{0};
    Rational q1_{0};
    Rational rad_{0};
};

// Sign of a quadratic-field element; the exact primitive behind every
// inequality check in this library.
inline int quadext_sign(const QuadExt& x) { return x.sign(); }

}  // namespace rootgeo
