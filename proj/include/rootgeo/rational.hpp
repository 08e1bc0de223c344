#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace rootgeo {

// Exact rational number. Invariants: lowest terms, denominator > 0, zero is 0/1.
// Immutable value type; all operations are pure and safe to share across threads.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: integers embed implicitly

    Rational(long num, long den) : v_(num, den) { canonicalize_checked(); }

    Rational(mpz_class num, mpz_class den) : v_(std::move(num), std::move(den)) {
        canonicalize_checked();
    }

    explicit Rational(mpq_class q) : v_(std::move(q)) { canonicalize_checked(); }

    // Accepts "p/q", an integer literal, or a decimal literal ("0.239" -> 239/1000).
    static Rational parse(std::string_view text);

    // Exact value of a finite double (binary fraction).
    static Rational from_double(double d) {
        if (!std::isfinite(d)) throw std::domain_error("Rational: non-finite double");
        return Rational(mpq_class(d));
    }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    mpz_class floor() const {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    mpz_class ceil() const {
        mpz_class q;
        mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    Rational pow(unsigned long e) const {
        mpq_class r;
        mpz_pow_ui(r.get_num_mpz_t(), v_.get_num_mpz_t(), e);
        mpz_pow_ui(r.get_den_mpz_t(), v_.get_den_mpz_t(), e);
        return Rational(std::move(r));  // powers of canonical values stay canonical
    }

    double to_double() const { return v_.get_d(); }

    std::string str() const { return v_.get_str(); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ + b.v_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ - b.v_));
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ * b.v_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(mpq_class(a.v_ / b.v_));
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    void canonicalize_checked() {
        if (v_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }

    mpq_class v_;
};

inline Rational Rational::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
        return s;
    };
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("Rational: empty string");

    auto parse_int = [](std::string_view t) -> mpz_class {
        if (t.empty()) throw std::invalid_argument("Rational: bad integer");
        bool plus = t[0] == '+';
        std::size_t i = (plus || t[0] == '-') ? 1 : 0;
        if (i == t.size()) throw std::invalid_argument("Rational: bad integer");
        for (std::size_t k = i; k < t.size(); ++k)
            if (t[k] < '0' || t[k] > '9') throw std::invalid_argument("Rational: bad digit");
        return mpz_class(std::string(plus ? t.substr(1) : t), 10);  // mpz_set_str takes no '+'
    };

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_int(trim(s.substr(0, slash)));
        mpz_class den = parse_int(trim(s.substr(slash + 1)));
        return Rational(std::move(num), std::move(den));
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view head = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        bool neg = !head.empty() && head[0] == '-';
        if (!head.empty() && (head[0] == '+' || head[0] == '-')) head.remove_prefix(1);
        if (frac.empty()) throw std::invalid_argument("Rational: bad decimal");
        for (char ch : frac)
            if (ch < '0' || ch > '9') throw std::invalid_argument("Rational: bad digit");
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        mpz_class whole = head.empty() ? mpz_class(0) : parse_int(head);
        mpz_class num = whole * den + mpz_class(std::string(frac), 10);
        if (neg) num = -num;
        return Rational(std::move(num), std::move(den));
    }
    return Rational(parse_int(s), mpz_class(1));
}

inline Rational abs(const Rational& r) { return r.abs(); }

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace rootgeo
