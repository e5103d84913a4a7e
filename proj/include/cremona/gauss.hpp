#pragma once

#include <optional>
#include <string>

#include "cremona/rational.hpp"

namespace cremona {

// Element of Q(i): re + im*i with exact rational parts.
// Conjugation is the real structure used throughout; a value is "real"
// exactly when its imaginary part vanishes.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(Rational re) : re_(std::move(re)) {}
    GaussRational(int n) : re_(n) {}
    GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRational i() { return GaussRational(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    GaussRational conj() const { return GaussRational(re_, -im_); }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussRational operator-() const { return GaussRational(-re_, -im_); }
    GaussRational& operator+=(const GaussRational& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussRational& operator-=(const GaussRational& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GaussRational& operator*=(const GaussRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o) {
        if (o.is_zero()) throw std::domain_error("GaussRational: division by zero");
        Rational n = o.norm();
        GaussRational c = o.conj();
        *this *= c;
        re_ /= n;
        im_ /= n;
        return *this;
    }

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
    friend bool operator<(const GaussRational& a, const GaussRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    GaussRational inv() const {
        if (is_zero()) throw std::domain_error("GaussRational: inverse of zero");
        Rational n = norm();
        return GaussRational(re_ / n, -(im_ / n));
    }

    // "3/2", "i", "-2i", "1+i", "1/2-3i", "0"
    std::string str() const;

private:
    Rational re_, im_;
};

std::string gauss_to_string(const GaussRational& g);
GaussRational gauss_from_string(const std::string& s);

inline std::string GaussRational::str() const { return gauss_to_string(*this); }

// Square root inside Q(i), when it exists.
std::optional<GaussRational> gauss_sqrt(const GaussRational& g);

}  // namespace cremona
