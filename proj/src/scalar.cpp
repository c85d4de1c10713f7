#include "soergel/scalar.hpp"

#include <sstream>

namespace soergel {

Scalar::Scalar(Rational a, Rational b, int d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    normalize();
}

void Scalar::normalize() {
    if (b_ == 0)
        d_ = 0;
    else if (d_ == 0)
        throw FieldMismatch("surd part requires a nontrivial extension index");
}

int Scalar::merge_surd(int x, int y) {
    if (x == 0) return y;
    if (y == 0) return x;
    if (x != y)
        throw FieldMismatch("mixing sqrt(" + std::to_string(x) + ") with sqrt(" +
                            std::to_string(y) + ")");
    return x;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    d_ = merge_surd(d_, o.d_);
    a_ += o.a_;
    b_ += o.b_;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    d_ = merge_surd(d_, o.d_);
    a_ -= o.a_;
    b_ -= o.b_;
    normalize();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    int d = merge_surd(d_, o.d_);
    // (a + b s)(c + e s) = ac + be d + (ae + bc) s
    Rational a = a_ * o.a_ + b_ * o.b_ * d;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    d_ = d;
    normalize();
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("division by zero scalar");
    if (d_ == 0) return Scalar(Rational(1) / a_);
    // (a + b s)^-1 = (a - b s) / (a^2 - d b^2); the norm is nonzero since
    // sqrt(d) is irrational.
    Rational norm = a_ * a_ - Rational(d_) * b_ * b_;
    return Scalar(a_ / norm, -b_ / norm, d_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool Scalar::operator<(const Scalar& o) const {
    if (d_ != o.d_) return d_ < o.d_;
    if (a_ != o.a_) return a_ < o.a_;
    return b_ < o.b_;
}

std::string Scalar::str() const {
    std::ostringstream out;
    if (d_ == 0) {
        out << a_;
    } else {
        out << a_ << (b_ < 0 ? "-" : "+") << boost::multiprecision::abs(b_) << "*sqrt("
            << d_ << ")";
    }
    return out.str();
}

Scalar cos_pi_over(int m) {
    switch (m) {
        case 2: return Scalar(0);
        case 3: return Scalar::frac(1, 2);
        case 4: return Scalar(Rational(0), Rational(1, 2), 2);
        case 5: return Scalar(Rational(1, 4), Rational(1, 4), 5);
        case 6: return Scalar(Rational(0), Rational(1, 2), 3);
        case 0: return Scalar(1);  // m = infinity
        default:
            throw UnsupportedOrder("cos(pi/m) unsupported for m = " + std::to_string(m));
    }
}

}  // namespace soergel
