#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <string>

#include "soergel/errors.hpp"

namespace soergel {

using Rational = boost::multiprecision::cpp_rational;

// Element of Q or of a single real quadratic extension Q(sqrt(d)), stored as
// a + b*sqrt(d) with d a squarefree nonnegative integer.  A value with b == 0
// is normalized to d == 0 and is compatible with any extension; combining two
// values over distinct nontrivial surds raises FieldMismatch.
class Scalar {
  public:
    Scalar() = default;
    Scalar(long v) : a_(v) {}
    Scalar(int v) : a_(v) {}
    explicit Scalar(Rational a) : a_(std::move(a)) {}
    Scalar(Rational a, Rational b, int d);

    static Scalar surd(int d) { return Scalar(0, 1, d); }
    static Scalar frac(long num, long den) { return Scalar(Rational(num, den)); }

    const Rational& rat_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    int surd_index() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return d_ == 0; }

    Scalar operator-() const { return Scalar(-a_, -b_, d_); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

    Scalar inverse() const;

    bool operator==(const Scalar& o) const {
        return a_ == o.a_ && b_ == o.b_ && d_ == o.d_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Total order usable as a container key (not the numeric order).
    bool operator<(const Scalar& o) const;

    std::string str() const;

  private:
    static int merge_surd(int x, int y);
    void normalize();

    Rational a_{0};
    Rational b_{0};
    int d_ = 0;
};

// cos(pi/m) for m in {2,3,4,5,6} and m = 0 standing for infinity.
// Throws UnsupportedOrder for any other m.
Scalar cos_pi_over(int m);

}  // namespace soergel
