#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

#include "soergel/errors.hpp"

namespace soergel {

// Integer Laurent polynomial in v.  Coefficients are 64-bit; every quantity
// that lands here at desk scale (KL coefficients, graded dimensions, ...) is
// tiny.  No zero coefficients are stored.
class LaurentPoly {
  public:
    LaurentPoly() = default;
    LaurentPoly(long long c) {
        if (c != 0) c_[0] = c;
    }
    static LaurentPoly v_power(int k, long long c = 1) {
        LaurentPoly p;
        if (c != 0) p.c_[k] = c;
        return p;
    }

    const std::map<int, long long>& coeffs() const { return c_; }
    long long coeff(int k) const {
        auto it = c_.find(k);
        return it == c_.end() ? 0 : it->second;
    }
    bool is_zero() const { return c_.empty(); }

    void set(int k, long long c) {
        if (c == 0)
            c_.erase(k);
        else
            c_[k] = c;
    }
    void add(int k, long long c) { set(k, coeff(k) + c); }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (auto& [k, c] : o.c_) add(k, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (auto& [k, c] : o.c_) add(k, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
    friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (auto& [k, c] : c_) r.c_[k] = -c;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y) {
        LaurentPoly r;
        for (auto& [k1, c1] : x.c_)
            for (auto& [k2, c2] : y.c_) r.add(k1 + k2, c1 * c2);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    bool operator==(const LaurentPoly& o) const { return c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // v -> v^-1
    LaurentPoly bar() const {
        LaurentPoly r;
        for (auto& [k, c] : c_) r.c_[-k] = c;
        return r;
    }
    // multiply by v^k
    LaurentPoly shifted(int k) const {
        LaurentPoly r;
        for (auto& [e, c] : c_) r.c_[e + k] = c;
        return r;
    }

    bool bar_symmetric() const { return bar() == *this; }
    bool nonnegative() const {
        for (auto& [k, c] : c_)
            if (c < 0) return false;
        return true;
    }
    // support contained in v^1, v^2, ...
    bool in_positive_degrees() const {
        return c_.empty() || c_.begin()->first >= 1;
    }
    bool in_nonnegative_degrees() const {
        return c_.empty() || c_.begin()->first >= 0;
    }
    int min_degree() const { return c_.empty() ? 0 : c_.begin()->first; }
    int max_degree() const { return c_.empty() ? 0 : c_.rbegin()->first; }

    long long evaluate_at_one() const {
        long long s = 0;
        for (auto& [k, c] : c_) s += c;
        return s;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto& [k, c] : c_) {
            if (!first) out << (c >= 0 ? "+" : "");
            first = false;
            if (k == 0) {
                out << c;
            } else {
                if (c == -1)
                    out << "-";
                else if (c != 1)
                    out << c << "*";
                out << "v";
                if (k != 1) out << "^" << k;
            }
        }
        return out.str();
    }

  private:
    std::map<int, long long> c_;
};

// Polynomial in q with integer coefficients, used only for the classical
// normalization P_{x,w}(q) of the KL polynomials.
using QPoly = std::map<int, long long>;

// Recover P(q) from h = v^{l_diff} P(v^{-2}).  Throws MalformedH when the
// exponent support of h is incompatible with that identity.
inline QPoly to_P(const LaurentPoly& h, int l_diff) {
    QPoly p;
    for (auto& [k, c] : h.coeffs()) {
        int twice_q = l_diff - k;
        if (twice_q < 0 || twice_q % 2 != 0)
            throw MalformedH("exponent " + std::to_string(k) +
                             " incompatible with length difference " + std::to_string(l_diff));
        p[twice_q / 2] = c;
    }
    return p;
}

inline std::string qpoly_str(const QPoly& p) {
    if (p.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [k, c] : p) {
        if (!first) out << (c >= 0 ? "+" : "");
        first = false;
        if (k == 0) {
            out << c;
        } else {
            if (c == -1)
                out << "-";
            else if (c != 1)
                out << c << "*";
            out << "q";
            if (k != 1) out << "^" << k;
        }
    }
    return out.str();
}

}  // namespace soergel
