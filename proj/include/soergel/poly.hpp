#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "soergel/scalar.hpp"

namespace soergel {

// Exponent vector packed 8 bits per variable; supports rank <= 8 and
// individual exponents < 256, far beyond anything produced at desk scale.
using Mono = std::uint64_t;

inline int mono_exp(Mono m, int var) { return int((m >> (8 * var)) & 0xff); }
inline Mono mono_of_var(int var, int e = 1) { return Mono(e) << (8 * var); }
inline int mono_total_exp(Mono m) {
    int s = 0;
    while (m) {
        s += int(m & 0xff);
        m >>= 8;
    }
    return s;
}

// Sparse multivariate polynomial over Scalar.  Each variable has degree 2, so
// the degree of a monomial is twice its total exponent.  No zero coefficients
// are stored.
class Poly {
  public:
    Poly() = default;
    Poly(Scalar c) {
        if (!c.is_zero()) t_[0] = std::move(c);
    }
    Poly(long c) : Poly(Scalar(c)) {}
    Poly(int c) : Poly(Scalar(c)) {}

    static Poly variable(int var) { return monomial(mono_of_var(var), Scalar(1)); }
    static Poly monomial(Mono m, Scalar c) {
        Poly p;
        if (!c.is_zero()) p.t_[m] = std::move(c);
        return p;
    }

    const std::map<Mono, Scalar>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const {
        return t_.empty() || (t_.size() == 1 && t_.begin()->first == 0);
    }

    Scalar coeff(Mono m) const {
        auto it = t_.find(m);
        return it == t_.end() ? Scalar(0) : it->second;
    }
    Scalar constant_term() const { return coeff(0); }

    void add_term(Mono m, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly x, const Poly& y) { return x += y; }
    friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
    Poly operator-() const {
        Poly r;
        for (auto& [m, c] : t_) r.t_[m] = -c;
        return r;
    }

    friend Poly operator*(const Poly& x, const Poly& y) {
        Poly r;
        for (auto& [m1, c1] : x.t_)
            for (auto& [m2, c2] : y.t_) r.add_term(m1 + m2, c1 * c2);
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const Scalar& c) const {
        Poly r;
        if (c.is_zero()) return r;
        for (auto& [m, cc] : t_) r.t_[m] = cc * c;
        return r;
    }

    Poly pow(int e) const {
        Poly r(1);
        for (int i = 0; i < e; ++i) r *= *this;
        return r;
    }

    bool operator==(const Poly& o) const { return t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Degree of the highest monomial (each variable counts 2); 0 for the
    // zero polynomial.
    int degree() const {
        int d = 0;
        for (auto& [m, c] : t_) d = std::max(d, 2 * mono_total_exp(m));
        return d;
    }
    bool is_homogeneous(int deg) const {
        for (auto& [m, c] : t_)
            if (2 * mono_total_exp(m) != deg) return false;
        return true;
    }
    bool is_homogeneous() const { return t_.empty() || is_homogeneous(degree()); }
    Poly homogeneous_component(int deg) const {
        Poly r;
        for (auto& [m, c] : t_)
            if (2 * mono_total_exp(m) == deg) r.t_[m] = c;
        return r;
    }
    // All degrees with a nonzero homogeneous component.
    std::vector<int> degrees_present() const {
        std::vector<int> out;
        for (auto& [m, c] : t_) {
            int d = 2 * mono_total_exp(m);
            bool seen = false;
            for (int x : out) seen = seen || x == d;
            if (!seen) out.push_back(d);
        }
        return out;
    }

    // Exact quotient by X_var; every monomial must contain the variable.
    Poly divided_by_variable(int var) const {
        Poly r;
        for (auto& [m, c] : t_) {
            if (mono_exp(m, var) == 0)
                throw DivisionFailure("polynomial not divisible by variable " +
                                      std::to_string(var));
            r.t_[m - mono_of_var(var)] = c;
        }
        return r;
    }

    // Membership in the ideal R^+ of positive-degree elements, i.e. zero
    // constant term.
    bool in_R_plus() const { return constant_term().is_zero(); }

    std::string str(int rank) const;

  private:
    std::map<Mono, Scalar> t_;
};

// All packed monomials of the given total exponent in `rank` variables,
// in increasing key order.
std::vector<Mono> monomials_of_total_exp(int rank, int total);

}  // namespace soergel
