#pragma once

#include <utility>
#include <vector>

#include "soergel/coxeter.hpp"
#include "soergel/poly.hpp"

namespace soergel {

// The polynomial ring R of regular functions on V, with one variable
// X_s := B(a_s, -) per generator, carrying the contragredient W-action
// s . X_t = X_t - 2 B(a_s, a_t) X_s and the Demazure operators.
class RingContext {
  public:
    explicit RingContext(const CoxeterSystem& system);

    const CoxeterSystem& system() const { return *sys_; }
    int rank() const { return sys_->rank(); }

    Poly variable(int s) const { return Poly::variable(s); }

    // Action of a single generator.
    Poly act_gen(int s, const Poly& f) const;
    // Action along the canonical word of w (leftmost letter acts last).
    Poly act(const Word& w, const Poly& f) const;

    // (f - s.f) / (2 x_s); degree drops by 2 and the result is s-invariant.
    Poly demazure(int s, const Poly& f) const;

    // f = first + x_s * second with both components s-invariant;
    // returns (P_s(f), demazure_s(f)).
    std::pair<Poly, Poly> split(int s, const Poly& f) const;

  private:
    const CoxeterSystem* sys_;
    // image of X_t under generator s, precomputed
    std::vector<std::vector<Poly>> action_;
};

}  // namespace soergel
