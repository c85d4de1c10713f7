#pragma once

#include <map>
#include <optional>
#include <vector>

#include "soergel/coxeter.hpp"
#include "soergel/laurent.hpp"

namespace soergel {

enum class Side { Left, Right };

// Element of the Hecke algebra in the standard basis {H_w}.
class HeckeElt {
  public:
    HeckeElt() = default;
    static HeckeElt unit() {
        HeckeElt h;
        h.c_[0] = LaurentPoly(1);
        return h;
    }
    static HeckeElt basis(ElementId w) {
        HeckeElt h;
        h.c_[w] = LaurentPoly(1);
        return h;
    }

    const std::map<ElementId, LaurentPoly>& support() const { return c_; }
    LaurentPoly coeff(ElementId w) const {
        auto it = c_.find(w);
        return it == c_.end() ? LaurentPoly() : it->second;
    }
    void add(ElementId w, const LaurentPoly& p) {
        if (p.is_zero()) return;
        auto it = c_.find(w);
        if (it == c_.end()) {
            c_[w] = p;
        } else {
            it->second += p;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    HeckeElt& operator+=(const HeckeElt& o) {
        for (auto& [w, p] : o.c_) add(w, p);
        return *this;
    }
    HeckeElt& operator-=(const HeckeElt& o) {
        for (auto& [w, p] : o.c_) add(w, -p);
        return *this;
    }
    friend HeckeElt operator+(HeckeElt x, const HeckeElt& y) { return x += y; }
    friend HeckeElt operator-(HeckeElt x, const HeckeElt& y) { return x -= y; }
    HeckeElt scaled(const LaurentPoly& f) const {
        HeckeElt r;
        for (auto& [w, p] : c_) r.add(w, p * f);
        return r;
    }
    bool operator==(const HeckeElt& o) const { return c_ == o.c_; }
    bool operator!=(const HeckeElt& o) const { return !(*this == o); }
    bool is_zero() const { return c_.empty(); }

  private:
    std::map<ElementId, LaurentPoly> c_;
};

// H_w . H_s = H_{ws} if ws > w, else H_{ws} + (v^-1 - v) H_w  (mirrored on
// the left).  Throws BallExceeded when a product leaves the universe.
HeckeElt mult_by_gen(const GroupUniverse& uni, const HeckeElt& h, int s, Side side);

// The ring involution with bar(v) = v^-1 and bar(H_w) = H_{w^-1}^{-1}.
HeckeElt bar_involution(const GroupUniverse& uni, const HeckeElt& h);

// Memoized Kazhdan-Lusztig data over one universe.
class KLTable {
  public:
    explicit KLTable(const GroupUniverse& uni) : uni_(&uni), memo_(uni.size()) {}

    const GroupUniverse& universe() const { return *uni_; }

    // The KL basis element of w, computed by the classical recursion with
    // mu-corrections and verified against both defining conditions.
    const HeckeElt& kl_basis(ElementId w);

    LaurentPoly kl_poly(ElementId x, ElementId w);  // h_{x,w}
    QPoly kl_poly_P(ElementId x, ElementId w);      // P_{x,w}(q)
    long long mu(ElementId x, ElementId w);         // coefficient of v in h_{x,w}

    // Test hook: overwrite one h_{x,w} to model a corrupted table.
    void corrupt(ElementId x, ElementId w, const LaurentPoly& h);

  private:
    const GroupUniverse* uni_;
    std::vector<std::optional<HeckeElt>> memo_;
};

// The product of KL generators along an arbitrary expression, expanded in
// the standard basis.
HeckeElt product_of_kl_generators(const GroupUniverse& uni, const Word& word);

}  // namespace soergel
