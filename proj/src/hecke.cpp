#include "soergel/hecke.hpp"

namespace soergel {

namespace {

const LaurentPoly kVinvMinusV = LaurentPoly::v_power(-1) - LaurentPoly::v_power(1);
const LaurentPoly kVMinusVinv = LaurentPoly::v_power(1) - LaurentPoly::v_power(-1);

}  // namespace

HeckeElt mult_by_gen(const GroupUniverse& uni, const HeckeElt& h, int s, Side side) {
    HeckeElt out;
    for (auto& [w, p] : h.support()) {
        ElementId ws = side == Side::Right ? uni.right_mult(w, s) : uni.left_mult(w, s);
        if (ws == kOutsideBall)
            throw BallExceeded("Hecke product leaves the enumerated ball");
        if (uni.length(ws) > uni.length(w)) {
            out.add(ws, p);
        } else {
            out.add(ws, p);
            out.add(w, p * kVinvMinusV);
        }
    }
    return out;
}

HeckeElt bar_involution(const GroupUniverse& uni, const HeckeElt& h) {
    HeckeElt out;
    for (auto& [w, p] : h.support()) {
        // bar(H_w) = H_{s_1}^{-1} ... H_{s_k}^{-1} along the canonical word,
        // with H_s^{-1} = H_s + (v - v^{-1}).
        HeckeElt cur = HeckeElt::unit();
        for (int s : uni.canonical_word(w)) {
            HeckeElt next = mult_by_gen(uni, cur, s, Side::Right);
            next += cur.scaled(kVMinusVinv);
            cur = std::move(next);
        }
        out += cur.scaled(p.bar());
    }
    return out;
}

const HeckeElt& KLTable::kl_basis(ElementId w) {
    if (memo_[w]) return *memo_[w];
    HeckeElt result;
    if (uni_->length(w) == 0) {
        result = HeckeElt::unit();
    } else {
        int s = uni_->canonical_word(w).back();
        ElementId u = uni_->right_mult(w, s);
        const HeckeElt base = kl_basis(u);
        // KL_u . KL_s = KL_w + sum over x < u with xs < x of mu(x,u) KL_x.
        result = mult_by_gen(*uni_, base, s, Side::Right);
        result += base.scaled(LaurentPoly::v_power(1));
        std::vector<std::pair<ElementId, long long>> corrections;
        for (auto& [x, hx] : base.support()) {
            if (x == u) continue;
            ElementId xs = uni_->right_mult(x, s);
            if (xs == kOutsideBall || uni_->length(xs) > uni_->length(x)) continue;
            long long m = hx.coeff(1);
            if (m != 0) corrections.push_back({x, m});
        }
        for (auto& [x, m] : corrections)
            result -= kl_basis(x).scaled(LaurentPoly(m));

        // Verify both defining conditions rather than trusting the recursion.
        if (result.coeff(w) != LaurentPoly(1))
            throw CrossCheckFailed("KL basis element is not unitriangular");
        for (auto& [x, hx] : result.support()) {
            if (x != w && !hx.in_positive_degrees())
                throw CrossCheckFailed("KL polynomial outside vZ[v]");
            if (!uni_->bruhat_leq(x, w))
                throw CrossCheckFailed("KL basis support outside the Bruhat interval");
        }
        if (bar_involution(*uni_, result) != result)
            throw CrossCheckFailed("KL basis element is not bar-invariant");
    }
    memo_[w] = std::move(result);
    return *memo_[w];
}

LaurentPoly KLTable::kl_poly(ElementId x, ElementId w) { return kl_basis(w).coeff(x); }

QPoly KLTable::kl_poly_P(ElementId x, ElementId w) {
    return to_P(kl_poly(x, w), uni_->length(w) - uni_->length(x));
}

long long KLTable::mu(ElementId x, ElementId w) { return kl_poly(x, w).coeff(1); }

void KLTable::corrupt(ElementId x, ElementId w, const LaurentPoly& h) {
    HeckeElt e = kl_basis(w);
    e -= HeckeElt::basis(x).scaled(e.coeff(x));
    e += HeckeElt::basis(x).scaled(h);
    memo_[w] = std::move(e);
}

HeckeElt product_of_kl_generators(const GroupUniverse& uni, const Word& word) {
    HeckeElt cur = HeckeElt::unit();
    for (int s : word) {
        HeckeElt next = mult_by_gen(uni, cur, s, Side::Right);
        next += cur.scaled(LaurentPoly::v_power(1));
        cur = std::move(next);
    }
    return cur;
}

}  // namespace soergel
