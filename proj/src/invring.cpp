#include "soergel/invring.hpp"

namespace soergel {

RingContext::RingContext(const CoxeterSystem& system) : sys_(&system) {
    int n = rank();
    action_.assign(n, std::vector<Poly>(n));
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            Poly img = Poly::variable(t);
            img -= Poly::variable(s).scaled(Scalar(2) * sys_->form(s, t));
            action_[s][t] = std::move(img);
        }
}

Poly RingContext::act_gen(int s, const Poly& f) const {
    Poly out;
    for (auto& [m, c] : f.terms()) {
        Poly term(c);
        for (int t = 0; t < rank(); ++t) {
            int e = mono_exp(m, t);
            if (e > 0) term *= action_[s][t].pow(e);
        }
        out += term;
    }
    return out;
}

Poly RingContext::act(const Word& w, const Poly& f) const {
    // (s_1 ... s_k) . f = s_1 . ( ... . (s_k . f))
    Poly out = f;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out = act_gen(*it, out);
    return out;
}

Poly RingContext::demazure(int s, const Poly& f) const {
    Poly num = f - act_gen(s, f);
    return num.divided_by_variable(s).scaled(Scalar::frac(1, 2));
}

std::pair<Poly, Poly> RingContext::split(int s, const Poly& f) const {
    Poly d = demazure(s, f);
    Poly p = f - Poly::variable(s) * d;
    return {std::move(p), std::move(d)};
}

}  // namespace soergel
