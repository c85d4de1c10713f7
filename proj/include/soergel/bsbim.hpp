#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "soergel/coxeter.hpp"
#include "soergel/invring.hpp"
#include "soergel/poly.hpp"

namespace soergel {

// Degree of the basis vector x^e of BS(word): 2|e| minus the length shift.
inline int basis_degree(int len, int mask) {
    int p = 0;
    for (int m = mask; m; m >>= 1) p += m & 1;
    return 2 * p - len;
}

// Morphism of Bott-Samelson bimodules in the x^e bases, stored column-sparse:
// M(x^j) = sum_i x^i * cols[j][i] with right coefficients in R.  A valid
// morphism is homogeneous: every nonzero entry (i, j) is homogeneous of
// polynomial degree  degree + basis_degree(j) - basis_degree(i).
struct MorphismMatrix {
    Word src;
    Word tgt;
    int degree = 0;
    std::vector<std::map<int, Poly>> cols;

    int src_rank() const { return 1 << src.size(); }
    int tgt_rank() const { return 1 << tgt.size(); }

    static MorphismMatrix zero(Word src_word, Word tgt_word, int deg) {
        MorphismMatrix m;
        m.src = std::move(src_word);
        m.tgt = std::move(tgt_word);
        m.degree = deg;
        m.cols.assign(std::size_t(1) << m.src.size(), {});
        return m;
    }
    static MorphismMatrix identity(const Word& word) {
        MorphismMatrix m = zero(word, word, 0);
        for (int j = 0; j < m.src_rank(); ++j) m.cols[j][j] = Poly(1);
        return m;
    }

    Poly entry(int i, int j) const {
        auto it = cols[j].find(i);
        return it == cols[j].end() ? Poly() : it->second;
    }
    void add_entry(int i, int j, const Poly& p) {
        if (p.is_zero()) return;
        auto it = cols[j].find(i);
        if (it == cols[j].end()) {
            cols[j].emplace(i, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) cols[j].erase(it);
        }
    }

    bool is_zero() const {
        for (auto& c : cols)
            if (!c.empty()) return false;
        return true;
    }

    // Right multiplication by r: every coordinate coefficient picks up r.
    MorphismMatrix scaled_right(const Poly& r) const {
        MorphismMatrix m = zero(src, tgt, degree + r.degree());
        for (int j = 0; j < src_rank(); ++j)
            for (auto& [i, p] : cols[j]) m.add_entry(i, j, p * r);
        return m;
    }

    MorphismMatrix& operator+=(const MorphismMatrix& o);
    MorphismMatrix& operator-=(const MorphismMatrix& o);

    bool same_entries(const MorphismMatrix& o) const {
        return src == o.src && tgt == o.tgt && cols == o.cols;
    }
};

// f * x^mask in BS(word), expanded in the x^e basis: pushes f through each
// tensor slot via the splitting R = R^s + x_s R^s.
std::map<int, Poly> push_through(const RingContext& ctx, const Word& word, const Poly& f,
                                 int mask);

// Matrix of "multiply on the left by f" on BS(word).
MorphismMatrix left_mult_operator(const RingContext& ctx, const Word& word, const Poly& f);

// True iff M is homogeneous of its stated degree and commutes with left
// multiplication by every variable.
bool is_bimodule_morphism(const RingContext& ctx, const MorphismMatrix& M);

// Elementary morphisms:
//   m_s : BS(s)  -> BS()    degree +1   1@1 -> 1,   x_s@1 -> x_s
//   j_s : BS(ss) -> BS(s)   degree -1   1@p@1 -> demazure_s(p)@1
//   e_s : BS()   -> BS(s)   degree +1   1 -> x_s@1 + 1@x_s
//   p_s : BS(s)  -> BS(ss)  degree -1   1@1 -> 1@1@1
MorphismMatrix elementary_m(int s);
MorphismMatrix elementary_j(int s);
MorphismMatrix elementary_eps(int s);
MorphismMatrix elementary_p(int s);

// Matrix product M2 after M1; target word of M1 must equal source word of M2.
MorphismMatrix compose(const MorphismMatrix& m2, const MorphismMatrix& m1);

// The morphism id_left (x) M (x) id_right, with coefficients emitted by M at
// the junction pushed through the right identity slots.
MorphismMatrix tensor_id(const RingContext& ctx, const Word& left, const MorphismMatrix& M,
                         const Word& right);

// The unique degree-zero morphism BS(sr s r ...) -> BS(rs r s ...) (m_sr
// letters each) sending 1@...@1 to 1@...@1, found by exact linear solve.
// Throws NoSolution / NonUniqueSolution when the characterization fails.
MorphismMatrix solve_fsr(const RingContext& ctx, int s, int r);

// Memoizing wrapper around solve_fsr.
class FsrCache {
  public:
    explicit FsrCache(const RingContext& ctx) : ctx_(&ctx) {}
    const MorphismMatrix& get(int s, int r);
    const RingContext& ctx() const { return *ctx_; }

  private:
    const RingContext* ctx_;
    std::map<std::pair<int, int>, MorphismMatrix> cache_;
};

// Morphism BS(word) -> R_x into the standard bimodule with right action
// twisted by x; stored as the row of images of the basis vectors.  The
// generator of R_x is placed in degree -l(x), so a bare beta has degree 0.
struct StandardMorphism {
    Word twist;
    Word src;
    int degree = 0;
    std::vector<Poly> row;

    bool is_zero() const {
        for (auto& p : row)
            if (!p.is_zero()) return false;
        return true;
    }
    bool operator==(const StandardMorphism& o) const {
        return twist == o.twist && src == o.src && row == o.row;
    }
};

// beta_x : BS(x_word) -> R_x, iterated from beta_s(p @ q) = p s(q):
// x^e maps to the product of (s_1...s_{i-1})(x_{s_i}) over set bits i.
StandardMorphism beta(const RingContext& ctx, const Word& x_word);

// B after M, applying the twist of the target to the right coefficients of M.
StandardMorphism compose_standard(const RingContext& ctx, const StandardMorphism& B,
                                  const MorphismMatrix& M);

}  // namespace soergel
