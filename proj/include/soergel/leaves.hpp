#pragma once

#include <map>
#include <optional>
#include <vector>

#include "soergel/bsbim.hpp"
#include "soergel/coxeter.hpp"
#include "soergel/hecke.hpp"
#include "soergel/linsolve.hpp"

namespace soergel {

// Record of every non-canonical choice the leaf calculus depends on: the
// reduced expression fixed for each element and the braid-path tie-break.
// Seed 0 is the default ledger; any other seed permutes the generator
// priority used by the ShortLex rule and flips the braid tie-break, giving
// an honestly different but equally valid set of choices.
class ChoiceLedger {
  public:
    ChoiceLedger(const GroupUniverse& uni, unsigned seed = 0);

    const GroupUniverse& universe() const { return *uni_; }
    unsigned seed() const { return seed_; }
    bool reverse_tie_break() const { return reverse_; }

    const Word& canonical_word(ElementId id) const;
    std::vector<BraidMove> path(const Word& from, const Word& to) const {
        return braid_path(*uni_, from, to, reverse_);
    }

  private:
    const GroupUniverse* uni_;
    unsigned seed_;
    bool reverse_ = false;
    std::vector<int> priority_;  // generator priority order
    mutable std::vector<std::optional<Word>> words_;
};

// One instruction in the replayable construction of a leaf morphism.  The
// morphism is built left to right: Append extends the source (and target) by
// one tensor slot; M/J/F post-compose an elementary morphism placed at `pos`
// in the current target word.
struct LeafStep {
    enum Kind { Append, M, J, F } kind = Append;
    int pos = 0;
    int s = 0;
    int t = 0;      // F only
    int count = 0;  // F only
};

struct Leaf {
    Word source_word;
    ElementId target = 0;
    Word target_word;
    std::vector<int> i_seq;
    std::vector<int> j_seq;
    int degree = 0;  // (#m-steps) - (#j-steps)
    std::vector<LeafStep> program;

    bool is_identity() const {
        for (int b : i_seq)
            if (b) return false;
        for (int b : j_seq)
            if (b) return false;
        return true;
    }
    int j_mask() const {
        int m = 0;
        for (std::size_t k = 0; k < j_seq.size(); ++k) m |= j_seq[k] << k;
        return m;
    }
};

struct LeafTree {
    Word word;
    std::vector<Leaf> leaves;  // one per i-sequence, in binary-counter order
};

// The full light-leaves tree over `word` (need not be reduced): 2^n leaves,
// case (a)/(b) branching with braid normalization at descents and a final
// braid normalization to the ledger's canonical word.  The all-identity
// branch of a reduced word keeps the source word as target word.
LeafTree build_tree(const ChoiceLedger& led, const Word& word);

// Leaf-degree generating functions per target element; the combinatorial
// shadow of the tree (no matrices are built).
std::map<ElementId, LaurentPoly> leaf_character(const ChoiceLedger& led, const Word& word);

// Replays leaf programs into matrices; owns the braid-morphism cache.
class MorphismFactory {
  public:
    MorphismFactory(const RingContext& ctx, const ChoiceLedger& led)
        : ctx_(&ctx), led_(&led), fsr_(ctx) {}

    const RingContext& ctx() const { return *ctx_; }
    const ChoiceLedger& ledger() const { return *led_; }
    FsrCache& fsr() { return fsr_; }

    const MorphismMatrix& matrix(const Leaf& leaf);
    // Same-degree morphism BS(target word) -> BS(source word): each step
    // replaced by its adjoint (m->eps, j->p, f_sr->f_rs), order reversed.
    const MorphismMatrix& adjoint(const Leaf& leaf);
    // Composite of braid morphisms realizing a reduced-word change.
    MorphismMatrix braid_morphism(const Word& from, const Word& to);

  private:
    MorphismMatrix replay(const Leaf& leaf, bool adjoint_side);
    MorphismMatrix replay_forward(const Leaf& leaf);
    MorphismMatrix replay_adjoint(const Leaf& leaf);

    const RingContext* ctx_;
    const ChoiceLedger* led_;
    FsrCache fsr_;
    // Leaves are determined by source word and i-sequence.
    std::map<std::pair<Word, std::vector<int>>, MorphismMatrix> mat_cache_;
    std::map<std::pair<Word, std::vector<int>>, MorphismMatrix> adj_cache_;
};

struct DoubleLeaf {
    int lower = 0;  // index into the lower tree's leaves
    int upper = 0;  // index into the upper tree's leaves
    ElementId through = 0;
    int degree = 0;
};

// The double-leaves basis of Hom(BS(w_word), BS(v_word)): all compatible
// pairs adjoint(upper) o lower with matching target element, with matrices.
struct DoubleLeafBasis {
    Word w_word, v_word;
    LeafTree lower_tree, upper_tree;
    std::vector<DoubleLeaf> basis;
    std::vector<MorphismMatrix> matrices;
};

DoubleLeafBasis double_leaves(MorphismFactory& fac, const Word& w_word, const Word& v_word);

// Image of the source basis vector x^{jprime} under the leaf morphism.
std::map<int, Poly> eval_leaf(const MorphismMatrix& leaf_matrix, int jprime);

// The standard-leaves basis of Hom(BS(w_word), R_x): beta composed with
// every leaf targeting x.  Empty iff x is not Bruhat-below the word.
std::vector<StandardMorphism> standard_leaves(MorphismFactory& fac, const LeafTree& tree,
                                              ElementId x);

// Column-sparse scalar matrix: the image of a morphism in the zero fiber,
// i.e. every polynomial entry evaluated at X = 0.
using FiberMatrix = std::vector<std::map<int, Scalar>>;

FiberMatrix fiber_of(const MorphismMatrix& m);
// Numeric composite a o b; evaluation at zero commutes with composition.
FiberMatrix fiber_compose(const FiberMatrix& a, const FiberMatrix& b);

// Exact expansion in the double-leaves basis.  Homogeneity reduces the
// fraction-field solve to independent scalar systems per degree layer; the
// factorization of each layer is cached across right-hand sides, and every
// expansion is verified by full reconstruction.
class DoubleLeafExpander {
  public:
    DoubleLeafExpander(const RingContext& ctx, DoubleLeafBasis basis);

    const DoubleLeafBasis& basis() const { return basis_; }

    // Coefficients r with M = sum_k basis.matrices[k] * r_k; NotInSpan when
    // no polynomial solution reconstructs M exactly.
    std::vector<Poly> expand(const MorphismMatrix& M);

    // Coefficients of M in the zero fiber Hom (x) R/m, relative to the image
    // of the double-leaves basis there.  The evaluated basis matrices are
    // certified linearly independent at first use (so the coefficients equal
    // the constant terms of the polynomial expansion), and every expansion is
    // verified by exact numeric reconstruction.  Much cheaper than expand()
    // when only the fiber is needed.
    std::vector<Scalar> fiber_expand(const FiberMatrix& M);
    const FiberMatrix& fiber_matrix(int k);  // evaluated basis matrix

  private:
    struct Layer {
        SparseLinearSystem sys{0};
        std::vector<std::pair<int, Mono>> slots;          // unknown -> (k, mono)
        std::map<std::array<std::uint64_t, 2>, std::uint64_t> keys;
    };
    Layer& layer(int delta);
    void build_fiber();

    const RingContext* ctx_;
    DoubleLeafBasis basis_;
    std::map<int, Layer> layers_;
    bool fiber_built_ = false;
    SparseLinearSystem fiber_{0};
    std::vector<FiberMatrix> fiber_basis_;
};

}  // namespace soergel
