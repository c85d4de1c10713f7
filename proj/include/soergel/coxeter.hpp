#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "soergel/scalar.hpp"

namespace soergel {

// Generator sequence; entries are generator indices < rank.
using Word = std::vector<int>;

std::string word_str(const Word& w);

// Coxeter matrix with the convention that 0 encodes infinity.
struct CoxeterMatrix {
    int rank = 0;
    std::vector<std::vector<int>> m;

    static CoxeterMatrix preset(const std::string& name);
    static CoxeterMatrix from_json_text(const std::string& text);
    void validate() const;
};

// A Coxeter system together with the geometric representation: the bilinear
// form B with B(a_s, a_t) = -cos(pi/m_st) and B(a_s, a_s) = 1.  All scalars
// of a system live in Q(sqrt(d)) for a single session-wide d; matrices mixing
// distinct surds are rejected with FieldTowerUnsupported.
class CoxeterSystem {
  public:
    explicit CoxeterSystem(CoxeterMatrix matrix);

    int rank() const { return m_.rank; }
    int order(int s, int t) const { return m_.m[s][t]; }
    const CoxeterMatrix& matrix() const { return m_; }
    const Scalar& form(int s, int t) const { return cartan_[s][t]; }
    int surd() const { return surd_; }

    // True when the geometric representation is known reflection-faithful for
    // this matrix (finite groups and the infinite dihedral group).  Other
    // inputs still work but carry this flag so callers can warn.
    bool whitelisted() const { return whitelisted_; }

    // v  ->  v - 2 B(a_s, v) a_s
    std::vector<Scalar> reflect(int s, const std::vector<Scalar>& vec) const;
    // Matrix of the reflection s on V, acting on column vectors.
    std::vector<std::vector<Scalar>> reflection_matrix(int s) const;

  private:
    CoxeterMatrix m_;
    std::vector<std::vector<Scalar>> cartan_;
    int surd_ = 0;
    bool whitelisted_ = false;
};

using ElementId = std::int32_t;
constexpr ElementId kOutsideBall = -1;

// Coxeter group element in canonical (ShortLex-least) reduced form, as held
// by a GroupUniverse.
struct Element {
    ElementId id = 0;
    Word canonical;
    int length = 0;
};

// One elementary braid move: at `pos` replace the alternating factor
// s t s ... (count letters) by t s t ...
struct BraidMove {
    int pos = 0;
    int s = 0;
    int t = 0;
    int count = 0;

    bool operator==(const BraidMove& o) const {
        return pos == o.pos && s == o.s && t == o.t && count == o.count;
    }
};

Word apply_braid_move(const Word& w, const BraidMove& mv);

// BFS closure of {e} under right multiplication, truncated at max_length.
// Identity of group elements is decided through their exact matrices on V.
class GroupUniverse {
  public:
    GroupUniverse(const CoxeterSystem& system, int max_length,
                  std::size_t element_cap = 1u << 20);

    const CoxeterSystem& system() const { return *sys_; }
    int max_length() const { return max_length_; }
    bool complete() const { return complete_; }
    std::size_t size() const { return canonical_.size(); }

    Element element(ElementId id) const { return {id, canonical_[id], length_[id]}; }
    const Word& canonical_word(ElementId id) const { return canonical_[id]; }
    int length(ElementId id) const { return length_[id]; }
    ElementId identity() const { return 0; }

    // kOutsideBall when the product leaves the ball.
    ElementId right_mult(ElementId id, int s) const { return right_[id][s]; }
    ElementId left_mult(ElementId id, int s) const { return left_[id][s]; }

    bool is_right_descent(ElementId id, int s) const {
        ElementId p = right_[id][s];
        return p != kOutsideBall && length_[p] < length_[id];
    }
    bool is_left_descent(ElementId id, int s) const {
        ElementId p = left_[id][s];
        return p != kOutsideBall && length_[p] < length_[id];
    }

    // Canonical form of an arbitrary word; BallExceeded when any prefix
    // product leaves the ball.
    Element normal_form(const Word& w) const;
    ElementId product_id(const Word& w) const;
    ElementId inverse(ElementId id) const;

    // Bruhat order by the standard descent recursion (memoized).
    bool bruhat_leq(ElementId u, ElementId w) const;
    // Independent oracle: subword extraction over the canonical word of w.
    bool bruhat_leq_subword(ElementId u, ElementId w) const;

    // All elements below w in Bruhat order, sorted by (length, id).
    std::vector<ElementId> bruhat_interval_below(ElementId w) const;

    // All reduced expressions of an element (braid-graph closure from the
    // canonical word).
    std::vector<Word> reduced_expressions(ElementId id) const;

  private:
    const CoxeterSystem* sys_;
    int max_length_;
    bool complete_ = false;

    std::vector<Word> canonical_;
    std::vector<int> length_;
    std::vector<std::vector<ElementId>> right_;
    std::vector<std::vector<ElementId>> left_;
    mutable std::map<std::uint64_t, bool> bruhat_memo_;
};

// Deterministic shortest braid-move path from w1 to w2; NotSameElement if
// the words do not multiply to the same element.  `reverse_tie_break` flips
// the neighbor exploration order (used for ledger-invariance testing).
std::vector<BraidMove> braid_path(const GroupUniverse& uni, const Word& w1, const Word& w2,
                                  bool reverse_tie_break = false);

// Enumerate all braid moves applicable to a reduced word, in the canonical
// deterministic order (position, then resulting word).
std::vector<BraidMove> braid_moves(const CoxeterSystem& sys, const Word& w);

}  // namespace soergel
