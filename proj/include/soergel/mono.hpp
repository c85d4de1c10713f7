#pragma once

#include <string>
#include <vector>

#include "soergel/cellular.hpp"

namespace soergel {

// The unique leaf of maximal degree l(v) - l(u) in the tree over the reduced
// word v_word targeting u.  Verified unique and free of j-type steps; every
// other leaf to u is checked against the degree bound and parity law.
Leaf largest_leaf(const ChoiceLedger& led, const Word& v_word, ElementId u);

// Coefficient of 1 (x) ... (x) 1 in a BS element vector.
Poly coefficient_of_one(const std::map<int, Poly>& b);

// The graded module map Phi : D(v)<shift> -> D(u) inside the cell datum of w,
// in the leaf bases: column l (a leaf of w targeting v) holds the constant
// terms of the expansion of G o l over the leaves of w targeting u, where G
// is the largest leaf of v-bar to u.
struct PhiMap {
    ElementId u = 0, v = 0;
    int shift = 0;                             // l(v) - l(u)
    std::vector<int> row_leaves, col_leaves;   // indices into the w-tree
    std::vector<std::vector<Scalar>> mat;      // |T(u)| x |T(v)|
};

// Builds Phi two independent ways -- double-leaves expansion in
// Hom(BS(w), BS(u-bar)), and a direct solve over the standard-leaf basis of
// Hom(BS(w), R_u) -- and requires the matrices to agree entry by entry.
PhiMap build_phi(CellularContext& cc, ElementId u, ElementId v);

// True iff Phi o rho_v(a) = rho_u(a) o Phi for every basis element a.
bool check_intertwines(CellularContext& cc, const PhiMap& phi);

// True iff the matrix has full column rank over the scalar field.
bool check_injective(const PhiMap& phi);

// gd D(u) - v^shift gd D(v); the graded-embedding certificate asks this to
// lie in N[v].
LaurentPoly graded_embedding_defect(CellularContext& cc, const PhiMap& phi);

struct PhiCertificate {
    PhiMap phi;
    bool intertwines = false;
    bool injective = false;
    bool graded_embedding = false;

    bool ok() const { return intertwines && injective && graded_embedding; }
};

PhiCertificate certify_phi(CellularContext& cc, ElementId u, ElementId v);

// One failed chain u <= v <= w of the monotonicity scan.
struct MonoViolation {
    ElementId u = 0, v = 0, w = 0;
    std::string form;  // "h" or "P"
    std::string detail;
};

struct MonoReport {
    long long triples_checked = 0;
    std::vector<MonoViolation> violations;
};

// Exhaustive scan of all chains u <= v <= w with l(w) <= max_len, asserting
// both h_{u,w} - v^{l(v)-l(u)} h_{v,w} in N[v] and the coefficientwise
// P-polynomial comparison independently.  Violations are report content, not
// exceptions.  The KL table and Bruhat order are precomputed serially; the
// per-w work then runs on `threads` workers with a deterministic merge.
MonoReport monotonicity_scan(const GroupUniverse& uni, KLTable& kl, int max_len,
                             int threads = 1);

}  // namespace soergel
