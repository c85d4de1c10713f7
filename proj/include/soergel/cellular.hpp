#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "soergel/hecke.hpp"
#include "soergel/leaves.hpp"

namespace soergel {

// The graded cellular algebra A = End(BS(w)) (x)_R IR for a fixed reduced
// word, with the double-leaves cell datum: poset Lambda(w) = {x <= w} in
// reversed Bruhat order, T(x) = leaves targeting x, structure constants the
// constant terms of double-leaves expansion coefficients.
class CellularContext {
  public:
    CellularContext(MorphismFactory& fac, const Word& w_word);

    const Word& word() const { return w_word_; }
    ElementId top() const { return top_; }
    const GroupUniverse& universe() const;
    MorphismFactory& factory() { return *fac_; }

    // Strata x <= w sorted by (length, id); reversing gives the cell order.
    const std::vector<ElementId>& strata() const { return strata_; }
    // Indices into the w-tree of the leaves targeting x.
    const std::vector<int>& leaves_of(ElementId x) const { return leaves_of_.at(x); }
    const LeafTree& tree() const { return endo_->basis().lower_tree; }
    const DoubleLeafBasis& endo_basis() const { return endo_->basis(); }
    int dim() const { return int(endo_->basis().basis.size()); }

    // Structure constants of A: for basis indices i, j the sparse vector of
    // constant terms of the expansion of (matrix i) o (matrix j).
    const std::map<int, Scalar>& product(int i, int j);
    // Coefficients of the unit of A over the double-leaves basis.
    const std::vector<Scalar>& unit();

    // Matrix [g][l] of the right action of basis element a on the cell
    // module D(x): l . a = sum_g g * rho[g][l].
    std::vector<std::vector<Scalar>> cell_action(ElementId x, int a_index);

    // Gram matrix of the cellular bilinear form on D(x), rows/cols ordered
    // like leaves_of(x).
    const std::vector<std::vector<Scalar>>& gram(ElementId x);

    LaurentPoly gd_cell(ElementId x) const;
    LaurentPoly gd_simple(ElementId x);

    // Graded multiplicities m_y of B_y in BS(w), by unitriangular back-
    // substitution against the KL table; throws InconsistentSystem when the
    // solution is not bar-symmetric with nonnegative coefficients.
    std::map<ElementId, LaurentPoly> solve_multiplicities(KLTable& kl);

    // h_{x,w}, cross-validated against gd_simple == solved multiplicities.
    LaurentPoly decomposition_number(ElementId x, KLTable& kl);

    // Axioms of a graded cellular basis: basis/dimension count, flip anti-
    // automorphism, ideal-filtration congruence with s-independence, and
    // degree additivity; plus associativity spot checks and the unit law.
    // Throws CrossCheckFailed on any violation.
    void verify_cellularity(unsigned spot_check_seed = 1);

    DoubleLeafExpander& hom_expander(ElementId x);   // Hom(BS(w), BS(xbar))
    DoubleLeafExpander& endo_expander(ElementId x);  // End(BS(xbar))

  private:
    int flip_index(int i) const;

    MorphismFactory* fac_;
    Word w_word_;
    ElementId top_ = 0;
    std::vector<ElementId> strata_;
    std::map<ElementId, std::vector<int>> leaves_of_;
    std::unique_ptr<DoubleLeafExpander> endo_;
    std::map<ElementId, std::unique_ptr<DoubleLeafExpander>> homs_;
    std::map<ElementId, std::unique_ptr<DoubleLeafExpander>> endos_x_;
    std::map<ElementId, std::vector<std::vector<Scalar>>> gram_;
    std::map<std::pair<int, int>, std::map<int, Scalar>> products_;
    std::optional<std::vector<Scalar>> unit_;
};

}  // namespace soergel
