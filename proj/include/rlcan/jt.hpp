#ifndef RLCAN_JT_HPP
#define RLCAN_JT_HPP

#include <string>
#include <vector>

#include "rlcan/algebra.hpp"
#include "rlcan/canext.hpp"
#include "rlcan/frames.hpp"
#include "rlcan/semantics.hpp"

namespace rlcan {

// The canonical frame of a residuated DLE: worlds are the prime filters of
// the carrier ordered by inclusion, with the coalgebra structure read off
// the membership clauses:
//   gammaI(F)      = 0 iff I in F
//   gammaTensor(F) = {(F1,F2) : a in F1, b in F2 implies a*b in F}
//   gammaLRes(F)   = {(G1,G2) : a-*b in F and a in G1 implies b in G2}
//   gammaRRes(F)   = {(H1,H2) : a*-b in F and b in H2 implies a in H1}
struct CanonicalFrame {
  ResourceFrame frame;
  PrimeFilterPoset pf;  // world i <-> pf.filters[i]
};

// Errors: NotResiduated, SizeLimitExceeded; frame validation failures
// propagate (they would indicate a defect in the construction).
Result<CanonicalFrame> canonical_frame(const DLE& a, int max_worlds = 20);

// The valuation p |-> {F : v(p) in F} on the canonical frame.
std::map<std::string, Mask> canonical_valuation(const CanonicalFrame& cf,
                                                const Valuation& v);

// The Jonsson-Tarski extension: the DLE on upsets of Pf A whose tables are
// the denotation clauses of the canonical frame applied to upsets.
Result<DLE> jt_extension(const DLE& a);

struct JtCompareReport {
  bool equal = false;
  std::vector<std::string> mismatches;  // per differing table cell
};

// Table-by-table comparison of jt_extension(a) with the sigma-extended
// tables of a over the shared carrier (upsets of Pf A).
Result<JtCompareReport> compare_jt_canext(const DLE& a);

struct TruthLemmaOutcome {
  bool consistent = false;
  int world = -1;      // world of the canonical frame satisfying Phi, not Psi
  int meet_phi = -1;   // offending pair when inconsistent:
  int join_psi = -1;   // meet of Phi-values <= join of Psi-values
};

// Separates the filter generated by the Phi-values from the ideal generated
// by the Psi-values, then returns the separating prime filter as a world.
Result<TruthLemmaOutcome> truth_lemma_check(const DLE& a,
                                            const std::vector<Formula>& phi,
                                            const std::vector<Formula>& psi,
                                            const Valuation& v);

struct ExistenceReport {
  bool ok = false;
  std::vector<std::string> failures;
};

// The existence lemmas behind the canonical frame, checked at finite scale
// for every prime filter F and all element pairs:
//   (i)   a*b in F   iff some (F1,F2) in gammaTensor(F) has a in F1, b in F2
//   (ii)  a-*b in F  iff every (G1,G2) in gammaLRes(F) maps a in G1 to b in G2
//   (iii) a*-b in F  iff every (H1,H2) in gammaRRes(F) maps b in H2 to a in H1
// Witness pairs are found by exhaustive search; a failure would falsify
// the construction.
Result<ExistenceReport> verify_existence_lemmas(const DLE& a);

}  // namespace rlcan

#endif
