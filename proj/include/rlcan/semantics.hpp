#ifndef RLCAN_SEMANTICS_HPP
#define RLCAN_SEMANTICS_HPP

#include <map>
#include <string>

#include "rlcan/frames.hpp"
#include "rlcan/syntax.hpp"

namespace rlcan {

// A resource frame plus an upset valuation. Valuation values are world
// masks; they must be upward closed (validated by make_model).
struct Model {
  ResourceFrame frame;
  std::map<std::string, Mask> valuation;
};

Result<Model> make_model(ResourceFrame frame,
                         std::map<std::string, Mask> valuation);

// Compositional interpretation. Errors: FragmentViolation (modal block
// missing), MissingDualBlock, UnboundVariable.
Result<Mask> denote(const Formula& phi, const Model& m);

// Interpretation over the product coalgebra; requires the dual block even
// for pure-RL formulas (on which it agrees with denote).
Result<Mask> fused_denote(const Formula& phi, const Model& m);

// True iff the denotation is an upset of W.
Result<bool> upset_check(const Formula& phi, const Model& m);

struct FrameValidityReport {
  bool valid = false;
  std::map<std::string, Mask> counter_valuation;  // first failing, by mask order
};

// Validity over all upset valuations of e's variables. Throws
// std::invalid_argument when #vars exceeds var_cap.
Result<FrameValidityReport> frame_valid(const ResourceFrame& f,
                                        const Inequation& e, int var_cap);

// The satisfaction-preserving closure of a frame: tensor closed (down,down),
// lres (down,up), rres (up,down); dual block closed dually. Unit maps and
// modal block unchanged.
ResourceFrame closure_frame(const ResourceFrame& f);

struct UnitConditionReport {
  bool ok = false;             // semantic check (authoritative): FC1 valid
  std::map<std::string, Mask> counter_valuation;
  bool structural_ok = false;  // diagnostic reading of the frame condition
  std::vector<int> structural_witness;
};

// The frame reading of FC1. The structural reading (every world has closure
// successors (w, x) and (y, w) with x, y unit states, and unit-bearing
// successors only of that shape) is reported as a diagnostic; the semantic
// check decides.
UnitConditionReport check_unit_condition(const ResourceFrame& f);

}  // namespace rlcan

#endif
