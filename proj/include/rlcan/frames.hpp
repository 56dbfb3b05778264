#ifndef RLCAN_FRAMES_HPP
#define RLCAN_FRAMES_HPP

#include <optional>
#include <string>
#include <vector>

#include "rlcan/common.hpp"
#include "rlcan/lattice.hpp"

namespace rlcan {

// A set of world pairs (x, y), bit index x*W + y.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(int worlds) : w_(worlds), bits_(worlds * worlds) {}

  int worlds() const { return w_; }
  bool test(int x, int y) const { return bits_.test(x * w_ + y); }
  void set(int x, int y) { bits_.set(x * w_ + y); }
  bool empty() const { return bits_.none(); }
  int count() const { return bits_.count(); }
  bool operator==(const PairSet& o) const = default;
  bool subset_of(const PairSet& o) const { return bits_.subset_of(o.bits_); }

  template <class F>
  void for_each(F&& f) const {
    bits_.for_each([&](int i) { f(i / w_, i % w_); });
  }

  const Bits& bits() const { return bits_; }
  Bits& bits() { return bits_; }

 private:
  int w_ = 0;
  Bits bits_;
};

// Per-coordinate order reversal tags for product posets (W^op markers).
struct PairPolarity {
  bool rev_first = false;
  bool rev_second = false;
};

constexpr PairPolarity kPolTensor{false, false};  // W x W
constexpr PairPolarity kPolLRes{true, false};     // W^op x W
constexpr PairPolarity kPolRRes{false, true};     // W x W^op

bool pair_leq(const FinitePoset& w, PairPolarity pol, int x1, int y1, int x2,
              int y2);

// Egli-Milner order on pair sets over the (possibly reversed) product.
// Throws std::invalid_argument on base mismatch.
bool egli_milner_leq(const FinitePoset& w, PairPolarity pol, const PairSet& u,
                     const PairSet& v);

bool is_convex(const FinitePoset& w, PairPolarity pol, const PairSet& u);

// Pointwise closures of a successor map. `down_first`/`down_second` select
// the closure direction per coordinate: close_tensor uses (down, down),
// close_lres (down, up), close_rres (up, down); the dual block closes
// (up, up), (up, down) and (down, up) respectively.
using SuccessorMap = std::vector<PairSet>;  // one PairSet per world

SuccessorMap close_pairs(const FinitePoset& w, const SuccessorMap& g,
                         bool down_first, bool down_second);
SuccessorMap close_tensor(const FinitePoset& w, const SuccessorMap& g);
SuccessorMap close_lres(const FinitePoset& w, const SuccessorMap& g);
SuccessorMap close_rres(const FinitePoset& w, const SuccessorMap& g);

// The two transposes of a tensor-shaped successor map:
//   overline(g)(z)  = {(y, x) : (y, z) in g(x)}
//   underline(g)(y) = {(x, z) : (y, z) in g(x)}
SuccessorMap overline(const FinitePoset& w, const SuccessorMap& g);
SuccessorMap underline(const FinitePoset& w, const SuccessorMap& g);

struct RccReport {
  bool ok = false;
  // (w, w', clause): clause 0 = overline monotonicity, 1 = underline.
  std::vector<int> witness;
};

// Residuation Compatibility Condition: both displayed inequalities on the
// transposes of g, taken in the upper Egli-Milner clause (the one the
// universally interpreted residual components need; the full order is
// refuted by heap models with more than one value).
RccReport check_rcc(const FinitePoset& w, const SuccessorMap& g);

// The dual reading: lower clause on the transposes, for reconstructing the
// existentially interpreted dual residuals from a par-shaped map.
RccReport check_rcc_dual(const FinitePoset& w, const SuccessorMap& g);

// A T_RL-coalgebra on a finite poset, with optional dual and modal blocks.
// gammaI is stored as a plain 0/1 map; neither orientation of the two-point
// poset is enforced (see unit_orientation_report).
struct ResourceFrame {
  FinitePoset worlds;
  std::vector<int> gammaI;
  SuccessorMap tensor, lres, rres;

  bool has_dual = false;
  std::vector<int> gammaJ;
  SuccessorMap par, dlres, drres;

  bool has_modal = false;
  std::vector<Mask> dia, box;  // successor sets

  int size() const { return worlds.size(); }
};

// validate_frame: convexity of every successor value and Egli-Milner
// monotonicity of every successor map (with the coordinate reversals of its
// component). gammaI/gammaJ orientation is reported separately, never
// enforced. Errors: NotConvex(world, component), NotMonotone(w, w',
// component); components are indexed 0..5 = tensor, lres, rres, par, dlres,
// drres, 6..7 = dia, box.
Result<ResourceFrame> validate_frame(ResourceFrame candidate);

struct UnitOrientationReport {
  bool monotone_01 = false;  // monotone into 2 ordered 0 <= 1
  bool monotone_10 = false;  // monotone into 2 ordered 1 <= 0
  bool unit_set_is_upset = false;  // gamma^-1(unit value) upward closed
};

// Both readings of the two-point poset for gammaI (unit value 0) and,
// when the dual block is present, gammaJ (unit value 1).
UnitOrientationReport unit_orientation_report(const ResourceFrame& f,
                                              bool dual_block);

// frame_from_tensor: the reconstructed frame gammaI x g x overline(g) x
// underline(g). Errors: NotConvex, NotMonotone, RCCViolated.
Result<ResourceFrame> frame_from_tensor(const FinitePoset& w,
                                        std::vector<int> gammaI,
                                        const SuccessorMap& tensor);

// Attach a dual block reconstructed from a par-shaped map (dual closures).
Result<ResourceFrame> attach_dual_from_par(ResourceFrame frame,
                                           std::vector<int> gammaJ,
                                           const SuccessorMap& par);

// Whether the residual components equal the transposes of the tensor,
// exactly or up to their closures (both comparison modes are supported;
// exact is the default elsewhere).
enum class ReconstructionMode { Exact, UpToClosure };
bool is_tensor_reconstructed(const ResourceFrame& f, ReconstructionMode mode);

struct StructuralReport {
  bool ok = false;
  std::vector<int> witness;  // offending world(s)
};

// check_structural: e (exchange), c (contraction), lw, rw.
// Error: DualBlockMissing for rw on a frame without a dual block.
Result<StructuralReport> check_structural(const ResourceFrame& f,
                                          const std::string& rule);

// heap_frame: worlds are partial maps {1..addrs} -> {1..vals} ordered by
// extension (world index = sum digit_i * (vals+1)^i, digit 0 = undefined).
// Error: SizeLimitExceeded.
Result<ResourceFrame> heap_frame(int addrs, int vals,
                                 std::optional<Mask> unit_upset = {},
                                 int max_worlds = 64);

// Human-readable label ("{1->2,3->1}") for a heap world index.
std::string heap_world_name(int addrs, int vals, int world);

// All downsets of the (polarized) pair product, ascending; used by the
// frame enumeration for search. Guarded for small worlds.
std::vector<PairSet> pair_downsets(const FinitePoset& w, PairPolarity pol);

}  // namespace rlcan

#endif
