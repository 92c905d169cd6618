#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kpotts/potts.hpp"
#include "kpotts/split.hpp"

namespace kpotts {

/// Meet and join on D = L u {o} with o below every label and distinct labels
/// incomparable: two different labels meet and join at o.
Label meet(Label a, Label b);
Label join(Label a, Label b);
std::vector<Label> meet(std::span<const Label> x, std::span<const Label> y);
std::vector<Label> join(std::span<const Label> x, std::span<const Label> y);

using DomainFunction = std::function<Cost(std::span<const Label>)>;

struct KSubmodularWitness {
  std::vector<Label> x;
  std::vector<Label> y;
  Cost lhs = 0;  // g(x meet y) + g(x join y)
  Cost rhs = 0;  // g(x) + g(y)
};

struct KSubmodularCheck {
  bool ok = true;
  std::optional<KSubmodularWitness> witness;  // first violating pair
};

/// Exhaustive check of g(x meet y) + g(x join y) <= g(x) + g(y) over all
/// pairs in D^V. Throws CapacityError when n > 5 or k > 4.
KSubmodularCheck is_ksubmodular(NodeId n, Label k, const DomainFunction& g);

/// The k-submodular relaxation of a Potts energy:
///   g~(x) = sum_i g~_i(x_i) + sum_ij (w_ij / 2) d(x_i, x_j)
/// on the unit star over L u {o}, with g~_i(a) = f_i(a) and g~_i(o) the mean
/// of the two smallest values of f_i (counted with multiplicity).
struct RelaxationInstance {
  /// Star over L u {o} (o = centre k); unary columns are g~_i.
  SplitProblem problem;
  Label label_count = 0;

  Cost outside(NodeId i) const { return problem.g(i, label_count); }
  /// x may contain kOutside.
  Cost evaluate(std::span<const Label> x) const;
};

/// Throws ScalingError when some f_i(a1) + f_i(a2) or some w_ij is odd
/// (multiply the costs by two first) and DegenerateInstance when k < 2.
RelaxationInstance build_relaxation(const PottsInstance& inst);

/// Exact minimizer of g~ over D^V, computed with split().
std::vector<Label> minimize_relaxation(const RelaxationInstance& rel,
                                       SplitStats* stats = nullptr);

/// The labeled entries of a relaxation minimizer; some global minimizer of
/// f agrees with them.
std::vector<Label> persistency_from_relaxation(std::span<const Label> ystar);

/// Labeled-set comparison between the relaxation minimizer x~ and the
/// Kovtun partial labeling x: every i with x~_i in L should have x_i = x~_i.
struct LabeledSetComparison {
  /// g or g~ has more than one minimizer; containment is not asserted.
  bool inconclusive = false;
  bool contained = true;
  /// Nodes labeled by the relaxation but not (or differently) by Kovtun.
  std::vector<NodeId> violations;
  std::vector<Label> relaxation;
  std::vector<Label> kovtun;
  double relaxation_fraction = 0;
  double kovtun_fraction = 0;
};

/// Runs both methods on `inst` (costs must be even, see build_relaxation) and
/// detects non-unique minimizers of g and g~ by enumeration over D^V.
LabeledSetComparison compare_with_kovtun(const PottsInstance& inst);

}  // namespace kpotts
