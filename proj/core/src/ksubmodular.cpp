#include "kpotts/ksubmodular.hpp"

#include <algorithm>
#include <string>

#include "kpotts/brute_force.hpp"
#include "kpotts/kovtun.hpp"

namespace kpotts {

Label meet(Label a, Label b) { return a == b ? a : kOutside; }

Label join(Label a, Label b) {
  if (a == b || b == kOutside) return a;
  if (a == kOutside) return b;
  return kOutside;
}

namespace {

std::vector<Label> componentwise(std::span<const Label> x, std::span<const Label> y,
                                 Label (*op)(Label, Label)) {
  if (x.size() != y.size()) throw InvalidLabeling("labelings differ in length");
  std::vector<Label> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = op(x[i], y[i]);
  return z;
}

}  // namespace

std::vector<Label> meet(std::span<const Label> x, std::span<const Label> y) {
  return componentwise(x, y, static_cast<Label (*)(Label, Label)>(meet));
}

std::vector<Label> join(std::span<const Label> x, std::span<const Label> y) {
  return componentwise(x, y, static_cast<Label (*)(Label, Label)>(join));
}

KSubmodularCheck is_ksubmodular(NodeId n, Label k, const DomainFunction& g) {
  if (n > 5 || k > 4) {
    throw CapacityError("exhaustive k-submodularity check needs n <= 5 and k <= 4");
  }
  if (k < 1) throw DegenerateInstance("empty label set");

  // Tabulate g once; digit k encodes o.
  const int base = k + 1;
  std::vector<Cost> table;
  std::vector<std::vector<Label>> points;
  for_each_labeling(n, k, true, [&](std::span<const Label> x) {
    table.push_back(g(x));
    points.emplace_back(x.begin(), x.end());
  });
  auto digit = [k](Label a) { return a == kOutside ? k : a; };
  auto index = [&](std::span<const Label> x) {
    std::size_t id = 0;
    for (Label a : x) id = id * base + digit(a);
    return id;
  };

  KSubmodularCheck check;
  for (std::size_t p = 0; p < points.size(); ++p) {
    for (std::size_t q = p + 1; q < points.size(); ++q) {
      const Cost lhs =
          table[index(meet(points[p], points[q]))] + table[index(join(points[p], points[q]))];
      const Cost rhs = table[p] + table[q];
      if (lhs > rhs) {
        check.ok = false;
        check.witness = KSubmodularWitness{points[p], points[q], lhs, rhs};
        return check;
      }
    }
  }
  return check;
}

Cost RelaxationInstance::evaluate(std::span<const Label> x) const {
  std::vector<int> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] == kOutside ? label_count : x[i];
  return problem.evaluate(c);
}

RelaxationInstance build_relaxation(const PottsInstance& inst) {
  const Label k = inst.label_count();
  if (k < 2) throw DegenerateInstance("the relaxation needs at least two labels");
  RelaxationInstance rel;
  rel.label_count = k;
  SplitProblem& p = rel.problem;
  p.tree = WeightedLabelTree::star(k);
  p.node_count = inst.node_count();
  p.unary.reserve(static_cast<std::size_t>(inst.node_count()) * (k + 1));
  std::vector<Cost> sorted;
  for (NodeId i = 0; i < inst.node_count(); ++i) {
    const auto row = inst.unary_row(i);
    sorted.assign(row.begin(), row.end());
    std::partial_sort(sorted.begin(), sorted.begin() + 2, sorted.end());
    const Cost sum = sorted[0] + sorted[1];
    if (sum % 2 != 0) {
      throw ScalingError("node " + std::to_string(i) +
                         ": two smallest unaries have an odd sum; scale costs by 2");
    }
    p.unary.insert(p.unary.end(), row.begin(), row.end());
    p.unary.push_back(sum / 2);
  }
  for (const Edge& e : inst.edges()) {
    if (e.weight % 2 != 0) {
      throw ScalingError("edge " + std::to_string(e.i) + "-" + std::to_string(e.j) +
                         " has an odd weight; scale costs by 2");
    }
    p.pairs.push_back({e.i, e.j, e.weight / 2});
  }
  return rel;
}

std::vector<Label> minimize_relaxation(const RelaxationInstance& rel, SplitStats* stats) {
  const auto c = split(rel.problem, stats);
  std::vector<Label> x(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) x[i] = c[i] == rel.label_count ? kOutside : c[i];
  return x;
}

std::vector<Label> persistency_from_relaxation(std::span<const Label> ystar) {
  // The labeled entries are already the constraint set; o stays unlabeled.
  return {ystar.begin(), ystar.end()};
}

LabeledSetComparison compare_with_kovtun(const PottsInstance& inst) {
  LabeledSetComparison report;
  const auto rel = build_relaxation(inst);
  const auto aux = build_auxiliary(inst);
  const NodeId n = inst.node_count();
  const Label k = inst.label_count();

  const auto g_min = minimize_exhaustively(
      n, k, true, [&](std::span<const Label> x) { return auxiliary_energy(inst, aux, x); });
  const auto rel_min = minimize_exhaustively(
      n, k, true, [&](std::span<const Label> x) { return rel.evaluate(x); });
  report.inconclusive = g_min.minimizer_count > 1 || rel_min.minimizer_count > 1;

  report.relaxation = minimize_relaxation(rel);
  report.kovtun = fast_kovtun(inst).result.x;
  report.relaxation_fraction = labeled_fraction(report.relaxation);
  report.kovtun_fraction = labeled_fraction(report.kovtun);
  for (NodeId i = 0; i < n; ++i) {
    if (is_labeled(report.relaxation[i]) && report.kovtun[i] != report.relaxation[i]) {
      report.violations.push_back(i);
    }
  }
  report.contained = report.violations.empty();
  return report;
}

}  // namespace kpotts
