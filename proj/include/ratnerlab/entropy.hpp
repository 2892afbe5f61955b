#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ratnerlab/lie_algebra.hpp"

namespace ratnerlab::entropy {

// H(p) = sum p_i log(1/p_i), natural log, 0 log(1/0) = 0.
// Throws invalid-input for negative weights or a sum away from 1 by > 1e-12.
double entropy(const std::vector<double>& p);

// Partition of a finite probability space: atom weights plus the cell index
// of every atom. Cells are numbered 0..m-1 and all of them are nonempty.
class FinitePartition {
 public:
  FinitePartition(std::vector<double> atom_weights, std::vector<int> cell_of_atom);

  // Each atom its own cell.
  static FinitePartition discrete(std::vector<double> atom_weights);
  // Single cell.
  static FinitePartition trivial(std::vector<double> atom_weights);
  // The two coordinate partitions of the product space with joint weights P
  // (atom (i, j) has weight P(i, j); A groups by row, B by column).
  static std::pair<FinitePartition, FinitePartition> from_joint_table(const Eigen::MatrixXd& P);

  const std::vector<double>& atom_weights() const { return atoms_; }
  const std::vector<int>& cell_of_atom() const { return cell_; }
  int cell_count() const { return cells_; }
  std::vector<double> weights() const;
  double entropy() const { return entropy::entropy(weights()); }

 private:
  std::vector<double> atoms_;
  std::vector<int> cell_;
  int cells_ = 0;
};

// A v B: nonempty intersections, numbered in order of first appearance.
FinitePartition join(const FinitePartition& a, const FinitePartition& b);

// H(B | A) = sum_a p(a) H(B restricted to a), computed cell by cell.
double conditional_entropy(const FinitePartition& b, const FinitePartition& a);

// --- model systems ---------------------------------------------------------------

enum class SystemKind { Rotation, Bernoulli, Baker };

// Each system carries its canonical partition: the half-circle arcs [0, 1/2),
// [1/2, 1) for the rotation, the zeroth coordinate for the Bernoulli shift and
// the left/right halves x <= 1/2, x > 1/2 for the baker's map.
struct SymbolicSystem {
  SystemKind kind;
  double beta = 0.0;     // rotation number
  double p = 0.5;        // probability of symbol 1
  bool inverse = false;  // use T^{-1} in place of T

  static SymbolicSystem rotation(double beta) { return {SystemKind::Rotation, beta, 0.5, false}; }
  static SymbolicSystem bernoulli(double p) { return {SystemKind::Bernoulli, 0.0, p, false}; }
  static SymbolicSystem baker() { return {SystemKind::Baker, 0.0, 0.5, false}; }
  SymbolicSystem inverted() const {
    SymbolicSystem s = *this;
    s.inverse = !s.inverse;
    return s;
  }
  std::string name() const;
};

inline constexpr int kMaxRotationArcs = 10000;
inline constexpr int kMaxBernoulliK = 60;

// `count` cells of equal weight `weight`.
struct CellClass {
  double weight;
  double count;
};

// Cells of A v T^-1 A v ... v T^-(k-1) A, computed exactly: arc lengths for the
// rotation (one class per cell), words grouped by their number of ones for
// the shifts.
std::vector<CellClass> iterated_join_cells(const SymbolicSystem& sys, int k);

// E^k(T, A) = H(A v T^-1 A v ... v T^-(k-1) A). Throws cap-exceeded beyond
// 10^4 arcs or k > 60.
double iterated_information(const SymbolicSystem& sys, int k);

struct EntropyRate {
  std::vector<double> Ek;    // Ek[k-1] = E^k
  std::vector<double> rate;  // E^k / k
  double terminal;
  double max_subadditivity_excess;  // max of E^{k+l} - E^k - E^l over k + l <= k_max
  bool subadditive() const { return max_subadditivity_excess <= 1e-10; }
};

EntropyRate entropy_rate(const SymbolicSystem& sys, int k_max);

// Approximate diagnostic: plug-in entropy of length-k itineraries of `samples`
// points drawn from the invariant measure and pushed through the map.
double empirical_iterated_information(const SymbolicSystem& sys, int k, std::size_t samples,
                                      std::uint64_t seed);

struct StretchFactor {
  double tau;  // expansion factor, > 0
  int dim;     // subbundle dimension, >= 1
};

// sum over tau > 1 of dim log tau.
double stretch_entropy(const std::vector<StretchFactor>& spec);

// log J(g, G_+): Ad g restricted to its expanding horospherical subalgebra.
double translation_entropy(const Eigen::MatrixXd& g, const group::LieAlgebra& alg);

}  // namespace ratnerlab::entropy
