#include "ratnerlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "ratnerlab/errors.hpp"
#include "ratnerlab/rng.hpp"
#include "ratnerlab/tolerances.hpp"

namespace ratnerlab::entropy {

namespace {

double plogp_inv(double w) { return w > 0.0 ? -w * std::log(w) : 0.0; }

void check_weights(const std::vector<double>& p) {
  double sum = 0.0;
  for (double w : p) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail(ErrorKind::InvalidInput, "negative or non-finite weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol::kProbabilitySum) {
    std::ostringstream os;
    os << "weights sum to " << sum << ", not 1";
    fail(ErrorKind::InvalidInput, os.str());
  }
}

double mod1(double x) {
  const double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

}  // namespace

double entropy(const std::vector<double>& p) {
  check_weights(p);
  double h = 0.0;
  for (double w : p) h += plogp_inv(w);
  return h;
}

// --- partitions ------------------------------------------------------------------

FinitePartition::FinitePartition(std::vector<double> atom_weights, std::vector<int> cell_of_atom)
    : atoms_(std::move(atom_weights)), cell_(std::move(cell_of_atom)) {
  require(!atoms_.empty() && atoms_.size() == cell_.size(), ErrorKind::InvalidInput,
          "partition needs one cell index per atom");
  check_weights(atoms_);
  // Renumber cells densely in order of first appearance.
  std::map<int, int> renumber;
  for (int& c : cell_) {
    auto [it, inserted] = renumber.try_emplace(c, static_cast<int>(renumber.size()));
    c = it->second;
  }
  cells_ = static_cast<int>(renumber.size());
}

FinitePartition FinitePartition::discrete(std::vector<double> atom_weights) {
  std::vector<int> cells(atom_weights.size());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = static_cast<int>(i);
  return {std::move(atom_weights), std::move(cells)};
}

FinitePartition FinitePartition::trivial(std::vector<double> atom_weights) {
  std::vector<int> cells(atom_weights.size(), 0);
  return {std::move(atom_weights), std::move(cells)};
}

std::pair<FinitePartition, FinitePartition> FinitePartition::from_joint_table(const Eigen::MatrixXd& P) {
  std::vector<double> atoms;
  std::vector<int> rows, cols;
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    for (Eigen::Index j = 0; j < P.cols(); ++j) {
      atoms.push_back(P(i, j));
      rows.push_back(static_cast<int>(i));
      cols.push_back(static_cast<int>(j));
    }
  return {FinitePartition(atoms, rows), FinitePartition(atoms, cols)};
}

std::vector<double> FinitePartition::weights() const {
  std::vector<double> w(static_cast<std::size_t>(cells_), 0.0);
  for (std::size_t i = 0; i < atoms_.size(); ++i) w[static_cast<std::size_t>(cell_[i])] += atoms_[i];
  return w;
}

FinitePartition join(const FinitePartition& a, const FinitePartition& b) {
  require(a.atom_weights() == b.atom_weights(), ErrorKind::InvalidInput,
          "partitions live on different spaces");
  std::vector<int> cells(a.atom_weights().size());
  const int nb = b.cell_count();
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = a.cell_of_atom()[i] * nb + b.cell_of_atom()[i];
  return {a.atom_weights(), std::move(cells)};
}

double conditional_entropy(const FinitePartition& b, const FinitePartition& a) {
  require(a.atom_weights() == b.atom_weights(), ErrorKind::InvalidInput,
          "partitions live on different spaces");
  const auto na = static_cast<std::size_t>(a.cell_count());
  const auto nb = static_cast<std::size_t>(b.cell_count());
  std::vector<double> joint(na * nb, 0.0), pa(na, 0.0);
  for (std::size_t i = 0; i < a.atom_weights().size(); ++i) {
    const auto ca = static_cast<std::size_t>(a.cell_of_atom()[i]);
    const auto cb = static_cast<std::size_t>(b.cell_of_atom()[i]);
    joint[ca * nb + cb] += a.atom_weights()[i];
    pa[ca] += a.atom_weights()[i];
  }
  double h = 0.0;
  for (std::size_t ca = 0; ca < na; ++ca) {
    if (pa[ca] <= 0.0) continue;
    double hc = 0.0;
    for (std::size_t cb = 0; cb < nb; ++cb) hc += plogp_inv(joint[ca * nb + cb] / pa[ca]);
    h += pa[ca] * hc;
  }
  return h;
}

// --- model systems ---------------------------------------------------------------

std::string SymbolicSystem::name() const {
  std::ostringstream os;
  switch (kind) {
    case SystemKind::Rotation: os << "rotation(" << beta << ")"; break;
    case SystemKind::Bernoulli: os << "bernoulli(" << p << ")"; break;
    case SystemKind::Baker: os << "baker"; break;
  }
  if (inverse) os << "^-1";
  return os.str();
}

namespace {

std::vector<CellClass> rotation_cells(double beta, int k) {
  if (2L * k > kMaxRotationArcs) fail(ErrorKind::CapExceeded, "rotation join exceeds the arc cap");
  // T^-j of the half-circle partition has endpoints -j beta and 1/2 - j beta.
  std::vector<double> ends;
  ends.reserve(2 * static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    ends.push_back(mod1(-j * beta));
    ends.push_back(mod1(0.5 - j * beta));
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end(), [](double x, double y) { return y - x <= 1e-15; }),
             ends.end());
  if (ends.size() > 1 && ends.back() - ends.front() >= 1.0 - 1e-15) ends.pop_back();

  // Arcs merge into one cell when their itineraries agree.
  std::map<std::vector<bool>, double> cells;
  std::vector<bool> word(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const double lo = ends[i];
    const double hi = i + 1 < ends.size() ? ends[i + 1] : ends.front() + 1.0;
    const double mid = 0.5 * (lo + hi);
    for (int j = 0; j < k; ++j) word[static_cast<std::size_t>(j)] = mod1(mid + j * beta) >= 0.5;
    cells[word] += hi - lo;
  }
  std::vector<CellClass> out;
  out.reserve(cells.size());
  for (const auto& [w, len] : cells) out.push_back({len, 1.0});
  return out;
}

std::vector<CellClass> bernoulli_cells(double p, int k) {
  if (k > kMaxBernoulliK) fail(ErrorKind::CapExceeded, "shift join beyond k = 60");
  std::vector<CellClass> out;
  // Words with j ones: C(k, j) cylinders of weight p^j (1-p)^(k-j).
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    const double w = std::pow(p, j) * std::pow(1.0 - p, k - j);
    if (w > 0.0) out.push_back({w, binom});
    binom = binom * (k - j) / (j + 1);
  }
  return out;
}

}  // namespace

std::vector<CellClass> iterated_join_cells(const SymbolicSystem& sys, int k) {
  require(k >= 1, ErrorKind::InvalidInput, "k must be at least 1");
  switch (sys.kind) {
    case SystemKind::Rotation:
      return rotation_cells(sys.inverse ? -sys.beta : sys.beta, k);
    case SystemKind::Bernoulli:
      require(sys.p >= 0.0 && sys.p <= 1.0, ErrorKind::InvalidInput, "p must lie in [0, 1]");
      // The coordinates read by T^{-j} are 0..k-1 for T and 0..-(k-1) for
      // T^{-1}; both carry the same product measure.
      return bernoulli_cells(sys.p, k);
    case SystemKind::Baker:
      // Isomorphic to the Bernoulli(1/2) shift, left/right mapped to the
      // zeroth coordinate (binary digits of x forward, of y backward).
      return bernoulli_cells(0.5, k);
  }
  fail(ErrorKind::InvalidInput, "unknown system");
}

double iterated_information(const SymbolicSystem& sys, int k) {
  double h = 0.0;
  for (const auto& c : iterated_join_cells(sys, k))
    if (c.weight > 0.0) h += c.count * c.weight * -std::log(c.weight);
  return h;
}

EntropyRate entropy_rate(const SymbolicSystem& sys, int k_max) {
  require(k_max >= 2, ErrorKind::InvalidInput, "k_max must be at least 2");
  EntropyRate r{{}, {}, 0.0, -std::numeric_limits<double>::infinity()};
  for (int k = 1; k <= k_max; ++k) {
    r.Ek.push_back(iterated_information(sys, k));
    r.rate.push_back(r.Ek.back() / k);
  }
  for (int k = 1; k < k_max; ++k)
    for (int l = 1; k + l <= k_max; ++l)
      r.max_subadditivity_excess =
          std::max(r.max_subadditivity_excess, r.Ek[k + l - 1] - r.Ek[k - 1] - r.Ek[l - 1]);
  r.terminal = r.rate.back();
  return r;
}

double empirical_iterated_information(const SymbolicSystem& sys, int k, std::size_t samples,
                                      std::uint64_t seed) {
  require(k >= 1 && k <= 40, ErrorKind::InvalidInput, "empirical k must lie in 1..40");
  require(samples >= 1, ErrorKind::InvalidInput, "need at least one sample");
  Rng rng(seed);
  std::unordered_map<std::uint64_t, std::size_t> counts;
  for (std::size_t s = 0; s < samples; ++s) {
    std::uint64_t word = 0;
    switch (sys.kind) {
      case SystemKind::Rotation: {
        const double step = sys.inverse ? -sys.beta : sys.beta;
        double t = rng.uniform();
        for (int j = 0; j < k; ++j) {
          word = (word << 1) | (t >= 0.5 ? 1u : 0u);
          t = mod1(t + step);
        }
        break;
      }
      case SystemKind::Bernoulli:
        for (int j = 0; j < k; ++j) word = (word << 1) | (rng.uniform() < sys.p ? 1u : 0u);
        break;
      case SystemKind::Baker: {
        double x = rng.uniform(), y = rng.uniform();
        for (int j = 0; j < k; ++j) {
          word = (word << 1) | (x > 0.5 ? 1u : 0u);
          if (!sys.inverse) {
            if (x <= 0.5) { x = 2.0 * x; y = 0.5 * y; }
            else { x = 2.0 * x - 1.0; y = 0.5 * (y + 1.0); }
          } else {
            if (y <= 0.5) { x = 0.5 * x; y = 2.0 * y; }
            else { x = 0.5 * (x + 1.0); y = 2.0 * y - 1.0; }
          }
        }
        break;
      }
    }
    ++counts[word];
  }
  double h = 0.0;
  const double n = static_cast<double>(samples);
  for (const auto& [w, c] : counts) h += plogp_inv(static_cast<double>(c) / n);
  return h;
}

double stretch_entropy(const std::vector<StretchFactor>& spec) {
  double h = 0.0;
  for (const auto& s : spec) {
    require(s.tau > 0.0 && s.dim >= 1, ErrorKind::InvalidInput, "stretch factors need tau > 0, dim >= 1");
    if (s.tau > 1.0) h += s.dim * std::log(s.tau);
  }
  return h;
}

double translation_entropy(const Eigen::MatrixXd& g, const group::LieAlgebra& alg) {
  const Eigen::MatrixXd ad = alg.adjoint_of(g);
  return group::log_jacobian(ad, group::horospherical_subalgebra(alg, ad));
}

}  // namespace ratnerlab::entropy
