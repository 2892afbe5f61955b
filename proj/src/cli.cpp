#include "ratnerlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <type_traits>

#include <CLI11.hpp>

#include "ratnerlab/csv.hpp"
#include "ratnerlab/entropy.hpp"
#include "ratnerlab/errors.hpp"
#include "ratnerlab/flows.hpp"
#include "ratnerlab/group_algebra.hpp"
#include "ratnerlab/lie_algebra.hpp"
#include "ratnerlab/parse.hpp"
#include "ratnerlab/quadforms.hpp"
#include "ratnerlab/shearing.hpp"

namespace ratnerlab::cli {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// --- input helpers ---------------------------------------------------------------

MatrixXd square_matrix(const std::string& text) {
  const std::vector<double> v = parse_real_list(text);
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n < 1 || static_cast<std::size_t>(n * n) != v.size())
    fail(ErrorKind::InvalidInput, "matrix needs a square number of entries");
  MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = v[static_cast<std::size_t>(i * n + j)];
  return m;
}

Eigen::Matrix2d matrix2(const std::string& text) {
  const MatrixXd m = square_matrix(text);
  if (m.rows() != 2) fail(ErrorKind::InvalidInput, "expected four entries a,b,c,d");
  return m;
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  for (double x : parse_real_list(text)) {
    if (x != std::floor(x) || std::abs(x) > 1e9) fail(ErrorKind::InvalidInput, "expected integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

// Either a coordinate list "c1,c2,..." or a combination of basis labels such
// as "H12+H23" or "2*H12-0.5*E31".
VectorXd element(const group::LieAlgebra& alg, const std::string& text) {
  const auto& labels = alg.labels();
  const bool symbolic = std::any_of(labels.begin(), labels.end(), [&](const std::string& l) {
    return text.find(l) != std::string::npos;
  });
  VectorXd x = VectorXd::Zero(alg.dim());
  if (!symbolic) {
    const auto c = parse_real_list(text);
    if (static_cast<int>(c.size()) != alg.dim()) fail(ErrorKind::InvalidInput, "coordinate count mismatch");
    for (int i = 0; i < alg.dim(); ++i) x(i) = c[static_cast<std::size_t>(i)];
    return x;
  }
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = pos + 1;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(pos, end - pos);
    pos = end;
    double sign = 1.0;
    if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
      sign = term[0] == '-' ? -1.0 : 1.0;
      term.erase(0, 1);
    }
    double coef = 1.0;
    const auto star = term.rfind('*');
    if (star != std::string::npos) {
      coef = parse_real(term.substr(0, star));
      term = term.substr(star + 1);
    }
    const auto it = std::find(labels.begin(), labels.end(), term);
    if (it == labels.end()) fail(ErrorKind::InvalidInput, "unknown basis label '" + term + "'");
    x(it - labels.begin()) += sign * coef;
  }
  return x;
}

group::LieAlgebra algebra(const std::string& name, const std::string& file) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open algebra file " + file);
    return group::LieAlgebra::parse(in);
  }
  if (name == "sl2") return group::LieAlgebra::sl2();
  if (name == "sl3") return group::LieAlgebra::sl3();
  if (name == "sl2+sl2") return group::LieAlgebra::sl2_sum_sl2();
  fail(ErrorKind::InvalidInput, "unknown algebra '" + name + "' (sl2, sl3, sl2+sl2)");
}

flows::FlowKind flow_kind(const std::string& s) {
  if (s == "geodesic") return flows::FlowKind::Geodesic;
  if (s == "horocycle") return flows::FlowKind::Horocycle;
  fail(ErrorKind::InvalidInput, "flow kind must be geodesic or horocycle");
}

entropy::SymbolicSystem system(const std::string& kind, double beta, double p, bool inverse) {
  entropy::SymbolicSystem s = kind == "rotation"    ? entropy::SymbolicSystem::rotation(beta)
                              : kind == "bernoulli" ? entropy::SymbolicSystem::bernoulli(p)
                              : kind == "baker"     ? entropy::SymbolicSystem::baker()
                                                    : (fail(ErrorKind::InvalidInput,
                                                            "system must be rotation, bernoulli or baker"),
                                                       entropy::SymbolicSystem::baker());
  return inverse ? s.inverted() : s;
}

std::string int_vector(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

// --- command table ---------------------------------------------------------------

class Output {
 public:
  Output(std::ostream& fallback, const std::string& path, std::string config)
      : fallback_(fallback), config_(std::move(config)) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) fail(ErrorKind::InvalidInput, "cannot open output file " + path);
    }
  }
  CsvWriter table(const std::vector<std::string>& header) {
    return CsvWriter(file_ ? static_cast<std::ostream&>(*file_) : fallback_, config_, header);
  }

 private:
  std::ostream& fallback_;
  std::unique_ptr<std::ofstream> file_;
  std::string config_;
};

struct Leaf {
  CLI::App* app = nullptr;
  std::string path;
  std::string out = "-";
  std::function<void(Output&)> action;
};

class Registry {
 public:
  explicit Registry(CLI::App& root) : root_(root) {}

  // Adds the leaf `name` under `parent` (or the root) with an --out option.
  Leaf& leaf(CLI::App* parent, const std::string& name, const std::string& description) {
    auto l = std::make_unique<Leaf>();
    CLI::App* host = parent ? parent : &root_;
    l->app = host->add_subcommand(name, description);
    l->path = parent ? parent->get_name() + " " + name : name;
    l->app->add_option("--out", l->out, "output file, - for standard output")->capture_default_str();
    leaves_.push_back(std::move(l));
    return *leaves_.back();
  }

  Leaf* parsed() const {
    for (const auto& l : leaves_)
      if (l->app->parsed()) return l.get();
    return nullptr;
  }

 private:
  CLI::App& root_;
  std::vector<std::unique_ptr<Leaf>> leaves_;
};

std::string config_line(const Leaf& leaf) {
  std::ostringstream os;
  os << leaf.path;
  for (const CLI::Option* opt : leaf.app->get_options()) {
    const std::string name = opt->get_name();
    if (name == "--help") continue;
    std::string value;
    if (opt->get_expected_max() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
    } else {
      value = opt->get_default_str();
    }
    os << ' ' << name << '=' << value;
  }
  return os.str();
}

// Real options accept expressions; the value is replaced by its evaluation.
const CLI::Validator real_expression(
    [](std::string& text) -> std::string {
      try {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", parse_real(text));
        text = buf;
        return {};
      } catch (const std::exception& e) {
        return e.what();
      }
    },
    "REAL");

template <class T>
CLI::Option* opt(CLI::App* app, const std::string& name, T& target, const std::string& help) {
  CLI::Option* o = app->add_option(name, target, help)->capture_default_str();
  if constexpr (std::is_floating_point_v<T>) o->transform(real_expression);
  return o;
}

// --- subcommands -----------------------------------------------------------------

void add_flow(Registry& reg, CLI::App& root) {
  CLI::App* flow = root.add_subcommand("flow", "geodesic and horocycle flows on SL(2,Z)\\SL(2,R)");
  flow->require_subcommand(1);

  struct Common {
    std::string kind = "horocycle";
    std::string g0 = "1,0,0,1";
    double dt = 0.01;
  };
  auto add_common = [](CLI::App* app, Common& c) {
    opt(app, "--kind", c.kind, "geodesic or horocycle")->check(CLI::IsMember({"geodesic", "horocycle"}));
    opt(app, "--g0", c.g0, "starting element a,b,c,d (row-major)");
    opt(app, "--dt", c.dt, "time step")->check(CLI::PositiveNumber);
  };

  {
    auto st = std::make_shared<std::pair<Common, double>>(Common{}, 10.0);
    auto every = std::make_shared<int>(1);
    Leaf& l = reg.leaf(flow, "orbit", "orbit trace t,x,y of the reduced points");
    add_common(l.app, st->first);
    opt(l.app, "--T", st->second, "final time")->check(CLI::NonNegativeNumber);
    opt(l.app, "--every", *every, "write every n-th sample")->check(CLI::PositiveNumber);
    l.action = [st, every](Output& out) {
      auto csv = out.table({"t", "x", "y"});
      const auto times = flows::time_grid(st->second, st->first.dt);
      std::size_t i = 0;
      flows::walk_orbit(flow_kind(st->first.kind), matrix2(st->first.g0), times,
                        [&](double t, const flows::CosetRep& r) {
                          if (i++ % static_cast<std::size_t>(*every) == 0 || t == times.back())
                            csv.row(t, r.point.x(), r.point.y());
                        });
    };
  }
  {
    struct State {
      Common c;
      std::string T = "100,1000,10000";
      std::string heights = "2,1.5";
      double ramp = 0.05;
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(flow, "equidist", "time averages against space averages of smoothed height indicators");
    add_common(l.app, st->c);
    opt(l.app, "--T", st->T, "comma list of horizons");
    opt(l.app, "--heights", st->heights, "comma list of h for the indicators of y <= h");
    opt(l.app, "--ramp", st->ramp, "half-width of the linear smoothing ramp")->check(CLI::PositiveNumber);
    l.action = [st](Output& out) {
      std::vector<flows::TestFunction> fs{flows::constant_function(1.0)};
      for (double h : parse_real_list(st->heights)) fs.push_back(flows::smoothed_height_indicator(h, st->ramp));
      const auto rows = flows::equidistribution_report(flow_kind(st->c.kind), matrix2(st->c.g0), fs,
                                                       parse_real_list(st->T), st->c.dt);
      auto csv = out.table({"T", "function", "time_avg", "space_avg", "deviation", "max_deviation"});
      for (const auto& r : rows) csv.row(r.T, r.function, r.time_avg, r.space_avg, r.deviation, r.max_deviation);
    };
  }
  {
    struct State {
      Common c;
      double T = 10000.0;
      std::string heights = "10";
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(flow, "nondiv", "fraction of time spent above given heights");
    add_common(l.app, st->c);
    opt(l.app, "--T", st->T, "final time")->check(CLI::PositiveNumber);
    opt(l.app, "--heights", st->heights, "comma list of heights");
    l.action = [st](Output& out) {
      const auto hs = parse_real_list(st->heights);
      std::vector<std::size_t> above(hs.size(), 0);
      std::size_t n = 0;
      flows::walk_orbit(flow_kind(st->c.kind), matrix2(st->c.g0), flows::time_grid(st->T, st->c.dt),
                        [&](double, const flows::CosetRep& r) {
                          ++n;
                          for (std::size_t i = 0; i < hs.size(); ++i)
                            if (r.point.y() > hs[i]) ++above[i];
                        });
      auto csv = out.table({"h", "fraction"});
      for (std::size_t i = 0; i < hs.size(); ++i)
        csv.row(hs[i], static_cast<double>(above[i]) / static_cast<double>(n));
    };
  }
}

void add_torus(Registry& reg, CLI::App& root) {
  CLI::App* torus = root.add_subcommand("torus", "linear flows on tori");
  torus->require_subcommand(1);
  {
    struct State {
      std::string v = "sqrt2,1,0";
      int H = 50;
      double tol = 1e-9;
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(torus, "closure", "heuristic orbit-closure dimension from integer relations");
    opt(l.app, "--v", st->v, "direction vector");
    opt(l.app, "--H", st->H, "relation height bound")->check(CLI::PositiveNumber);
    opt(l.app, "--tol", st->tol, "relation tolerance")->check(CLI::PositiveNumber);
    l.action = [st](Output& out) {
      const auto c = flows::torus_orbit_closure(parse_real_list(st->v), st->H, st->tol);
      auto csv = out.table({"dimension", "heuristic", "relation"});
      if (c.relations.empty()) csv.row(c.dimension, "true", "");
      for (const auto& m : c.relations) csv.row(c.dimension, "true", int_vector(m));
    };
  }
  {
    struct State {
      std::string v = "sqrt2,1";
      std::string x0;
      std::string m = "1,0";
      std::string T = "100,1000,10000";
      double dt = 0.01;
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(torus, "average", "time averages of cos(2 pi m.x) along x0 + t v");
    opt(l.app, "--v", st->v, "direction vector");
    opt(l.app, "--x0", st->x0, "starting point (default 0)");
    opt(l.app, "--m", st->m, "integer frequency vector");
    opt(l.app, "--T", st->T, "comma list of horizons");
    opt(l.app, "--dt", st->dt, "time step")->check(CLI::PositiveNumber);
    l.action = [st](Output& out) {
      const auto v = parse_real_list(st->v);
      auto x0 = st->x0.empty() ? std::vector<double>(v.size(), 0.0) : parse_real_list(st->x0);
      const auto m = int_list(st->m);
      if (m.size() != v.size()) fail(ErrorKind::InvalidInput, "frequency and direction dimensions differ");
      const flows::TorusState s(x0, v);
      auto f = [&](const std::vector<double>& x) {
        double dot = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) dot += m[i] * x[i];
        return std::cos(2.0 * std::numbers::pi * dot);
      };
      const bool zero = std::all_of(m.begin(), m.end(), [](int k) { return k == 0; });
      auto csv = out.table({"T", "time_avg", "space_avg"});
      for (double T : parse_real_list(st->T))
        csv.row(T, flows::torus_time_average(s, f, T, st->dt), zero ? 1.0 : 0.0);
    };
  }
}

void add_shear(Registry& reg, CLI::App& root) {
  CLI::App* shear = root.add_subcommand("shear", "shearing and polynomial divergence");
  shear->require_subcommand(1);
  {
    struct State {
      std::string q = "1,1e-6,0,1";
      double tmax = 2000.0;
      int steps = 20;
      double L = 1.0;
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(shear, "table", "entries of u^-t q u^t - I along t");
    opt(l.app, "--q", st->q, "matrix a,b,c,d with det 1");
    opt(l.app, "--tmax", st->tmax, "largest t")->check(CLI::PositiveNumber);
    opt(l.app, "--steps", st->steps, "number of intervals")->check(CLI::PositiveNumber);
    opt(l.app, "--L", st->L, "threshold for the first-divergence row")->check(CLI::PositiveNumber);
    l.action = [st](Output& out) {
      const auto d = shearing::unipotent_displacement(matrix2(st->q));
      std::vector<double> ts;
      for (int i = 0; i <= st->steps; ++i) ts.push_back(st->tmax * i / st->steps);
      auto csv = out.table({"t", "e11", "e12", "e21", "e22", "dominant"});
      auto emit = [&](const shearing::DivergenceRow& r) {
        csv.row(r.t, r.abs_entries(0, 0), r.abs_entries(0, 1), r.abs_entries(1, 0), r.abs_entries(1, 1),
                std::to_string(r.dominant_row) + std::to_string(r.dominant_col));
      };
      for (const auto& r : shearing::divergence_table(d, ts)) emit(r);
      try {
        const auto fd = shearing::first_divergence(d, st->L);
        auto row = shearing::divergence_table(d, {fd.t_star}).front();
        row.dominant_row = fd.row;
        row.dominant_col = fd.col;
        emit(row);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoDivergence) throw;
      }
    };
  }
  {
    struct State {
      int dmax = 8;
      std::string delta = "1";
      std::string poly;
      double k = 0.0;
      double len = 1.0;
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(shear, "extension", "polynomial extension factors");
    opt(l.app, "--dmax", st->dmax, "monomial family t^d, d = 1..dmax, on [0,1]")->check(CLI::Range(1, 8));
    opt(l.app, "--delta", st->delta, "comma list of delta values");
    opt(l.app, "--poly", st->poly, "single polynomial, coefficients in increasing degree");
    opt(l.app, "--k", st->k, "interval start for --poly");
    opt(l.app, "--len", st->len, "interval length for --poly")->check(CLI::PositiveNumber);
    l.action = [st](Output& out) {
      const auto deltas = parse_real_list(st->delta);
      auto csv = out.table({"degree", "delta", "eps"});
      auto fmt = [](double e) { return std::isinf(e) ? std::string("inf") : csv_field(e); };
      if (!st->poly.empty()) {
        const Polynomial f(parse_real_list(st->poly));
        for (double d : deltas)
          csv.row(f.degree(), d, fmt(shearing::polynomial_extension_factor(f, st->k, st->len, d)));
        return;
      }
      for (double d : deltas)
        for (int deg = 1; deg <= st->dmax; ++deg) {
          std::vector<double> c(static_cast<std::size_t>(deg) + 1, 0.0);
          c.back() = 1.0;
          csv.row(deg, d, fmt(shearing::polynomial_extension_factor(Polynomial(c), 0.0, 1.0, d)));
        }
    };
  }
  {
    auto r = std::make_shared<std::pair<double, double>>(0.3, 0.3);
    Leaf& l = reg.leaf(shear, "joint", "joint divergence of (v^r1, v^r2) under the diagonal unipotent flow");
    opt(l.app, "--r1", r->first, "first component");
    opt(l.app, "--r2", r->second, "second component");
    l.action = [r](Output& out) {
      const auto j = shearing::joint_transverse_divergence(r->first, r->second);
      auto csv = out.table({"component", "entry", "c0", "c1", "c2", "verdict"});
      const std::string verdict = j.diagonal ? "diagonal" : "off-diagonal";
      const char* names[] = {"11", "12", "21", "22"};
      for (int comp = 0; comp < 2; ++comp) {
        const auto& p = comp == 0 ? j.first : j.second;
        for (int e = 0; e < 4; ++e)
          csv.row(comp + 1, names[e], p.entries[e].coefficient(0), p.entries[e].coefficient(1),
                  p.entries[e].coefficient(2), verdict);
      }
    };
  }
}

void add_entropy(Registry& reg, CLI::App& root) {
  CLI::App* ent = root.add_subcommand("entropy", "partition entropy and entropy rates");
  ent->require_subcommand(1);
  {
    struct State {
      std::string system = "bernoulli";
      double beta = std::sqrt(3.0) / 100.0;
      double p = 0.5;
      int kmax = 20;
      bool inverse = false;
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(ent, "rate", "E^k and E^k / k for a model system");
    opt(l.app, "--system", st->system, "rotation, bernoulli or baker")
        ->check(CLI::IsMember({"rotation", "bernoulli", "baker"}));
    opt(l.app, "--beta", st->beta, "rotation number");
    opt(l.app, "--p", st->p, "Bernoulli probability")->check(CLI::Range(0.0, 1.0));
    opt(l.app, "--kmax", st->kmax, "largest k")->check(CLI::Range(2, 5000));
    l.app->add_flag("--inverse", st->inverse, "use the inverse map");
    l.action = [st](Output& out) {
      const auto sys = system(st->system, st->beta, st->p, st->inverse);
      const auto r = entropy::entropy_rate(sys, st->kmax);
      auto csv = out.table({"system", "k", "Ek", "Ek_over_k"});
      for (std::size_t k = 1; k <= r.Ek.size(); ++k) csv.row(sys.name(), k, r.Ek[k - 1], r.rate[k - 1]);
    };
  }
  {
    struct State {
      std::string weights = "0.5,0.25,0.25";
      std::string joint;
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(ent, "partition", "entropy of a weight vector or of a joint table");
    opt(l.app, "--weights", st->weights, "probability vector");
    opt(l.app, "--joint", st->joint, "joint table, rows separated by ';'");
    l.action = [st](Output& out) {
      auto csv = out.table({"quantity", "value"});
      if (st->joint.empty()) {
        csv.row("H", entropy::entropy(parse_real_list(st->weights)));
        return;
      }
      const auto rows = split(st->joint, ';');
      std::vector<std::vector<double>> vals;
      for (const auto& r : rows) vals.push_back(parse_real_list(r));
      MatrixXd P(static_cast<Eigen::Index>(vals.size()), static_cast<Eigen::Index>(vals.front().size()));
      for (std::size_t i = 0; i < vals.size(); ++i) {
        if (vals[i].size() != vals.front().size()) fail(ErrorKind::InvalidInput, "ragged joint table");
        for (std::size_t j = 0; j < vals[i].size(); ++j)
          P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vals[i][j];
      }
      const auto [A, B] = entropy::FinitePartition::from_joint_table(P);
      csv.row("H(A)", A.entropy());
      csv.row("H(B)", B.entropy());
      csv.row("H(AvB)", entropy::join(A, B).entropy());
      csv.row("H(B|A)", entropy::conditional_entropy(B, A));
    };
  }
  {
    auto spec = std::make_shared<std::string>("2:1,0.5:1");
    Leaf& l = reg.leaf(ent, "stretch", "entropy from expansion factors tau:dim");
    opt(l.app, "--spec", *spec, "comma list of tau:dim");
    l.action = [spec](Output& out) {
      std::vector<entropy::StretchFactor> factors;
      for (const auto& item : split(*spec, ',')) {
        const auto colon = item.rfind(':');
        if (colon == std::string::npos) fail(ErrorKind::InvalidInput, "expected tau:dim, got '" + item + "'");
        const double d = parse_real(item.substr(colon + 1));
        if (d != std::floor(d)) fail(ErrorKind::InvalidInput, "dimension must be an integer");
        factors.push_back({parse_real(item.substr(0, colon)), static_cast<int>(d)});
      }
      out.table({"entropy"}).row(entropy::stretch_entropy(factors));
    };
  }
  {
    struct State {
      std::string algebra = "sl2";
      std::string file;
      std::string g = "exp(1),0,0,exp(-1)";
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(ent, "translation", "log J(g, G+) for a group element in the defining representation");
    opt(l.app, "--algebra", st->algebra, "sl2, sl3 or sl2+sl2");
    opt(l.app, "--algebra-file", st->file, "structure-constant file with a matrix realization");
    opt(l.app, "--g", st->g, "group element, row-major");
    l.action = [st](Output& out) {
      const auto alg = algebra(st->algebra, st->file);
      const MatrixXd g = square_matrix(st->g);
      const auto expanding = group::horospherical_subalgebra(alg, alg.adjoint_of(g));
      out.table({"expanding_dim", "entropy"}).row(expanding.size(), entropy::translation_entropy(g, alg));
    };
  }
}

void add_qform(Registry& reg, CLI::App& root) {
  CLI::App* qf = root.add_subcommand("qform", "values of quadratic forms");
  qf->require_subcommand(1);
  const std::string form_help = "upper triangle of the symmetric matrix, row-major";
  {
    struct State {
      std::string form = "1,-sqrt2/2,0,0,0,sqrt3";
      double r = 0.5, eps = 0.01;
      int N = 200;
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(qf, "search", "first integer vector with |Q(v) - r| < eps");
    opt(l.app, "--form", st->form, form_help);
    opt(l.app, "--r", st->r, "target value");
    opt(l.app, "--eps", st->eps, "tolerance")->check(CLI::PositiveNumber);
    opt(l.app, "--N", st->N, "sup-norm bound")->check(CLI::PositiveNumber);
    l.action = [st](Output& out) {
      const auto Q = quadforms::QuadraticForm::from_upper_triangle(parse_real_list(st->form));
      const auto hit = quadforms::oppenheim_search(Q, st->r, st->eps, st->N);
      auto csv = out.table({"found", "v", "value"});
      if (hit) csv.row("true", int_vector(hit->v), hit->value);
      else csv.row("false", "", "");
    };
  }
  {
    struct State {
      std::string form = "1,0,-1";
      double a = -0.5, b = 0.5;
      std::string N = "10";
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(qf, "count", "lattice points with a < Q(v) < b in the Euclidean ball of radius N");
    opt(l.app, "--form", st->form, form_help);
    opt(l.app, "--a", st->a, "lower bound");
    opt(l.app, "--b", st->b, "upper bound");
    opt(l.app, "--N", st->N, "comma list of radii");
    l.action = [st](Output& out) {
      const auto Q = quadforms::QuadraticForm::from_upper_triangle(parse_real_list(st->form));
      std::vector<std::pair<int, std::int64_t>> rows;
      for (int N : int_list(st->N)) rows.emplace_back(N, quadforms::count_values(Q, st->a, st->b, N));
      auto csv = out.table({"N", "count"});
      for (const auto& [N, c] : rows) csv.row(N, c);
    };
  }
  {
    struct State {
      std::string form = "1,0,0,0,1,0,0,1,0,-sqrt2";
      double a = -1.0, b = 1.0;
      std::string N = "10,20,40";
      std::size_t samples = 4'000'000;
      std::uint64_t seed = 0;
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(qf, "ratio", "lattice count against Monte Carlo volume");
    opt(l.app, "--form", st->form, form_help);
    opt(l.app, "--a", st->a, "lower bound");
    opt(l.app, "--b", st->b, "upper bound");
    opt(l.app, "--N", st->N, "comma list of radii");
    opt(l.app, "--samples", st->samples, "Monte Carlo samples per radius")->check(CLI::PositiveNumber);
    opt(l.app, "--seed", st->seed, "master seed");
    l.action = [st](Output& out) {
      const auto Q = quadforms::QuadraticForm::from_upper_triangle(parse_real_list(st->form));
      const auto t = quadforms::counting_ratio_table(Q, st->a, st->b, int_list(st->N), st->samples, st->seed);
      auto csv = out.table({"N", "count", "volume", "stderr", "ratio", "fitted_exponent", "expected_exponent"});
      for (const auto& r : t.rows)
        csv.row(r.N, r.count, r.volume, r.standard_error, r.ratio_defined() ? csv_field(r.ratio) : "undefined",
                t.fitted_exponent, t.expected_exponent);
    };
  }
  {
    auto st = std::make_shared<std::pair<int, int>>(2000, 100);
    Leaf& l = reg.leaf(qf, "gap", "running minimum of |x^2 - (3 + 2 sqrt2) y^2|");
    opt(l.app, "--R", st->first, "sup-norm range")->check(CLI::PositiveNumber);
    opt(l.app, "--every", st->second, "write every n-th R")->check(CLI::PositiveNumber);
    l.action = [st](Output& out) {
      const auto g = quadforms::gap_analysis(st->first);
      auto csv = out.table({"R", "min_abs", "p", "q"});
      for (const auto& r : g.running)
        if (r.R % st->second == 0 || r.R == 1 || r.R == st->first) csv.row(r.R, r.min_abs, r.p, r.q);
    };
  }
  {
    auto form = std::make_shared<std::string>("1,0,0,1,0,-1");
    Leaf& l = reg.leaf(qf, "signature", "eigenvalue sign counts (p, q, z)");
    opt(l.app, "--form", *form, form_help);
    l.action = [form](Output& out) {
      const auto s = quadforms::QuadraticForm::from_upper_triangle(parse_real_list(*form)).signature();
      out.table({"p", "q", "z"}).row(s.p, s.q, s.z);
    };
  }
}

void add_algebra(Registry& reg) {
  {
    auto m = std::make_shared<std::string>("2,1,1,1");
    Leaf& l = reg.leaf(nullptr, "jordan", "real Jordan decomposition g = unip hyp ell");
    opt(l.app, "--matrix", *m, "invertible matrix, row-major");
    l.action = [m](Output& out) {
      const MatrixXd g = square_matrix(*m);
      const auto t = group::real_jordan_decompose(g);
      const double noise = 1e-14 * std::max(1.0, group::max_norm(g));
      std::vector<std::string> header{"component"};
      for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j) header.push_back("m" + std::to_string(i + 1) + std::to_string(j + 1));
      auto csv = out.table(header);
      auto emit = [&](const std::string& name, const MatrixXd& c) {
        std::vector<std::string> f{name};
        for (Eigen::Index i = 0; i < c.rows(); ++i)
          for (Eigen::Index j = 0; j < c.cols(); ++j) f.push_back(csv_field(std::abs(c(i, j)) < noise ? 0.0 : c(i, j)));
        csv.write(f);
      };
      emit("unip", t.unip);
      emit("hyp", t.hyp);
      emit("ell", t.ell);
    };
  }
  {
    struct State {
      std::string algebra = "sl3";
      std::string file;
      std::string a = "H12+H23";
      std::string U = "E31";
    };
    auto st = std::make_shared<State>();
    Leaf& l = reg.leaf(nullptr, "stilde", "basis of the S~ subalgebra for a and U");
    opt(l.app, "--algebra", st->algebra, "sl2, sl3 or sl2+sl2");
    opt(l.app, "--algebra-file", st->file, "structure-constant file");
    opt(l.app, "--a", st->a, "element a: coordinates or a label combination");
    opt(l.app, "--U", st->U, "basis of U, elements separated by ';'");
    l.action = [st](Output& out) {
      const auto alg = algebra(st->algebra, st->file);
      const auto parts = split(st->U, ';');
      group::SubalgebraBasis U{MatrixXd(alg.dim(), 0)};
      for (const auto& p : parts) {
        if (p.empty()) continue;
        U.basis.conservativeResize(Eigen::NoChange, U.basis.cols() + 1);
        U.basis.col(U.basis.cols() - 1) = element(alg, p);
      }
      const auto S = group::compute_s_tilde(alg, element(alg, st->a), U);
      std::vector<std::string> header{"basis_index"};
      for (const auto& lab : alg.labels()) header.push_back(lab);
      auto csv = out.table(header);
      for (int j = 0; j < S.size(); ++j) {
        std::vector<std::string> f{std::to_string(j)};
        for (int i = 0; i < alg.dim(); ++i) {
          const double c = S.basis(i, j);
          f.push_back(csv_field(std::abs(c) < 1e-14 ? 0.0 : c));
        }
        csv.write(f);
      }
    };
  }
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App root("Numerical laboratory for unipotent flows, entropy and quadratic forms", "ratnerlab");
  root.require_subcommand(1);
  Registry reg(root);
  add_flow(reg, root);
  add_torus(reg, root);
  add_shear(reg, root);
  add_entropy(reg, root);
  add_qform(reg, root);
  add_algebra(reg);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    root.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << root.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << root.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << root.help();
    return kValidationError;
  }

  Leaf* leaf = reg.parsed();
  if (!leaf) {
    err << root.help();
    return kValidationError;
  }
  try {
    Output output(out, leaf->out, config_line(*leaf));
    leaf->action(output);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_validation() ? kValidationError : kNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
  return kOk;
}

}  // namespace ratnerlab::cli
