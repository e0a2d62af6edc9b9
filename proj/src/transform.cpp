#include "tailgof/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "tailgof/errors.hpp"
#include "tailgof/parallel.hpp"

namespace tailgof {

namespace {

constexpr double kGammaZeroSwitch = 1e-6;
constexpr double kConditionLimit = 1e12;

// Measure density passed down to the shared core. Arguments are (s, t,
// family_density_at_st); the empirical variant returns -sqrt(k) * family
// density, the smooth variant ignores the third argument.
using MeasureDensity = std::function<double(double, double, double)>;

// Per-grid score evaluator. Precomputes everything that depends on a single
// coordinate (margin helper functions, powers, logs) so that the per-cell
// work is a handful of arithmetic operations plus at most one log and one
// exp. Produces the same values as score_vector restricted to the effective
// basis; the equivalence is pinned by tests.
class ScoreGrid {
 public:
  ScoreGrid(const TailCopulaFamily& family, double gamma1, double gamma2, std::vector<double> xs,
            std::vector<double> ys)
      : xs_(std::move(xs)), ys_(std::move(ys)) {
    nb_ = effective_basis_dim(family);
    with_theta_ = nb_ > 6;
    logistic_ = family.id() == family_id::logistic;
    if (logistic_) {
      theta_ = family.theta()[0];
      a_ = 1.0 / theta_;
      c0_ = (1.0 - theta_) / theta_;
      prep_axis(xs_, lx_, xa_, xa1_);
      prep_axis(ys_, ly_, ya_, ya1_);
    } else {
      psi_ = family.id() == family_id::scaled_model1 ? family.theta()[0] : 1.0;
    }
    fx_.reserve(xs_.size());
    for (double x : xs_) fx_.push_back(fgh(gamma1, x));
    fy_.reserve(ys_.size());
    for (double y : ys_) fy_.push_back(fgh(gamma2, y));
  }

  int nb() const { return nb_; }

  // Writes nb() score components for the cell midpoint (xs[ix], ys[iy]) and
  // returns the family density there.
  double eval(int ix, int iy, double* q) const {
    double rho1, rho2, rho_theta = 0.0, dens;
    const double x = xs_[static_cast<std::size_t>(ix)];
    const double y = ys_[static_cast<std::size_t>(iy)];
    if (logistic_) {
      const double sum = xa_[static_cast<std::size_t>(ix)] + ya_[static_cast<std::size_t>(iy)];
      const double log_sum = std::log(sum);
      const double lx = lx_[static_cast<std::size_t>(ix)];
      const double ly = ly_[static_cast<std::size_t>(iy)];
      rho1 = (a_ - 1.0) / x + (theta_ - 2.0) * a_ * xa1_[static_cast<std::size_t>(ix)] / sum;
      rho2 = (a_ - 1.0) / y + (theta_ - 2.0) * a_ * ya1_[static_cast<std::size_t>(iy)] / sum;
      dens = c0_ * std::exp((a_ - 1.0) * (lx + ly) + (theta_ - 2.0) * log_sum);
      if (with_theta_) {
        const double sum_prime = -(xa_[static_cast<std::size_t>(ix)] * lx +
                                   ya_[static_cast<std::size_t>(iy)] * ly) /
                                 (theta_ * theta_);
        rho_theta = -1.0 / (1.0 - theta_) - 1.0 / theta_ - (lx + ly) / (theta_ * theta_) +
                    log_sum + (theta_ - 2.0) * sum_prime / sum;
      }
    } else {
      const double s2 = x * x + y * y;
      rho1 = 1.0 / x - 3.0 * x / s2;
      rho2 = 1.0 / y - 3.0 * y / s2;
      dens = psi_ * x * y / (s2 * std::sqrt(s2));
    }
    const FGH& A = fx_[static_cast<std::size_t>(ix)];
    const FGH& B = fy_[static_cast<std::size_t>(iy)];
    q[0] = A.fp + A.f * rho1;
    q[1] = A.gp + A.g * rho1;
    q[2] = A.hp + A.h * rho1;
    q[3] = B.fp + B.f * rho2;
    q[4] = B.gp + B.g * rho2;
    q[5] = B.hp + B.h * rho2;
    if (with_theta_) q[6] = rho_theta;
    return dens;
  }

 private:
  void prep_axis(const std::vector<double>& v, std::vector<double>& lv, std::vector<double>& va,
                 std::vector<double>& va1) {
    lv.reserve(v.size());
    va.reserve(v.size());
    va1.reserve(v.size());
    for (double x : v) {
      double l = std::log(x);
      double p1 = std::exp((a_ - 1.0) * l);  // x^{1/theta - 1}
      lv.push_back(l);
      va1.push_back(p1);
      va.push_back(p1 * x);  // x^{1/theta}
    }
  }

  std::vector<double> xs_, ys_;
  std::vector<FGH> fx_, fy_;
  std::vector<double> lx_, ly_, xa_, ya_, xa1_, ya1_;
  int nb_ = 6;
  bool with_theta_ = false;
  bool logistic_ = false;
  double theta_ = 0.0, a_ = 0.0, c0_ = 0.0, psi_ = 1.0;
};

// Effective score at an arbitrary point, via the public evaluators.
void effective_score_at(const TailCopulaFamily& family, double gamma1, double gamma2, double s,
                        double t, Eigen::VectorXd& out) {
  const int nb = effective_basis_dim(family);
  double rho1, rho2;
  std::array<double, 4> rho_theta{};
  const int d = family.dim();
  family.log_density_grads(s, t, rho1, rho2,
                           std::span<double>(rho_theta.data(), static_cast<std::size_t>(d)));
  const FGH A = fgh(gamma1, s);
  const FGH B = fgh(gamma2, t);
  out.resize(nb);
  out[0] = A.fp + A.f * rho1;
  out[1] = A.gp + A.g * rho1;
  out[2] = A.hp + A.h * rho1;
  out[3] = B.fp + B.f * rho2;
  out[4] = B.gp + B.g * rho2;
  out[5] = B.hp + B.h * rho2;
  if (!family.scale_score_redundant()) {
    for (int i = 0; i < d; ++i) out[6 + i] = rho_theta[static_cast<std::size_t>(i)];
  }
}

// Row-and-suffix structures on the integration grid. row[r] holds the
// midpoint-rule integral of q q^T r over the slab s in [delta, T], t in the
// r-th integration cell; suffix[i] = sum of row[r] for r >= i (suffix[I] = 0),
// so that interpolation between boundaries yields I(t) for any t. rowv/suffv
// hold the corresponding integrals of q against the measure density, and
// first_prefix is the inclusive 2-D prefix of the first-term smooth integrand
// (measure density times r^{-1/2}) over integration cells.
struct InfoTables {
  int nb = 0;
  double mesh = 0.0;
  std::vector<double> boundaries;  // I + 1
  std::vector<Eigen::MatrixXd> row, suffix;
  std::vector<Eigen::VectorXd> rowv, suffv;
  Eigen::MatrixXd first_prefix;  // (I+1) x (I+1), index (ix+1, iy+1)
};

InfoTables build_info_tables(const TailCopulaFamily& family, double gamma1, double gamma2,
                             const GridSpec& grid, const MeasureDensity* measure_density,
                             int workers) {
  const int I = grid.integ_cells;
  const std::vector<double> mids = grid.integ_midpoints();
  const ScoreGrid sg(family, gamma1, gamma2, mids, mids);
  InfoTables tab;
  tab.nb = sg.nb();
  tab.mesh = grid.integ_mesh();
  tab.boundaries = grid.integ_boundaries();
  const double cell = tab.mesh * tab.mesh;
  const int nb = tab.nb;
  tab.row.assign(static_cast<std::size_t>(I), Eigen::MatrixXd::Zero(nb, nb));
  Eigen::MatrixXd first(I, I);
  if (measure_density) {
    tab.rowv.assign(static_cast<std::size_t>(I), Eigen::VectorXd::Zero(nb));
    first.setZero();
  }

  parallel_blocks(I, workers, [&](int lo, int hi) {
    std::array<double, 8> q{};
    Eigen::Map<Eigen::VectorXd> qv(q.data(), nb);
    for (int r = lo; r < hi; ++r) {
      Eigen::MatrixXd& M = tab.row[static_cast<std::size_t>(r)];
      for (int c = 0; c < I; ++c) {
        const double dens = sg.eval(c, r, q.data());
        M.selfadjointView<Eigen::Lower>().rankUpdate(qv, dens * cell);
        if (measure_density) {
          const double md = (*measure_density)(mids[static_cast<std::size_t>(c)],
                                               mids[static_cast<std::size_t>(r)], dens);
          tab.rowv[static_cast<std::size_t>(r)].noalias() += qv * (md * cell);
          first(c, r) = md / std::sqrt(dens) * cell;
        }
      }
      M.triangularView<Eigen::StrictlyUpper>() = M.transpose();
    }
  });

  tab.suffix.assign(static_cast<std::size_t>(I) + 1, Eigen::MatrixXd::Zero(nb, nb));
  for (int i = I - 1; i >= 0; --i) {
    tab.suffix[static_cast<std::size_t>(i)] =
        tab.suffix[static_cast<std::size_t>(i) + 1] + tab.row[static_cast<std::size_t>(i)];
  }
  if (measure_density) {
    tab.suffv.assign(static_cast<std::size_t>(I) + 1, Eigen::VectorXd::Zero(nb));
    for (int i = I - 1; i >= 0; --i) {
      tab.suffv[static_cast<std::size_t>(i)] =
          tab.suffv[static_cast<std::size_t>(i) + 1] + tab.rowv[static_cast<std::size_t>(i)];
    }
    tab.first_prefix = Eigen::MatrixXd::Zero(I + 1, I + 1);
    for (int ix = 0; ix < I; ++ix) {
      double acc = 0.0;
      for (int iy = 0; iy < I; ++iy) {
        acc += first(ix, iy);
        tab.first_prefix(ix + 1, iy + 1) = tab.first_prefix(ix, iy + 1) + acc;
      }
    }
  }
  return tab;
}

// Locates t within the boundary list: returns (idx, frac) such that the
// suffix integral from t is suffix[idx] + frac * row[idx - 1] (frac = 0 when
// t coincides with boundary idx; idx = 0 only for t = delta).
std::pair<int, double> locate(const InfoTables& tab, double t) {
  auto it = std::lower_bound(tab.boundaries.begin(), tab.boundaries.end(), t);
  int idx = static_cast<int>(it - tab.boundaries.begin());
  if (idx == 0) return {0, 0.0};
  double frac = (tab.boundaries[static_cast<std::size_t>(idx)] - t) / tab.mesh;
  return {idx, frac};
}

Eigen::MatrixXd info_at(const InfoTables& tab, double t) {
  auto [idx, frac] = locate(tab, t);
  if (idx == 0) return tab.suffix[0];
  return tab.suffix[static_cast<std::size_t>(idx)] +
         frac * tab.row[static_cast<std::size_t>(idx) - 1];
}

Eigen::VectorXd smooth_vec_at(const InfoTables& tab, double t) {
  auto [idx, frac] = locate(tab, t);
  if (idx == 0) return tab.suffv[0];
  return tab.suffv[static_cast<std::size_t>(idx)] +
         frac * tab.rowv[static_cast<std::size_t>(idx) - 1];
}

struct SolvedInfo {
  Eigen::MatrixXd inverse;
  double condition = 0.0;
};

SolvedInfo invert_info(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success) {
    fail(errc::numerical, "information matrix eigendecomposition failed");
  }
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double lmax = ev.cwiseAbs().maxCoeff();
  const double lmin = ev.cwiseAbs().minCoeff();
  const double cond = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
  if (!(cond <= kConditionLimit) || ev.minCoeff() <= 0.0) {
    fail(errc::numerical, "information matrix near-singular; decrease tau or increase T");
  }
  SolvedInfo out;
  out.inverse.noalias() =
      es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  out.condition = cond;
  return out;
}

// Shared core: first term (atomic exact + smooth by prefix interpolation)
// minus the compensator accumulated over evaluation cells.
TransformedField transform_core(const TailCopulaFamily& family,
                                const std::array<double, 2>& gamma_hats, const GridSpec& grid,
                                const std::vector<std::array<double, 2>>& atoms,
                                double atom_mass, const MeasureDensity& measure_density,
                                int workers) {
  grid.validate();
  const int E = grid.eval_cells;
  const int I = grid.integ_cells;
  const double g1 = gamma_hats[0], g2 = gamma_hats[1];
  const double mesh_e = grid.eval_mesh();
  const double cell_e = mesh_e * mesh_e;
  const double delta = grid.delta;

  const InfoTables tab =
      build_info_tables(family, g1, g2, grid, &measure_density, workers);
  const int nb = tab.nb;

  // Atoms inside (delta, T]^2 contribute to the compensator integrals; their
  // scores and densities are evaluated exactly.
  struct AtomEval {
    double x, y, dens;
    Eigen::VectorXd q;
  };
  std::vector<AtomEval> inside;
  inside.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (a[0] > delta && a[0] <= grid.T && a[1] > delta && a[1] <= grid.T) {
      AtomEval ae;
      ae.x = a[0];
      ae.y = a[1];
      ae.dens = family.density(a[0], a[1]);
      effective_score_at(family, g1, g2, a[0], a[1], ae.q);
      inside.push_back(std::move(ae));
    }
  }
  std::sort(inside.begin(), inside.end(),
            [](const AtomEval& u, const AtomEval& v) { return u.y < v.y; });
  // atom_suffix[i] = sum over sorted atoms j >= i of q_j * atom_mass
  std::vector<Eigen::VectorXd> atom_suffix(inside.size() + 1, Eigen::VectorXd::Zero(nb));
  std::vector<double> atom_ys(inside.size());
  for (int i = static_cast<int>(inside.size()) - 1; i >= 0; --i) {
    atom_suffix[static_cast<std::size_t>(i)] =
        atom_suffix[static_cast<std::size_t>(i) + 1] +
        inside[static_cast<std::size_t>(i)].q * atom_mass;
    atom_ys[static_cast<std::size_t>(i)] = inside[static_cast<std::size_t>(i)].y;
  }

  // Per evaluation row t: solve I(t) u(t) = v(t).
  const std::vector<double> eval_mids = grid.eval_midpoints();
  std::vector<Eigen::VectorXd> U(static_cast<std::size_t>(E));
  parallel_blocks(E, workers, [&](int lo, int hi) {
    for (int j = lo; j < hi; ++j) {
      const double t = eval_mids[static_cast<std::size_t>(j)];
      Eigen::VectorXd v = smooth_vec_at(tab, t);
      auto first_above =
          std::upper_bound(atom_ys.begin(), atom_ys.end(), t) - atom_ys.begin();
      v += atom_suffix[static_cast<std::size_t>(first_above)];
      const SolvedInfo si = invert_info(info_at(tab, t));
      U[static_cast<std::size_t>(j)].noalias() = si.inverse * v;
    }
  });

  // Compensator: 2-D prefix of q(s,t)^T u(t) sqrt(r(s,t)) over evaluation
  // cells, midpoint rule.
  const ScoreGrid sge(family, g1, g2, eval_mids, eval_mids);
  Eigen::MatrixXd W(E, E);
  {
    std::array<double, 8> q{};
    Eigen::Map<Eigen::VectorXd> qv(q.data(), nb);
    Eigen::MatrixXd comp(E, E);
    for (int i = 0; i < E; ++i) {
      for (int j = 0; j < E; ++j) {
        const double dens = sge.eval(i, j, q.data());
        comp(i, j) = qv.dot(U[static_cast<std::size_t>(j)]) * std::sqrt(dens) * cell_e;
      }
    }
    for (int i = 0; i < E; ++i) {
      double acc = 0.0;
      for (int j = 0; j < E; ++j) {
        acc += comp(i, j);
        W(i, j) = (i > 0 ? W(i - 1, j) : 0.0) + acc;
      }
    }
  }

  // First term, atomic part: bin each atom inside (delta, tau]^2 to the
  // evaluation cell whose closed upper-right corner covers it, weight
  // r(atom)^{-1/2} * atom_mass, then 2-D prefix.
  Eigen::MatrixXd first_atomic = Eigen::MatrixXd::Zero(E, E);
  for (const AtomEval& ae : inside) {
    if (ae.x > grid.tau || ae.y > grid.tau) continue;
    auto bin = [&](double coord) {
      int b = static_cast<int>(std::ceil((coord - delta) / mesh_e - 1e-12)) - 1;
      return std::clamp(b, 0, E - 1);
    };
    first_atomic(bin(ae.x), bin(ae.y)) += atom_mass / std::sqrt(ae.dens);
  }
  {
    Eigen::MatrixXd pre(E, E);
    for (int i = 0; i < E; ++i) {
      double acc = 0.0;
      for (int j = 0; j < E; ++j) {
        acc += first_atomic(i, j);
        pre(i, j) = (i > 0 ? pre(i - 1, j) : 0.0) + acc;
      }
    }
    first_atomic = pre;
  }

  // First term, smooth part: product-coverage interpolation of the inclusive
  // integration-grid prefix at the evaluation nodes.
  const std::vector<double> eval_nodes = grid.eval_nodes();
  std::vector<int> ci(static_cast<std::size_t>(E));
  std::vector<double> cf(static_cast<std::size_t>(E));
  for (int a = 0; a < E; ++a) {
    const double colf = (eval_nodes[static_cast<std::size_t>(a)] - delta) / tab.mesh;
    int c = std::min(static_cast<int>(colf), I - 1);
    ci[static_cast<std::size_t>(a)] = c;
    cf[static_cast<std::size_t>(a)] = colf - c;
  }
  Eigen::VectorXd row_interp(I + 1);
  for (int a = 0; a < E; ++a) {
    const int c = ci[static_cast<std::size_t>(a)];
    const double f = cf[static_cast<std::size_t>(a)];
    row_interp = (tab.first_prefix.row(c) +
                  f * (tab.first_prefix.row(c + 1) - tab.first_prefix.row(c)))
                     .transpose();
    for (int b = 0; b < E; ++b) {
      const int cb = ci[static_cast<std::size_t>(b)];
      const double fb = cf[static_cast<std::size_t>(b)];
      const double fd = row_interp(cb) + fb * (row_interp(cb + 1) - row_interp(cb));
      W(a, b) = first_atomic(a, b) + fd - W(a, b);
    }
  }

  TransformedField field;
  field.grid = grid;
  field.values = std::move(W);
  return field;
}

}  // namespace

FGH fgh(double gamma, double x) {
  const double L = std::log(x);
  FGH out;
  if (std::abs(gamma) < kGammaZeroSwitch) {
    out.f = x * L;
    out.fp = L + 1.0;
    out.g = -x;
    out.gp = -1.0;
    out.h = -x * L * L / 2.0;
    out.hp = -(L * L + 2.0 * L) / 2.0;
    return out;
  }
  const double egl = std::exp(gamma * L);       // x^gamma
  const double u = std::expm1(gamma * L) / gamma;
  out.f = x * u;
  out.fp = (gamma + 1.0) * u + 1.0;
  out.g = -x * egl;
  out.gp = -(gamma + 1.0) * egl;
  out.h = x * (L - u) / gamma;
  out.hp = (L - u) / gamma - u;
  return out;
}

int effective_basis_dim(const TailCopulaFamily& family) {
  return 6 + (family.scale_score_redundant() ? 0 : family.dim());
}

void score_vector(const TailCopulaFamily& family, double gamma1, double gamma2, double s, double t,
                  std::span<double> out) {
  const int d = family.dim();
  if (static_cast<int>(out.size()) != 6 + d) {
    fail(errc::config, "score_vector: output span must have length 6 + dim");
  }
  double rho1, rho2;
  family.log_density_grads(s, t, rho1, rho2, out.subspan(6));
  const FGH A = fgh(gamma1, s);
  const FGH B = fgh(gamma2, t);
  out[0] = A.fp + A.f * rho1;
  out[1] = A.gp + A.g * rho1;
  out[2] = A.hp + A.h * rho1;
  out[3] = B.fp + B.f * rho2;
  out[4] = B.gp + B.g * rho2;
  out[5] = B.hp + B.h * rho2;
}

InformationCurve information_curve(const TailCopulaFamily& family,
                                   const std::array<double, 2>& gamma_hats,
                                   const GridSpec& grid) {
  grid.validate();
  const InfoTables tab =
      build_info_tables(family, gamma_hats[0], gamma_hats[1], grid, nullptr, 1);
  InformationCurve curve;
  curve.basis_dim = tab.nb;
  curve.t_nodes = grid.eval_midpoints();
  curve.matrices.reserve(curve.t_nodes.size());
  curve.inverses.reserve(curve.t_nodes.size());
  curve.condition_numbers.reserve(curve.t_nodes.size());
  for (double t : curve.t_nodes) {
    Eigen::MatrixXd M = info_at(tab, t);
    SolvedInfo si = invert_info(M);
    curve.matrices.push_back(std::move(M));
    curve.inverses.push_back(std::move(si.inverse));
    curve.condition_numbers.push_back(si.condition);
  }
  return curve;
}

Eigen::MatrixXd information_matrix(const TailCopulaFamily& family,
                                   const std::array<double, 2>& gamma_hats, const GridSpec& grid,
                                   double t) {
  grid.validate();
  if (!(t >= grid.delta && t <= grid.tau)) {
    fail(errc::config, "information_matrix: t must lie in [delta, tau]");
  }
  const InfoTables tab =
      build_info_tables(family, gamma_hats[0], gamma_hats[1], grid, nullptr, 1);
  return info_at(tab, t);
}

TransformedField transform_field(const EmpiricalSignedMeasure& measure,
                                 const TailCopulaFamily& family,
                                 const std::array<double, 2>& gamma_hats, const GridSpec& grid,
                                 int workers) {
  if (measure.k < 1) fail(errc::config, "transform_field: measure has invalid k");
  const double sqrt_k = std::sqrt(static_cast<double>(measure.k));
  MeasureDensity md = [sqrt_k](double, double, double family_density) {
    return -sqrt_k * family_density;
  };
  return transform_core(family, gamma_hats, grid, measure.atoms, 1.0 / sqrt_k, md, workers);
}

TransformedField transform_field_smooth(const std::function<double(double, double)>& density,
                                        const TailCopulaFamily& family,
                                        const std::array<double, 2>& gamma_hats,
                                        const GridSpec& grid, int workers) {
  MeasureDensity md = [&density](double s, double t, double) { return density(s, t); };
  return transform_core(family, gamma_hats, grid, {}, 0.0, md, workers);
}

void write_field_csv(const TransformedField& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(errc::data, "cannot open field output file: " + path);
  const std::vector<double> nodes = field.grid.eval_nodes();
  const int E = field.grid.eval_cells;
  char buf[40];
  out << "y\\x";
  for (int i = 0; i < E; ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", nodes[static_cast<std::size_t>(i)]);
    out << ',' << buf;
  }
  out << '\n';
  for (int j = 0; j < E; ++j) {
    std::snprintf(buf, sizeof(buf), "%.17g", nodes[static_cast<std::size_t>(j)]);
    out << buf;
    for (int i = 0; i < E; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", field.values(i, j));
      out << ',' << buf;
    }
    out << '\n';
  }
  if (!out) fail(errc::data, "failed writing field output file: " + path);
}

TransformedField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::data, "cannot open field file: " + path);
  std::string line;
  if (!std::getline(in, line)) fail(errc::data, "field file is empty: " + path);
  std::vector<double> xs;
  {
    std::stringstream ss(line);
    std::string tok;
    std::getline(ss, tok, ',');  // corner label
    while (std::getline(ss, tok, ',')) xs.push_back(std::stod(tok));
  }
  const int E = static_cast<int>(xs.size());
  if (E < 2) fail(errc::data, "field file needs at least two grid nodes: " + path);
  Eigen::MatrixXd values(E, E);
  std::vector<double> ys;
  int j = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (j >= E) fail(errc::data, "field file has too many rows: " + path);
    std::stringstream ss(line);
    std::string tok;
    std::getline(ss, tok, ',');
    ys.push_back(std::stod(tok));
    for (int i = 0; i < E; ++i) {
      if (!std::getline(ss, tok, ',')) fail(errc::data, "field file row too short: " + path);
      values(i, j) = std::stod(tok);
    }
    ++j;
  }
  if (j != E) fail(errc::data, "field file has too few rows: " + path);
  TransformedField field;
  field.grid.eval_cells = E;
  field.grid.delta = 2.0 * xs[0] - xs[1];  // nodes are delta + (i+1) * mesh
  field.grid.tau = xs[static_cast<std::size_t>(E) - 1];
  field.values = std::move(values);
  return field;
}

}  // namespace tailgof
