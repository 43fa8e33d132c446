#include "gateforge/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace gateforge {

namespace {

// Reduced row-echelon form with partial pivoting; entries below `tol` are
// treated as zero.
RealMatrix rref(RealMatrix a, double tol = 1e-9) {
  long row = 0;
  for (long col = 0; col < a.cols() && row < a.rows(); ++col) {
    long pivot;
    const double best = a.col(col).segment(row, a.rows() - row).cwiseAbs().maxCoeff(&pivot);
    if (best <= tol) continue;
    pivot += row;
    a.row(row).swap(a.row(pivot));
    a.row(row) /= a(row, col);
    for (long r = 0; r < a.rows(); ++r)
      if (r != row && a(r, col) != 0.0) a.row(r) -= a(r, col) * a.row(row);
    ++row;
  }
  return a.topRows(row);
}

double snap(double x) {
  if (std::abs(x) < 1e-12) return 0.0;
  const double r = std::round(x);
  return std::abs(x - r) < 1e-12 ? r : x;
}

struct Rational {
  long num = 0;
  long den = 1;
  bool ok = false;
};

// Continued-fraction approximation with bounded denominator.
Rational rationalize(double x, long max_den = 1000, double tol = 1e-9) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(v);
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0;
    const long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= tol) return {h1, k1, true};
    const double frac = v - a;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  return {};
}

bool all_commute(const std::vector<Matrix>& ops, double tol) {
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (max_abs(commutator(ops[i], ops[j])) > tol) return false;
  return true;
}

PauliSum merge_terms(const std::map<std::string, double, bool (*)(const std::string&, const std::string&)>& acc) {
  PauliSum out;
  for (const auto& [label, c] : acc)
    if (c != 0.0) out.emplace_back(label, c);
  return out;
}

// Terms of (pi / 8) * sum coeff * label.
PauliSum pi_over_8(std::initializer_list<std::pair<const char*, double>> terms) {
  std::map<std::string, double, bool (*)(const std::string&, const std::string&)> acc(canonical_less);
  for (const auto& [label, c] : terms) acc[label] += c * kPi / 8.0;
  return merge_terms(acc);
}

}  // namespace

Matrix principal_generator(const GateTarget& g) {
  const auto& s = g.spectrum();
  const long d = g.dimension();
  Matrix h = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < s.phases.size(); ++k) h += s.phases[k] * s.projectors[k];
  return 0.5 * (h + h.adjoint());
}

OperatorBasis commutant_restrict(const OperatorBasis& basis, const Matrix& principal) {
  if (basis.empty()) throw Error("commutant_restrict: empty basis");
  const long d = basis.dimension();
  if (principal.rows() != d || principal.cols() != d)
    throw Error("commutant_restrict: generator dimension does not match the basis");
  const auto p = static_cast<long>(basis.size());

  RealMatrix map(2 * d * d, p);
  for (long i = 0; i < p; ++i) {
    const Matrix c = commutator(basis.matrix(static_cast<std::size_t>(i)), principal);
    const Eigen::Map<const Vector> flat(c.data(), d * d);
    map.col(i).head(d * d) = flat.real();
    map.col(i).tail(d * d) = flat.imag();
  }
  Eigen::JacobiSVD<RealMatrix> svd(map, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() ? sv.maxCoeff() : 0.0;
  long rank = 0;
  for (long k = 0; k < sv.size(); ++k)
    if (sv[k] > 1e-10 * top && top > 0.0) ++rank;
  const long nullity = p - rank;
  if (nullity == 0) return OperatorBasis();

  const RealMatrix null_space = svd.matrixV().rightCols(nullity);
  RealMatrix canon = rref(null_space.transpose());
  canon = canon.unaryExpr(&snap);

  std::vector<PauliSum> elements;
  for (long r = 0; r < canon.rows(); ++r) {
    std::map<std::string, double, bool (*)(const std::string&, const std::string&)> acc(canonical_less);
    for (long i = 0; i < p; ++i) {
      if (canon(r, i) == 0.0) continue;
      for (const auto& term : basis.element(static_cast<std::size_t>(i)))
        acc[term.factors()] += canon(r, i) * term.coefficient();
    }
    for (auto& [label, c] : acc) c = snap(c);
    elements.push_back(merge_terms(acc));
  }
  return OperatorBasis(basis.n_qubits(), std::move(elements));
}

Matrix exp_i_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Vector phases = (Complex(0.0, 1.0) * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double lattice_residual(double x) { return std::abs(x - kTwoPi * std::round(x / kTwoPi)); }

SpectralReport verify_solution(const Matrix& h_tilde, const GateTarget& g, const VerifyOptions& opts) {
  if (h_tilde.rows() != g.dimension() || h_tilde.cols() != g.dimension())
    throw Error("verify_solution: dimension mismatch between Hamiltonian and gate");
  if (hermiticity_defect(h_tilde) > 1e-10) throw Error("verify_solution: Hamiltonian is not Hermitian");
  const Matrix h = 0.5 * (h_tilde + h_tilde.adjoint());

  SpectralReport rep;
  rep.principal_generator = principal_generator(g);
  const Matrix& hg = rep.principal_generator;

  rep.commutator_norm = max_abs(commutator(h, hg));
  rep.verdicts.commutes = rep.commutator_norm <= opts.commutator_tol;

  Eigen::SelfAdjointEigenSolver<Matrix> es(h - hg, Eigen::EigenvaluesOnly);
  for (long k = 0; k < es.eigenvalues().size(); ++k) {
    const double e = es.eigenvalues()[k];
    rep.eigenvalues.push_back(e);
    rep.residuals.push_back(lattice_residual(e));
  }
  rep.max_residual = rep.residuals.empty() ? 0.0 : *std::max_element(rep.residuals.begin(), rep.residuals.end());
  rep.verdicts.eigenphases = rep.max_residual <= opts.eigen_tol;

  rep.unitary_distance = max_abs(exp_i_hermitian(h) - g.matrix());

  if (opts.bandwidth) {
    double worst = 0.0;
    for (long c = 0; c < h.cols(); ++c)
      for (long r = 0; r < h.rows(); ++r)
        if (std::abs(r - c) > *opts.bandwidth) worst = std::max(worst, std::abs(h(r, c)));
    rep.physical_residual = worst;
  } else if (opts.allowed) {
    const OperatorBasis& allowed = *opts.allowed;
    if (allowed.dimension() != g.dimension()) throw Error("verify_solution: allowed basis has the wrong dimension");
    const auto p = static_cast<long>(allowed.size());
    const long d = g.dimension();
    RealMatrix a(2 * d * d, p);
    for (long i = 0; i < p; ++i) {
      const Eigen::Map<const Vector> flat(allowed.matrix(static_cast<std::size_t>(i)).data(), d * d);
      a.col(i) << flat.real(), flat.imag();
    }
    const Eigen::Map<const Vector> hf(h.data(), d * d);
    RealVector b(2 * d * d);
    b << hf.real(), hf.imag();
    const RealVector coef = a.completeOrthogonalDecomposition().solve(b);
    rep.physical_residual = (a * coef - b).cwiseAbs().maxCoeff();
  } else if (g.n_qubits() > 0) {
    double worst = 0.0;
    for (const auto& t : pauli_decompose(h, -1.0))
      if (t.weight() > opts.max_weight) worst = std::max(worst, std::abs(t.coefficient()));
    rep.physical_residual = worst;
  }
  rep.verdicts.physical = rep.physical_residual <= opts.physical_tol;
  return rep;
}

long NuAssignment::c() const {
  const long a = 1 + 4 * (nu1 - nu2);
  const long b = 4 * (nu3 - nu4);
  return -(a * a - b * b);
}

PauliSum toffoli_family(const NuAssignment& nu) {
  if (nu.nu3 == nu.nu4) throw Error("toffoli_family: nu3 == nu4 admits no solution (c < 0)");
  const long c = nu.c();
  if (c < 0) {
    std::ostringstream os;
    os << "toffoli_family: c(nu) = " << c << " < 0";
    throw Error(os.str());
  }
  const double n1 = static_cast<double>(nu.nu1), n2 = static_cast<double>(nu.nu2);
  const double n3 = static_cast<double>(nu.nu3);
  const double gap = std::abs(static_cast<double>(nu.nu3 - nu.nu4));
  const double root = std::sqrt(static_cast<double>(c));
  return pi_over_8({
      {"III", 1.0 + 4.0 * (n1 + n2 + 2.0 * n3 + gap)},
      {"ZII", -1.0},
      {"IZI", -1.0},
      {"ZIX", 1.0},
      {"IZX", 1.0},
      {"IIX", -2.0 - 8.0 * n1 + 8.0 * n2},
      {"ZZI", 1.0 + 4.0 * (n1 + n2 - 2.0 * n3 - gap)},
      {"IZZ", root},
      {"ZIZ", -root},
  });
}

PauliSum builtin_solution(std::string_view name) {
  if (name == "fredkin_eq7") {
    const double a = std::sqrt(143.0 / 5.0);
    const double b = 5.0 * std::sqrt(3.0);
    const double zz = 6.0 * std::sqrt(7.0 / 5.0);  // (3 pi / 4) sqrt(7/5) in units of pi/8
    return pi_over_8({
        {"III", 3.0},
        {"ZII", 4.0},
        {"IXI", a},
        {"IIX", a},
        {"XXI", b},
        {"XIX", b},
        {"IXX", -3.0},
        {"IYY", -3.0},
        {"IZZ", -3.0},
        {"ZZI", zz},
        {"ZIZ", zz},
    });
  }
  if (name == "toffoli_alt_sm") {
    const double r7 = std::sqrt(7.0);
    return pi_over_8({
        {"III", 9.0},
        {"IIX", 6.0},
        {"ZII", -1.0},
        {"IZI", -1.0},
        {"ZZI", 1.0},
        {"ZIX", 1.0},
        {"IZX", 1.0},
        {"ZIZ", -r7},
        {"IZZ", r7},
    });
  }
  if (name == "toffoli_zplus_sm") {
    const double r15 = std::sqrt(15.0);
    return pi_over_8({
        {"III", 9.0},
        {"IIX", -7.0},
        {"IIZ", r15},
        {"ZZI", 1.0},
        {"ZII", -1.0},
        {"IZI", -1.0},
        {"ZIX", 2.5},
        {"IZX", 2.5},
        {"ZIZ", r15 / 2.0},
        {"IZZ", r15 / 2.0},
    });
  }
  throw Error("unknown builtin solution '" + std::string(name) + "'");
}

std::string builtin_solution_gate(std::string_view name) {
  if (name == "fredkin_eq7") return "fredkin";
  if (name == "toffoli_alt_sm" || name == "toffoli_zplus_sm") return "toffoli";
  throw Error("unknown builtin solution '" + std::string(name) + "'");
}

std::vector<std::string> builtin_solution_names() { return {"fredkin_eq7", "toffoli_alt_sm", "toffoli_zplus_sm"}; }

std::string Obstruction::equation() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const long w = coefficients[k];
    if (w == 0) continue;
    if (first) {
      if (w < 0) os << "-";
    } else {
      os << (w < 0 ? " - " : " + ");
    }
    if (std::abs(w) != 1) os << std::abs(w) << "*";
    os << "nu" << (k + 1);
    first = false;
  }
  if (first) os << "0";
  os << " = " << numerator;
  if (denominator != 1) os << "/" << denominator;
  return os.str();
}

namespace {

struct SlotSystem {
  RealMatrix a;                 // slots x params
  RealVector theta;             // H_G eigenvalue per slot
  std::vector<int> multiplicity;
};

SlotSystem joint_slots(const OperatorBasis& basis, const Matrix& hg) {
  const long d = basis.dimension();
  const auto p = static_cast<long>(basis.size());
  // Generic combination: its eigenvectors diagonalize every commuting member.
  Matrix k = hg * 0.5772156649015329;
  for (long i = 0; i < p; ++i)
    k += basis.matrix(static_cast<std::size_t>(i)) * (1.0 / std::sqrt(2.0 + static_cast<double>(i) * 1.6180339887498949));
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (k + k.adjoint()));
  const Matrix& v = es.eigenvectors();

  RealMatrix rows(d, p + 1);
  for (long c = 0; c < d; ++c) {
    for (long i = 0; i < p; ++i)
      rows(c, i) = (v.col(c).adjoint() * basis.matrix(static_cast<std::size_t>(i)) * v.col(c))(0, 0).real();
    rows(c, p) = (v.col(c).adjoint() * hg * v.col(c))(0, 0).real();
  }
  rows = rows.unaryExpr(&snap);

  // Distinct slots.
  std::vector<RealVector> uniq;
  std::vector<int> mult;
  for (long c = 0; c < d; ++c) {
    bool found = false;
    for (std::size_t u = 0; u < uniq.size(); ++u) {
      if ((uniq[u] - rows.row(c).transpose()).cwiseAbs().maxCoeff() <= 1e-8) {
        ++mult[u];
        found = true;
        break;
      }
    }
    if (!found) {
      uniq.push_back(rows.row(c).transpose());
      mult.push_back(1);
    }
  }

  // Canonical order: H_G eigenvalue ascending, then element eigenvalues
  // descending.
  std::vector<std::size_t> order(uniq.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const RealVector& a = uniq[x];
    const RealVector& b = uniq[y];
    if (std::abs(a[p] - b[p]) > 1e-8) return a[p] < b[p];
    for (long i = 0; i < p; ++i)
      if (std::abs(a[i] - b[i]) > 1e-8) return a[i] > b[i];
    return false;
  });

  SlotSystem sys;
  const auto s = static_cast<long>(uniq.size());
  sys.a.resize(s, p);
  sys.theta.resize(s);
  for (long r = 0; r < s; ++r) {
    const RealVector& u = uniq[order[static_cast<std::size_t>(r)]];
    sys.a.row(r) = u.head(p).transpose();
    sys.theta[r] = u[p];
    sys.multiplicity.push_back(mult[order[static_cast<std::size_t>(r)]]);
  }
  return sys;
}

std::vector<Obstruction> rational_obstructions(const SlotSystem& sys) {
  const long s = sys.a.rows();
  Eigen::JacobiSVD<RealMatrix> svd(sys.a, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double top = sv.size() ? sv.maxCoeff() : 0.0;
  long rank = 0;
  for (long k = 0; k < sv.size(); ++k)
    if (top > 0.0 && sv[k] > 1e-10 * top) ++rank;
  if (rank == s) return {};
  RealMatrix left = rref(svd.matrixU().rightCols(s - rank).transpose());

  std::vector<Obstruction> out;
  for (long r = 0; r < left.rows(); ++r) {
    // Scale to the smallest integer vector.
    long den = 1;
    bool ok = true;
    for (long k = 0; k < s; ++k) {
      const Rational q = rationalize(left(r, k));
      if (!q.ok) {
        ok = false;
        break;
      }
      den = std::lcm(den, q.den);
    }
    if (!ok) continue;
    std::vector<long> w(static_cast<std::size_t>(s));
    long g = 0;
    for (long k = 0; k < s; ++k) {
      w[static_cast<std::size_t>(k)] = std::lround(left(r, k) * static_cast<double>(den));
      g = std::gcd(g, std::abs(w[static_cast<std::size_t>(k)]));
    }
    if (g == 0) continue;
    const auto first = std::find_if(w.begin(), w.end(), [](long x) { return x != 0; });
    const long sign = *first < 0 ? -1 : 1;
    for (auto& x : w) x = sign * x / g;

    // w . (theta + 2 pi nu) = 0  =>  w . nu = -w . theta / (2 pi)
    double wt = 0.0;
    for (long k = 0; k < s; ++k) wt += static_cast<double>(w[static_cast<std::size_t>(k)]) * sys.theta[k];
    const Rational forced = rationalize(-wt / kTwoPi);
    Obstruction ob;
    ob.coefficients = std::move(w);
    if (forced.ok) {
      ob.numerator = forced.num;
      ob.denominator = forced.den;
    } else {
      // Irrational forced value: no integer solution either.
      ob.numerator = 0;
      ob.denominator = 0;
    }
    out.push_back(std::move(ob));
  }
  return out;
}

FeasibilityReport scan_commuting(const OperatorBasis& basis, const Matrix& hg, long nu_max) {
  const SlotSystem sys = joint_slots(basis, hg);
  const long s = sys.a.rows();
  FeasibilityReport rep;
  rep.commuting_route = true;
  rep.slots = static_cast<int>(s);
  rep.nu_max = nu_max;
  rep.obstructions = rational_obstructions(sys);

  const double count = std::pow(static_cast<double>(2 * nu_max + 1), static_cast<double>(s));
  if (count > 5e7) throw Error("integer_infeasibility_scan: search box too large, lower nu_max");

  const auto cod = sys.a.completeOrthogonalDecomposition();
  // residual(nu) = P (theta + 2 pi nu), P the projector off the column space.
  const RealMatrix proj = RealMatrix::Identity(s, s) - sys.a * cod.pseudoInverse();
  const RealVector base = proj * sys.theta;
  const RealMatrix step = kTwoPi * proj;

  std::vector<long> nu(static_cast<std::size_t>(s), -nu_max);
  RealVector r = base;
  for (long k = 0; k < s; ++k) r += step.col(k) * static_cast<double>(-nu_max);
  rep.best_residual = std::numeric_limits<double>::infinity();
  while (true) {
    ++rep.assignments_scanned;
    const double res = r.cwiseAbs().maxCoeff();
    if (res < rep.best_residual) rep.best_residual = res;
    if (res <= 1e-8) {
      rep.feasible = true;
      rep.witness_nu = nu;
      RealVector rhs = sys.theta;
      for (long k = 0; k < s; ++k) rhs[k] += kTwoPi * static_cast<double>(nu[static_cast<std::size_t>(k)]);
      rep.witness_lambda = cod.solve(rhs);
      break;
    }
    long k = s - 1;
    while (k >= 0 && nu[static_cast<std::size_t>(k)] == nu_max) {
      r -= step.col(k) * static_cast<double>(2 * nu_max);
      nu[static_cast<std::size_t>(k)] = -nu_max;
      --k;
    }
    if (k < 0) break;
    ++nu[static_cast<std::size_t>(k)];
    r += step.col(k);
  }
  return rep;
}

// Damped Gauss-Newton fit of the sorted spectrum of H(lambda) - H_G to
// `target`. Returns the final max-abs residual.
double fit_spectrum(const OperatorBasis& basis, const Matrix& hg, const RealVector& target, RealVector& lambda) {
  const auto p = static_cast<long>(basis.size());
  auto residual = [&](const RealVector& l, RealVector& r, RealMatrix* jac) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(basis.combine(l) - hg);
    r = es.eigenvalues() - target;
    if (jac) {
      const Matrix& v = es.eigenvectors();
      jac->resize(target.size(), p);
      for (long j = 0; j < p; ++j) {
        const Matrix ov = basis.matrix(static_cast<std::size_t>(j)) * v;
        for (long k = 0; k < target.size(); ++k) (*jac)(k, j) = v.col(k).dot(ov.col(k)).real();
      }
    }
  };
  RealVector r;
  RealMatrix jac;
  residual(lambda, r, &jac);
  double cost = r.squaredNorm();
  double damping = 1e-3;
  for (int it = 0; it < 200 && cost > 1e-26; ++it) {
    const RealMatrix jtj = jac.transpose() * jac;
    const RealVector g = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries) {
      RealMatrix lhs = jtj;
      lhs.diagonal().array() += damping * (1.0 + jtj.diagonal().array());
      const RealVector delta = -lhs.ldlt().solve(g);
      const RealVector trial = lambda + delta;
      RealVector rt;
      residual(trial, rt, nullptr);
      const double ct = rt.squaredNorm();
      if (ct < cost) {
        const bool tiny = cost - ct < 1e-14 * cost;
        lambda = trial;
        cost = ct;
        damping = std::max(damping * 0.3, 1e-12);
        improved = !tiny;
        break;
      }
      damping *= 10.0;
    }
    if (!improved) break;
    residual(lambda, r, &jac);
  }
  residual(lambda, r, nullptr);
  return r.cwiseAbs().maxCoeff();
}

FeasibilityReport scan_spectral(const OperatorBasis& basis, const Matrix& hg, long nu_max) {
  const long d = basis.dimension();
  const auto p = static_cast<long>(basis.size());
  FeasibilityReport rep;
  rep.slots = static_cast<int>(d);
  rep.nu_max = nu_max;
  rep.best_residual = std::numeric_limits<double>::infinity();

  // Least-squares projection onto the span, used to seed the fits.
  RealMatrix gram(p, p);
  for (long i = 0; i < p; ++i)
    for (long j = 0; j < p; ++j)
      gram(i, j) = (basis.matrix(static_cast<std::size_t>(i)).adjoint() * basis.matrix(static_cast<std::size_t>(j))).trace().real();
  const auto gram_solver = gram.completeOrthogonalDecomposition();
  auto project = [&](const Matrix& m) {
    RealVector rhs(p);
    for (long i = 0; i < p; ++i) rhs[i] = (basis.matrix(static_cast<std::size_t>(i)).adjoint() * m).trace().real();
    return RealVector(gram_solver.solve(rhs));
  };
  Eigen::SelfAdjointEigenSolver<Matrix> hg_es(hg);

  std::mt19937_64 rng(0x5eedf00dULL);
  std::normal_distribution<double> normal(0.0, 2.0);
  std::vector<RealVector> random_starts;
  for (int k = 0; k < 4; ++k) {
    RealVector s(p);
    for (long i = 0; i < p; ++i) s[i] = normal(rng);
    random_starts.push_back(s);
  }

  std::vector<long> nu(static_cast<std::size_t>(d), -nu_max);
  // Sorted multisets in lexicographic order.
  std::function<bool(long, long)> rec = [&](long pos, long lo) -> bool {
    if (pos == d) {
      ++rep.assignments_scanned;
      RealVector target(d);
      for (long k = 0; k < d; ++k) target[k] = kTwoPi * static_cast<double>(nu[static_cast<std::size_t>(k)]);
      // Shift so the principal eigenvalues line up with the sorted target.
      const Matrix guess = hg + hg_es.eigenvectors() * target.cast<Complex>().asDiagonal() * hg_es.eigenvectors().adjoint();
      std::vector<RealVector> starts{project(guess), project(hg), RealVector::Zero(p)};
      starts.insert(starts.end(), random_starts.begin(), random_starts.end());
      for (auto& lambda : starts) {
        const double res = fit_spectrum(basis, hg, target, lambda);
        rep.best_residual = std::min(rep.best_residual, res);
        if (res <= 1e-8) {
          rep.feasible = true;
          rep.witness_nu = nu;
          rep.witness_lambda = lambda;
          return true;
        }
      }
      return false;
    }
    for (long v = lo; v <= nu_max; ++v) {
      nu[static_cast<std::size_t>(pos)] = v;
      if (rec(pos + 1, v)) return true;
    }
    return false;
  };
  rec(0, -nu_max);
  return rep;
}

}  // namespace

FeasibilityReport integer_infeasibility_scan(const OperatorBasis& basis, const GateTarget& g, long nu_max) {
  if (nu_max < 1) throw Error("integer_infeasibility_scan: nu_max must be at least 1");
  if (basis.empty()) throw Error("integer_infeasibility_scan: empty basis");
  if (basis.dimension() != g.dimension()) throw Error("integer_infeasibility_scan: dimension mismatch");
  const Matrix hg = principal_generator(g);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (max_abs(commutator(basis.matrix(i), hg)) > 1e-10)
      throw Error("integer_infeasibility_scan: basis element " + std::to_string(i) + " does not commute with H_G");
  if (all_commute(basis.matrices(), 1e-10)) return scan_commuting(basis, hg, nu_max);
  return scan_spectral(basis, hg, nu_max);
}

}  // namespace gateforge
