#include "tissf/convex_sets.hpp"

#include "tissf/lp.hpp"

#include <cmath>
#include <random>

namespace tissf {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw NonFiniteError(std::string(what) + " contains NaN/inf");
}

void check_dim(const InputSet& set, const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) throw NonFiniteError(std::string(what) + " contains NaN/inf");
  int d = set.dim();
  if (d >= 0 && v.size() != d)
    throw DimensionError(std::string(what) + " has the wrong dimension");
}

// max d.u over the polyhedron, solved as min -d.u subject to Au <= b.
LpSolution polyhedron_support_lp(const Polyhedron& poly, const Eigen::VectorXd& d) {
  LpProblem lp;
  lp.c = -d;
  lp.G = poly.A;
  lp.g = poly.b;
  return solve_simplex(lp);
}

Eigen::VectorXd chebyshev_like_point(const Eigen::MatrixXd& A,
                                     const Eigen::VectorXd& b) {
  // Variables (u, r): maximize r subject to A u + ||a_i|| r <= b, r >= 0.
  // The optimal u is a deep interior point when the set has volume and a
  // feasible point otherwise.
  const int m = static_cast<int>(A.cols());
  const int p = static_cast<int>(A.rows());
  LpProblem lp;
  lp.c = Eigen::VectorXd::Zero(m + 1);
  lp.c(m) = -1.0;
  lp.G = Eigen::MatrixXd::Zero(p + 1, m + 1);
  lp.g = Eigen::VectorXd::Zero(p + 1);
  lp.G.block(0, 0, p, m) = A;
  for (int i = 0; i < p; ++i) lp.G(i, m) = A.row(i).norm();
  lp.g.head(p) = b;
  lp.G(p, m) = -1.0; // r >= 0
  LpSolution sol = solve_simplex(lp);
  if (sol.status == LpStatus::Infeasible)
    throw Error("polyhedron is empty");
  if (sol.status == LpStatus::Unbounded) {
    // The inscribed radius grows without bound; any feasible u works, and an
    // unbounded set is rejected by the boundedness probe anyway.
    throw Error("polyhedron is unbounded");
  }
  return sol.x.head(m);
}

} // namespace

InputSet InputSet::ball(double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0)
    throw Error("ball radius must be finite and positive");
  InputSet s;
  s.rep_ = Ball{gamma};
  return s;
}

InputSet InputSet::box(Eigen::VectorXd lo, Eigen::VectorXd hi) {
  if (lo.size() == 0 || lo.size() != hi.size())
    throw DimensionError("box bounds must be nonempty and equally sized");
  require_finite(lo, "box lower bound");
  require_finite(hi, "box upper bound");
  for (int i = 0; i < lo.size(); ++i)
    if (lo(i) > hi(i)) throw Error("box has lo > hi on some axis");
  InputSet s;
  s.rep_ = Box{std::move(lo), std::move(hi)};
  return s;
}

InputSet InputSet::polyhedron(Eigen::MatrixXd A, Eigen::VectorXd b) {
  if (A.rows() == 0 || A.cols() == 0 || A.rows() != b.size())
    throw DimensionError("polyhedron needs A with rows matching b");
  require_finite(A, "polyhedron A");
  require_finite(b, "polyhedron b");

  Polyhedron poly{std::move(A), std::move(b), Eigen::VectorXd()};
  poly.inner_point = chebyshev_like_point(poly.A, poly.b);

  // Boundedness probes: the axis directions plus a fixed fan of random
  // directions. A support LP that comes back unbounded rejects the set.
  const int m = static_cast<int>(poly.A.cols());
  std::vector<Eigen::VectorXd> dirs;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e(i) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  std::mt19937_64 rng(0x5eed5e75u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < 16; ++k) {
    Eigen::VectorXd d(m);
    for (int i = 0; i < m; ++i) d(i) = gauss(rng);
    double nrm = d.norm();
    if (nrm > 1e-12) dirs.push_back(d / nrm);
  }
  for (const auto& d : dirs) {
    if (polyhedron_support_lp(poly, d).status == LpStatus::Unbounded)
      throw Error("polyhedron is unbounded");
  }

  InputSet s;
  s.rep_ = std::move(poly);
  return s;
}

int InputSet::dim() const {
  return visit([](const auto& rep) -> int {
    using T = std::decay_t<decltype(rep)>;
    if constexpr (std::is_same_v<T, Ball>) return -1;
    else if constexpr (std::is_same_v<T, Box>) return static_cast<int>(rep.lo.size());
    else return static_cast<int>(rep.A.cols());
  });
}

const char* InputSet::type_name() const {
  return visit([](const auto& rep) -> const char* {
    using T = std::decay_t<decltype(rep)>;
    if constexpr (std::is_same_v<T, Ball>) return "ball";
    else if constexpr (std::is_same_v<T, Box>) return "box";
    else return "polyhedron";
  });
}

double support_value(const InputSet& set, const Eigen::VectorXd& d) {
  check_dim(set, d, "support direction");
  if (d.isZero(0.0)) return 0.0;
  return set.visit([&](const auto& rep) -> double {
    using T = std::decay_t<decltype(rep)>;
    if constexpr (std::is_same_v<T, Ball>) {
      return rep.gamma * d.norm();
    } else if constexpr (std::is_same_v<T, Box>) {
      double s = 0.0;
      for (int i = 0; i < d.size(); ++i)
        s += std::max(d(i) * rep.lo(i), d(i) * rep.hi(i));
      return s;
    } else {
      LpSolution sol = polyhedron_support_lp(rep, d);
      if (sol.status != LpStatus::Optimal)
        throw NumericalBreakdownError("support LP did not reach an optimum");
      return -sol.objective;
    }
  });
}

Eigen::VectorXd support_point(const InputSet& set, const Eigen::VectorXd& d) {
  check_dim(set, d, "support direction");
  return set.visit([&](const auto& rep) -> Eigen::VectorXd {
    using T = std::decay_t<decltype(rep)>;
    if constexpr (std::is_same_v<T, Ball>) {
      double nrm = d.norm();
      if (nrm == 0.0) return Eigen::VectorXd::Zero(d.size());
      return (rep.gamma / nrm) * d;
    } else if constexpr (std::is_same_v<T, Box>) {
      if (d.isZero(0.0)) return 0.5 * (rep.lo + rep.hi);
      Eigen::VectorXd u(d.size());
      for (int i = 0; i < d.size(); ++i)
        u(i) = d(i) < 0.0 ? rep.lo(i) : rep.hi(i); // zero components take hi
      return u;
    } else {
      if (d.isZero(0.0)) return rep.inner_point;
      LpSolution sol = polyhedron_support_lp(rep, d);
      if (sol.status != LpStatus::Optimal)
        throw NumericalBreakdownError("support LP did not reach an optimum");
      return sol.x;
    }
  });
}

Eigen::VectorXd project(const InputSet& set, const Eigen::VectorXd& q, double tol) {
  check_dim(set, q, "projection query");
  return set.visit([&](const auto& rep) -> Eigen::VectorXd {
    using T = std::decay_t<decltype(rep)>;
    if constexpr (std::is_same_v<T, Ball>) {
      double nrm = q.norm();
      if (nrm <= rep.gamma) return q;
      return (rep.gamma / nrm) * q;
    } else if constexpr (std::is_same_v<T, Box>) {
      return q.cwiseMax(rep.lo).cwiseMin(rep.hi);
    } else {
      // Dykstra's alternating projections over the halfspace factors.
      const int p = static_cast<int>(rep.A.rows());
      Eigen::VectorXd x = q;
      Eigen::MatrixXd corr = Eigen::MatrixXd::Zero(p, q.size());
      for (int cycle = 0; cycle < 10000; ++cycle) {
        Eigen::VectorXd x_prev = x;
        for (int k = 0; k < p; ++k) {
          Eigen::VectorXd y = x + corr.row(k).transpose();
          double viol = rep.A.row(k).dot(y) - rep.b(k);
          if (viol > 0.0)
            x = y - rep.A.row(k).transpose() *
                        (viol / rep.A.row(k).squaredNorm());
          else
            x = y;
          corr.row(k) = (y - x).transpose();
        }
        double worst = (rep.A * x - rep.b).maxCoeff();
        if (worst <= tol && (x - x_prev).lpNorm<Eigen::Infinity>() <= tol)
          return x;
      }
      throw MaxIterationsError("polyhedron projection exceeded 10000 cycles");
    }
  });
}

bool contains(const InputSet& set, const Eigen::VectorXd& u, double tol) {
  return set_violation(set, u) <= tol;
}

double set_violation(const InputSet& set, const Eigen::VectorXd& u) {
  check_dim(set, u, "membership query");
  return set.visit([&](const auto& rep) -> double {
    using T = std::decay_t<decltype(rep)>;
    if constexpr (std::is_same_v<T, Ball>) {
      return std::max(0.0, u.norm() - rep.gamma);
    } else if constexpr (std::is_same_v<T, Box>) {
      double v = 0.0;
      for (int i = 0; i < u.size(); ++i)
        v = std::max({v, rep.lo(i) - u(i), u(i) - rep.hi(i)});
      return v;
    } else {
      return std::max(0.0, (rep.A * u - rep.b).maxCoeff());
    }
  });
}

void to_json(nlohmann::json& j, const InputSet& set) {
  set.visit([&](const auto& rep) {
    using T = std::decay_t<decltype(rep)>;
    if constexpr (std::is_same_v<T, Ball>) {
      j = {{"type", "ball"}, {"gamma", rep.gamma}};
    } else if constexpr (std::is_same_v<T, Box>) {
      j = {{"type", "box"},
           {"lo", std::vector<double>(rep.lo.begin(), rep.lo.end())},
           {"hi", std::vector<double>(rep.hi.begin(), rep.hi.end())}};
    } else {
      std::vector<std::vector<double>> a(rep.A.rows());
      for (int i = 0; i < rep.A.rows(); ++i)
        a[i].assign(rep.A.row(i).begin(), rep.A.row(i).end());
      j = {{"type", "polyhedron"},
           {"A", a},
           {"b", std::vector<double>(rep.b.begin(), rep.b.end())}};
    }
  });
}

InputSet input_set_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "ball") {
    return InputSet::ball(j.at("gamma").get<double>());
  }
  if (type == "box") {
    auto lo = j.at("lo").get<std::vector<double>>();
    auto hi = j.at("hi").get<std::vector<double>>();
    return InputSet::box(Eigen::Map<Eigen::VectorXd>(lo.data(), lo.size()),
                         Eigen::Map<Eigen::VectorXd>(hi.data(), hi.size()));
  }
  if (type == "polyhedron") {
    auto rows = j.at("A").get<std::vector<std::vector<double>>>();
    auto b = j.at("b").get<std::vector<double>>();
    if (rows.empty()) throw Error("polyhedron A must have rows");
    Eigen::MatrixXd A(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size())
        throw DimensionError("polyhedron A rows differ in length");
      A.row(i) = Eigen::Map<Eigen::VectorXd>(rows[i].data(), rows[i].size());
    }
    return InputSet::polyhedron(
        std::move(A), Eigen::Map<Eigen::VectorXd>(b.data(), b.size()));
  }
  throw Error("unknown input-set type: " + type);
}

void from_json(const nlohmann::json& j, InputSet& set) {
  set = input_set_from_json(j);
}

} // namespace tissf
