#include "holonomy/groups.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <limits>

namespace holonomy {

namespace {

constexpr double kPi = 3.14159265358979323846;
const std::complex<double> kI(0.0, 1.0);

bool unitary_family(GroupTag tag) {
  return tag == GroupTag::U1 || tag == GroupTag::SU2 || tag == GroupTag::SUn ||
         tag == GroupTag::PSUn || tag == GroupTag::Un || tag == GroupTag::SUnxR;
}

void require_same_shape(GroupTag a, GroupTag b, int ra, int rb, const char* op) {
  if (a != b || ra != rb) {
    throw TagMismatch(std::string(op) + ": incompatible tags " + tag_name(a) +
                      "(" + std::to_string(ra) + ") vs " + tag_name(b) + "(" +
                      std::to_string(rb) + ")");
  }
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& x) {
  const int n = static_cast<int>(x.rows());
  if (n == 1) {
    Eigen::MatrixXcd out(1, 1);
    out(0, 0) = std::exp(x(0, 0));
    return out;
  }
  bool diagonal = true;
  for (int i = 0; i < n && diagonal; ++i) {
    for (int j = 0; j < n && diagonal; ++j) {
      diagonal = i == j || x(i, j) == std::complex<double>(0.0, 0.0);
    }
  }
  if (diagonal) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) out(i, i) = std::exp(x(i, i));
    return out;
  }
  return x.exp();
}

}  // namespace

const char* tag_name(GroupTag tag) {
  switch (tag) {
    case GroupTag::U1: return "U1";
    case GroupTag::SU2: return "SU2";
    case GroupTag::SO3: return "SO3";
    case GroupTag::SUn: return "SUn";
    case GroupTag::PSUn: return "PSUn";
    case GroupTag::Un: return "Un";
    case GroupTag::Real: return "Real";
    case GroupTag::SUnxR: return "SUnxR";
  }
  return "?";
}

GroupElement group_identity(GroupTag tag, int n) {
  GroupElement g;
  g.tag = tag;
  g.r = 0.0;
  if (tag != GroupTag::Real) g.m = Eigen::MatrixXcd::Identity(n, n);
  return g;
}

AlgebraElement algebra_zero(GroupTag tag, int n) {
  AlgebraElement x;
  x.tag = tag;
  x.r = 0.0;
  if (tag != GroupTag::Real) x.m = Eigen::MatrixXcd::Zero(n, n);
  return x;
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  require_same_shape(a.tag, b.tag, a.dim(), b.dim(), "mul");
  GroupElement out;
  out.tag = a.tag;
  out.r = a.r + b.r;
  if (a.tag != GroupTag::Real) out.m = a.m * b.m;
  return out;
}

GroupElement inverse(const GroupElement& g) {
  GroupElement out;
  out.tag = g.tag;
  out.r = -g.r;
  switch (g.tag) {
    case GroupTag::Real:
      break;
    case GroupTag::SO3:
      out.m = g.m.transpose();
      break;
    default:
      out.m = g.m.adjoint();
      break;
  }
  return out;
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a.tag, b.tag, a.dim(), b.dim(), "add");
  AlgebraElement out;
  out.tag = a.tag;
  out.r = a.r + b.r;
  if (a.tag != GroupTag::Real) out.m = a.m + b.m;
  return out;
}

AlgebraElement scale(double c, const AlgebraElement& x) {
  AlgebraElement out = x;
  out.r *= c;
  if (x.tag != GroupTag::Real) out.m *= c;
  return out;
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a.tag, b.tag, a.dim(), b.dim(), "bracket");
  AlgebraElement out;
  out.tag = a.tag;
  out.r = 0.0;  // scalar slot is central
  if (a.tag != GroupTag::Real) out.m = a.m * b.m - b.m * a.m;
  return out;
}

double algebra_norm(const AlgebraElement& x) {
  double m2 = x.tag == GroupTag::Real ? 0.0 : x.m.squaredNorm();
  return std::sqrt(m2 + x.r * x.r);
}

double algebra_distance(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a.tag, b.tag, a.dim(), b.dim(), "algebra_distance");
  double m2 = a.tag == GroupTag::Real ? 0.0 : (a.m - b.m).squaredNorm();
  double dr = a.r - b.r;
  return std::sqrt(m2 + dr * dr);
}

double frobenius_distance(const GroupElement& a, const GroupElement& b) {
  require_same_shape(a.tag, b.tag, a.dim(), b.dim(), "frobenius_distance");
  double m2 = a.tag == GroupTag::Real ? 0.0 : (a.m - b.m).squaredNorm();
  double dr = a.r - b.r;
  return std::sqrt(m2 + dr * dr);
}

double group_distance(const GroupElement& a, const GroupElement& b) {
  require_same_shape(a.tag, b.tag, a.dim(), b.dim(), "group_distance");
  if (a.tag != GroupTag::PSUn) return frobenius_distance(a, b);
  const int n = a.dim();
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    std::complex<double> w = std::exp(kI * (2.0 * kPi * k / n));
    best = std::min(best, (a.m - w * b.m).norm());
  }
  return best;
}

bool approx_equal(const GroupElement& a, const GroupElement& b, double tol) {
  return group_distance(a, b) <= tol;
}

double group_membership_distance(const GroupElement& g) {
  switch (g.tag) {
    case GroupTag::Real:
      return 0.0;
    case GroupTag::U1:
      return std::abs(std::abs(g.m(0, 0)) - 1.0);
    case GroupTag::Un: {
      const int n = g.dim();
      return (g.m.adjoint() * g.m - Eigen::MatrixXcd::Identity(n, n)).norm();
    }
    case GroupTag::SO3: {
      const int n = g.dim();
      double ortho = (g.m.transpose() * g.m - Eigen::MatrixXcd::Identity(n, n)).norm();
      double det = std::abs(g.m.determinant() - 1.0);
      double realness = g.m.imag().norm();
      return std::max({ortho, det, realness});
    }
    case GroupTag::SU2:
    case GroupTag::SUn:
    case GroupTag::PSUn: {
      const int n = g.dim();
      double unit = (g.m.adjoint() * g.m - Eigen::MatrixXcd::Identity(n, n)).norm();
      double det = std::abs(g.m.determinant() - 1.0);
      return std::max(unit, det);
    }
    case GroupTag::SUnxR: {
      const int n = g.dim();
      double unit = (g.m.adjoint() * g.m - Eigen::MatrixXcd::Identity(n, n)).norm();
      double det = std::abs(g.m.determinant() - 1.0);
      return std::max(unit, det);
    }
  }
  return 0.0;
}

double algebra_membership_distance(const AlgebraElement& x) {
  switch (x.tag) {
    case GroupTag::Real:
      return 0.0;
    case GroupTag::U1:
      return std::abs(x.m(0, 0).real());
    case GroupTag::Un:
      return (x.m + x.m.adjoint()).norm();
    case GroupTag::SO3: {
      double antisym = (x.m + x.m.transpose()).norm();
      double realness = x.m.imag().norm();
      return std::max(antisym, realness);
    }
    case GroupTag::SU2:
    case GroupTag::SUn:
    case GroupTag::PSUn:
    case GroupTag::SUnxR: {
      double anti = (x.m + x.m.adjoint()).norm();
      double traceless = std::abs(x.m.trace());
      return std::max(anti, traceless);
    }
  }
  return 0.0;
}

GroupElement exp(const AlgebraElement& x) {
  GroupElement out;
  out.tag = x.tag;
  out.r = x.r;  // exp on (R,+) is the identity map
  if (x.tag != GroupTag::Real) out.m = matrix_exp(x.m);
  double drift = group_membership_distance(out);
  if (drift > 1e-8) {
    throw NumericalFailure(std::string("exp: result drifted off ") +
                           tag_name(x.tag) + " by " + std::to_string(drift));
  }
  return out;
}

AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) {
  require_same_shape(g.tag, x.tag, g.dim(), x.dim(), "adjoint");
  AlgebraElement out;
  out.tag = x.tag;
  out.r = x.r;  // the R factor is central
  if (x.tag != GroupTag::Real) out.m = g.m * x.m * inverse(g).m;
  return out;
}

AlgebraElement log_near_identity(const GroupElement& g) {
  AlgebraElement out;
  out.tag = g.tag;
  out.r = g.r;  // translations: log is the displacement itself
  if (g.tag == GroupTag::Real) return out;
  const int n = g.dim();
  Eigen::MatrixXcd e = g.m - Eigen::MatrixXcd::Identity(n, n);
  if (e.norm() > 0.8) {
    throw NumericalFailure("log_near_identity: argument too far from identity");
  }
  Eigen::MatrixXcd term = e;
  Eigen::MatrixXcd acc = e;
  for (int k = 2; k <= 48; ++k) {
    term = term * e;
    Eigen::MatrixXcd contrib = term / static_cast<double>(k);
    if (k % 2 == 0) {
      acc -= contrib;
    } else {
      acc += contrib;
    }
    if (contrib.norm() < 1e-18) break;
  }
  out.m = acc;
  return out;
}

Eigen::MatrixXcd pauli(int i) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2, 2);
  switch (i) {
    case 1:
      s(0, 1) = 1;
      s(1, 0) = 1;
      break;
    case 2:
      s(0, 1) = -kI;
      s(1, 0) = kI;
      break;
    case 3:
      s(0, 0) = 1;
      s(1, 1) = -1;
      break;
    default:
      throw TagMismatch("pauli: index must be 1, 2 or 3");
  }
  return s;
}

Eigen::MatrixXcd so3_generator(int i) {
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(3, 3);
  switch (i) {
    case 1:
      j(1, 2) = -1;
      j(2, 1) = 1;
      break;
    case 2:
      j(0, 2) = 1;
      j(2, 0) = -1;
      break;
    case 3:
      j(0, 1) = -1;
      j(1, 0) = 1;
      break;
    default:
      throw TagMismatch("so3_generator: index must be 1, 2 or 3");
  }
  return j;
}

Eigen::MatrixXcd sun_flux_generator(int n) {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Identity(n, n);
  x(n - 1, n - 1) = std::complex<double>(1 - n, 0);
  return (kI / static_cast<double>(n)) * x;
}

// --- CoveringPair -----------------------------------------------------------

CoveringPair CoveringPair::u1() {
  return CoveringPair(Kind::U1OverReal, GroupTag::Real, GroupTag::U1, 1, 0);
}

CoveringPair CoveringPair::so3() {
  return CoveringPair(Kind::SO3OverSU2, GroupTag::SU2, GroupTag::SO3, 2, 2);
}

CoveringPair CoveringPair::sun_zn(int n) {
  return CoveringPair(Kind::PSUnOverSUn, GroupTag::SUn, GroupTag::PSUn, n, n);
}

CoveringPair CoveringPair::un(int n) {
  return CoveringPair(Kind::UnOverSUnxR, GroupTag::SUnxR, GroupTag::Un, n, 0);
}

CoveringPair CoveringPair::identity(GroupTag tag, int n) {
  return CoveringPair(Kind::Identity, tag, tag, n, 1);
}

GroupElement CoveringPair::cover_identity() const {
  switch (kind_) {
    case Kind::U1OverReal:
      return group_identity(GroupTag::Real, 0);
    case Kind::SO3OverSU2:
      return group_identity(GroupTag::SU2, 2);
    case Kind::PSUnOverSUn:
      return group_identity(GroupTag::SUn, n_);
    case Kind::UnOverSUnxR:
      return group_identity(GroupTag::SUnxR, n_);
    case Kind::Identity:
      return group_identity(cover_tag_, cover_tag_ == GroupTag::SO3 ? 3 : n_);
  }
  throw Error("unreachable");
}

GroupElement CoveringPair::base_identity() const {
  switch (kind_) {
    case Kind::U1OverReal:
      return group_identity(GroupTag::U1, 1);
    case Kind::SO3OverSU2:
      return group_identity(GroupTag::SO3, 3);
    case Kind::PSUnOverSUn:
      return group_identity(GroupTag::PSUn, n_);
    case Kind::UnOverSUnxR:
      return group_identity(GroupTag::Un, n_);
    case Kind::Identity:
      return cover_identity();
  }
  throw Error("unreachable");
}

GroupElement CoveringPair::tau(const GroupElement& h) const {
  if (h.tag != cover_tag_) {
    throw TagMismatch(std::string("tau: expected ") + tag_name(cover_tag_) +
                      ", got " + tag_name(h.tag));
  }
  GroupElement out;
  switch (kind_) {
    case Kind::U1OverReal: {
      out.tag = GroupTag::U1;
      out.m = Eigen::MatrixXcd(1, 1);
      out.m(0, 0) = std::exp(kI * (2.0 * kPi * h.r));
      return out;
    }
    case Kind::SO3OverSU2: {
      out.tag = GroupTag::SO3;
      out.m = Eigen::MatrixXcd::Zero(3, 3);
      for (int l = 1; l <= 3; ++l) {
        for (int j = 1; j <= 3; ++j) {
          out.m(l - 1, j - 1) =
              0.5 * (pauli(l) * h.m * pauli(j) * h.m.adjoint()).trace();
        }
      }
      out.m = out.m.real().cast<std::complex<double>>();
      return out;
    }
    case Kind::PSUnOverSUn:
      out = h;
      out.tag = GroupTag::PSUn;
      return out;
    case Kind::UnOverSUnxR:
      out.tag = GroupTag::Un;
      out.m = h.m * std::exp(kI * (2.0 * kPi * h.r));
      out.r = 0.0;
      return out;
    case Kind::Identity:
      return h;
  }
  throw Error("unreachable");
}

AlgebraElement CoveringPair::dtau(const AlgebraElement& x) const {
  if (x.tag != cover_tag_) {
    throw TagMismatch(std::string("dtau: expected ") + tag_name(cover_tag_) +
                      ", got " + tag_name(x.tag));
  }
  AlgebraElement out;
  switch (kind_) {
    case Kind::U1OverReal:
      out.tag = GroupTag::U1;
      out.m = Eigen::MatrixXcd(1, 1);
      out.m(0, 0) = kI * (2.0 * kPi * x.r);
      return out;
    case Kind::SO3OverSU2: {
      out.tag = GroupTag::SO3;
      out.m = Eigen::MatrixXcd::Zero(3, 3);
      for (int i = 1; i <= 3; ++i) {
        std::complex<double> c = kI * (pauli(i) * x.m).trace();
        out.m += c.real() * so3_generator(i);
      }
      return out;
    }
    case Kind::PSUnOverSUn:
      out = x;
      out.tag = GroupTag::PSUn;
      return out;
    case Kind::UnOverSUnxR:
      out.tag = GroupTag::Un;
      out.m = x.m + kI * (2.0 * kPi * x.r) * Eigen::MatrixXcd::Identity(n_, n_);
      out.r = 0.0;
      return out;
    case Kind::Identity:
      return x;
  }
  throw Error("unreachable");
}

AlgebraElement CoveringPair::dtau_inv(const AlgebraElement& x) const {
  if (x.tag != base_tag_) {
    throw TagMismatch(std::string("dtau_inv: expected ") + tag_name(base_tag_) +
                      ", got " + tag_name(x.tag));
  }
  AlgebraElement out;
  switch (kind_) {
    case Kind::U1OverReal:
      out.tag = GroupTag::Real;
      out.r = x.m(0, 0).imag() / (2.0 * kPi);
      return out;
    case Kind::SO3OverSU2: {
      out.tag = GroupTag::SU2;
      out.m = Eigen::MatrixXcd::Zero(2, 2);
      double y[3] = {x.m(2, 1).real(), x.m(0, 2).real(), x.m(1, 0).real()};
      for (int i = 1; i <= 3; ++i) {
        out.m += y[i - 1] * (pauli(i) / (2.0 * kI));
      }
      return out;
    }
    case Kind::PSUnOverSUn:
      out = x;
      out.tag = GroupTag::SUn;
      return out;
    case Kind::UnOverSUnxR: {
      out.tag = GroupTag::SUnxR;
      std::complex<double> tr = x.m.trace();
      out.r = tr.imag() / (2.0 * kPi * n_);
      out.m = x.m - (tr / static_cast<double>(n_)) *
                        Eigen::MatrixXcd::Identity(n_, n_);
      return out;
    }
    case Kind::Identity:
      return x;
  }
  throw Error("unreachable");
}

GroupElement CoveringPair::section(const GroupElement& g) const {
  if (g.tag != base_tag_) {
    throw TagMismatch(std::string("section: expected ") + tag_name(base_tag_) +
                      ", got " + tag_name(g.tag));
  }
  GroupElement out;
  switch (kind_) {
    case Kind::U1OverReal:
      out.tag = GroupTag::Real;
      out.r = std::atan2(g.m(0, 0).imag(), g.m(0, 0).real()) / (2.0 * kPi);
      return out;
    case Kind::SO3OverSU2: {
      // Quaternion extraction (Shepperd), then U = w I - i (x s1 + y s2 + z s3).
      Eigen::Matrix3d rm = g.m.real();
      double t = rm.trace();
      double w, x, y, z;
      if (t > 0.0) {
        double s = std::sqrt(t + 1.0) * 2.0;
        w = 0.25 * s;
        x = (rm(2, 1) - rm(1, 2)) / s;
        y = (rm(0, 2) - rm(2, 0)) / s;
        z = (rm(1, 0) - rm(0, 1)) / s;
      } else if (rm(0, 0) > rm(1, 1) && rm(0, 0) > rm(2, 2)) {
        double s = std::sqrt(1.0 + rm(0, 0) - rm(1, 1) - rm(2, 2)) * 2.0;
        w = (rm(2, 1) - rm(1, 2)) / s;
        x = 0.25 * s;
        y = (rm(0, 1) + rm(1, 0)) / s;
        z = (rm(0, 2) + rm(2, 0)) / s;
      } else if (rm(1, 1) > rm(2, 2)) {
        double s = std::sqrt(1.0 + rm(1, 1) - rm(0, 0) - rm(2, 2)) * 2.0;
        w = (rm(0, 2) - rm(2, 0)) / s;
        x = (rm(0, 1) + rm(1, 0)) / s;
        y = 0.25 * s;
        z = (rm(1, 2) + rm(2, 1)) / s;
      } else {
        double s = std::sqrt(1.0 + rm(2, 2) - rm(0, 0) - rm(1, 1)) * 2.0;
        w = (rm(1, 0) - rm(0, 1)) / s;
        x = (rm(0, 2) + rm(2, 0)) / s;
        y = (rm(1, 2) + rm(2, 1)) / s;
        z = 0.25 * s;
      }
      double norm = std::sqrt(w * w + x * x + y * y + z * z);
      w /= norm;
      x /= norm;
      y /= norm;
      z /= norm;
      out.tag = GroupTag::SU2;
      out.m = w * Eigen::MatrixXcd::Identity(2, 2) -
              kI * (x * pauli(1) + y * pauli(2) + z * pauli(3));
      return out;
    }
    case Kind::PSUnOverSUn:
      out = g;
      out.tag = GroupTag::SUn;
      return out;
    case Kind::UnOverSUnxR: {
      std::complex<double> det = g.m.determinant();
      double delta = std::atan2(det.imag(), det.real());
      out.tag = GroupTag::SUnxR;
      out.r = delta / (2.0 * kPi * n_);
      out.m = g.m * std::exp(-kI * (2.0 * kPi * out.r));
      return out;
    }
    case Kind::Identity:
      return g;
  }
  throw Error("unreachable");
}

GroupElement CoveringPair::kernel_element(long k) const {
  GroupElement out;
  switch (kind_) {
    case Kind::U1OverReal:
      out.tag = GroupTag::Real;
      out.r = static_cast<double>(k);
      return out;
    case Kind::SO3OverSU2: {
      out.tag = GroupTag::SU2;
      long kk = ((k % 2) + 2) % 2;
      out.m = (kk == 0 ? 1.0 : -1.0) * Eigen::MatrixXcd::Identity(2, 2);
      return out;
    }
    case Kind::PSUnOverSUn: {
      out.tag = GroupTag::SUn;
      long kk = ((k % n_) + n_) % n_;
      out.m = std::exp(kI * (2.0 * kPi * kk / n_)) *
              Eigen::MatrixXcd::Identity(n_, n_);
      return out;
    }
    case Kind::UnOverSUnxR:
      out.tag = GroupTag::SUnxR;
      out.r = static_cast<double>(k) / n_;
      out.m = std::exp(-kI * (2.0 * kPi * k / n_)) *
              Eigen::MatrixXcd::Identity(n_, n_);
      return out;
    case Kind::Identity:
      return cover_identity();
  }
  throw Error("unreachable");
}

long CoveringPair::nearest_kernel_index(const GroupElement& h, double* distance) const {
  long best_k = 0;
  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](long k) {
    double d = frobenius_distance(h, kernel_element(k));
    if (d < best) {
      best = d;
      best_k = k;
    }
  };
  if (kernel_finite()) {
    for (long k = 0; k < kernel_size_; ++k) consider(k);
  } else {
    long center = kind_ == Kind::U1OverReal
                      ? std::lround(h.r)
                      : std::lround(h.r * static_cast<double>(n_));
    for (long k = center - 3; k <= center + 3; ++k) consider(k);
  }
  if (distance != nullptr) *distance = best;
  return best_k;
}

std::vector<GroupElement> CoveringPair::kernel_samples(int window) const {
  std::vector<GroupElement> out;
  if (kernel_finite()) {
    for (long k = 0; k < kernel_size_; ++k) out.push_back(kernel_element(k));
  } else {
    for (long k = -window; k <= window; ++k) out.push_back(kernel_element(k));
  }
  return out;
}

GroupElement lift_element(const CoveringPair& cp, const GroupElement& g,
                          const GroupElement& near, double margin) {
  GroupElement base = cp.section(g);
  long center = 0;
  long lo = 0, hi = 0;
  if (cp.kernel_finite()) {
    lo = 0;
    hi = cp.kernel_size() - 1;
  } else {
    center = cp.kind() == CoveringPair::Kind::U1OverReal
                 ? std::lround(near.r - base.r)
                 : std::lround((near.r - base.r) * static_cast<double>(cp.n()));
    lo = center - 3;
    hi = center + 3;
  }
  GroupElement best;
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = std::numeric_limits<double>::infinity();
  for (long k = lo; k <= hi; ++k) {
    GroupElement candidate = mul(cp.kernel_element(k), base);
    double d = frobenius_distance(candidate, near);
    if (d < d1) {
      d2 = d1;
      d1 = d;
      best = candidate;
    } else if (d < d2) {
      d2 = d;
    }
  }
  if (hi > lo && d2 - d1 < margin) {
    throw AmbiguousLift("lift_element: two preimages equidistant from anchor (gap " +
                        std::to_string(d2 - d1) + "); refine the sampling");
  }
  return best;
}

AlgebraElement dtau_inverse_map(const CoveringPair& cp, const AlgebraElement& x) {
  return cp.dtau_inv(x);
}

AlgebraElement alpha_differential(const CoveringPair& cp, const GroupElement& g,
                                  const AlgebraElement& x) {
  return adjoint(cp.section(g), x);
}

}  // namespace holonomy
