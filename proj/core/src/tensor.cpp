#include "hencky/tensor.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "hencky/error.hpp"

namespace hencky {

// ---------------------------------------------------------------------------
// Tensor3

Tensor3 Tensor3::from_columns(const std::array<double, 3>& c0, const std::array<double, 3>& c1,
                              const std::array<double, 3>& c2) {
  Tensor3 t;
  for (int i = 0; i < 3; ++i) {
    t(i, 0) = c0[i];
    t(i, 1) = c1[i];
    t(i, 2) = c2[i];
  }
  return t;
}

Tensor3 Tensor3::transpose() const {
  Tensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  return t;
}

double Tensor3::det() const {
  const auto& a = a_;
  return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
         a[2] * (a[3] * a[7] - a[4] * a[6]);
}

Tensor3 Tensor3::inverse() const {
  const double d = det();
  if (!(std::abs(d) > std::numeric_limits<double>::min()) || !std::isfinite(d))
    throw DomainError("Tensor3::inverse: singular tensor");
  const auto& a = a_;
  Tensor3 inv({a[4] * a[8] - a[5] * a[7], a[2] * a[7] - a[1] * a[8], a[1] * a[5] - a[2] * a[4],
               a[5] * a[6] - a[3] * a[8], a[0] * a[8] - a[2] * a[6], a[2] * a[3] - a[0] * a[5],
               a[3] * a[7] - a[4] * a[6], a[1] * a[6] - a[0] * a[7], a[0] * a[4] - a[1] * a[3]});
  inv *= 1.0 / d;
  return inv;
}

double Tensor3::norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

bool Tensor3::is_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

SymTensor3 Tensor3::sym() const {
  const auto& t = *this;
  return {t(0, 0),
          t(1, 1),
          t(2, 2),
          0.5 * (t(0, 1) + t(1, 0)),
          0.5 * (t(1, 2) + t(2, 1)),
          0.5 * (t(0, 2) + t(2, 0))};
}

Tensor3& Tensor3::operator+=(const Tensor3& o) {
  for (int i = 0; i < 9; ++i) a_[i] += o.a_[i];
  return *this;
}
Tensor3& Tensor3::operator-=(const Tensor3& o) {
  for (int i = 0; i < 9; ++i) a_[i] -= o.a_[i];
  return *this;
}
Tensor3& Tensor3::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
Tensor3 operator*(Tensor3 a, double s) { return a *= s; }
Tensor3 operator*(double s, Tensor3 a) { return a *= s; }

Tensor3 operator*(const Tensor3& a, const Tensor3& b) {
  Tensor3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return c;
}

// ---------------------------------------------------------------------------
// SymTensor3

double SymTensor3::norm() const { return std::sqrt(dot(*this)); }

double SymTensor3::dot(const SymTensor3& o) const {
  return c_[0] * o.c_[0] + c_[1] * o.c_[1] + c_[2] * o.c_[2] +
         2.0 * (c_[3] * o.c_[3] + c_[4] * o.c_[4] + c_[5] * o.c_[5]);
}

double SymTensor3::det() const { return full().det(); }

bool SymTensor3::is_finite() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
}

Tensor3 SymTensor3::full() const {
  return Tensor3({c_[0], c_[3], c_[5], c_[3], c_[1], c_[4], c_[5], c_[4], c_[2]});
}

SymTensor3& SymTensor3::operator+=(const SymTensor3& o) {
  for (int i = 0; i < 6; ++i) c_[i] += o.c_[i];
  return *this;
}
SymTensor3& SymTensor3::operator-=(const SymTensor3& o) {
  for (int i = 0; i < 6; ++i) c_[i] -= o.c_[i];
  return *this;
}
SymTensor3& SymTensor3::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

SymTensor3 operator+(SymTensor3 a, const SymTensor3& b) { return a += b; }
SymTensor3 operator-(SymTensor3 a, const SymTensor3& b) { return a -= b; }
SymTensor3 operator-(const SymTensor3& a) { return a * -1.0; }
SymTensor3 operator*(SymTensor3 a, double s) { return a *= s; }
SymTensor3 operator*(double s, SymTensor3 a) { return a *= s; }
Tensor3 operator*(const Tensor3& a, const SymTensor3& b) { return a * b.full(); }
Tensor3 operator*(const SymTensor3& a, const Tensor3& b) { return a.full() * b; }

SymTensor3 rotate(const SymTensor3& a, const Tensor3& q) { return (q * a * q.transpose()).sym(); }

SymTensor3 a_at(const Tensor3& a) {
  SymTensor3 s;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) s(i, j) = a(i, 0) * a(j, 0) + a(i, 1) * a(j, 1) + a(i, 2) * a(j, 2);
  return s;
}

SymTensor3 at_a(const Tensor3& a) {
  SymTensor3 s;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) s(i, j) = a(0, i) * a(0, j) + a(1, i) * a(1, j) + a(2, i) * a(2, j);
  return s;
}

double tr(const SymTensor3& a) { return a.trace(); }

SymTensor3 dev3(const SymTensor3& a) {
  const double m = a.trace() / 3.0;
  return a - SymTensor3::identity() * m;
}

// ---------------------------------------------------------------------------
// DefGrad

DefGrad::DefGrad(const Tensor3& f) : f_(f), det_(f.det()) {
  if (!f.is_finite()) throw DomainError("DefGrad: non-finite entry");
  if (!(det_ > 0.0)) throw DomainError("DefGrad: det F <= 0 (det = " + std::to_string(det_) + ")");
}

DefGrad DefGrad::simple_shear(double gamma) {
  Tensor3 f = Tensor3::identity();
  f(0, 1) = gamma;
  return DefGrad(f);
}

// ---------------------------------------------------------------------------
// Spectral toolbox

SymTensor3 Spectral3::compose_values(const std::array<double, 3>& d) const {
  SymTensor3 s;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      double v = 0.0;
      for (int k = 0; k < 3; ++k) v += d[k] * frame(i, k) * frame(j, k);
      s(i, j) = v;
    }
  return s;
}

Spectral3 eig_sym(const SymTensor3& s) {
  if (!s.is_finite()) throw DomainError("eig_sym: non-finite input");

  double a[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = s(i, j);
  double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  const double scale = s.norm();
  if (scale > 0.0) {
    // Cyclic Jacobi: exact rotations until off-diagonal mass is at rounding level.
    for (int sweep = 0; sweep < 64; ++sweep) {
      const double off = a[0][1] * a[0][1] + a[1][2] * a[1][2] + a[0][2] * a[0][2];
      if (off <= 1e-34 * scale * scale) break;
      for (int p = 0; p < 2; ++p)
        for (int q = p + 1; q < 3; ++q) {
          const double apq = a[p][q];
          if (apq == 0.0) continue;
          const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
          const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double sn = t * c;
          for (int k = 0; k < 3; ++k) {
            const double akp = a[k][p];
            const double akq = a[k][q];
            a[k][p] = c * akp - sn * akq;
            a[k][q] = sn * akp + c * akq;
          }
          for (int k = 0; k < 3; ++k) {
            const double apk = a[p][k];
            const double aqk = a[q][k];
            a[p][k] = c * apk - sn * aqk;
            a[q][k] = sn * apk + c * aqk;
          }
          a[p][q] = a[q][p] = 0.0;
          for (int k = 0; k < 3; ++k) {
            const double vkp = v[k][p];
            const double vkq = v[k][q];
            v[k][p] = c * vkp - sn * vkq;
            v[k][q] = sn * vkp + c * vkq;
          }
        }
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] > a[j][j]; });

  Spectral3 out;
  for (int k = 0; k < 3; ++k) {
    const int src = order[k];
    out.values[k] = a[src][src];
    for (int i = 0; i < 3; ++i) out.frame(i, k) = v[i][src];
  }
  // Keep the frame right-handed.
  if (out.frame.det() < 0.0)
    for (int i = 0; i < 3; ++i) out.frame(i, 2) = -out.frame(i, 2);
  return out;
}

namespace {
constexpr double kSpdFloor = 1e-14;

void require_spd(const Spectral3& e, const char* who) {
  for (double l : e.values)
    if (!(l > kSpdFloor))
      throw DomainError(std::string(who) + ": tensor not positive definite (eigenvalue " +
                        std::to_string(l) + ")");
}
}  // namespace

SymTensor3 log_sym(const SymTensor3& a) {
  const Spectral3 e = eig_sym(a);
  require_spd(e, "log_sym");
  return e.compose([](double l) { return std::log(l); });
}

SymTensor3 exp_sym(const SymTensor3& a) {
  return eig_sym(a).compose([](double l) { return std::exp(l); });
}

SymTensor3 sqrt_sym(const SymTensor3& a) {
  const Spectral3 e = eig_sym(a);
  require_spd(e, "sqrt_sym");
  return e.compose([](double l) { return std::sqrt(l); });
}

PolarDecomposition polar_right(const DefGrad& f) {
  const Spectral3 c = eig_sym(at_a(f.tensor()));
  require_spd(c, "polar_right");
  const SymTensor3 u = c.compose([](double l) { return std::sqrt(l); });
  const SymTensor3 u_inv = c.compose([](double l) { return 1.0 / std::sqrt(l); });
  return {f.tensor() * u_inv, u};
}

SymTensor3 log_right_stretch(const DefGrad& f) {
  const Spectral3 c = eig_sym(at_a(f.tensor()));
  require_spd(c, "log_right_stretch");
  return c.compose([](double l) { return 0.5 * std::log(l); });
}

SymTensor3 log_left_stretch(const DefGrad& f) {
  const Spectral3 b = eig_sym(a_at(f.tensor()));
  require_spd(b, "log_left_stretch");
  return b.compose([](double l) { return 0.5 * std::log(l); });
}

}  // namespace hencky
