#pragma once

// Small exact tensor algebra for 3x3 matrices: symmetric tensors with a
// spectral toolbox (eig, log, exp, sqrt) and general second-order tensors
// for deformation gradients.

#include <array>
#include <cmath>
#include <initializer_list>

namespace hencky {

class SymTensor3;

/// General 3x3 tensor, row-major.
class Tensor3 {
 public:
  constexpr Tensor3() = default;
  constexpr explicit Tensor3(const std::array<double, 9>& a) : a_(a) {}

  static constexpr Tensor3 identity() {
    return Tensor3({1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0});
  }
  static constexpr Tensor3 diag(double a, double b, double c) {
    return Tensor3({a, 0.0, 0.0, 0.0, b, 0.0, 0.0, 0.0, c});
  }
  /// Columns given as three vectors.
  static Tensor3 from_columns(const std::array<double, 3>& c0, const std::array<double, 3>& c1,
                              const std::array<double, 3>& c2);

  constexpr double operator()(int i, int j) const { return a_[3 * i + j]; }
  constexpr double& operator()(int i, int j) { return a_[3 * i + j]; }
  const std::array<double, 9>& data() const { return a_; }

  Tensor3 transpose() const;
  double det() const;
  double trace() const { return a_[0] + a_[4] + a_[8]; }
  /// Throws DomainError when |det| underflows.
  Tensor3 inverse() const;
  double norm() const;
  bool is_finite() const;

  /// Symmetric part.
  SymTensor3 sym() const;

  Tensor3& operator+=(const Tensor3& o);
  Tensor3& operator-=(const Tensor3& o);
  Tensor3& operator*=(double s);

 private:
  std::array<double, 9> a_{};
};

Tensor3 operator+(Tensor3 a, const Tensor3& b);
Tensor3 operator-(Tensor3 a, const Tensor3& b);
Tensor3 operator*(Tensor3 a, double s);
Tensor3 operator*(double s, Tensor3 a);
Tensor3 operator*(const Tensor3& a, const Tensor3& b);

/// Symmetric 3x3 tensor. Only the six independent components are stored,
/// in the order xx, yy, zz, xy, yz, xz.
class SymTensor3 {
 public:
  constexpr SymTensor3() = default;
  constexpr SymTensor3(double xx, double yy, double zz, double xy, double yz, double xz)
      : c_{xx, yy, zz, xy, yz, xz} {}

  static constexpr SymTensor3 identity() { return {1.0, 1.0, 1.0, 0.0, 0.0, 0.0}; }
  static constexpr SymTensor3 zero() { return {}; }
  static constexpr SymTensor3 diag(double a, double b, double c) { return {a, b, c, 0.0, 0.0, 0.0}; }
  /// Symmetric part of a general tensor.
  static SymTensor3 from_full(const Tensor3& t) { return t.sym(); }

  double operator()(int i, int j) const { return c_[index(i, j)]; }
  double& operator()(int i, int j) { return c_[index(i, j)]; }
  const std::array<double, 6>& components() const { return c_; }

  double trace() const { return c_[0] + c_[1] + c_[2]; }
  /// Frobenius norm (off-diagonal terms counted twice).
  double norm() const;
  /// Full contraction a:b.
  double dot(const SymTensor3& o) const;
  double det() const;
  bool is_finite() const;
  Tensor3 full() const;

  SymTensor3& operator+=(const SymTensor3& o);
  SymTensor3& operator-=(const SymTensor3& o);
  SymTensor3& operator*=(double s);

  bool operator==(const SymTensor3&) const = default;

 private:
  static constexpr int index(int i, int j) {
    if (i == j) return i;
    const int s = i + j;  // (0,1)->1, (1,2)->3, (0,2)->2
    return s == 1 ? 3 : (s == 3 ? 4 : 5);
  }
  std::array<double, 6> c_{};
};

SymTensor3 operator+(SymTensor3 a, const SymTensor3& b);
SymTensor3 operator-(SymTensor3 a, const SymTensor3& b);
SymTensor3 operator-(const SymTensor3& a);
SymTensor3 operator*(SymTensor3 a, double s);
SymTensor3 operator*(double s, SymTensor3 a);
Tensor3 operator*(const Tensor3& a, const SymTensor3& b);
Tensor3 operator*(const SymTensor3& a, const Tensor3& b);

/// Q a Q^T, symmetric by construction.
SymTensor3 rotate(const SymTensor3& a, const Tensor3& q);
/// A A^T and A^T A.
SymTensor3 a_at(const Tensor3& a);
SymTensor3 at_a(const Tensor3& a);

double tr(const SymTensor3& a);
/// a - tr(a)/3 * 1.
SymTensor3 dev3(const SymTensor3& a);

/// Deformation gradient; construction rejects det F <= 0 and non-finite entries.
class DefGrad {
 public:
  explicit DefGrad(const Tensor3& f);
  static DefGrad identity() { return DefGrad(Tensor3::identity()); }
  /// F = 1 + gamma e1 (x) e2.
  static DefGrad simple_shear(double gamma);
  static DefGrad diag(double l1, double l2, double l3) { return DefGrad(Tensor3::diag(l1, l2, l3)); }

  const Tensor3& tensor() const { return f_; }
  double operator()(int i, int j) const { return f_(i, j); }
  double det() const { return det_; }

 private:
  Tensor3 f_;
  double det_;
};

/// Eigen-decomposition of a symmetric tensor. Eigenvalues sorted descending,
/// eigenvectors stored as the columns of `frame`.
struct Spectral3 {
  std::array<double, 3> values{};
  Tensor3 frame = Tensor3::identity();

  std::array<double, 3> vector(int k) const { return {frame(0, k), frame(1, k), frame(2, k)}; }
  /// sum_k g(values[k]) v_k (x) v_k
  template <class Fn>
  SymTensor3 compose(Fn&& g) const {
    return compose_values({g(values[0]), g(values[1]), g(values[2])});
  }
  SymTensor3 compose_values(const std::array<double, 3>& d) const;
};

/// Cyclic Jacobi. Throws DomainError on non-finite input.
Spectral3 eig_sym(const SymTensor3& a);
/// Throws DomainError when an eigenvalue is <= 1e-14.
SymTensor3 log_sym(const SymTensor3& a);
SymTensor3 exp_sym(const SymTensor3& a);
SymTensor3 sqrt_sym(const SymTensor3& a);

struct PolarDecomposition {
  Tensor3 rotation;
  SymTensor3 stretch;
};

/// F = R U with R proper orthogonal and U symmetric positive definite.
PolarDecomposition polar_right(const DefGrad& f);

/// log U = 1/2 log(F^T F), computed without forming U.
SymTensor3 log_right_stretch(const DefGrad& f);
/// log V = 1/2 log(F F^T).
SymTensor3 log_left_stretch(const DefGrad& f);

}  // namespace hencky
