#pragma once

// Complex and quaternion arithmetic.
//
// A quaternion w + x i + y j + z k is stored as the symplectic pair
// (a0, a1) with q = a0 + a1 j, a0 = w + x i and a1 = y + z i. Products
// follow from j c = conj(c) j for complex c:
//
//   (a0 + a1 j)(b0 + b1 j) = (a0 b0 - a1 conj(b1)) + (a0 b1 + a1 conj(b0)) j

#include <cmath>
#include <complex>

namespace cavity {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

class Quaternion {
public:
  constexpr Quaternion() = default;
  constexpr explicit Quaternion(Complex a0, Complex a1 = {}) : a0_(a0), a1_(a1) {}

  static constexpr Quaternion from_components(double w, double x, double y, double z) {
    return Quaternion(Complex(w, x), Complex(y, z));
  }
  static constexpr Quaternion from_pair(Complex a0, Complex a1) { return Quaternion(a0, a1); }

  static constexpr Quaternion one() { return from_components(1, 0, 0, 0); }
  static constexpr Quaternion i() { return from_components(0, 1, 0, 0); }
  static constexpr Quaternion j() { return from_components(0, 0, 1, 0); }
  static constexpr Quaternion k() { return from_components(0, 0, 0, 1); }

  constexpr Complex a0() const { return a0_; }
  constexpr Complex a1() const { return a1_; }

  constexpr double w() const { return a0_.real(); }
  constexpr double x() const { return a0_.imag(); }
  constexpr double y() const { return a1_.real(); }
  constexpr double z() const { return a1_.imag(); }

  /// Scalar (real) part.
  constexpr double scalar() const { return a0_.real(); }

  constexpr bool is_complex() const { return a1_ == Complex{}; }

  double norm_sq() const { return std::norm(a0_) + std::norm(a1_); }
  double norm() const { return std::sqrt(norm_sq()); }

  Quaternion conj() const { return Quaternion(std::conj(a0_), -a1_); }

  Quaternion operator-() const { return Quaternion(-a0_, -a1_); }

  Quaternion& operator+=(const Quaternion& o) {
    a0_ += o.a0_;
    a1_ += o.a1_;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    a0_ -= o.a0_;
    a1_ -= o.a1_;
    return *this;
  }
  Quaternion& operator*=(double s) {
    a0_ *= s;
    a1_ *= s;
    return *this;
  }

  friend Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
  friend Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
  friend Quaternion operator*(Quaternion p, double s) { return p *= s; }
  friend Quaternion operator*(double s, Quaternion p) { return p *= s; }

  /// Hamilton product.
  friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return Quaternion(p.a0_ * q.a0_ - p.a1_ * std::conj(q.a1_),
                      p.a0_ * q.a1_ + p.a1_ * std::conj(q.a0_));
  }

  friend bool operator==(const Quaternion&, const Quaternion&) = default;

private:
  Complex a0_{};
  Complex a1_{};
};

inline Quaternion quat_mul(const Quaternion& p, const Quaternion& q) { return p * q; }
inline Quaternion quat_conj(const Quaternion& q) { return q.conj(); }
inline double quat_norm(const Quaternion& q) { return q.norm(); }

/// i q. On the pair view: (a0, a1) -> (i a0, i a1).
inline Quaternion left_i(const Quaternion& q) { return Quaternion(kI * q.a0(), kI * q.a1()); }

/// q i. On the pair view: (a0, a1) -> (i a0, -i a1), since j i = -i j.
inline Quaternion right_i(const Quaternion& q) { return Quaternion(kI * q.a0(), -kI * q.a1()); }

/// Left multiplication by a complex number c (embedded as c + 0 j).
inline Quaternion left_mul(Complex c, const Quaternion& q) { return Quaternion(c * q.a0(), c * q.a1()); }

/// Right multiplication by a complex number c: (a0 + a1 j) c = a0 c + a1 conj(c) j.
inline Quaternion right_mul(const Quaternion& q, Complex c) {
  return Quaternion(q.a0() * c, q.a1() * std::conj(c));
}

} // namespace cavity
