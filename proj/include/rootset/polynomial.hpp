#ifndef ROOTSET_POLYNOMIAL_HPP
#define ROOTSET_POLYNOMIAL_HPP

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstddef>

// Dense complex polynomials stored low degree first as Eigen column vectors.
// Everything here is templated on the real scalar so the same code runs in
// double and long double.

namespace rootset {

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
struct ValueAndSlope {
  std::complex<Scalar> value;
  std::complex<Scalar> slope;
};

/// Horner evaluation of sum_n c[n] z^n.
template <typename Derived>
auto horner(const Eigen::MatrixBase<Derived>& coeffs,
            const typename Derived::Scalar& z) -> typename Derived::Scalar {
  typename Derived::Scalar acc(0);
  for (Eigen::Index n = coeffs.size() - 1; n >= 0; --n) acc = acc * z + coeffs(n);
  return acc;
}

/// p(z) and p'(z) in one Horner pass.
template <typename Derived>
auto horner_with_slope(const Eigen::MatrixBase<Derived>& coeffs, const typename Derived::Scalar& z)
    -> ValueAndSlope<typename Derived::Scalar::value_type> {
  using C = typename Derived::Scalar;
  C value(0), slope(0);
  for (Eigen::Index n = coeffs.size() - 1; n >= 0; --n) {
    slope = slope * z + value;
    value = value * z + coeffs(n);
  }
  return {value, slope};
}

/// Coefficients of the derivative; a constant differentiates to the empty vector.
template <typename Derived>
auto derivative(const Eigen::MatrixBase<Derived>& coeffs)
    -> Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> {
  using C = typename Derived::Scalar;
  using Real = typename C::value_type;
  const Eigen::Index n = coeffs.size();
  Eigen::Matrix<C, Eigen::Dynamic, 1> out(n > 0 ? n - 1 : 0);
  for (Eigen::Index k = 1; k < n; ++k) out(k - 1) = coeffs(k) * Real(k);
  return out;
}

/// sum_n |c[n]| |z|^n, the magnitude any evaluation at z is measured against.
template <typename Derived>
auto abs_horner(const Eigen::MatrixBase<Derived>& coeffs, typename Derived::Scalar::value_type rho)
    -> typename Derived::Scalar::value_type {
  using Real = typename Derived::Scalar::value_type;
  Real acc(0);
  for (Eigen::Index n = coeffs.size() - 1; n >= 0; --n) acc = acc * rho + std::abs(coeffs(n));
  return acc;
}

/// Reversed polynomial z^d p(1/z).
template <typename Derived>
auto reversed(const Eigen::MatrixBase<Derived>& coeffs)
    -> Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> {
  return coeffs.reverse();
}

/// Neumaier-compensated complex accumulator.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(const std::complex<Scalar>& x) {
    add_component(sum_re_, comp_re_, x.real());
    add_component(sum_im_, comp_im_, x.imag());
  }
  std::complex<Scalar> value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

 private:
  static void add_component(Scalar& sum, Scalar& comp, Scalar x) {
    const Scalar t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  Scalar sum_re_{0}, comp_re_{0}, sum_im_{0}, comp_im_{0};
};

}  // namespace rootset

#endif  // ROOTSET_POLYNOMIAL_HPP
