#pragma once

// Dense coordinate tensors over a 3-dimensional chart.
//
// Tensor<S, Up, Down> stores 3^(Up+Down) components of type S with the
// contravariant indices first. Rank-two objects convert to and from
// Eigen 3x3 matrices (row = first index) for the linear algebra.

#include <array>
#include <cstddef>
#include <utility>

#include <Eigen/Core>

#include "ctgeo/jet.hpp"

namespace ctgeo {

template <typename S>
using Vec3 = Eigen::Matrix<S, 3, 1>;
template <typename S>
using Mat3 = Eigen::Matrix<S, 3, 3>;
using Point = Eigen::Vector3d;

constexpr int pow3(int n) { return n == 0 ? 1 : 3 * pow3(n - 1); }

template <typename S, int Up, int Down>
class Tensor {
 public:
  static constexpr int kUp = Up;
  static constexpr int kDown = Down;
  static constexpr int kRank = Up + Down;
  static constexpr int kSize = pow3(kRank);
  using Scalar = S;
  using Index = std::array<int, kRank>;

  Tensor() { data_.fill(S(0.0)); }

  template <typename... I>
    requires(sizeof...(I) == kRank)
  S& operator()(I... idx) {
    return data_[flatten(Index{static_cast<int>(idx)...})];
  }
  template <typename... I>
    requires(sizeof...(I) == kRank)
  const S& operator()(I... idx) const {
    return data_[flatten(Index{static_cast<int>(idx)...})];
  }
  S& operator[](const Index& idx) { return data_[flatten(idx)]; }
  const S& operator[](const Index& idx) const { return data_[flatten(idx)]; }

  S& flat(int n) { return data_[n]; }
  const S& flat(int n) const { return data_[n]; }

  static constexpr int flatten(const Index& idx) {
    int n = 0;
    for (int a = 0; a < kRank; ++a) n = 3 * n + idx[a];
    return n;
  }
  static constexpr Index unflatten(int n) {
    Index idx{};
    for (int a = kRank - 1; a >= 0; --a) {
      idx[a] = n % 3;
      n /= 3;
    }
    return idx;
  }

  template <typename F>
  auto map(F&& f) const {
    using R = std::decay_t<decltype(f(std::declval<const S&>()))>;
    Tensor<R, Up, Down> out;
    for (int n = 0; n < kSize; ++n) out.flat(n) = f(data_[n]);
    return out;
  }

  Tensor& operator+=(const Tensor& o) {
    for (int n = 0; n < kSize; ++n) data_[n] += o.data_[n];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (int n = 0; n < kSize; ++n) data_[n] -= o.data_[n];
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(const S& c, Tensor a) {
    for (auto& x : a.data_) x = c * x;
    return a;
  }

 private:
  std::array<S, kSize> data_;
};

// ---------------------------------------------------------------------------
// Values and norms

inline double value_of(double x) { return x; }
template <typename S>
double value_of(const Jet<S>& j) {
  return scalar_value(j);
}

template <typename S, int Up, int Down>
Tensor<double, Up, Down> values(const Tensor<S, Up, Down>& t) {
  return t.map([](const S& x) { return value_of(x); });
}

template <typename Derived>
Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>
values(const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([](const auto& x) { return value_of(x); });
}

/// Largest absolute component.
template <int Up, int Down>
double max_abs(const Tensor<double, Up, Down>& t) {
  double m = 0.0;
  for (int n = 0; n < t.kSize; ++n) m = std::max(m, std::abs(t.flat(n)));
  return m;
}

// ---------------------------------------------------------------------------
// Rank-two conversions

template <typename S, int Up, int Down>
  requires(Up + Down == 2)
Mat3<S> as_matrix(const Tensor<S, Up, Down>& t) {
  Mat3<S> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = t(i, j);
  return m;
}

template <int Up, int Down, typename Derived>
  requires(Up + Down == 2)
auto as_tensor(const Eigen::MatrixBase<Derived>& m) {
  Tensor<typename Derived::Scalar, Up, Down> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = m(i, j);
  return t;
}

template <int Up, int Down, typename Derived>
  requires(Up + Down == 1)
auto as_tensor(const Eigen::MatrixBase<Derived>& v) {
  Tensor<typename Derived::Scalar, Up, Down> t;
  for (int i = 0; i < 3; ++i) t(i) = v(i);
  return t;
}

template <typename S, int Up, int Down>
  requires(Up + Down == 1)
Vec3<S> as_vector(const Tensor<S, Up, Down>& t) {
  return Vec3<S>(t(0), t(1), t(2));
}

// ---------------------------------------------------------------------------
// Differentiation on jet-valued tensors

/// Coordinate partials; the derivative index becomes the first covariant slot.
template <typename S, int Up, int Down>
Tensor<Jet<S>, Up, Down + 1> partial(const Tensor<Jet<S>, Up, Down>& t) {
  using Out = Tensor<Jet<S>, Up, Down + 1>;
  Out out;
  for (int n = 0; n < Out::kSize; ++n) {
    const auto idx = Out::unflatten(n);
    typename Tensor<Jet<S>, Up, Down>::Index src{};
    int s = 0;
    for (int a = 0; a < Out::kRank; ++a)
      if (a != Up) src[s++] = idx[a];
    out.flat(n) = t[src].partial(idx[Up]);
  }
  return out;
}

template <typename S>
Vec3<Jet<S>> gradient_components(const Jet<S>& f) {
  return Vec3<Jet<S>>(f.partial(0), f.partial(1), f.partial(2));
}

/// Levi-Civita covariant derivative given Christoffel symbols gamma(k, i, j).
/// Layout as in partial(): the derivative index is the first covariant slot.
template <typename S, int Up, int Down>
Tensor<Jet<S>, Up, Down + 1> covariant_derivative(
    const Tensor<Jet<S>, Up, Down>& t, const Tensor<Jet<S>, 1, 2>& gamma) {
  using Out = Tensor<Jet<S>, Up, Down + 1>;
  Out out = partial(t);
  for (int n = 0; n < Out::kSize; ++n) {
    const auto idx = Out::unflatten(n);
    const int d = idx[Up];
    typename Tensor<Jet<S>, Up, Down>::Index src{};
    int s = 0;
    for (int a = 0; a < Out::kRank; ++a)
      if (a != Up) src[s++] = idx[a];
    Jet<S> acc = out.flat(n);
    for (int slot = 0; slot < Up + Down; ++slot) {
      auto moved = src;
      for (int m = 0; m < 3; ++m) {
        moved[slot] = m;
        if (slot < Up) {
          acc += gamma(src[slot], d, m) * t[moved];
        } else {
          acc -= gamma(m, d, src[slot]) * t[moved];
        }
      }
    }
    out.flat(n) = acc;
  }
  return out;
}

/// Coordinate Lie derivative along v.
template <typename S, int Up, int Down>
Tensor<Jet<S>, Up, Down> lie_derivative(const Tensor<Jet<S>, 1, 0>& v,
                                        const Tensor<Jet<S>, Up, Down>& t) {
  using T = Tensor<Jet<S>, Up, Down>;
  const auto dt = partial(t);
  const auto dv = partial(v);  // dv(a, m) = d_m v^a
  T out;
  for (int n = 0; n < T::kSize; ++n) {
    const auto idx = T::unflatten(n);
    Jet<S> acc(0.0);
    for (int m = 0; m < 3; ++m) {
      typename Tensor<Jet<S>, Up, Down + 1>::Index didx{};
      int s = 0;
      for (int a = 0; a < T::kRank + 1; ++a)
        didx[a] = (a == Up) ? m : idx[s++];
      acc += v(m) * dt[didx];
    }
    for (int slot = 0; slot < T::kRank; ++slot) {
      auto moved = idx;
      for (int m = 0; m < 3; ++m) {
        moved[slot] = m;
        if (slot < Up) {
          acc -= t[moved] * dv(idx[slot], m);
        } else {
          acc += t[moved] * dv(m, idx[slot]);
        }
      }
    }
    out.flat(n) = acc;
  }
  return out;
}

}  // namespace ctgeo
