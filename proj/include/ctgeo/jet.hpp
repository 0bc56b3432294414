#pragma once

// Truncated Taylor jets in three variables, up to third order.
//
// A Jet<S> carries the value of a quantity at a chart point together with its
// first, second and third partial derivatives with respect to the three chart
// coordinates. Arithmetic propagates the Taylor coefficients exactly (Leibniz
// rule, univariate composition), so derivatives never come from differencing.
//
// The scalar type S is normally double (alias Jet3). Nesting, Jet<Jet3>, gives
// higher-order univariate derivatives where a single tier stack is not enough.

#include <array>
#include <cmath>
#include <string>
#include <type_traits>

#include <Eigen/Core>

#include "ctgeo/errors.hpp"

namespace ctgeo {

namespace detail {

inline constexpr std::array<std::array<int, 3>, 3> kSym2 = {
    {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}}};
inline constexpr std::array<std::array<int, 2>, 6> kPairs = {
    {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
inline constexpr std::array<std::array<int, 3>, 10> kTriples = {{{0, 0, 0},
                                                                 {0, 0, 1},
                                                                 {0, 0, 2},
                                                                 {0, 1, 1},
                                                                 {0, 1, 2},
                                                                 {0, 2, 2},
                                                                 {1, 1, 1},
                                                                 {1, 1, 2},
                                                                 {1, 2, 2},
                                                                 {2, 2, 2}}};

inline constexpr auto kSym3 = [] {
  std::array<std::array<std::array<int, 3>, 3>, 3> table{};
  for (int p = 0; p < 10; ++p) {
    const auto [i, j, k] = kTriples[p];
    table[i][j][k] = table[i][k][j] = table[j][i][k] = p;
    table[j][k][i] = table[k][i][j] = table[k][j][i] = p;
  }
  return table;
}();

constexpr int sym3(int i, int j, int k) { return kSym3[i][j][k]; }

inline void check_index(int i) {
  if (i < 0 || i > 2) {
    throw ArgumentError("coordinate index " + std::to_string(i) +
                        " outside {0,1,2}");
  }
}

}  // namespace detail

template <typename S>
class Jet {
 public:
  using Scalar = S;
  static constexpr int kMaxOrder = 3;

  Jet() : value_{}, d1_{}, d2_{}, d3_{} {}
  Jet(const S& c) : value_(c), d1_{}, d2_{}, d3_{} {}  // NOLINT: implicit constant
  Jet(double c)
    requires(!std::is_same_v<S, double>)
      : value_(S(c)), d1_{}, d2_{}, d3_{} {}

  static Jet constant(const S& c, int order) {
    check_order(order);
    Jet j(c);
    j.order_ = order;
    return j;
  }

  static Jet variable(int index, const S& at, int order) {
    check_order(order);
    detail::check_index(index);
    Jet j(at);
    j.order_ = order;
    if (order >= 1) j.d1_[index] = S(1.0);
    return j;
  }

  int order() const { return order_; }
  const S& value() const { return value_; }

  const S& d1(int i) const {
    require_tier(1);
    return d1_[i];
  }
  const S& d2(int i, int j) const {
    require_tier(2);
    return d2_[detail::kSym2[i][j]];
  }
  const S& d3(int i, int j, int k) const {
    require_tier(3);
    return d3_[detail::sym3(i, j, k)];
  }

  // Packed storage, for arithmetic kernels. Entries above order() are zero.
  S& raw_value() { return value_; }
  std::array<S, 3>& raw_d1() { return d1_; }
  std::array<S, 6>& raw_d2() { return d2_; }
  std::array<S, 10>& raw_d3() { return d3_; }
  const std::array<S, 3>& raw_d1() const { return d1_; }
  const std::array<S, 6>& raw_d2() const { return d2_; }
  const std::array<S, 10>& raw_d3() const { return d3_; }

  /// Drops every tier above `order`.
  Jet truncated(int order) const {
    check_order(order);
    if (order > order_) {
      throw ArgumentError("cannot raise jet order " + std::to_string(order_) +
                          " to " + std::to_string(order));
    }
    Jet j = *this;
    j.order_ = order;
    if (order < 3) j.d3_.fill(S{});
    if (order < 2) j.d2_.fill(S{});
    if (order < 1) j.d1_.fill(S{});
    return j;
  }

  /// The jet of the partial derivative along coordinate i; one order lower.
  Jet partial(int i) const {
    detail::check_index(i);
    if (order_ < 1) throw ArgumentError("partial of an order-0 jet");
    Jet j;
    j.order_ = order_ - 1;
    j.value_ = d1_[i];
    if (j.order_ >= 1)
      for (int a = 0; a < 3; ++a) j.d1_[a] = d2_[detail::kSym2[i][a]];
    if (j.order_ >= 2)
      for (int p = 0; p < 6; ++p) {
        const auto [a, b] = detail::kPairs[p];
        j.d2_[p] = d3_[detail::sym3(i, a, b)];
      }
    return j;
  }

  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(const Jet& a) { return a; }
  friend Jet operator-(const Jet& a) {
    Jet r = a;
    r.value_ = -a.value_;
    for (auto& x : r.d1_) x = -x;
    for (auto& x : r.d2_) x = -x;
    for (auto& x : r.d3_) x = -x;
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    r.order_ = std::min(a.order_, b.order_);
    r.value_ = a.value_ + b.value_;
    for (int i = 0; i < 3; ++i) r.d1_[i] = a.d1_[i] + b.d1_[i];
    for (int i = 0; i < 6; ++i) r.d2_[i] = a.d2_[i] + b.d2_[i];
    for (int i = 0; i < 10; ++i) r.d3_[i] = a.d3_[i] + b.d3_[i];
    return r.truncated(r.order_);
  }
  friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    using detail::kPairs;
    using detail::kSym2;
    using detail::kTriples;
    using detail::sym3;
    Jet r;
    r.order_ = std::min(a.order_, b.order_);
    r.value_ = a.value_ * b.value_;
    if (r.order_ >= 1)
      for (int i = 0; i < 3; ++i)
        r.d1_[i] = a.d1_[i] * b.value_ + a.value_ * b.d1_[i];
    if (r.order_ >= 2)
      for (int p = 0; p < 6; ++p) {
        const auto [i, j] = kPairs[p];
        r.d2_[p] = a.d2_[p] * b.value_ + a.d1_[i] * b.d1_[j] +
                   a.d1_[j] * b.d1_[i] + a.value_ * b.d2_[p];
      }
    if (r.order_ >= 3)
      for (int p = 0; p < 10; ++p) {
        const auto [i, j, k] = kTriples[p];
        r.d3_[p] = a.d3_[p] * b.value_ + a.d2_[kSym2[i][j]] * b.d1_[k] +
                   a.d2_[kSym2[i][k]] * b.d1_[j] +
                   a.d2_[kSym2[j][k]] * b.d1_[i] +
                   a.d1_[i] * b.d2_[kSym2[j][k]] +
                   a.d1_[j] * b.d2_[kSym2[i][k]] +
                   a.d1_[k] * b.d2_[kSym2[i][j]] + a.value_ * b.d3_[p];
      }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  /// Composition f(a) given the derivatives f, f', f'', f''' of a univariate
  /// f at a.value(). Entries beyond a.order() are ignored.
  friend Jet compose(const Jet& a, const S& f0, const S& f1, const S& f2,
                     const S& f3) {
    using detail::kPairs;
    using detail::kSym2;
    using detail::kTriples;
    Jet r;
    r.order_ = a.order_;
    r.value_ = f0;
    if (r.order_ >= 1)
      for (int i = 0; i < 3; ++i) r.d1_[i] = f1 * a.d1_[i];
    if (r.order_ >= 2)
      for (int p = 0; p < 6; ++p) {
        const auto [i, j] = kPairs[p];
        r.d2_[p] = f1 * a.d2_[p] + f2 * a.d1_[i] * a.d1_[j];
      }
    if (r.order_ >= 3)
      for (int p = 0; p < 10; ++p) {
        const auto [i, j, k] = kTriples[p];
        r.d3_[p] = f1 * a.d3_[p] +
                   f2 * (a.d2_[kSym2[i][j]] * a.d1_[k] +
                         a.d2_[kSym2[i][k]] * a.d1_[j] +
                         a.d2_[kSym2[j][k]] * a.d1_[i]) +
                   f3 * a.d1_[i] * a.d1_[j] * a.d1_[k];
      }
    return r;
  }

 private:
  static void check_order(int order) {
    if (order < 0 || order > kMaxOrder) {
      throw ArgumentError("jet order " + std::to_string(order) +
                          " outside {0,1,2,3}");
    }
  }
  void require_tier(int tier) const {
    if (tier > order_) {
      throw ArgumentError("tier " + std::to_string(tier) +
                          " read from a jet of order " +
                          std::to_string(order_));
    }
  }

  int order_ = kMaxOrder;
  S value_;
  std::array<S, 3> d1_;
  std::array<S, 6> d2_;
  std::array<S, 10> d3_;
};

using Jet3 = Jet<double>;

inline double scalar_value(double x) { return x; }
template <typename S>
double scalar_value(const Jet<S>& j) {
  return scalar_value(j.value());
}

template <typename S>
Jet<S> reciprocal(const Jet<S>& a) {
  const S& x = a.value();
  if (scalar_value(x) == 0.0) throw DomainError("div", 0.0);
  const S inv = S(1.0) / x;
  const S inv2 = inv * inv;
  return compose(a, inv, -inv2, S(2.0) * inv2 * inv, S(-6.0) * inv2 * inv2);
}

template <typename S>
Jet<S> exp(const Jet<S>& a) {
  using std::exp;
  const S e = exp(a.value());
  return compose(a, e, e, e, e);
}

template <typename S>
Jet<S> log(const Jet<S>& a) {
  using std::log;
  const double x = scalar_value(a.value());
  if (!(x > 0.0)) throw DomainError("log", x);
  const S inv = S(1.0) / a.value();
  return compose(a, log(a.value()), inv, -inv * inv, S(2.0) * inv * inv * inv);
}

template <typename S>
Jet<S> sqrt(const Jet<S>& a) {
  using std::sqrt;
  const double x = scalar_value(a.value());
  if (x < 0.0 || (x == 0.0 && a.order() > 0)) throw DomainError("sqrt", x);
  const S s = sqrt(a.value());
  if (a.order() == 0) return compose(a, s, S{}, S{}, S{});
  const S inv = S(1.0) / s;
  const S inv3 = inv * inv * inv;
  return compose(a, s, S(0.5) * inv, S(-0.25) * inv3,
                 S(0.375) * inv3 * inv * inv);
}

template <typename S>
Jet<S> sin(const Jet<S>& a) {
  using std::cos;
  using std::sin;
  const S s = sin(a.value()), c = cos(a.value());
  return compose(a, s, c, -s, -c);
}

template <typename S>
Jet<S> cos(const Jet<S>& a) {
  using std::cos;
  using std::sin;
  const S s = sin(a.value()), c = cos(a.value());
  return compose(a, c, -s, -c, s);
}

template <typename S>
Jet<S> sinh(const Jet<S>& a) {
  using std::cosh;
  using std::sinh;
  const S s = sinh(a.value()), c = cosh(a.value());
  return compose(a, s, c, s, c);
}

template <typename S>
Jet<S> cosh(const Jet<S>& a) {
  using std::cosh;
  using std::sinh;
  const S s = sinh(a.value()), c = cosh(a.value());
  return compose(a, c, s, c, s);
}

template <typename S>
Jet<S> tanh(const Jet<S>& a) {
  using std::tanh;
  const S t = tanh(a.value());
  const S sech2 = S(1.0) - t * t;
  return compose(a, t, sech2, S(-2.0) * t * sech2,
                 (S(6.0) * t * t - S(2.0)) * sech2);
}

/// Integer power by repeated squaring; negative exponents go through the
/// reciprocal and therefore reject zero-valued bases.
template <typename S>
Jet<S> pow(const Jet<S>& a, int n) {
  if (n < 0) return reciprocal(pow(a, -n));
  Jet<S> result = Jet<S>::constant(S(1.0), a.order());
  Jet<S> base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

inline double pow(double a, int n) {
  if (n < 0 && a == 0.0) throw DomainError("div", 0.0);
  return std::pow(a, n);
}

/// Seeds for the three chart coordinates at a point.
inline std::array<Jet3, 3> seed_coordinates(const std::array<double, 3>& at,
                                            int order) {
  return {Jet3::variable(0, at[0], order), Jet3::variable(1, at[1], order),
          Jet3::variable(2, at[2], order)};
}

}  // namespace ctgeo

namespace Eigen {

template <typename S>
struct NumTraits<ctgeo::Jet<S>> : GenericNumTraits<ctgeo::Jet<S>> {
  using Real = ctgeo::Jet<S>;
  using NonInteger = ctgeo::Jet<S>;
  using Nested = ctgeo::Jet<S>;
  using Literal = ctgeo::Jet<S>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 20,
    MulCost = 60
  };
  static inline Real epsilon() {
    return Real(std::numeric_limits<double>::epsilon());
  }
  static inline Real dummy_precision() { return Real(1e-12); }
  static inline int digits10() { return NumTraits<double>::digits10(); }
};

template <typename S, typename BinaryOp>
struct ScalarBinaryOpTraits<ctgeo::Jet<S>, double, BinaryOp> {
  using ReturnType = ctgeo::Jet<S>;
};
template <typename S, typename BinaryOp>
struct ScalarBinaryOpTraits<double, ctgeo::Jet<S>, BinaryOp> {
  using ReturnType = ctgeo::Jet<S>;
};

}  // namespace Eigen
