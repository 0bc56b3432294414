#pragma once

// Exterior calculus on coordinate components of differential forms.
// No factorial normalisation: (a∧b)(X,Y,Z) = a(X)b(Y,Z) − a(Y)b(X,Z) + a(Z)b(X,Y).

#include "ctgeo/tensor.hpp"

namespace ctgeo {

template <typename S>
Tensor<Jet<S>, 0, 1> exterior_derivative(const Jet<S>& f) {
  Tensor<Jet<S>, 0, 1> out;
  for (int i = 0; i < 3; ++i) out(i) = f.partial(i);
  return out;
}

/// dω(X,Y) = Xω(Y) − Yω(X) − ω([X,Y]).
template <typename S>
Tensor<Jet<S>, 0, 2> exterior_derivative(const Tensor<Jet<S>, 0, 1>& w) {
  const auto dw = partial(w);  // dw(i, j) = ∂_i w_j
  Tensor<Jet<S>, 0, 2> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = dw(i, j) - dw(j, i);
  return out;
}

/// Six-term formula; on coordinate fields the bracket terms vanish.
template <typename S>
Tensor<Jet<S>, 0, 3> exterior_derivative(const Tensor<Jet<S>, 0, 2>& w) {
  const auto dw = partial(w);  // dw(i, j, k) = ∂_i w_jk
  Tensor<Jet<S>, 0, 3> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        out(i, j, k) = dw(i, j, k) - dw(j, i, k) + dw(k, i, j);
  return out;
}

template <typename T>
Tensor<T, 0, 3> wedge(const Tensor<T, 0, 1>& a, const Tensor<T, 0, 2>& b) {
  Tensor<T, 0, 3> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        out(i, j, k) = a(i) * b(j, k) - a(j) * b(i, k) + a(k) * b(i, j);
  return out;
}

}  // namespace ctgeo
