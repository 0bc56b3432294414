#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "ctgeo/errors.hpp"
#include "ctgeo/tensor.hpp"

namespace ctgeo {

/// Gram–Schmidt over (prefer, ∂_0, ∂_1, ∂_2); columns of the result are the
/// orthonormal vectors. Candidates nearly dependent on earlier ones are skipped.
template <typename S>
Mat3<S> orthonormal_frame(const Mat3<S>& g,
                          const std::optional<Vec3<S>>& prefer = std::nullopt) {
  using std::sqrt;
  auto dot = [&](const Vec3<S>& a, const Vec3<S>& b) {
    S acc(0.0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) acc += g(i, j) * a(i) * b(j);
    return acc;
  };
  std::vector<Vec3<S>> candidates;
  if (prefer) {
    if (!(value_of(dot(*prefer, *prefer)) > 1e-24)) {
      throw DegeneracyError("degenerate preferred frame vector",
                            value_of(dot(*prefer, *prefer)));
    }
    candidates.push_back(*prefer);
  }
  for (int i = 0; i < 3; ++i) {
    Vec3<S> e;
    for (int j = 0; j < 3; ++j) e(j) = S(i == j ? 1.0 : 0.0);
    candidates.push_back(e);
  }
  Mat3<S> frame;
  int found = 0;
  for (const auto& c : candidates) {
    if (found == 3) break;
    Vec3<S> w = c;
    for (int k = 0; k < found; ++k) {
      const Vec3<S> ek = frame.col(k);
      const S proj = dot(w, ek);
      for (int j = 0; j < 3; ++j) w(j) = w(j) - proj * ek(j);
    }
    const S n2 = dot(w, w);
    if (!(value_of(n2) > 1e-10 * value_of(dot(c, c)))) continue;
    const S inv = S(1.0) / sqrt(n2);
    for (int j = 0; j < 3; ++j) frame(j, found) = w(j) * inv;
    ++found;
  }
  if (found < 3) throw DegeneracyError("metric frame construction failed", found);
  return frame;
}

/// T(e_a, e_b) for a covariant 2-tensor given as a matrix.
template <typename S>
Mat3<S> frame_form(const Mat3<S>& frame, const Mat3<S>& t) {
  return frame.transpose() * t * frame;
}

/// Frame matrix of an endomorphism A (A^i_j); uses E^{-1} = E^T g.
template <typename S>
Mat3<S> frame_endomorphism(const Mat3<S>& frame, const Mat3<S>& g,
                           const Mat3<S>& a) {
  return frame.transpose() * g * a * frame;
}

template <typename S>
Vec3<S> frame_vector(const Mat3<S>& frame, const Mat3<S>& g, const Vec3<S>& v) {
  return frame.transpose() * g * v;
}

}  // namespace ctgeo
