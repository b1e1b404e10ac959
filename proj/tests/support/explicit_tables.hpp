#pragma once

// The explicit low-order propagation tables written out term by term, used to
// check the general coefficient formulas.

#include <cmath>
#include <map>
#include <utility>

namespace tables {

using Index = std::pair<int, int>;
// For a target (p,q): map from source (i,j) to its coefficient.
using Row = std::map<Index, double>;

// Central moments up to order 4 under linear blur with displacement (aT, bT).
inline Row linear_row(int p, int q, double a, double b, double T) {
  const double A = a * T / 2.0, B = b * T / 2.0;
  switch (p * 10 + q) {
    case 0:
      return {{{0, 0}, 1.0}};
    case 20:
      return {{{2, 0}, 1.0}, {{0, 0}, A * A / 3.0}};
    case 11:
      return {{{1, 1}, 1.0}, {{0, 0}, A * B / 3.0}};
    case 2:
      return {{{0, 2}, 1.0}, {{0, 0}, B * B / 3.0}};
    case 30:
      return {{{3, 0}, 1.0}};
    case 21:
      return {{{2, 1}, 1.0}};
    case 12:
      return {{{1, 2}, 1.0}};
    case 3:
      return {{{0, 3}, 1.0}};
    case 40:
      return {{{4, 0}, 1.0}, {{2, 0}, 2.0 * A * A}, {{0, 0}, std::pow(A, 4) / 5.0}};
    case 31:
      return {{{3, 1}, 1.0}, {{2, 0}, A * B}, {{1, 1}, A * A}, {{0, 0}, std::pow(A, 3) * B / 5.0}};
    case 22:
      return {{{2, 2}, 1.0},
              {{2, 0}, B * B / 3.0},
              {{0, 2}, A * A / 3.0},
              {{1, 1}, 4.0 / 3.0 * A * B},
              {{0, 0}, A * A * B * B / 5.0}};
    case 13:
      return {{{1, 3}, 1.0}, {{0, 2}, A * B}, {{1, 1}, B * B}, {{0, 0}, A * std::pow(B, 3) / 5.0}};
    case 4:
      return {{{0, 4}, 1.0}, {{0, 2}, 2.0 * B * B}, {{0, 0}, std::pow(B, 4) / 5.0}};
  }
  return {};
}

// Raw moments about the pivot of orders 1 and 2 under a sweep w = omega T.
inline Row rotational_row(int p, int q, double w) {
  const double s = std::sin(w), c = std::cos(w);
  switch (p * 10 + q) {
    case 10:
      return {{{1, 0}, s / w}, {{0, 1}, (1.0 - c) / w}};
    case 1:
      return {{{1, 0}, (-1.0 + c) / w}, {{0, 1}, s / w}};
    case 20:
      return {{{2, 0}, (c * s + w) / (2 * w)}, {{1, 1}, 2 * s * s / (2 * w)}, {{0, 2}, (-c * s + w) / (2 * w)}};
    case 11:
      return {{{2, 0}, -s * s / (2 * w)}, {{1, 1}, 2 * c * s / (2 * w)}, {{0, 2}, s * s / (2 * w)}};
    case 2:
      return {{{2, 0}, (-c * s + w) / (2 * w)}, {{1, 1}, -2 * s * s / (2 * w)}, {{0, 2}, (c * s + w) / (2 * w)}};
  }
  return {};
}

}  // namespace tables
