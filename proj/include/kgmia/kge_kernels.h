// Copyright 2026 The KGMIA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KGMIA_KGE_KERNELS_H_
#define KGMIA_KGE_KERNELS_H_

// Score functions and their analytic gradients over raw embedding rows. The
// scalar type of the rows is a template parameter so the same code serves
// float32 training and float64 gradient checking.

#include <cmath>
#include <span>

#include "kgmia/kge_model.h"

namespace kgmia {

template <typename T>
struct TripleRows {
  std::span<const T> head;
  std::span<const T> relation;
  std::span<const T> tail;
  std::span<const T> normal;       // TransH only
  std::span<const T> head_im;      // ComplEx only
  std::span<const T> relation_im;  // ComplEx only
  std::span<const T> tail_im;      // ComplEx only
};

// Gradient sinks, same layout as TripleRows. Unused members may be empty.
struct TripleGrads {
  std::span<double> head;
  std::span<double> relation;
  std::span<double> tail;
  std::span<double> normal;
  std::span<double> head_im;
  std::span<double> relation_im;
  std::span<double> tail_im;
};

namespace internal {

// Residual x = h' + r - t' of the translation models.
template <typename T>
inline void TranslationResidual(ModelKind kind, const TripleRows<T>& rows,
                                std::span<double> x, double* proj) {
  const size_t d = rows.head.size();
  double a = 0.0;
  if (kind == ModelKind::kTransH) {
    for (size_t i = 0; i < d; ++i) {
      a += double(rows.normal[i]) * (double(rows.head[i]) - double(rows.tail[i]));
    }
  }
  for (size_t i = 0; i < d; ++i) {
    double v = double(rows.head[i]) + double(rows.relation[i]) -
               double(rows.tail[i]);
    if (kind == ModelKind::kTransH) v -= a * double(rows.normal[i]);
    x[i] = v;
  }
  *proj = a;
}

template <typename T>
inline double NormOf(NormKind norm, std::span<const T> x) {
  double acc = 0.0;
  if (norm == NormKind::kL1) {
    for (T v : x) acc += std::abs(double(v));
    return acc;
  }
  for (T v : x) acc += double(v) * double(v);
  return std::sqrt(acc);
}

}  // namespace internal

// Scratch space for one residual vector; sized to the embedding dimension.
template <typename T>
double ScoreRows(ModelKind kind, NormKind norm, const TripleRows<T>& rows,
                 std::span<double> scratch) {
  const size_t d = rows.head.size();
  switch (kind) {
    case ModelKind::kTransE:
    case ModelKind::kTransH: {
      double proj = 0.0;
      internal::TranslationResidual(kind, rows, scratch.first(d), &proj);
      return internal::NormOf<double>(norm, scratch.first(d));
    }
    case ModelKind::kDistMult: {
      double acc = 0.0;
      for (size_t i = 0; i < d; ++i) {
        acc += double(rows.head[i]) * double(rows.relation[i]) *
               double(rows.tail[i]);
      }
      return -acc;
    }
    case ModelKind::kComplEx: {
      double acc = 0.0;
      for (size_t i = 0; i < d; ++i) {
        const double hr = rows.head[i], hi = rows.head_im[i];
        const double rr = rows.relation[i], ri = rows.relation_im[i];
        const double tr = rows.tail[i], ti = rows.tail_im[i];
        acc += hr * rr * tr + hi * rr * ti + hr * ri * ti - hi * ri * tr;
      }
      return -acc;
    }
  }
  return 0.0;
}

// Adds coeff * d(score)/d(row) into each sink. Returns the score.
template <typename T>
double AccumulateScoreGradient(ModelKind kind, NormKind norm,
                               const TripleRows<T>& rows, double coeff,
                               const TripleGrads& grads,
                               std::span<double> scratch) {
  const size_t d = rows.head.size();
  switch (kind) {
    case ModelKind::kTransE:
    case ModelKind::kTransH: {
      std::span<double> x = scratch.first(d);
      double proj = 0.0;
      internal::TranslationResidual(kind, rows, x, &proj);
      const double score = internal::NormOf<double>(norm, x);
      // g = coeff * d||x||/dx, stored in place of x.
      if (norm == NormKind::kL1) {
        for (size_t i = 0; i < d; ++i) {
          x[i] = x[i] > 0 ? coeff : (x[i] < 0 ? -coeff : 0.0);
        }
      } else {
        const double inv = score > 0 ? coeff / score : 0.0;
        for (size_t i = 0; i < d; ++i) x[i] *= inv;
      }
      if (kind == ModelKind::kTransE) {
        for (size_t i = 0; i < d; ++i) {
          grads.head[i] += x[i];
          grads.relation[i] += x[i];
          grads.tail[i] -= x[i];
        }
        return score;
      }
      // TransH: dx/dh = I - w w^T, dx/dw_j = -(h-t)_j w - a e_j.
      double wg = 0.0;
      for (size_t i = 0; i < d; ++i) wg += double(rows.normal[i]) * x[i];
      for (size_t i = 0; i < d; ++i) {
        const double w = rows.normal[i];
        const double diff = double(rows.head[i]) - double(rows.tail[i]);
        const double gp = x[i] - wg * w;
        grads.head[i] += gp;
        grads.tail[i] -= gp;
        grads.relation[i] += x[i];
        grads.normal[i] += -diff * wg - proj * x[i];
      }
      return score;
    }
    case ModelKind::kDistMult: {
      double acc = 0.0;
      for (size_t i = 0; i < d; ++i) {
        const double h = rows.head[i], r = rows.relation[i], t = rows.tail[i];
        acc += h * r * t;
        grads.head[i] -= coeff * r * t;
        grads.relation[i] -= coeff * h * t;
        grads.tail[i] -= coeff * h * r;
      }
      return -acc;
    }
    case ModelKind::kComplEx: {
      double acc = 0.0;
      for (size_t i = 0; i < d; ++i) {
        const double hr = rows.head[i], hi = rows.head_im[i];
        const double rr = rows.relation[i], ri = rows.relation_im[i];
        const double tr = rows.tail[i], ti = rows.tail_im[i];
        acc += hr * rr * tr + hi * rr * ti + hr * ri * ti - hi * ri * tr;
        grads.head[i] -= coeff * (rr * tr + ri * ti);
        grads.head_im[i] -= coeff * (rr * ti - ri * tr);
        grads.relation[i] -= coeff * (hr * tr + hi * ti);
        grads.relation_im[i] -= coeff * (hr * ti - hi * tr);
        grads.tail[i] -= coeff * (hr * rr - hi * ri);
        grads.tail_im[i] -= coeff * (hi * rr + hr * ri);
      }
      return -acc;
    }
  }
  return 0.0;
}

inline TripleRows<float> ModelRows(const KgeModel& model, const Triple& t) {
  TripleRows<float> rows;
  rows.head = model.entities().row(t.head);
  rows.relation = model.relations().row(t.relation);
  rows.tail = model.entities().row(t.tail);
  if (model.kind() == ModelKind::kTransH) {
    rows.normal = model.normals().row(t.relation);
  } else if (model.kind() == ModelKind::kComplEx) {
    rows.head_im = model.entities_im().row(t.head);
    rows.relation_im = model.relations_im().row(t.relation);
    rows.tail_im = model.entities_im().row(t.tail);
  }
  return rows;
}

}  // namespace kgmia

#endif  // KGMIA_KGE_KERNELS_H_
