// src/nn_ops.h

// Copyright 2026  ttslabel authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Dense building blocks for the annotator: forward passes and their
// hand-derived backward passes. Matrices are row-major, one row per time step.

#ifndef TTSLABEL_NN_OPS_H_
#define TTSLABEL_NN_OPS_H_

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <vector>

#include "ttslabel/model.h"

namespace ttslabel::nn {

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using RowVec = Eigen::Matrix<T, 1, Eigen::Dynamic>;
template <typename T>
using ConstMatMap = Eigen::Map<const Mat<T>>;
template <typename T>
using MatMap = Eigen::Map<Mat<T>>;
template <typename T>
using ConstRowMap = Eigen::Map<const RowVec<T>>;
template <typename T>
using RowMap = Eigen::Map<RowVec<T>>;

template <typename T>
ConstMatMap<T> Weight(const T *p, const LinearSlot &s) {
  return ConstMatMap<T>(p + s.w, s.in, s.out);
}
template <typename T>
ConstRowMap<T> Bias(const T *p, const LinearSlot &s) {
  return ConstRowMap<T>(p + s.b, s.out);
}

template <typename T>
Mat<T> LinearForward(const Mat<T> &x, const T *p, const LinearSlot &s) {
  Mat<T> y = x * Weight(p, s);
  y.rowwise() += Bias(p, s);
  return y;
}

// Adds dW, db into `g` (when non-null) and returns dx (empty if !need_dx).
template <typename T>
Mat<T> LinearBackward(const Mat<T> &x, const Mat<T> &dy, const T *p,
                      const LinearSlot &s, T *g, bool need_dx = true) {
  if (g != nullptr) {
    MatMap<T>(g + s.w, s.in, s.out).noalias() += x.transpose() * dy;
    RowMap<T>(g + s.b, s.out) += dy.colwise().sum();
  }
  if (!need_dx) return Mat<T>();
  return dy * Weight(p, s).transpose();
}

template <typename T>
struct NormCache {
  Mat<T> xhat;
  std::vector<T> rstd;
};

inline constexpr double kNormEps = 1e-5;

template <typename T>
Mat<T> LayerNormForward(const Mat<T> &x, const T *p, const NormSlot &s,
                        NormCache<T> *cache) {
  ConstRowMap<T> gain(p + s.gain, s.dim), bias(p + s.bias, s.dim);
  Mat<T> xhat(x.rows(), x.cols());
  std::vector<T> rstd(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const T mean = x.row(r).mean();
    auto centered = (x.row(r).array() - mean).matrix();
    const T var = centered.squaredNorm() / static_cast<T>(x.cols());
    const T inv = T(1) / std::sqrt(var + static_cast<T>(kNormEps));
    xhat.row(r) = centered * inv;
    rstd[static_cast<std::size_t>(r)] = inv;
  }
  Mat<T> y = xhat.array().rowwise() * gain.array();
  y.rowwise() += bias;
  if (cache != nullptr) {
    cache->xhat = std::move(xhat);
    cache->rstd = std::move(rstd);
  }
  return y;
}

template <typename T>
Mat<T> LayerNormBackward(const Mat<T> &dy, const NormCache<T> &c, const T *p,
                         const NormSlot &s, T *g) {
  ConstRowMap<T> gain(p + s.gain, s.dim);
  if (g != nullptr) {
    RowMap<T>(g + s.gain, s.dim) += dy.cwiseProduct(c.xhat).colwise().sum();
    RowMap<T>(g + s.bias, s.dim) += dy.colwise().sum();
  }
  Mat<T> dx(dy.rows(), dy.cols());
  const T inv_n = T(1) / static_cast<T>(dy.cols());
  for (Eigen::Index r = 0; r < dy.rows(); ++r) {
    RowVec<T> dxhat = dy.row(r).cwiseProduct(gain);
    const T m1 = dxhat.sum() * inv_n;
    const T m2 = dxhat.dot(c.xhat.row(r)) * inv_n;
    dx.row(r) = ((dxhat.array() - m1) - c.xhat.row(r).array() * m2) *
                c.rstd[static_cast<std::size_t>(r)];
  }
  return dx;
}

// Softmax over the first `valid` entries of a row; the rest become zero.
template <typename T>
void MaskedSoftmaxRow(T *row, int cols, int valid) {
  T mx = -std::numeric_limits<T>::infinity();
  for (int j = 0; j < valid; ++j) mx = std::max(mx, row[j]);
  T sum = 0;
  for (int j = 0; j < valid; ++j) {
    row[j] = std::exp(row[j] - mx);
    sum += row[j];
  }
  const T inv = T(1) / sum;
  for (int j = 0; j < valid; ++j) row[j] *= inv;
  for (int j = valid; j < cols; ++j) row[j] = 0;
}

template <typename T>
struct AttnCache {
  Mat<T> xq, xkv;
  Mat<T> q, k, v;
  std::vector<Mat<T>> probs;  // per head [n_q, n_kv]
  Mat<T> ctx;
  bool causal = false;
};

template <typename T>
Mat<T> AttentionForward(const Mat<T> &xq, const Mat<T> &xkv, bool causal,
                        int heads, const T *p, const AttentionSlot &s,
                        AttnCache<T> *cache) {
  const int d = s.q.out;
  const int dh = d / heads;
  const T scale = T(1) / std::sqrt(static_cast<T>(dh));
  Mat<T> q = LinearForward(xq, p, s.q);
  Mat<T> k = LinearForward(xkv, p, s.k);
  Mat<T> v = LinearForward(xkv, p, s.v);
  const int nq = static_cast<int>(xq.rows());
  const int nk = static_cast<int>(xkv.rows());
  Mat<T> ctx(nq, d);
  std::vector<Mat<T>> probs;
  probs.reserve(static_cast<std::size_t>(heads));
  for (int h = 0; h < heads; ++h) {
    Mat<T> scores = (q.middleCols(h * dh, dh) * k.middleCols(h * dh, dh).transpose()) * scale;
    for (int i = 0; i < nq; ++i)
      MaskedSoftmaxRow(scores.row(i).data(), nk, causal ? std::min(i + 1, nk) : nk);
    ctx.middleCols(h * dh, dh).noalias() = scores * v.middleCols(h * dh, dh);
    probs.push_back(std::move(scores));
  }
  Mat<T> out = LinearForward(ctx, p, s.o);
  if (cache != nullptr) {
    cache->xq = xq;
    cache->xkv = xkv;
    cache->q = std::move(q);
    cache->k = std::move(k);
    cache->v = std::move(v);
    cache->probs = std::move(probs);
    cache->ctx = std::move(ctx);
    cache->causal = causal;
  }
  return out;
}

// dxq receives the query-side input gradient; dxkv (optional) the key/value
// side. Both are overwritten.
template <typename T>
void AttentionBackward(const Mat<T> &dout, const AttnCache<T> &c, int heads,
                       const T *p, const AttentionSlot &s, T *g, Mat<T> *dxq,
                       Mat<T> *dxkv) {
  const int d = s.q.out;
  const int dh = d / heads;
  const T scale = T(1) / std::sqrt(static_cast<T>(dh));
  Mat<T> dctx = LinearBackward(c.ctx, dout, p, s.o, g);
  Mat<T> dq(c.q.rows(), d), dk(c.k.rows(), d), dv(c.v.rows(), d);
  for (int h = 0; h < heads; ++h) {
    const Mat<T> &pr = c.probs[static_cast<std::size_t>(h)];
    auto dctx_h = dctx.middleCols(h * dh, dh);
    Mat<T> dp = dctx_h * c.v.middleCols(h * dh, dh).transpose();
    dv.middleCols(h * dh, dh).noalias() = pr.transpose() * dctx_h;
    // softmax Jacobian: dS = P .* (dP - rowsum(dP .* P))
    Eigen::Matrix<T, Eigen::Dynamic, 1> dots = dp.cwiseProduct(pr).rowwise().sum();
    Mat<T> ds = pr.cwiseProduct((dp.colwise() - dots)) * scale;
    dq.middleCols(h * dh, dh).noalias() = ds * c.k.middleCols(h * dh, dh);
    dk.middleCols(h * dh, dh).noalias() = ds.transpose() * c.q.middleCols(h * dh, dh);
  }
  *dxq = LinearBackward(c.xq, dq, p, s.q, g);
  const bool need_kv = dxkv != nullptr;
  Mat<T> dk_in = LinearBackward(c.xkv, dk, p, s.k, g, need_kv);
  Mat<T> dv_in = LinearBackward(c.xkv, dv, p, s.v, g, need_kv);
  if (need_kv) *dxkv = dk_in + dv_in;
}

inline constexpr double kGeluC = 0.7978845608028654;  // sqrt(2/pi)
inline constexpr double kGeluA = 0.044715;

template <typename T>
T Gelu(T x) {
  const T u = static_cast<T>(kGeluC) * (x + static_cast<T>(kGeluA) * x * x * x);
  return T(0.5) * x * (T(1) + std::tanh(u));
}

template <typename T>
T GeluGrad(T x) {
  const T u = static_cast<T>(kGeluC) * (x + static_cast<T>(kGeluA) * x * x * x);
  const T t = std::tanh(u);
  const T du = static_cast<T>(kGeluC) * (T(1) + T(3) * static_cast<T>(kGeluA) * x * x);
  return T(0.5) * (T(1) + t) + T(0.5) * x * (T(1) - t * t) * du;
}

template <typename T>
struct FfCache {
  Mat<T> x, pre, act;
};

template <typename T>
Mat<T> FeedForwardForward(const Mat<T> &x, const T *p, const FeedForwardSlot &s,
                          FfCache<T> *cache) {
  Mat<T> pre = LinearForward(x, p, s.up);
  Mat<T> act = pre.unaryExpr([](T v) { return Gelu(v); });
  Mat<T> out = LinearForward(act, p, s.down);
  if (cache != nullptr) {
    cache->x = x;
    cache->pre = std::move(pre);
    cache->act = std::move(act);
  }
  return out;
}

template <typename T>
Mat<T> FeedForwardBackward(const Mat<T> &dout, const FfCache<T> &c, const T *p,
                           const FeedForwardSlot &s, T *g) {
  Mat<T> dact = LinearBackward(c.act, dout, p, s.down, g);
  Mat<T> dpre = dact.cwiseProduct(c.pre.unaryExpr([](T v) { return GeluGrad(v); }));
  return LinearBackward(c.x, dpre, p, s.up, g);
}

// Sinusoidal position code for position `pos`, written into `row`.
template <typename T>
void AddPositional(T *row, int dim, int pos) {
  for (int i = 0; i < dim; i += 2) {
    const double freq = std::pow(10000.0, -static_cast<double>(i) / dim);
    row[i] += static_cast<T>(std::sin(pos * freq));
    if (i + 1 < dim) row[i + 1] += static_cast<T>(std::cos(pos * freq));
  }
}

template <typename T>
void AddPositional(Mat<T> *x, int start) {
  for (Eigen::Index r = 0; r < x->rows(); ++r)
    AddPositional(x->row(r).data(), static_cast<int>(x->cols()),
                  start + static_cast<int>(r));
}

template <typename T>
void LogSoftmaxRow(T *row, int n) {
  T mx = row[0];
  for (int j = 1; j < n; ++j) mx = std::max(mx, row[j]);
  T sum = 0;
  for (int j = 0; j < n; ++j) sum += std::exp(row[j] - mx);
  const T lse = mx + std::log(sum);
  for (int j = 0; j < n; ++j) row[j] -= lse;
}

// [N, D*(2c+1)] with edge frames repeated.
template <typename T>
Mat<T> SpliceFrames(const AcousticFeatures &x, int context) {
  const int width = 2 * context + 1;
  Mat<T> out(x.n_frames, x.dim * width);
  for (int n = 0; n < x.n_frames; ++n) {
    for (int w = 0; w < width; ++w) {
      const int src = std::clamp(n + w - context, 0, x.n_frames - 1);
      for (int d = 0; d < x.dim; ++d)
        out(n, w * x.dim + d) = static_cast<T>(x.at(src, d));
    }
  }
  return out;
}

}  // namespace ttslabel::nn

#endif  // TTSLABEL_NN_OPS_H_
