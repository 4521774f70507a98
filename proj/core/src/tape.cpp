#include "pinn/tape.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace pinn::ad {

namespace {

// binom[k][i], k = coefficient index of the product, i = operand coefficient
constexpr double kBinom[4][4] = {
    {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

// Four-lane vectors with explicit, code-fixed summation order: the compiler
// will not reassociate floating-point reductions on its own, and the order
// must not depend on anything but the code so reruns stay bit-identical.
typedef double v4d __attribute__((vector_size(32)));

inline v4d load4(const double* p) {
  v4d v;
  __builtin_memcpy(&v, p, 32);
  return v;
}

inline void store4(double* p, v4d v) { __builtin_memcpy(p, &v, 32); }

inline double dot_row(const double* __restrict a, const double* __restrict b,
                      int n) {
  int i = 0;
  double acc = 0.0;
  if (n >= 8) {
    v4d s0 = {0.0, 0.0, 0.0, 0.0};
    v4d s1 = {0.0, 0.0, 0.0, 0.0};
    for (; i + 8 <= n; i += 8) {
      s0 += load4(a + i) * load4(b + i);
      s1 += load4(a + i + 4) * load4(b + i + 4);
    }
    s0 += s1;
    acc = (s0[0] + s0[1]) + (s0[2] + s0[3]);
  }
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

template <int K>
void affine_fwd(const double* __restrict w, const double* __restrict b,
                const double* __restrict in, double* __restrict out, int nin,
                int nout) {
  for (int k = 0; k < K; ++k) {
    const double* __restrict a = in + k * nin;
    double* __restrict z = out + k * nout;
    int o = 0;
    // four rows at a time: activation loads amortize across rows
    for (; o + 4 <= nout && nin >= 4; o += 4) {
      const double* __restrict w0 = w + (o + 0) * nin;
      const double* __restrict w1 = w + (o + 1) * nin;
      const double* __restrict w2 = w + (o + 2) * nin;
      const double* __restrict w3 = w + (o + 3) * nin;
      v4d s0 = {0, 0, 0, 0}, s1 = {0, 0, 0, 0}, s2 = {0, 0, 0, 0}, s3 = {0, 0, 0, 0};
      int i = 0;
      for (; i + 4 <= nin; i += 4) {
        const v4d va = load4(a + i);
        s0 += load4(w0 + i) * va;
        s1 += load4(w1 + i) * va;
        s2 += load4(w2 + i) * va;
        s3 += load4(w3 + i) * va;
      }
      double r0 = (s0[0] + s0[1]) + (s0[2] + s0[3]);
      double r1 = (s1[0] + s1[1]) + (s1[2] + s1[3]);
      double r2 = (s2[0] + s2[1]) + (s2[2] + s2[3]);
      double r3 = (s3[0] + s3[1]) + (s3[2] + s3[3]);
      for (; i < nin; ++i) {
        r0 += w0[i] * a[i];
        r1 += w1[i] * a[i];
        r2 += w2[i] * a[i];
        r3 += w3[i] * a[i];
      }
      if (k == 0) {
        r0 += b[o];
        r1 += b[o + 1];
        r2 += b[o + 2];
        r3 += b[o + 3];
      }
      z[o] = r0;
      z[o + 1] = r1;
      z[o + 2] = r2;
      z[o + 3] = r3;
    }
    for (; o < nout; ++o) {
      const double base = (k == 0) ? b[o] : 0.0;
      z[o] = base + dot_row(w + o * nin, a, nin);
    }
  }
}

template <int K>
void affine_bwd(const double* __restrict w, const double* __restrict in,
                const double* __restrict cadj, double* __restrict inadj,
                double* __restrict gw, double* __restrict gb, int nin, int nout) {
  for (int k = 0; k < K; ++k) {
    const double* __restrict ca = cadj + k * nout;
    double* __restrict ia = inadj + k * nin;
    const double* __restrict av = in + k * nin;
    int o = 0;
    // four rows at a time: the input-adjoint row is read and written once
    for (; o + 4 <= nout && nin >= 4; o += 4) {
      const double c0 = ca[o], c1 = ca[o + 1], c2 = ca[o + 2], c3 = ca[o + 3];
      const double* __restrict w0 = w + (o + 0) * nin;
      const double* __restrict w1 = w + (o + 1) * nin;
      const double* __restrict w2 = w + (o + 2) * nin;
      const double* __restrict w3 = w + (o + 3) * nin;
      double* __restrict g0 = gw + (o + 0) * nin;
      double* __restrict g1 = gw + (o + 1) * nin;
      double* __restrict g2 = gw + (o + 2) * nin;
      double* __restrict g3 = gw + (o + 3) * nin;
      const v4d vc0 = {c0, c0, c0, c0}, vc1 = {c1, c1, c1, c1};
      const v4d vc2 = {c2, c2, c2, c2}, vc3 = {c3, c3, c3, c3};
      int i = 0;
      for (; i + 4 <= nin; i += 4) {
        const v4d va = load4(av + i);
        v4d acc = load4(ia + i);
        acc += vc0 * load4(w0 + i);
        acc += vc1 * load4(w1 + i);
        acc += vc2 * load4(w2 + i);
        acc += vc3 * load4(w3 + i);
        store4(ia + i, acc);
        store4(g0 + i, load4(g0 + i) + vc0 * va);
        store4(g1 + i, load4(g1 + i) + vc1 * va);
        store4(g2 + i, load4(g2 + i) + vc2 * va);
        store4(g3 + i, load4(g3 + i) + vc3 * va);
      }
      for (; i < nin; ++i) {
        ia[i] += c0 * w0[i] + c1 * w1[i] + c2 * w2[i] + c3 * w3[i];
        g0[i] += c0 * av[i];
        g1[i] += c1 * av[i];
        g2[i] += c2 * av[i];
        g3[i] += c3 * av[i];
      }
    }
    for (; o < nout; ++o) {
      const double c = ca[o];
      const double* __restrict wr = w + o * nin;
      double* __restrict gwr = gw + o * nin;
      int i = 0;
      if (nin >= 4) {
        const v4d vc = {c, c, c, c};
        for (; i + 4 <= nin; i += 4) {
          store4(ia + i, load4(ia + i) + vc * load4(wr + i));
          store4(gwr + i, load4(gwr + i) + vc * load4(av + i));
        }
      }
      for (; i < nin; ++i) {
        ia[i] += c * wr[i];
        gwr[i] += c * av[i];
      }
    }
  }
  const double* __restrict c0 = cadj;
  for (int o = 0; o < nout; ++o) gb[o] += c0[o];
}

inline void unary_derivs_for(Act act, double out0, int n, double* f) {
  switch (act) {
    case Act::Sigmoid: detail::sigmoid_derivs_from_value(out0, n, f); break;
    case Act::Tanh: detail::tanh_derivs_from_value(out0, n, f); break;
    case Act::Relu: break;  // handled by caller, needs the input sign
  }
}

// Composition forward for one jet given f-derivatives (strided layout).
template <int K>
inline void compose_fwd(const double* f, const double* a, double* c, int stride) {
  c[0] = f[0];
  if constexpr (K >= 2) c[stride] = f[1] * a[stride];
  if constexpr (K >= 3) {
    const double a1 = a[stride], a2 = a[2 * stride];
    c[2 * stride] = f[1] * a2 + f[2] * a1 * a1;
  }
  if constexpr (K >= 4) {
    const double a1 = a[stride], a2 = a[2 * stride], a3 = a[3 * stride];
    c[3 * stride] = f[1] * a3 + 3.0 * f[2] * a1 * a2 + f[3] * a1 * a1 * a1;
  }
}

// Adjoint of the composition; needs f up to order K (one past the carried
// order, for the dependence of every output coefficient on a0).
template <int K>
inline void compose_bwd(const double* f, const double* a, const double* cadj,
                        double* aadj, int stride) {
  const double c0 = cadj[0];
  const double c1 = (K >= 2) ? cadj[stride] : 0.0;
  const double c2 = (K >= 3) ? cadj[2 * stride] : 0.0;
  const double c3 = (K >= 4) ? cadj[3 * stride] : 0.0;
  const double a1 = (K >= 2) ? a[stride] : 0.0;
  const double a2 = (K >= 3) ? a[2 * stride] : 0.0;
  const double a3 = (K >= 4) ? a[3 * stride] : 0.0;

  double g0 = c0 * f[1];
  if constexpr (K >= 2) g0 += c1 * f[2] * a1;
  if constexpr (K >= 3) g0 += c2 * (f[2] * a2 + f[3] * a1 * a1);
  if constexpr (K >= 4)
    g0 += c3 * (f[2] * a3 + 3.0 * f[3] * a1 * a2 + f[4] * a1 * a1 * a1);
  aadj[0] += g0;
  if constexpr (K >= 2) {
    double g1 = c1 * f[1];
    if constexpr (K >= 3) g1 += c2 * 2.0 * f[2] * a1;
    if constexpr (K >= 4) g1 += c3 * (3.0 * f[2] * a2 + 3.0 * f[3] * a1 * a1);
    aadj[stride] += g1;
  }
  if constexpr (K >= 3) {
    double g2 = c2 * f[1];
    if constexpr (K >= 4) g2 += c3 * 3.0 * f[2] * a1;
    aadj[2 * stride] += g2;
  }
  if constexpr (K >= 4) aadj[3 * stride] += c3 * f[1];
}

template <int K>
void act_fwd(Act act, const double* __restrict in, double* __restrict out, int n) {
  if (act == Act::Sigmoid) {
    // batch the transcendental over the contiguous value row
    double* __restrict s = out;  // out[0..n) holds sigma(z0) after this loop
    for (int u = 0; u < n; ++u) s[u] = detail::sigmoid_value(in[u]);
    if constexpr (K > 1) {
      double f[5];
      for (int u = 0; u < n; ++u) {
        detail::sigmoid_derivs_from_value(s[u], K - 1, f);
        compose_fwd<K>(f, in + u, out + u, n);
      }
    }
    return;
  }
  double f[5];
  for (int u = 0; u < n; ++u) {
    const double x = in[u];
    if (act == Act::Relu) {
      detail::relu_derivs(x, K - 1, f);
    } else {
      detail::tanh_derivs(x, K - 1, f);
    }
    compose_fwd<K>(f, in + u, out + u, n);
  }
}

template <int K>
void act_bwd(Act act, const double* in, const double* out, const double* cadj,
             double* inadj, int n) {
  double f[5];
  for (int u = 0; u < n; ++u) {
    if (act == Act::Relu) {
      detail::relu_derivs(in[u], K, f);
    } else {
      unary_derivs_for(act, out[u], K, f);
    }
    compose_bwd<K>(f, in + u, cadj + u, inadj + u, n);
  }
}

}  // namespace

Tape::Tape(std::span<const double> params, int order)
    : params_(params), order_(order) {
  if (order < 0 || order > kMaxOrder) {
    throw UnsupportedOrderError("tape order " + std::to_string(order) +
                                " exceeds supported maximum");
  }
  kind_.reserve(1024);
}

std::int32_t Tape::push(Kind k, std::int32_t a, std::int32_t b) {
  const auto id = static_cast<std::int32_t>(kind_.size());
  kind_.push_back(k);
  pa_.push_back(a);
  pb_.push_back(b);
  aux_.push_back(0.0);
  iaux_.push_back(0);
  vals_.insert(vals_.end(), 4, 0.0);
  adjs_.insert(adjs_.end(), 4, 0.0);
  return id;
}

std::int32_t Tape::push_vec(Kind k, std::int32_t parent, int width, int kcoef) {
  const auto id = push(k, parent, -1);
  VecMeta m;
  m.width = width;
  m.kcoef = kcoef;
  m.val_off = static_cast<std::int32_t>(arena_used_);
  m.adj_off = m.val_off + kcoef * width;
  arena_used_ += static_cast<std::size_t>(2 * kcoef * width);
  if (arena_.size() < arena_used_) arena_.resize(arena_used_);
  // the forward kernel overwrites the value block; only the adjoint half
  // needs a clean slate
  std::fill_n(arena_.begin() + m.adj_off, kcoef * width, 0.0);
  iaux_[static_cast<std::size_t>(id)] = static_cast<std::int32_t>(vecs_.size());
  vecs_.push_back(m);
  return id;
}

Value Tape::constant(double v) {
  const auto id = push(Kind::Const, -1, -1);
  val(id)[0] = v;
  return {this, id};
}

Value Tape::constant(const Jet& j) {
  if (j.order > order_) throw UnsupportedOrderError("constant jet order exceeds tape order");
  const auto id = push(Kind::Const, -1, -1);
  for (int k = 0; k <= j.order; ++k) val(id)[k] = j.d[k];
  return {this, id};
}

Value Tape::input(double x, bool active) {
  const auto id = push(Kind::Input, -1, -1);
  const Jet j = lift_input(x, active, order_);
  for (int k = 0; k <= order_; ++k) val(id)[k] = j.d[k];
  return {this, id};
}

Value Tape::param(std::size_t index) {
  if (index >= params_.size()) throw ShapeError("param index out of range");
  const auto id = push(Kind::Param, -1, -1);
  iaux_[static_cast<std::size_t>(id)] = static_cast<std::int32_t>(index);
  val(id)[0] = params_[index];
  return {this, id};
}

VecValue Tape::vec_input(std::span<const Jet> jets) {
  const int w = static_cast<int>(jets.size());
  const int ord = jets.empty() ? 0 : jets[0].order;
  if (ord > order_) throw UnsupportedOrderError("vec_input: jets exceed tape order");
  for (const Jet& j : jets) {
    if (j.order != ord) throw UnsupportedOrderError("vec_input: mixed jet orders");
  }
  const auto id = push_vec(Kind::VecIn, -1, w, ord + 1);
  const VecMeta& m = vecs_.back();
  for (int u = 0; u < w; ++u) {
    for (int k = 0; k <= ord; ++k) arena_[m.val_off + k * w + u] = jets[u].d[k];
  }
  return {this, id, w};
}

VecValue Tape::affine(VecValue in, std::size_t weight_offset, std::size_t bias_offset,
                      int in_dim, int out_dim) {
  if (in.width != in_dim) throw ShapeError("affine: input width mismatch");
  if (bias_offset + static_cast<std::size_t>(out_dim) > params_.size()) {
    throw ShapeError("affine: parameter span too short for layer");
  }
  const int kc = vecs_[static_cast<std::size_t>(iaux_[static_cast<std::size_t>(in.id)])].kcoef;
  const auto id = push_vec(Kind::VecAffine, in.id, out_dim, kc);
  VecMeta& m = vecs_.back();
  m.w_off = static_cast<std::int32_t>(weight_offset);
  m.b_off = static_cast<std::int32_t>(bias_offset);
  const VecMeta& mi = vecs_[static_cast<std::size_t>(iaux_[static_cast<std::size_t>(in.id)])];
  const double* w = params_.data() + weight_offset;
  const double* b = params_.data() + bias_offset;
  const double* src = arena_.data() + mi.val_off;
  double* dst = arena_.data() + m.val_off;
  switch (kc) {
    case 1: affine_fwd<1>(w, b, src, dst, in_dim, out_dim); break;
    case 2: affine_fwd<2>(w, b, src, dst, in_dim, out_dim); break;
    case 3: affine_fwd<3>(w, b, src, dst, in_dim, out_dim); break;
    default: affine_fwd<4>(w, b, src, dst, in_dim, out_dim); break;
  }
  return {this, id, out_dim};
}

VecValue Tape::activation(VecValue in, Act act) {
  const int kc = vecs_[static_cast<std::size_t>(iaux_[static_cast<std::size_t>(in.id)])].kcoef;
  const auto id = push_vec(Kind::VecAct, in.id, in.width, kc);
  VecMeta& m = vecs_.back();
  m.act = act;
  const VecMeta& mi = vecs_[static_cast<std::size_t>(iaux_[static_cast<std::size_t>(in.id)])];
  const double* src = arena_.data() + mi.val_off;
  double* dst = arena_.data() + m.val_off;
  switch (kc) {
    case 1: act_fwd<1>(act, src, dst, in.width); break;
    case 2: act_fwd<2>(act, src, dst, in.width); break;
    case 3: act_fwd<3>(act, src, dst, in.width); break;
    default: act_fwd<4>(act, src, dst, in.width); break;
  }
  return {this, id, in.width};
}

Value Tape::pick(VecValue v, int unit) {
  if (unit < 0 || unit >= v.width) throw ShapeError("pick: unit out of range");
  const auto id = push(Kind::Pick, v.id, -1);
  iaux_[static_cast<std::size_t>(id)] = unit;
  const VecMeta& m = vecs_[static_cast<std::size_t>(iaux_[static_cast<std::size_t>(v.id)])];
  const int kc = std::min(m.kcoef, order_ + 1);
  for (int k = 0; k < kc; ++k) val(id)[k] = arena_[m.val_off + k * v.width + unit];
  return {this, id};
}

Value Tape::deriv_of(Value v, int k) {
  if (k < 0 || k > order_) throw UnsupportedOrderError("deriv_of: coefficient out of range");
  const auto id = push(Kind::Extract, v.id, -1);
  iaux_[static_cast<std::size_t>(id)] = k;
  val(id)[0] = val(v.id)[k];
  return {this, id};
}

Value Tape::add(Value a, Value b) {
  const auto id = push(Kind::Add, a.id, b.id);
  for (int k = 0; k <= order_; ++k) val(id)[k] = val(a.id)[k] + val(b.id)[k];
  return {this, id};
}

Value Tape::sub(Value a, Value b) {
  const auto id = push(Kind::Sub, a.id, b.id);
  for (int k = 0; k <= order_; ++k) val(id)[k] = val(a.id)[k] - val(b.id)[k];
  return {this, id};
}

Value Tape::mul(Value a, Value b) {
  const auto id = push(Kind::Mul, a.id, b.id);
  const double* x = val(a.id);
  const double* y = val(b.id);
  double* c = val(id);
  c[0] = x[0] * y[0];
  if (order_ >= 1) c[1] = x[1] * y[0] + x[0] * y[1];
  if (order_ >= 2) c[2] = x[2] * y[0] + 2.0 * x[1] * y[1] + x[0] * y[2];
  if (order_ >= 3)
    c[3] = x[3] * y[0] + 3.0 * x[2] * y[1] + 3.0 * x[1] * y[2] + x[0] * y[3];
  return {this, id};
}

Value Tape::div(Value a, Value b) { return mul(a, unary(Kind::Recip, b)); }

Value Tape::neg(Value a) {
  const auto id = push(Kind::Neg, a.id, -1);
  for (int k = 0; k <= order_; ++k) val(id)[k] = -val(a.id)[k];
  return {this, id};
}

Value Tape::scale(Value a, double s) {
  const auto id = push(Kind::Scale, a.id, -1);
  aux_[static_cast<std::size_t>(id)] = s;
  for (int k = 0; k <= order_; ++k) val(id)[k] = s * val(a.id)[k];
  return {this, id};
}

Value Tape::add_const(Value a, double s) {
  const auto id = push(Kind::AddConst, a.id, -1);
  aux_[static_cast<std::size_t>(id)] = s;
  for (int k = 0; k <= order_; ++k) val(id)[k] = val(a.id)[k];
  val(id)[0] += s;
  return {this, id};
}

Value Tape::unary(Kind k, Value a) {
  const auto id = push(k, a.id, -1);
  double f[5];
  const double x = val(a.id)[0];
  switch (k) {
    case Kind::Exp: detail::exp_derivs(x, order_, f); break;
    case Kind::Tanh: detail::tanh_derivs(x, order_, f); break;
    case Kind::Sigmoid: detail::sigmoid_derivs(x, order_, f); break;
    case Kind::Relu: detail::relu_derivs(x, order_, f); break;
    case Kind::Recip: detail::recip_derivs(x, order_, f); break;
    default: throw Error("unary: bad kind");
  }
  Jet in;
  in.order = order_;
  for (int kk = 0; kk <= order_; ++kk) in.d[kk] = val(a.id)[kk];
  const Jet out = detail::compose(f, in);
  for (int kk = 0; kk <= order_; ++kk) val(id)[kk] = out.d[kk];
  return {this, id};
}

Value Tape::exp(Value a) { return unary(Kind::Exp, a); }
Value Tape::tanh(Value a) { return unary(Kind::Tanh, a); }
Value Tape::sigmoid(Value a) { return unary(Kind::Sigmoid, a); }
Value Tape::relu(Value a) { return unary(Kind::Relu, a); }

Value Tape::pow_int(Value a, int e) {
  const auto id = push(Kind::PowInt, a.id, -1);
  iaux_[static_cast<std::size_t>(id)] = e;
  double f[5];
  detail::pown_derivs(val(a.id)[0], e, order_, f);
  Jet in;
  in.order = order_;
  for (int kk = 0; kk <= order_; ++kk) in.d[kk] = val(a.id)[kk];
  const Jet out = detail::compose(f, in);
  for (int kk = 0; kk <= order_; ++kk) val(id)[kk] = out.d[kk];
  return {this, id};
}

Jet Tape::value(Value v) const {
  Jet j;
  j.order = order_;
  for (int k = 0; k <= order_; ++k) j.d[k] = val(v.id)[k];
  return j;
}

void Tape::reset() {
  kind_.clear();
  pa_.clear();
  pb_.clear();
  aux_.clear();
  iaux_.clear();
  vals_.clear();
  adjs_.clear();
  vecs_.clear();
  arena_used_ = 0;  // storage stays warm for the next point
  adjoints_dirty_ = false;
}

std::vector<double> Tape::param_gradient(Value loss) {
  std::vector<double> grad(params_.size(), 0.0);
  if (!std::isfinite(val(loss.id)[0])) {
    throw NumericError("param_gradient: loss is not finite at node " +
                       std::to_string(loss.id));
  }
  sweep(loss.id, 1.0, grad);
  check_finite_gradient(grad, loss.id);
  return grad;
}

void Tape::accumulate_param_gradient(Value loss, double seed, std::span<double> grad) {
  if (grad.size() != params_.size()) throw ShapeError("gradient span size mismatch");
  sweep(loss.id, seed, grad);
}

void Tape::check_finite_gradient(std::span<const double> grad, std::int32_t from) const {
  for (double g : grad) {
    if (!std::isfinite(g)) {
      for (std::size_t i = 0; i < kind_.size(); ++i) {
        for (int k = 0; k < 4; ++k) {
          if (!std::isfinite(adjs_[4 * i + k])) {
            throw NumericError("param_gradient: non-finite adjoint at node " +
                               std::to_string(i));
          }
        }
      }
      throw NumericError("param_gradient: non-finite gradient from node " +
                         std::to_string(from));
    }
  }
}

void Tape::sweep(std::int32_t from, double seed, std::span<double> grad) {
  if (adjoints_dirty_) {
    std::fill(adjs_.begin(), adjs_.end(), 0.0);
    for (VecMeta& m : vecs_) {
      std::fill_n(arena_.begin() + m.adj_off, m.kcoef * m.width, 0.0);
    }
  }
  adjoints_dirty_ = true;
  adj(from)[0] = seed;
  const int K = order_ + 1;

  for (std::int32_t i = from; i >= 0; --i) {
    const Kind k = kind_[static_cast<std::size_t>(i)];
    const double* ca = adj(i);
    const std::int32_t a = pa_[static_cast<std::size_t>(i)];
    const std::int32_t b = pb_[static_cast<std::size_t>(i)];
    switch (k) {
      case Kind::Const:
      case Kind::Input:
      case Kind::VecIn:
        break;
      case Kind::Param:
        grad[static_cast<std::size_t>(iaux_[static_cast<std::size_t>(i)])] += ca[0];
        break;
      case Kind::Add:
        for (int kk = 0; kk < K; ++kk) {
          adj(a)[kk] += ca[kk];
          adj(b)[kk] += ca[kk];
        }
        break;
      case Kind::Sub:
        for (int kk = 0; kk < K; ++kk) {
          adj(a)[kk] += ca[kk];
          adj(b)[kk] -= ca[kk];
        }
        break;
      case Kind::Neg:
        for (int kk = 0; kk < K; ++kk) adj(a)[kk] -= ca[kk];
        break;
      case Kind::Scale: {
        const double s = aux_[static_cast<std::size_t>(i)];
        for (int kk = 0; kk < K; ++kk) adj(a)[kk] += s * ca[kk];
        break;
      }
      case Kind::AddConst:
        for (int kk = 0; kk < K; ++kk) adj(a)[kk] += ca[kk];
        break;
      case Kind::Mul: {
        const double* x = val(a);
        const double* y = val(b);
        double* xa = adj(a);
        double* ya = adj(b);
        for (int kk = 0; kk < K; ++kk) {
          const double c = ca[kk];
          if (c == 0.0) continue;
          for (int ii = 0; ii <= kk; ++ii) {
            const double w = kBinom[kk][ii] * c;
            xa[ii] += w * y[kk - ii];
            ya[kk - ii] += w * x[ii];
          }
        }
        break;
      }
      case Kind::Exp:
      case Kind::Tanh:
      case Kind::Sigmoid:
      case Kind::Relu:
      case Kind::Recip:
      case Kind::PowInt: {
        double f[5];
        const double x0 = val(a)[0];
        switch (k) {
          case Kind::Exp:
            for (int q = 0; q <= K; ++q) f[q] = val(i)[0];
            break;
          case Kind::Tanh: detail::tanh_derivs_from_value(val(i)[0], K, f); break;
          case Kind::Sigmoid: detail::sigmoid_derivs_from_value(val(i)[0], K, f); break;
          case Kind::Relu: detail::relu_derivs(x0, K, f); break;
          case Kind::Recip: detail::recip_derivs(x0, K, f); break;
          default: detail::pown_derivs(x0, iaux_[static_cast<std::size_t>(i)], K, f); break;
        }
        switch (K) {
          case 1: compose_bwd<1>(f, val(a), ca, adj(a), 1); break;
          case 2: compose_bwd<2>(f, val(a), ca, adj(a), 1); break;
          case 3: compose_bwd<3>(f, val(a), ca, adj(a), 1); break;
          default: compose_bwd<4>(f, val(a), ca, adj(a), 1); break;
        }
        break;
      }
      case Kind::Extract: {
        const int kk = iaux_[static_cast<std::size_t>(i)];
        adj(a)[kk] += ca[0];
        break;
      }
      case Kind::Pick: {
        const VecMeta& m =
            vecs_[static_cast<std::size_t>(iaux_[static_cast<std::size_t>(a)])];
        const int unit = iaux_[static_cast<std::size_t>(i)];
        const int kc = std::min(m.kcoef, K);
        for (int kk = 0; kk < kc; ++kk) {
          arena_[m.adj_off + kk * m.width + unit] += ca[kk];
        }
        break;
      }
      case Kind::VecAct: {
        const VecMeta& m =
            vecs_[static_cast<std::size_t>(iaux_[static_cast<std::size_t>(i)])];
        const VecMeta& mi =
            vecs_[static_cast<std::size_t>(iaux_[static_cast<std::size_t>(a)])];
        const double* in = arena_.data() + mi.val_off;
        const double* out = arena_.data() + m.val_off;
        const double* cav = arena_.data() + m.adj_off;
        double* ia = arena_.data() + mi.adj_off;
        switch (m.kcoef) {
          case 1: act_bwd<1>(m.act, in, out, cav, ia, m.width); break;
          case 2: act_bwd<2>(m.act, in, out, cav, ia, m.width); break;
          case 3: act_bwd<3>(m.act, in, out, cav, ia, m.width); break;
          default: act_bwd<4>(m.act, in, out, cav, ia, m.width); break;
        }
        break;
      }
      case Kind::VecAffine: {
        const VecMeta& m =
            vecs_[static_cast<std::size_t>(iaux_[static_cast<std::size_t>(i)])];
        const VecMeta& mi =
            vecs_[static_cast<std::size_t>(iaux_[static_cast<std::size_t>(a)])];
        const double* w = params_.data() + m.w_off;
        const double* in = arena_.data() + mi.val_off;
        const double* cav = arena_.data() + m.adj_off;
        double* ia = arena_.data() + mi.adj_off;
        double* gw = grad.data() + m.w_off;
        double* gb = grad.data() + m.b_off;
        switch (m.kcoef) {
          case 1: affine_bwd<1>(w, in, cav, ia, gw, gb, mi.width, m.width); break;
          case 2: affine_bwd<2>(w, in, cav, ia, gw, gb, mi.width, m.width); break;
          case 3: affine_bwd<3>(w, in, cav, ia, gw, gb, mi.width, m.width); break;
          default: affine_bwd<4>(w, in, cav, ia, gw, gb, mi.width, m.width); break;
        }
        break;
      }
    }
  }
}

}  // namespace pinn::ad
