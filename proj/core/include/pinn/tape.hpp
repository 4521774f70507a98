#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pinn/jet.hpp"

namespace pinn::ad {

class Tape;

// Handle to a node on a tape.  Arithmetic on handles records new nodes; the
// node's payload is a Jet so input derivatives flow through every op while the
// tape supplies reverse-mode parameter gradients (forward over reverse).
struct Value {
  Tape* tape = nullptr;
  std::int32_t id = -1;
};

// Handle to a layer-wide node (all units of one network layer).
struct VecValue {
  Tape* tape = nullptr;
  std::int32_t id = -1;
  int width = 0;
};

class Tape {
 public:
  // Binds trainable parameters for the lifetime of the tape; `order` is the
  // highest input-derivative order carried by every node.
  Tape(std::span<const double> params, int order);

  int order() const { return order_; }
  std::size_t node_count() const { return kind_.size(); }

  // Leaves.
  Value constant(double v);
  Value constant(const Jet& j);
  Value input(double x, bool active);
  Value param(std::size_t index);

  // Layer-granular ops used by the network forward pass.  A chain started
  // from vec_input carries the order of its input jets, which may be lower
  // than the tape order (a time pass riding along a third-order space tape).
  VecValue vec_input(std::span<const Jet> jets);
  VecValue affine(VecValue in, std::size_t weight_offset, std::size_t bias_offset,
                  int in_dim, int out_dim);
  VecValue activation(VecValue in, Act act);
  Value pick(VecValue v, int unit);

  // Coefficient k of a jet node as a plain scalar node; the bridge between a
  // network pass and the residual arithmetic built on top of it.
  Value deriv_of(Value v, int k);

  // Elementary scalar-jet ops.
  Value add(Value a, Value b);
  Value sub(Value a, Value b);
  Value mul(Value a, Value b);
  Value div(Value a, Value b);
  Value neg(Value a);
  Value scale(Value a, double s);
  Value add_const(Value a, double s);
  Value exp(Value a);
  Value tanh(Value a);
  Value sigmoid(Value a);
  Value relu(Value a);
  Value pow_int(Value a, int e);

  Jet value(Value v) const;

  // Gradient of loss.value() with respect to every bound parameter.
  // Throws NumericError naming the offending node if the sweep meets a
  // non-finite value.
  std::vector<double> param_gradient(Value loss);

  // Adds seed * d(loss.value())/d(theta) into `grad`; the fast path used once
  // per collocation point by the trainer.
  void accumulate_param_gradient(Value loss, double seed, std::span<double> grad);

  // Drops every node but keeps the parameter binding and allocated capacity,
  // so a tape can be rebuilt per point / per iteration without reallocation.
  void reset();

 private:
  enum class Kind : std::uint8_t {
    Const, Input, Param,
    Add, Sub, Mul, Neg, Scale, AddConst,
    Exp, Tanh, Sigmoid, Relu, Recip, PowInt,
    VecIn, VecAffine, VecAct, Pick, Extract,
  };

  struct VecMeta {
    std::int32_t val_off = 0;   // value block in arena_, kcoef x width
    std::int32_t adj_off = 0;   // adjoint block in arena_
    std::int32_t width = 0;
    std::int32_t kcoef = 1;     // coefficients carried by this chain
    std::int32_t w_off = 0;     // VecAffine: weight offset into params
    std::int32_t b_off = 0;     // VecAffine: bias offset into params
    Act act = Act::Sigmoid;     // VecAct
  };

  std::int32_t push(Kind k, std::int32_t a, std::int32_t b);
  std::int32_t push_vec(Kind k, std::int32_t parent, int width, int kcoef);
  double* val(std::int32_t id) { return vals_.data() + 4 * id; }
  const double* val(std::int32_t id) const { return vals_.data() + 4 * id; }
  double* adj(std::int32_t id) { return adjs_.data() + 4 * id; }
  Value unary(Kind k, Value a);
  void sweep(std::int32_t from, double seed, std::span<double> grad);
  void check_finite_gradient(std::span<const double> grad, std::int32_t from) const;

  std::span<const double> params_;
  int order_;

  std::vector<Kind> kind_;
  std::vector<std::int32_t> pa_, pb_;
  std::vector<double> aux_;          // Scale factor / AddConst addend
  std::vector<std::int32_t> iaux_;   // Param index / PowInt exponent / VecMeta index / Pick unit
  std::vector<double> vals_;         // 4 doubles per node
  std::vector<double> adjs_;         // 4 doubles per node
  std::vector<VecMeta> vecs_;
  std::vector<double> arena_;        // layer activations and their adjoints
  std::size_t arena_used_ = 0;
  bool adjoints_dirty_ = false;
};

inline Value operator+(Value a, Value b) { return a.tape->add(a, b); }
inline Value operator-(Value a, Value b) { return a.tape->sub(a, b); }
inline Value operator*(Value a, Value b) { return a.tape->mul(a, b); }
inline Value operator/(Value a, Value b) { return a.tape->div(a, b); }
inline Value operator-(Value a) { return a.tape->neg(a); }
inline Value operator*(Value a, double s) { return a.tape->scale(a, s); }
inline Value operator*(double s, Value a) { return a.tape->scale(a, s); }
inline Value operator/(Value a, double s) { return a.tape->scale(a, 1.0 / s); }
inline Value operator+(Value a, double s) { return a.tape->add_const(a, s); }
inline Value operator+(double s, Value a) { return a.tape->add_const(a, s); }
inline Value operator-(Value a, double s) { return a.tape->add_const(a, -s); }
inline Value operator-(double s, Value a) { return a.tape->add_const(a.tape->neg(a), s); }
inline Value exp(Value a) { return a.tape->exp(a); }
inline Value tanh(Value a) { return a.tape->tanh(a); }
inline Value sigmoid(Value a) { return a.tape->sigmoid(a); }
inline Value relu(Value a) { return a.tape->relu(a); }
inline Value pow_int(Value a, int e) { return a.tape->pow_int(a, e); }

}  // namespace pinn::ad
