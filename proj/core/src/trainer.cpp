#include "pinn/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "pinn/oracles.hpp"

namespace pinn::train {

void TrainConfig::validate() const {
  if (iterations < 0) throw ConfigError("iterations must be >= 0");
  if (adam.lr <= 0.0) throw ConfigError("learning rate must be positive");
  if (cadence < 1) throw ConfigError("cadence must be >= 1");
  if (scale < 1) throw ConfigError("scale must be >= 1");
  if (n_data < 1 || n_interior < 0) throw ConfigError("bad collocation counts");
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr int kBlock = 128;

// Records one data point's squared-error node on the tape.
ad::Value record_data_point(ad::Tape& tape, const net::MlpConfig& mlp,
                            const prob::Problem& p, const sampling::DataPoint& d) {
  std::array<ad::Jet, 3> jets;
  const int dim = p.input_dim();
  for (int j = 0; j < dim; ++j) {
    jets[static_cast<std::size_t>(j)] =
        ad::lift_input(d.pt[static_cast<std::size_t>(j)], false, 0);
  }
  const auto out = net::forward(tape, mlp, std::span<const ad::Jet>(jets.data(),
                                                                    static_cast<std::size_t>(dim)));
  ad::Value acc{};
  for (int f = 0; f < p.field_count; ++f) {
    const ad::Value e = out[static_cast<std::size_t>(f)] - d.target[static_cast<std::size_t>(f)];
    const ad::Value sq = e * e;
    acc = (f == 0) ? sq : acc + sq;
  }
  return acc;
}

// Records one interior point's residual-square node: one network pass per
// input axis at that axis' derivative order, coefficients extracted into the
// problem residual.
ad::Value record_residual_point(ad::Tape& tape, const net::MlpConfig& mlp,
                                const prob::Problem& p,
                                const std::array<double, 3>& pt) {
  const int dim = p.input_dim();
  std::array<prob::FieldVals<ad::Value>, 2> fields;
  bool have_value = false;
  std::array<ad::Jet, 3> jets;
  for (int axis = 0; axis < dim; ++axis) {
    const int ord = p.orders[static_cast<std::size_t>(axis)];
    if (ord == 0) continue;
    for (int j = 0; j < dim; ++j) {
      jets[static_cast<std::size_t>(j)] =
          ad::lift_input(pt[static_cast<std::size_t>(j)], j == axis, ord);
    }
    const auto out = net::forward(
        tape, mlp, std::span<const ad::Jet>(jets.data(), static_cast<std::size_t>(dim)));
    for (int f = 0; f < p.field_count; ++f) {
      auto& fv = fields[static_cast<std::size_t>(f)];
      if (!have_value) fv.value = tape.deriv_of(out[static_cast<std::size_t>(f)], 0);
      for (int k = 1; k <= ord; ++k) {
        fv.deriv[static_cast<std::size_t>(axis)][static_cast<std::size_t>(k - 1)] =
            tape.deriv_of(out[static_cast<std::size_t>(f)], k);
      }
    }
    have_value = true;
  }
  std::array<ad::Value, 2> res;
  p.residual<ad::Value>(
      std::span<const prob::FieldVals<ad::Value>>(fields.data(),
                                                  static_cast<std::size_t>(p.field_count)),
      std::span<ad::Value>(res.data(), static_cast<std::size_t>(p.field_count)));
  ad::Value acc = res[0] * res[0];
  if (p.field_count == 2) acc = acc + res[1] * res[1];
  return acc;
}

// Fixed-size blocks over three stages; per-block gradient buffers keep the
// reduction order independent of thread scheduling.
struct BlockTask {
  int stage;  // 0 initial, 1 boundary, 2 interior
  int begin;
  int end;
};

void reduce_blocks(std::vector<std::vector<double>>& buffers, std::size_t lo,
                   std::size_t hi) {
  if (hi - lo <= 1) return;
  const std::size_t mid = lo + (hi - lo) / 2;
  reduce_blocks(buffers, lo, mid);
  reduce_blocks(buffers, mid, hi);
  auto& dst = buffers[lo];
  const auto& src = buffers[mid];
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

}  // namespace

LossBreakdown loss_and_gradient(const net::MlpConfig& mlp,
                                std::span<const double> params,
                                const sampling::CollocationSet& colloc,
                                const prob::Problem& problem,
                                std::array<double, 3> weights,
                                std::span<double> grad_out, int threads) {
  std::fill(grad_out.begin(), grad_out.end(), 0.0);

  const int n0 = static_cast<int>(colloc.initial.size());
  const int nb = static_cast<int>(colloc.boundary.size());
  const int nf = static_cast<int>(colloc.interior.size());

  std::vector<BlockTask> tasks;
  auto plan = [&tasks](int stage, int count) {
    for (int b = 0; b < count; b += kBlock) {
      tasks.push_back({stage, b, std::min(b + kBlock, count)});
    }
  };
  plan(0, n0);
  plan(1, nb);
  plan(2, nf);

  std::vector<double> vals0(static_cast<std::size_t>(n0));
  std::vector<double> valsb(static_cast<std::size_t>(nb));
  std::vector<double> valsf(static_cast<std::size_t>(nf));
  const double seed0 = n0 > 0 ? weights[0] / n0 : 0.0;
  const double seedb = nb > 0 ? weights[1] / nb : 0.0;
  const double seedf = nf > 0 ? weights[2] / nf : 0.0;

  std::vector<std::vector<double>> block_grads(tasks.size());
  for (auto& g : block_grads) g.assign(params.size(), 0.0);

  int n_threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(tasks.size())));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    ad::Tape tape(params, problem.max_order());
    try {
      for (;;) {
        const std::size_t ti = next.fetch_add(1);
        if (ti >= tasks.size() || failed.load(std::memory_order_relaxed)) break;
        const BlockTask& task = tasks[ti];
        auto& grad = block_grads[ti];
        for (int i = task.begin; i < task.end; ++i) {
          tape.reset();
          ad::Value node;
          double seed = 0.0;
          if (task.stage == 0) {
            node = record_data_point(tape, mlp, problem, colloc.initial[static_cast<std::size_t>(i)]);
            vals0[static_cast<std::size_t>(i)] = tape.value(node).value();
            seed = seed0;
          } else if (task.stage == 1) {
            node = record_data_point(tape, mlp, problem, colloc.boundary[static_cast<std::size_t>(i)]);
            valsb[static_cast<std::size_t>(i)] = tape.value(node).value();
            seed = seedb;
          } else {
            node = record_residual_point(tape, mlp, problem, colloc.interior[static_cast<std::size_t>(i)]);
            valsf[static_cast<std::size_t>(i)] = tape.value(node).value();
            seed = seedf;
          }
          if (seed != 0.0) tape.accumulate_param_gradient(node, seed, grad);
        }
      }
    } catch (const std::exception& e) {
      failed.store(true);
      std::lock_guard<std::mutex> lk(error_mutex);
      if (error_message.empty()) error_message = e.what();
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw NumericError("loss evaluation failed: " + error_message);

  if (!block_grads.empty()) {
    reduce_blocks(block_grads, 0, block_grads.size());
    std::copy(block_grads[0].begin(), block_grads[0].end(), grad_out.begin());
  }

  LossBreakdown out;
  if (n0 > 0) out.data = weights[0] * (pairwise_sum(vals0) * (1.0 / n0));
  if (nb > 0) out.boundary = weights[1] * (pairwise_sum(valsb) * (1.0 / nb));
  if (nf > 0) out.residual = weights[2] * (pairwise_sum(valsf) * (1.0 / nf));
  return out;
}

namespace {

ad::Value pairwise_tree(ad::Tape& tape, std::span<const ad::Value> nodes) {
  if (nodes.size() == 1) return nodes[0];
  const std::size_t mid = nodes.size() / 2;
  return pairwise_tree(tape, nodes.first(mid)) + pairwise_tree(tape, nodes.subspan(mid));
}

}  // namespace

ad::Value assemble_loss(ad::Tape& tape, const net::MlpConfig& mlp,
                        const sampling::CollocationSet& colloc,
                        const prob::Problem& problem, std::array<double, 3> weights) {
  if (colloc.initial.empty() || colloc.interior.empty() ||
      (colloc.boundary.empty() && problem.space_dims() > 0)) {
    throw ConfigError("assemble_loss: empty collocation subset");
  }
  std::vector<ad::Value> nodes;
  nodes.reserve(colloc.initial.size());
  for (const auto& d : colloc.initial) {
    nodes.push_back(record_data_point(tape, mlp, problem, d));
  }
  ad::Value loss = tape.scale(pairwise_tree(tape, nodes), 1.0 / static_cast<double>(nodes.size()));
  loss = tape.scale(loss, weights[0]);

  if (!colloc.boundary.empty()) {
    nodes.clear();
    for (const auto& d : colloc.boundary) {
      nodes.push_back(record_data_point(tape, mlp, problem, d));
    }
    ad::Value mseb =
        tape.scale(pairwise_tree(tape, nodes), 1.0 / static_cast<double>(nodes.size()));
    loss = loss + tape.scale(mseb, weights[1]);
  }

  nodes.clear();
  for (const auto& q : colloc.interior) {
    nodes.push_back(record_residual_point(tape, mlp, problem, q));
  }
  ad::Value msef =
      tape.scale(pairwise_tree(tape, nodes), 1.0 / static_cast<double>(nodes.size()));
  loss = loss + tape.scale(msef, weights[2]);
  return loss;
}

double rmse_values(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("rmse: value count mismatch");
  std::vector<double> sq(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq[i] = d * d;
  }
  return std::sqrt(pairwise_sum(sq) / static_cast<double>(a.size()));
}

double rmse(const fdm::FieldGrid& a, const fdm::FieldGrid& b) {
  if (!a.same_grid(b)) throw ShapeError("rmse: grids differ");
  return rmse_values(a.raw(), b.raw());
}

double rmse_field(const fdm::FieldGrid& a, const fdm::FieldGrid& b, int field) {
  if (!a.same_grid(b)) throw ShapeError("rmse: grids differ");
  std::vector<double> va, vb;
  va.reserve(a.times().size() * a.spatial_size());
  for (std::size_t it = 0; it < a.times().size(); ++it) {
    const auto sa = a.slice(static_cast<int>(it), field);
    const auto sb = b.slice(static_cast<int>(it), field);
    va.insert(va.end(), sa.begin(), sa.end());
    vb.insert(vb.end(), sb.begin(), sb.end());
  }
  return rmse_values(va, vb);
}

fdm::FieldGrid evaluate_on_grid(const net::MlpConfig& mlp,
                                std::span<const double> params,
                                std::vector<fdm::Axis> space,
                                std::vector<double> times) {
  fdm::FieldGrid g(std::move(space), std::move(times), mlp.output_dim);
  std::array<double, 3> in{0.0, 0.0, 0.0};
  std::array<double, 2> out{0.0, 0.0};
  const int dims = static_cast<int>(g.space().size());
  for (std::size_t it = 0; it < g.times().size(); ++it) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      for (int ix = 0; ix < g.nx(); ++ix) {
        in[0] = g.space()[0].coord(ix);
        if (dims > 1) in[1] = g.space()[1].coord(iy);
        in[static_cast<std::size_t>(dims)] = g.times()[it];
        net::eval(mlp, params, std::span<const double>(in.data(), static_cast<std::size_t>(dims + 1)),
                  std::span<double>(out.data(), static_cast<std::size_t>(mlp.output_dim)));
        for (int f = 0; f < mlp.output_dim; ++f) {
          g.at(static_cast<int>(it), f, ix, iy) = out[static_cast<std::size_t>(f)];
        }
      }
    }
  }
  return g;
}

fdm::FieldGrid evaluate_on_grid(const net::MlpConfig& mlp,
                                std::span<const double> params,
                                const fdm::FieldGrid& like) {
  return evaluate_on_grid(mlp, params, like.space(), like.times());
}

namespace {

std::vector<double> strided_times(const std::vector<double>& times, int stride) {
  std::vector<double> out;
  for (std::size_t i = 0; i < times.size(); i += static_cast<std::size_t>(stride)) {
    out.push_back(times[i]);
  }
  return out;
}

// Fills rmse entries of the report from the problem's references.
void evaluate_report(const TrainConfig& cfg, const prob::Problem& p,
                     const net::MlpConfig& mlp, const net::ParamVector& params,
                     TrainReport& rep) {
  const oracle::OracleFn* ora = cfg.evaluate_against_oracle ? oracle::find(p.id) : nullptr;

  auto fill_oracle = [&](const fdm::FieldGrid& like) { return oracle_on_grid(p, like); };

  auto record = [&](const std::string& key, const fdm::FieldGrid& pred,
                    const fdm::FieldGrid& ref) {
    rep.rmse[key] = rmse(pred, ref);
    if (p.field_count > 1) {
      for (int f = 0; f < p.field_count; ++f) {
        rep.rmse[key + "_f" + std::to_string(f)] = rmse_field(pred, ref, f);
      }
    }
  };

  std::optional<fdm::FieldGrid> fd;
  if (cfg.evaluate_against_fd) fd = reference_fd(p, cfg.scale);

  if (p.pid == prob::Pid::Turing2) {
    if (fd) {
      // network at its own final time against the settled pattern
      const auto pred = evaluate_on_grid(mlp, params, fd->space(), {p.domain.time.hi});
      const int last = static_cast<int>(fd->times().size()) - 1;
      std::vector<double> pa, pb;
      for (int f = 0; f < p.field_count; ++f) {
        const auto sp = pred.slice(0, f);
        const auto sr = fd->slice(last, f);
        rep.rmse["fd_f" + std::to_string(f)] = rmse_values(sp, sr);
        pa.insert(pa.end(), sp.begin(), sp.end());
        pb.insert(pb.end(), sr.begin(), sr.end());
      }
      rep.rmse["fd"] = rmse_values(pa, pb);
    }
    return;
  }

  if (fd) {
    const auto pred = evaluate_on_grid(mlp, params, *fd);
    record("fd", pred, *fd);
    if (ora) record("oracle", pred, fill_oracle(*fd));
    return;
  }

  if (ora) {
    if (p.space_dims() == 0) {
      // ODE: the lone input runs along the grid's spatial axis
      std::vector<fdm::Axis> saxes{
          {p.domain.time.lo, (p.domain.time.hi - p.domain.time.lo) / 100.0, 101}};
      fdm::FieldGrid pred(saxes, {0.0}, p.field_count);
      fdm::FieldGrid ref(saxes, {0.0}, p.field_count);
      std::array<double, 2> out{};
      for (int i = 0; i < 101; ++i) {
        const double sc = saxes[0].coord(i);
        double y = 0.0;
        net::eval(mlp, params, {&sc, 1}, {&y, 1});
        pred.at(0, 0, i) = y;
        ora->eval({&sc, 1}, std::span<double>(out.data(), 1));
        ref.at(0, 0, i) = out[0];
      }
      record("oracle", pred, ref);
      return;
    }
    // oracle-only comparison on a uniform grid over the domain
    std::vector<fdm::Axis> axes;
    for (int a = 0; a < p.space_dims(); ++a) {
      const auto& iv = p.space(a);
      const int n = 101;
      axes.push_back({iv.lo, (iv.hi - iv.lo) / (n - 1), n});
    }
    std::vector<double> times;
    const int nt = std::max(2, 101 / cfg.scale);
    for (int i = 0; i < nt; ++i) {
      times.push_back(p.domain.time.lo +
                      (p.domain.time.hi - p.domain.time.lo) * i / (nt - 1));
    }
    fdm::FieldGrid like(axes, times, p.field_count);
    const auto pred = evaluate_on_grid(mlp, params, like);
    record("oracle", pred, fill_oracle(like));
  }
}

}  // namespace

std::optional<fdm::FieldGrid> reference_fd(const prob::Problem& p, int scale) {
  std::optional<fdm::FieldGrid> fd;
  switch (p.pid) {
    case prob::Pid::Toy:
      fd = fdm::downsample(fdm::solve_toy_fd({}, std::get<prob::ToyParams>(p.params)), 20, 20);
      break;
    case prob::Pid::Burgers:
      fd = fdm::solve_burgers_fd({}, std::get<prob::BurgersParams>(p.params));
      break;
    case prob::Pid::Heat2d:
      fd = fdm::solve_heat2d_fd({}, std::get<prob::HeatParams>(p.params));
      break;
    case prob::Pid::Kdv:
      fd = fdm::solve_kdv_fd({}, std::get<prob::KdvParams>(p.params));
      break;
    case prob::Pid::Fisher:
      fd = fdm::solve_fisher_fd({}, std::get<prob::FisherParams>(p.params));
      break;
    case prob::Pid::Turing2:
      fd = fdm::solve_turing2_fd({}, std::get<prob::Turing2Params>(p.params), p.ic_seed);
      break;
    default:
      break;  // no finite-difference reference wired for this problem
  }
  if (fd && scale > 1 && fd->times().size() > 1) fd = fdm::downsample(*fd, 1, scale);
  return fd;
}

fdm::FieldGrid oracle_on_grid(const prob::Problem& p, const fdm::FieldGrid& like) {
  const oracle::OracleFn* ora = oracle::find(p.id);
  if (ora == nullptr) throw ConfigError("no closed form for problem " + p.id);
  fdm::FieldGrid g(like.space(), like.times(), p.field_count);
  std::array<double, 3> in{};
  std::array<double, 2> out{};
  const int dims = static_cast<int>(g.space().size());
  for (std::size_t it = 0; it < g.times().size(); ++it) {
    for (int iy = 0; iy < g.ny(); ++iy) {
      for (int ix = 0; ix < g.nx(); ++ix) {
        in[0] = g.space()[0].coord(ix);
        if (dims > 1) in[1] = g.space()[1].coord(iy);
        in[static_cast<std::size_t>(dims)] = g.times()[it];
        ora->eval(std::span<const double>(in.data(), static_cast<std::size_t>(dims + 1)),
                  std::span<double>(out.data(), static_cast<std::size_t>(p.field_count)));
        for (int f = 0; f < p.field_count; ++f) {
          g.at(static_cast<int>(it), f, ix, iy) = out[static_cast<std::size_t>(f)];
        }
      }
    }
  }
  return g;
}

TrainReport train(const TrainConfig& cfg) {
  cfg.validate();
  const prob::Problem& p = prob::find(cfg.problem_id);
  net::MlpConfig mlp = cfg.mlp;
  mlp.input_dim = p.input_dim();
  mlp.output_dim = p.field_count;
  mlp.validate();

  const auto t_start = std::chrono::steady_clock::now();
  TrainReport rep;
  net::ParamVector params = net::init(mlp, cfg.seed);
  optim::AdamState adam(params.size(), cfg.adam);
  optim::LbfgsState lbfgs(cfg.lbfgs);

  sampling::CollocationSet colloc = sampling::sample(p, cfg.n_data, cfg.n_interior, cfg.seed);
  if (cfg.initial_slice_only) colloc.boundary.clear();

  std::vector<double> grad(params.size(), 0.0);
  const int threads = cfg.threads;

  auto eval_loss = [&](const sampling::CollocationSet& c) {
    return loss_and_gradient(mlp, params, c, p, cfg.loss_weights, grad, threads);
  };

  LossBreakdown bd = eval_loss(colloc);
  rep.initial_data_term = bd.data;
  rep.history_iteration.push_back(0);
  rep.history_data.push_back(bd.data);
  rep.history_boundary.push_back(bd.boundary);
  rep.history_residual.push_back(bd.residual);

  for (long it = 0; it < cfg.iterations; ++it) {
    if (cfg.resample_each_iteration && it > 0) {
      colloc = sampling::sample(p, cfg.n_data, cfg.n_interior,
                                mix64(cfg.seed ^ static_cast<std::uint64_t>(it)));
      if (cfg.initial_slice_only) colloc.boundary.clear();
      bd = eval_loss(colloc);
    }
    if (!std::isfinite(bd.total())) {
      rep.diverged = true;
      rep.diverged_iteration = it;
      break;
    }
    if (cfg.optimizer == OptimizerKind::Adam) {
      const double step = optim::adam_step(adam, params, grad);
      if (it < 100) rep.max_step_first_100 = std::max(rep.max_step_first_100, step);
      bd = eval_loss(colloc);
    } else {
      auto fn = [&](std::span<const double> cand, std::span<double> g) {
        std::vector<double> tmp(cand.begin(), cand.end());
        LossBreakdown b = loss_and_gradient(mlp, tmp, colloc, p, cfg.loss_weights, g, threads);
        return b.total();
      };
      optim::lbfgs_step(lbfgs, params, fn);
      if (lbfgs.stalled) {
        rep.optimizer_stalled = true;
        bd = eval_loss(colloc);
        break;
      }
      bd = eval_loss(colloc);
    }
    if ((it + 1) % cfg.cadence == 0 || it + 1 == cfg.iterations) {
      rep.history_iteration.push_back(it + 1);
      rep.history_data.push_back(bd.data);
      rep.history_boundary.push_back(bd.boundary);
      rep.history_residual.push_back(bd.residual);
      if (!std::isfinite(bd.total())) {
        rep.diverged = true;
        rep.diverged_iteration = it + 1;
        break;
      }
    }
  }

  rep.final_data_term = bd.data;
  rep.final_params = params;
  if (!rep.diverged) evaluate_report(cfg, p, mlp, params, rep);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return rep;
}

void TrainReport::save(const std::filesystem::path& path) const {
  std::ofstream f(path);
  if (!f) throw Error("TrainReport::save: cannot open " + path.string());
  char buf[40];
  auto put = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    f << key << " = " << buf << '\n';
  };
  f << "schema = pinn-train-report/1\n";
  f << "diverged = " << (diverged ? "true" : "false") << '\n';
  f << "diverged_iteration = " << diverged_iteration << '\n';
  f << "optimizer_stalled = " << (optimizer_stalled ? "true" : "false") << '\n';
  put("wall_seconds", wall_seconds);
  put("initial_data_term", initial_data_term);
  put("final_data_term", final_data_term);
  put("max_step_first_100", max_step_first_100);
  if (!history_data.empty()) {
    put("final_loss_data", history_data.back());
    put("final_loss_boundary", history_boundary.back());
    put("final_loss_residual", history_residual.back());
    put("final_loss_total",
        history_data.back() + history_boundary.back() + history_residual.back());
  }
  for (const auto& [key, value] : rmse) put(("rmse_" + key).c_str(), value);
}

void TrainReport::save_history_csv(const std::filesystem::path& path) const {
  std::ofstream f(path);
  if (!f) throw Error("TrainReport::save_history_csv: cannot open " + path.string());
  f << "iteration,data,boundary,residual,total\n";
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    f << buf;
  };
  for (std::size_t i = 0; i < history_iteration.size(); ++i) {
    f << history_iteration[i] << ',';
    put(history_data[i]);
    f << ',';
    put(history_boundary[i]);
    f << ',';
    put(history_residual[i]);
    f << ',';
    put(history_data[i] + history_boundary[i] + history_residual[i]);
    f << '\n';
  }
}

TrainConfig preset(std::string_view problem_id) {
  TrainConfig c;
  c.problem_id = std::string(problem_id);
  c.mlp.activation = Act::Sigmoid;
  if (problem_id == "toy") {
    c.mlp.hidden_layers = 4;
    c.mlp.hidden_width = 16;
    c.iterations = 15000;
    c.n_data = 1000;
    c.n_interior = 1000;
  } else if (problem_id == "burgers") {
    c.mlp.hidden_layers = 4;
    c.mlp.hidden_width = 32;
    c.iterations = 15000;
    c.n_data = 4000;
    c.n_interior = 10000;
  } else if (problem_id == "heat2d") {
    c.mlp.hidden_layers = 4;
    c.mlp.hidden_width = 16;
    c.iterations = 15000;
    c.n_data = 4000;
    c.n_interior = 10000;
  } else if (problem_id == "kdv") {
    c.mlp.hidden_layers = 7;
    c.mlp.hidden_width = 32;
    c.iterations = 15000;
    c.n_data = 1000;
    c.n_interior = 15000;
  } else if (problem_id == "fisher") {
    c.mlp.hidden_layers = 4;
    c.mlp.hidden_width = 32;
    c.iterations = 20000;
    c.n_data = 2000;
    c.n_interior = 15000;
  } else if (problem_id == "turing1-1d") {
    c.mlp.hidden_layers = 4;
    c.mlp.hidden_width = 32;
    c.iterations = 15000;
    c.n_data = 14000;
    c.n_interior = 20000;
    c.evaluate_against_fd = false;
  } else if (problem_id == "turing2-2d") {
    c.mlp.hidden_layers = 4;
    c.mlp.hidden_width = 32;
    c.iterations = 6000;
    c.n_data = 400;
    c.n_interior = 10000;
  } else if (problem_id == "exp-ode") {
    c.mlp.hidden_layers = 2;
    c.mlp.hidden_width = 16;
    c.iterations = 2000;
    c.n_data = 64;
    c.n_interior = 256;
    c.evaluate_against_fd = false;
  } else {
    throw ConfigError("no preset for problem id: " + std::string(problem_id));
  }
  return c;
}

}  // namespace pinn::train
