// pinnbench: solve the catalogued PDEs by finite differences, train the
// physics-informed networks, and benchmark one against the other.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "pinn/fdm.hpp"
#include "pinn/network.hpp"
#include "pinn/oracles.hpp"
#include "pinn/problems.hpp"
#include "pinn/sampling.hpp"
#include "pinn/trainer.hpp"
#include "plot.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace pinn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRefused = 3;
constexpr int kExitDiverged = 4;

fs::path output_root(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("PINNBENCH_OUT")) return env;
  return "out";
}

// line/column of a byte offset, for config parse diagnostics
std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json load_config(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config " + path.string());
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError("config parse failure at " + path.string() + ":" +
                      std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

struct Experiment {
  train::TrainConfig base;
  std::vector<std::uint64_t> seeds{1};
  std::vector<int> sweep_layers;
  std::vector<int> sweep_neurons;
};

Act parse_activation(const std::string& s) {
  if (s == "sigmoid") return Act::Sigmoid;
  if (s == "tanh") return Act::Tanh;
  if (s == "relu") return Act::Relu;
  throw ConfigError("unknown activation: " + s);
}

Experiment parse_experiment(const json& j) {
  Experiment e;
  if (j.value("schema", "") != "pinnbench-experiment/1") {
    throw ConfigError("config schema must be pinnbench-experiment/1");
  }
  e.base = train::preset(j.at("problem").get<std::string>());
  if (j.contains("network")) {
    const auto& n = j.at("network");
    e.base.mlp.hidden_layers = n.value("layers", e.base.mlp.hidden_layers);
    e.base.mlp.hidden_width = n.value("neurons", e.base.mlp.hidden_width);
    e.base.mlp.activation = parse_activation(n.value("activation", std::string("sigmoid")));
  }
  if (j.contains("optimizer")) {
    const auto& o = j.at("optimizer");
    const std::string kind = o.value("kind", std::string("adam"));
    if (kind == "adam") {
      e.base.optimizer = train::OptimizerKind::Adam;
    } else if (kind == "lbfgs") {
      e.base.optimizer = train::OptimizerKind::Lbfgs;
    } else {
      throw ConfigError("unknown optimizer kind: " + kind);
    }
    e.base.adam.lr = o.value("lr", e.base.adam.lr);
    e.base.adam.beta1 = o.value("beta1", e.base.adam.beta1);
    e.base.adam.beta2 = o.value("beta2", e.base.adam.beta2);
    e.base.adam.eps = o.value("eps", e.base.adam.eps);
    e.base.lbfgs.memory = o.value("memory", e.base.lbfgs.memory);
  }
  e.base.iterations = j.value("iterations", e.base.iterations);
  if (j.contains("sampling")) {
    const auto& s = j.at("sampling");
    e.base.n_data = s.value("n_data", e.base.n_data);
    e.base.n_interior = s.value("n_interior", e.base.n_interior);
    e.base.resample_each_iteration = s.value("resample", false);
    e.base.initial_slice_only = s.value("initial_slice_only", false);
  }
  e.base.cadence = j.value("cadence", e.base.cadence);
  if (j.contains("weights")) {
    const auto w = j.at("weights").get<std::vector<double>>();
    if (w.size() != 3) throw ConfigError("weights must have 3 entries");
    e.base.loss_weights = {w[0], w[1], w[2]};
  }
  if (j.contains("evaluate")) {
    e.base.evaluate_against_oracle = j.at("evaluate").value("oracle", true);
    e.base.evaluate_against_fd = j.at("evaluate").value("fd", e.base.evaluate_against_fd);
  }
  e.base.threads = j.value("threads", 0);
  if (j.contains("seeds")) e.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (e.seeds.empty()) throw ConfigError("seeds list is empty");
  if (j.contains("sweep")) {
    e.sweep_layers = j.at("sweep").value("layers", std::vector<int>{});
    e.sweep_neurons = j.at("sweep").value("neurons", std::vector<int>{});
  }
  return e;
}

void print_resolved(const Experiment& e) {
  std::printf("problem       %s\n", e.base.problem_id.c_str());
  std::printf("network       %d layers x %d neurons, %s\n", e.base.mlp.hidden_layers,
              e.base.mlp.hidden_width,
              e.base.mlp.activation == Act::Sigmoid ? "sigmoid"
              : e.base.mlp.activation == Act::Tanh  ? "tanh"
                                                    : "relu");
  std::printf("optimizer     %s (lr %g)\n",
              e.base.optimizer == train::OptimizerKind::Adam ? "adam" : "lbfgs",
              e.base.adam.lr);
  std::printf("iterations    %ld\n", e.base.iterations);
  std::printf("sampling      n_data %d, n_interior %d%s%s\n", e.base.n_data,
              e.base.n_interior, e.base.resample_each_iteration ? ", resampled" : "",
              e.base.initial_slice_only ? ", initial slice only" : "");
  std::printf("weights       %g %g %g\n", e.base.loss_weights[0], e.base.loss_weights[1],
              e.base.loss_weights[2]);
  std::printf("seeds        ");
  for (auto s : e.seeds) std::printf(" %llu", static_cast<unsigned long long>(s));
  std::printf("\n");
  if (!e.sweep_layers.empty()) {
    std::printf("sweep layers ");
    for (int v : e.sweep_layers) std::printf(" %d", v);
    std::printf("\nsweep neurons");
    for (int v : e.sweep_neurons) std::printf(" %d", v);
    std::printf("\n");
  }
}

int refuse_if_exists(const fs::path& p, bool force) {
  if (fs::exists(p) && !force) {
    std::fprintf(stderr, "refusing to overwrite %s (use --force)\n", p.string().c_str());
    return kExitRefused;
  }
  return kExitOk;
}

void emit_comparison_png(const prob::Problem& p, const train::TrainConfig& cfg,
                         const net::MlpConfig& mlp, const net::ParamVector& params,
                         const fs::path& png_path) {
  auto fd = train::reference_fd(p, cfg.scale);
  std::optional<fdm::FieldGrid> ref;
  if (fd) {
    ref = std::move(fd);
  } else if (oracle::find(p.id) != nullptr && p.space_dims() >= 1) {
    std::vector<fdm::Axis> axes;
    for (int a = 0; a < p.space_dims(); ++a) {
      const auto& iv = p.space(a);
      axes.push_back({iv.lo, (iv.hi - iv.lo) / 100.0, 101});
    }
    std::vector<double> times;
    for (int i = 0; i < 51; ++i) {
      times.push_back(p.domain.time.lo + (p.domain.time.hi - p.domain.time.lo) * i / 50.0);
    }
    ref = train::oracle_on_grid(p, fdm::FieldGrid(axes, times, p.field_count));
  }
  if (!ref) return;

  if (p.pid == prob::Pid::Turing2) {
    const auto pred = train::evaluate_on_grid(mlp, params, ref->space(), {p.domain.time.hi});
    plot::heatmap_pair_png(pred, *ref, static_cast<int>(ref->times().size()) - 1, 0, png_path);
    return;
  }
  const auto pred = train::evaluate_on_grid(mlp, params, *ref);
  if (p.space_dims() == 2) {
    plot::heatmap_pair_png(pred, *ref, static_cast<int>(ref->times().size()) - 1, 0, png_path);
    return;
  }
  const int nt = static_cast<int>(ref->times().size());
  const int idx[3] = {nt / 4, nt / 2, (3 * nt) / 4};
  plot::slices_png(pred, *ref, 0, idx, png_path);
}

int cmd_list() {
  for (const auto& p : prob::all()) {
    std::printf("%-12s %s\n", p.id.c_str(), p.description.c_str());
  }
  return kExitOk;
}

int run_one_training(const train::TrainConfig& cfg, const fs::path& dir,
                     const std::string& stem, bool force, bool quiet) {
  const fs::path report = dir / (stem + ".report.txt");
  const fs::path loss = dir / (stem + ".loss.csv");
  const fs::path eval = dir / (stem + ".eval.csv");
  const fs::path params_bin = dir / (stem + ".params.bin");
  const fs::path png = dir / (stem + ".compare.png");
  for (const auto& f : {report, loss, eval, params_bin}) {
    if (const int rc = refuse_if_exists(f, force); rc != kExitOk) return rc;
  }

  const auto rep = train::train(cfg);
  const auto& p = prob::find(cfg.problem_id);
  net::MlpConfig mlp = cfg.mlp;
  mlp.input_dim = p.input_dim();
  mlp.output_dim = p.field_count;

  fs::create_directories(dir);
  rep.save(report);
  rep.save_history_csv(loss);
  net::save_params(params_bin, rep.final_params);

  if (!rep.diverged) {
    // prediction on the comparison grid
    auto fd = train::reference_fd(p, cfg.scale);
    std::vector<std::string> names;
    for (int f = 0; f < p.field_count; ++f) names.push_back("pred" + std::to_string(f));
    if (fd && p.pid != prob::Pid::Turing2) {
      const auto pred = train::evaluate_on_grid(mlp, rep.final_params, *fd);
      fdm::write_csv(pred, eval, names);
    } else if (p.pid == prob::Pid::Turing2 && fd) {
      const auto pred =
          train::evaluate_on_grid(mlp, rep.final_params, fd->space(), {p.domain.time.hi});
      fdm::write_csv(pred, eval, names);
    } else if (p.space_dims() >= 1) {
      std::vector<fdm::Axis> axes;
      for (int a = 0; a < p.space_dims(); ++a) {
        const auto& iv = p.space(a);
        axes.push_back({iv.lo, (iv.hi - iv.lo) / 100.0, 101});
      }
      std::vector<double> times{p.domain.time.lo, p.domain.time.hi};
      const auto pred = train::evaluate_on_grid(mlp, rep.final_params, axes, times);
      fdm::write_csv(pred, eval, names);
    } else {
      std::vector<fdm::Axis> axes{
          {p.domain.time.lo, (p.domain.time.hi - p.domain.time.lo) / 100.0, 101}};
      fdm::FieldGrid pred(axes, {0.0}, 1);
      for (int i = 0; i < 101; ++i) {
        const double s = axes[0].coord(i);
        double y = 0.0;
        net::eval(mlp, rep.final_params, {&s, 1}, {&y, 1});
        pred.at(0, 0, i) = y;
      }
      fdm::write_csv(pred, eval, names);
    }
    emit_comparison_png(p, cfg, mlp, rep.final_params, png);
  }

  if (!quiet) {
    std::printf("%s: %s in %.1f s", stem.c_str(), rep.diverged ? "DIVERGED" : "done",
                rep.wall_seconds);
    for (const auto& [k, v] : rep.rmse) std::printf(", rmse_%s=%.6g", k.c_str(), v);
    std::printf("\n");
  }
  return rep.diverged ? kExitDiverged : kExitOk;
}

int cmd_train(const fs::path& config_path, const fs::path& out_dir,
              std::optional<std::uint64_t> seed_override, int scale, bool force,
              bool dry_run) {
  Experiment e = parse_experiment(load_config(config_path));
  e.base.scale = scale;
  if (seed_override) e.seeds = {*seed_override};
  if (dry_run) {
    print_resolved(e);
    return kExitOk;
  }
  fs::create_directories(out_dir);
  int rc = kExitOk;
  for (const auto seed : e.seeds) {
    train::TrainConfig cfg = e.base;
    cfg.seed = seed;
    const std::string stem = e.base.problem_id + "_s" + std::to_string(seed);
    const int one = run_one_training(cfg, out_dir, stem, force, false);
    if (one == kExitRefused) return one;
    rc = std::max(rc, one);
  }
  return rc;
}

int cmd_sweep(const fs::path& config_path, const fs::path& out_dir, int jobs, int scale,
              bool force, bool dry_run) {
  Experiment e = parse_experiment(load_config(config_path));
  e.base.scale = scale;
  if (e.sweep_layers.empty() || e.sweep_neurons.empty()) {
    throw ConfigError("sweep requires sweep.layers and sweep.neurons");
  }
  if (dry_run) {
    print_resolved(e);
    return kExitOk;
  }
  const fs::path cells = out_dir / "cells";
  fs::create_directories(cells);

  struct Cell {
    int layers;
    int neurons;
    std::uint64_t seed;
  };
  std::vector<Cell> todo;
  for (int L : e.sweep_layers) {
    for (int N : e.sweep_neurons) {
      for (auto s : e.seeds) todo.push_back({L, N, s});
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex io;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= todo.size()) break;
      const Cell c = todo[i];
      const std::string stem = "L" + std::to_string(c.layers) + "_N" +
                               std::to_string(c.neurons) + "_s" + std::to_string(c.seed);
      const fs::path row = cells / (stem + ".csv");
      if (fs::exists(row) && !force) {
        std::lock_guard<std::mutex> lk(io);
        std::printf("%s: kept (resume)\n", stem.c_str());
        continue;
      }
      train::TrainConfig cfg = e.base;
      cfg.mlp.hidden_layers = c.layers;
      cfg.mlp.hidden_width = c.neurons;
      cfg.seed = c.seed;
      if (jobs > 1) cfg.threads = 1;
      const auto rep = train::train(cfg);
      {
        std::ofstream f(row);
        f << "layers,neurons,seed,rmse_oracle,rmse_fd,wall_seconds,diverged\n";
        char buf[40];
        auto put = [&](double v) {
          std::snprintf(buf, sizeof buf, "%.17g", v);
          f << buf;
        };
        f << c.layers << ',' << c.neurons << ',' << c.seed << ',';
        if (rep.rmse.count("oracle")) put(rep.rmse.at("oracle"));
        f << ',';
        if (rep.rmse.count("fd")) put(rep.rmse.at("fd"));
        f << ',';
        put(rep.wall_seconds);
        f << ',' << (rep.diverged ? 1 : 0) << '\n';
      }
      std::lock_guard<std::mutex> lk(io);
      std::printf("%s: %s", stem.c_str(), rep.diverged ? "DIVERGED" : "done");
      for (const auto& [k, v] : rep.rmse) std::printf(", rmse_%s=%.6g", k.c_str(), v);
      std::printf("\n");
      std::fflush(stdout);
    }
  };
  const int n_workers = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // aggregate: raw rows plus the layers-by-neurons layout, one block per reference
  struct Row {
    int layers, neurons;
    std::uint64_t seed;
    std::string oracle, fd, wall;
    int diverged;
  };
  std::vector<Row> rows;
  for (int L : e.sweep_layers) {
    for (int N : e.sweep_neurons) {
      for (auto s : e.seeds) {
        const fs::path row = cells / ("L" + std::to_string(L) + "_N" + std::to_string(N) +
                                      "_s" + std::to_string(s) + ".csv");
        std::ifstream f(row);
        std::string header, line;
        if (!f || !std::getline(f, header) || !std::getline(f, line)) continue;
        Row r;
        r.layers = L;
        r.neurons = N;
        r.seed = s;
        std::stringstream ss(line);
        std::string tok;
        std::getline(ss, tok, ',');
        std::getline(ss, tok, ',');
        std::getline(ss, tok, ',');
        std::getline(ss, r.oracle, ',');
        std::getline(ss, r.fd, ',');
        std::getline(ss, r.wall, ',');
        std::getline(ss, tok, ',');
        r.diverged = tok == "1";
        rows.push_back(r);
      }
    }
  }
  {
    std::ofstream f(out_dir / "raw.csv");
    f << "layers,neurons,seed,rmse_oracle,rmse_fd,wall_seconds,diverged\n";
    for (const auto& r : rows) {
      f << r.layers << ',' << r.neurons << ',' << r.seed << ',' << r.oracle << ','
        << r.fd << ',' << r.wall << ',' << r.diverged << '\n';
    }
  }
  {
    std::ofstream f(out_dir / "table.csv");
    for (const char* ref : {"oracle", "fd"}) {
      f << "# best-of-seeds rmse vs " << ref << '\n';
      f << "layers";
      for (int N : e.sweep_neurons) f << ',' << N;
      f << '\n';
      for (int L : e.sweep_layers) {
        f << L;
        for (int N : e.sweep_neurons) {
          double best = 1e300;
          bool have = false;
          for (const auto& r : rows) {
            if (r.layers != L || r.neurons != N || r.diverged) continue;
            const std::string& v = std::strcmp(ref, "oracle") == 0 ? r.oracle : r.fd;
            if (v.empty()) continue;
            best = std::min(best, std::stod(v));
            have = true;
          }
          f << ',';
          if (have) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", best);
            f << buf;
          }
        }
        f << '\n';
      }
    }
  }
  std::printf("sweep complete: %zu rows -> %s\n", rows.size(),
              (out_dir / "table.csv").string().c_str());
  return kExitOk;
}

int cmd_solve_fd(const std::string& problem, const fs::path& out_base, double dx,
                 double dt, double t_final, int size, std::uint64_t seed,
                 const std::string& param_set, int scale, bool force, bool png) {
  const prob::Problem* pp = nullptr;
  for (const auto& q : prob::all()) {
    if (q.id == problem) pp = &q;
  }
  if (pp == nullptr) {
    std::fprintf(stderr, "unknown problem id: %s\n", problem.c_str());
    return kExitUsage;
  }
  const prob::Problem& p = *pp;

  const fs::path csv = out_base.string() + ".csv";
  const fs::path bin = out_base.string() + ".bin";
  for (const auto& f : {csv, bin}) {
    if (const int rc = refuse_if_exists(f, force); rc != kExitOk) return rc;
  }
  if (out_base.has_parent_path()) fs::create_directories(out_base.parent_path());

  fdm::FieldGrid g;
  switch (p.pid) {
    case prob::Pid::Toy: {
      fdm::ToyFdOptions o;
      if (dx > 0) o.dx = dx;
      if (dt > 0) o.dt = dt;
      g = fdm::solve_toy_fd(o, std::get<prob::ToyParams>(p.params));
      break;
    }
    case prob::Pid::Burgers: {
      fdm::BurgersFdOptions o;
      if (dx > 0) o.dx = dx;
      if (t_final > 0) o.t_final = t_final;
      g = fdm::solve_burgers_fd(o, std::get<prob::BurgersParams>(p.params));
      break;
    }
    case prob::Pid::Heat2d: {
      fdm::Heat2dFdOptions o;
      if (dx > 0) o.dx = dx;
      if (dt > 0) o.dt = dt;
      if (t_final > 0) o.t_final = t_final;
      g = fdm::solve_heat2d_fd(o, std::get<prob::HeatParams>(p.params));
      break;
    }
    case prob::Pid::Kdv: {
      fdm::KdvFdOptions o;
      if (dx > 0) o.dx = dx;
      if (dt > 0) o.dt = dt;
      if (t_final > 0) o.t_final = t_final;
      g = fdm::solve_kdv_fd(o, std::get<prob::KdvParams>(p.params));
      break;
    }
    case prob::Pid::Fisher: {
      fdm::FisherFdOptions o;
      if (dx > 0) o.dx = dx;
      if (dt > 0) o.dt = dt;
      if (t_final > 0) o.t_final = t_final;
      g = fdm::solve_fisher_fd(o, std::get<prob::FisherParams>(p.params));
      break;
    }
    case prob::Pid::Turing1: {
      fdm::Turing1FdOptions o;
      if (dt > 0) o.dt = dt;
      if (t_final > 0) {
        o.t_final = t_final;
        o.snapshots = fdm::Snapshots::at({0.0, t_final / 2.0, t_final});
      }
      const auto params = param_set == "table" ? prob::Turing1Params::table()
                                               : prob::Turing1Params::listing();
      g = fdm::solve_turing1_fd(o, params);
      break;
    }
    case prob::Pid::Turing2: {
      fdm::Turing2FdOptions o;
      if (dt > 0) o.dt = dt;
      if (t_final > 0) {
        o.t_final = t_final;
        o.snapshots = fdm::Snapshots::at({0.0, t_final});
      }
      if (size > 0) o.size = size;
      g = fdm::solve_turing2_fd(o, std::get<prob::Turing2Params>(p.params), seed);
      break;
    }
    case prob::Pid::ExpOde:
      std::fprintf(stderr, "exp-ode has a closed form and no march\n");
      return kExitUsage;
  }
  if (scale > 1 && g.times().size() > 1) g = fdm::downsample(g, 1, scale);

  std::vector<std::string> names;
  for (int f = 0; f < p.field_count; ++f) {
    names.push_back(p.field_count == 2 ? (f == 0 ? "u" : "v") : "u");
  }
  fdm::write_csv(g, csv, names);
  fdm::write_binary(g, bin);
  if (png) {
    const int last = static_cast<int>(g.times().size()) - 1;
    if (p.space_dims() == 2) {
      plot::heatmap_png(g, last, 0, out_base.string() + ".png");
    } else {
      const int idx[3] = {0, last / 2, last};
      plot::slices_png(g, g, 0, idx, out_base.string() + ".png");
    }
  }
  if (g.diverged) {
    std::fprintf(stderr, "march diverged at step %d (outputs written)\n", g.diverged_step);
    return kExitDiverged;
  }
  std::printf("wrote %s and %s (%zu slices x %zu nodes)\n", csv.string().c_str(),
              bin.string().c_str(), g.times().size(), g.spatial_size());
  return kExitOk;
}

int cmd_compare(const fs::path& a_path, const fs::path& b_path) {
  const auto a = fdm::read_binary(a_path);
  const auto b = fdm::read_binary(b_path);
  if (!a.same_grid(b)) {
    std::fprintf(stderr, "grids differ; nothing comparable\n");
    return kExitUsage;
  }
  std::printf("rmse = %.17g\n", train::rmse(a, b));
  if (a.field_count() > 1) {
    for (int f = 0; f < a.field_count(); ++f) {
      std::printf("rmse_f%d = %.17g\n", f, train::rmse_field(a, b, f));
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PDE solver and physics-informed network benchmark"};
  app.require_subcommand(1);

  std::string out_flag;
  app.add_option("--out", out_flag, "output root (default $PINNBENCH_OUT or ./out)");

  auto* list = app.add_subcommand("list", "print the problem catalogue");

  auto* solve = app.add_subcommand("solve-fd", "run a finite-difference reference solve");
  std::string solve_problem;
  double solve_dx = 0, solve_dt = 0, solve_tf = 0;
  int solve_size = 0, solve_scale = 1;
  std::uint64_t solve_seed = 7;
  std::string solve_params = "listing";
  bool solve_force = false, solve_png = false;
  solve->add_option("problem", solve_problem, "problem id")->required();
  solve->add_option("--dx", solve_dx, "spatial step");
  solve->add_option("--dt", solve_dt, "time step");
  solve->add_option("--t-final", solve_tf, "final time");
  solve->add_option("--size", solve_size, "grid cells per side (turing2-2d)");
  solve->add_option("--seed", solve_seed, "initial-field seed (turing2-2d)");
  solve->add_option("--param-set", solve_params, "turing1-1d constants: table|listing");
  solve->add_option("--scale", solve_scale, "keep every n-th stored slice");
  solve->add_flag("--force", solve_force, "overwrite existing outputs");
  solve->add_flag("--png", solve_png, "also write a plot");

  auto* traincmd = app.add_subcommand("train", "train a network from a config");
  std::string train_config;
  std::uint64_t train_seed = 0;
  bool train_seed_set = false, train_force = false, train_dry = false;
  int train_scale = 1;
  traincmd->add_option("--config", train_config, "experiment config (json)")->required();
  traincmd->add_option("--seed", train_seed, "override the config seed list")
      ->each([&](const std::string&) { train_seed_set = true; });
  traincmd->add_option("--scale", train_scale, "desk-scale divisor for evaluation grids");
  traincmd->add_flag("--force", train_force, "overwrite existing outputs");
  traincmd->add_flag("--dry-run", train_dry, "print the resolved config and exit");

  auto* sweep = app.add_subcommand("sweep", "run a layers x neurons x seeds sweep");
  std::string sweep_config;
  int sweep_jobs = 1, sweep_scale = 1;
  bool sweep_force = false, sweep_dry = false;
  sweep->add_option("--config", sweep_config, "experiment config (json)")->required();
  sweep->add_option("--jobs", sweep_jobs, "concurrent cells");
  sweep->add_option("--scale", sweep_scale, "desk-scale divisor for evaluation grids");
  sweep->add_flag("--force", sweep_force, "recompute finished cells");
  sweep->add_flag("--dry-run", sweep_dry, "print the resolved config and exit");

  auto* cmp = app.add_subcommand("compare", "recompute rmse between two saved grids");
  std::string cmp_a, cmp_b;
  cmp->add_option("a", cmp_a, "first .bin grid")->required();
  cmp->add_option("b", cmp_b, "second .bin grid")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    const fs::path out = output_root(out_flag);
    if (list->parsed()) return cmd_list();
    if (solve->parsed()) {
      return cmd_solve_fd(solve_problem, out / ("fd_" + solve_problem), solve_dx, solve_dt,
                          solve_tf, solve_size, solve_seed, solve_params, solve_scale,
                          solve_force, solve_png);
    }
    if (traincmd->parsed()) {
      return cmd_train(train_config, out,
                       train_seed_set ? std::optional<std::uint64_t>(train_seed)
                                      : std::nullopt,
                       train_scale, train_force, train_dry);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_config, out, sweep_jobs, sweep_scale, sweep_force, sweep_dry);
    }
    if (cmp->parsed()) return cmd_compare(cmp_a, cmp_b);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const StabilityError& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return kExitRefused;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return kExitDiverged;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}
