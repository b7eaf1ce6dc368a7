// embedlab command line front end: file- and pipe-oriented access to the
// library.  Every subcommand writes its result to --out ("-" = stdout),
// reports failures as one-line JSON on stderr, and uses exit codes
//   0 = success, 2 = negative verdict, 1 = error.

#include <CLI11.hpp>
#include <embedlab/embedlab.hpp>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace {

using namespace embedlab;

// 17 significant digits survive a text round trip bit-exactly
std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_error(const std::string& message) {
  Json err;
  err["error"] = message;
  std::cerr << err.dump() << "\n";
}

StochasticMatrix load_stochastic(const std::string& path) {
  return StochasticMatrix(matrix_from_json(load_json_file(path)));
}

ProbVector load_probvector(const std::string& path) {
  return ProbVector(vector_from_json(load_json_file(path)));
}

Json classical_stage_json(const ClassicalStage& st) {
  Json j;
  j["kind"] = "classical";
  j["generator"] = to_json(st.generator.mat());
  j["duration"] = st.duration;
  j["infinite"] = st.infinite;
  return j;
}

Json lindblad_stage_json(const LindbladStage& st) {
  Json j;
  j["kind"] = "lindblad";
  j["hamiltonian"] = to_json(st.generator.hamiltonian);
  Json jumps = Json::array();
  for (const auto& k : st.generator.jump_ops) jumps.push_back(to_json(k));
  j["jumps"] = std::move(jumps);
  j["duration"] = st.duration;
  j["infinite"] = st.infinite;
  return j;
}

Json stage_json(const RealizationStage& st) {
  if (const auto* c = std::get_if<ClassicalStage>(&st)) return classical_stage_json(*c);
  return lindblad_stage_json(std::get<LindbladStage>(st));
}

Json schedule_json(const ClassicalSchedule& sched) {
  Json arr = Json::array();
  for (const auto& st : sched) arr.push_back(classical_stage_json(st));
  return arr;
}

Json realization_json(const MarkovianRealization& r) {
  Json j;
  j["target"] = to_json(r.target.mat());
  j["achieved_error"] = r.achieved_error;
  Json stages = Json::array();
  for (const auto& st : r.stages) stages.push_back(stage_json(st));
  j["stages"] = std::move(stages);
  return j;
}

Json verdict_json(const EmbedVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["reason"] = v.reason;
  if (v.witness) j["witness"] = schedule_json(*v.witness);
  return j;
}

// a three-level cyclic target admits the exact spectral decision; recover its
// two hop weights and confirm the structure before routing there
std::optional<EmbedVerdict> circulant3_detect(const StochasticMatrix& p) {
  if (p.d() != 3) return std::nullopt;
  const double a = p(1, 0);
  const double b = p(2, 0);
  if (a < 0.0 || b < 0.0 || a + b > 1.0 + 1e-12) return std::nullopt;
  StochasticMatrix model = circulant3_matrix(a, b);
  if ((p.mat() - model.mat()).cwiseAbs().maxCoeff() > 1e-12) return std::nullopt;
  return check_circulant3(a, b);
}

int run_embed_check(const std::string& matrix_path, const std::vector<double>& circ,
                    Sink& sink) {
  EmbedVerdict v = [&] {
    if (!circ.empty()) return check_circulant3(circ[0], circ[1]);
    StochasticMatrix p = load_stochastic(matrix_path);
    if (p.d() == 2) return check_embeddable_2x2(p);
    if ((p.mat() - Matrix::Identity(p.d(), p.d())).cwiseAbs().maxCoeff() <= 1e-14)
      return EmbedVerdict{EmbedStatus::Embeddable, ClassicalSchedule{},
                          "identity target; the empty schedule realizes it"};
    if (auto circulant = circulant3_detect(p)) return *circulant;
    return check_goodman(p);
  }();
  sink.os() << verdict_json(v).dump(2) << "\n";
  return v.status == EmbedStatus::NotEmbeddable ? 2 : 0;
}

int run_qembed(const std::string& matrix_path, std::uint64_t seed, int restarts,
               Sink& sink) {
  StochasticMatrix p = load_stochastic(matrix_path);
  std::optional<MarkovianRealization> r;
  std::string note;
  if (p.d() == 2) {
    r = decompose_2x2(p);
    note = "two-level decomposition";
  } else if (p.d() <= 4) {
    UnistochasticSearch s = check_unistochastic_search(p, seed, restarts);
    if (!s.unistochastic) {
      Json j;
      j["status"] = "no-realization";
      j["reason"] = "no unitary with a matching transition profile was found";
      j["residual"] = s.residual;
      sink.os() << j.dump(2) << "\n";
      return 2;
    }
    r = unistochastic_channel(s.witness);
    note = "single unitary-plus-dephasing stage from a recovered unitary";
  } else {
    throw std::runtime_error("qembed: dimensions above 4 are not supported");
  }
  Json j = realization_json(*r);
  j["status"] = "realized";
  j["note"] = note;
  sink.os() << j.dump(2) << "\n";
  return 0;
}

int run_region_scan(int grid, int threads, Sink& sink) {
  require(grid >= 2, "region-scan: grid must be at least 2");
  const int n = grid;
  std::vector<std::string> rows(static_cast<std::size_t>(n) * n);
  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  if (nthreads > n) nthreads = n;

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        const double a = static_cast<double>(i) / (n - 1);
        for (int j = 0; j < n; ++j) {
          const double b = static_cast<double>(j) / (n - 1);
          // integer test keeps the simplex boundary exact
          const char* tag = (i + j > n - 1)
                                ? "OutOfSimplex"
                                : to_string(classify_circulant_point(a, b));
          rows[static_cast<std::size_t>(i) * n + j] =
              fmt17(a) + "," + fmt17(b) + "," + tag;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  auto& os = sink.os();
  os << "a,b,classification\n";
  for (const auto& row : rows) os << row << "\n";
  return 0;
}

int run_cost_table(const std::string& function, int bits,
                   const std::vector<std::int64_t>& mems, Sink& sink) {
  FunctionStats stats = [&] {
    if (function == "f1") return named_function_stats(NamedFunction::AddOneModD, bits);
    if (function == "f2")
      return named_function_stats(NamedFunction::SaturatingShift, bits);
    Json j = load_json_file(function);
    if (!j.contains("table"))
      throw std::runtime_error("cost-table: function file needs a 'table' array");
    return function_stats(FunctionMap(j.at("table").get<std::vector<int>>()));
  }();
  std::vector<CostReport> table = tradeoff_table(stats, mems);
  auto& os = sink.os();
  os << "memory,classical_lo,classical_hi,classical_lower_bound,quantum_steps,"
        "quantum_memory\n";
  for (const CostReport& r : table) {
    os << r.m << ",";
    if (r.infinite)
      os << "inf,inf,inf,";
    else
      os << r.interval_lo << "," << r.interval_hi << "," << r.lower_bound << ",";
    os << r.quantum_cost << "," << r.quantum_memory << "\n";
  }
  return 0;
}

int run_typicality(int d, int trials, std::uint64_t seed, Sink& sink) {
  TypicalitySample s = typicality_sample(d, trials, seed);
  Json j;
  j["dimension"] = s.dimension;
  j["trials"] = s.trials;
  j["seed"] = seed;
  j["mean_image"] = s.mean_image;
  j["se_image"] = s.se_image;
  j["mean_fixed"] = s.mean_fixed;
  j["se_fixed"] = s.se_fixed;
  j["predicted_image_mean"] = s.predicted_image_mean;
  j["predicted_image_se"] = s.predicted_image_se;
  j["predicted_fixed_mean"] = s.predicted_fixed_mean;
  j["predicted_fixed_se"] = s.predicted_fixed_se;
  sink.os() << j.dump(2) << "\n";
  return 0;
}

Json interval_json(const Interval& iv) {
  Json j;
  j["lo"] = iv.lo;
  j["hi"] = iv.hi;
  return j;
}

// closed-form reachable ground-population intervals for a two-level system,
// valid for either orientation of the fixed point
std::pair<Interval, Interval> qubit_intervals_oriented(double p0, double g0) {
  if (g0 >= 0.5) {
    const double beta_e = std::log(g0 / (1.0 - g0));
    return {qubit_memoryless_classical_interval(p0, beta_e),
            qubit_memory_classical_interval(p0, beta_e)};
  }
  // relabel the two levels so the fixed point prefers the first slot again
  const double beta_e = std::log((1.0 - g0) / g0);
  const Interval ml = qubit_memoryless_classical_interval(1.0 - p0, beta_e);
  const Interval mm = qubit_memory_classical_interval(1.0 - p0, beta_e);
  return {Interval{1.0 - ml.hi, 1.0 - ml.lo}, Interval{1.0 - mm.hi, 1.0 - mm.lo}};
}

// widest ground-population interval around p0 whose members pass the
// memory-assisted feasibility test; the reachable set is an interval, so
// bisection on each side is exact
Interval lp_qubit_interval(const ProbVector& p, const ProbVector& gamma) {
  auto feasible = [&](double q0) {
    if (q0 < 0.0 || q0 > 1.0) return false;
    Vector q(2);
    q << q0, 1.0 - q0;
    return accessible_with_memory(p, ProbVector(q), gamma);
  };
  auto edge = [&](double inside, double outside) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (inside + outside);
      (feasible(mid) ? inside : outside) = mid;
    }
    return inside;
  };
  return Interval{edge(p(0), 0.0), edge(p(0), 1.0)};
}

int run_access_region(const std::string& p_path, const std::string& gamma_path,
                      const std::string& q_path, bool use_lp, Sink& sink) {
  ProbVector p = load_probvector(p_path);
  ProbVector gamma = load_probvector(gamma_path);
  require(p.d() == gamma.d(), "access-region: dimension mismatch between --p and --gamma");
  const int d = p.d();

  bool uniform = true;
  for (int i = 0; i < d; ++i)
    if (std::abs(gamma(i) - 1.0 / d) > 1e-12) uniform = false;

  Json j;
  if (!q_path.empty()) {
    ProbVector q = load_probvector(q_path);
    require(q.d() == d, "access-region: dimension mismatch between --p and --q");
    const bool ok = (uniform && !use_lp) ? majorises(p, q)
                                         : accessible_with_memory(p, q, gamma);
    j["mode"] = "point-test";
    j["method"] = (uniform && !use_lp) ? "majorisation" : "lp";
    j["accessible"] = ok;
    sink.os() << j.dump(2) << "\n";
    return ok ? 0 : 2;
  }

  if (uniform) {
    // everything dominated by p is reachable; publish the dominance profile
    std::vector<double> sorted(d);
    for (int i = 0; i < d; ++i) sorted[i] = p(i);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    std::vector<double> lorenz(d);
    double acc = 0.0;
    for (int i = 0; i < d; ++i) lorenz[i] = (acc += sorted[i]);
    j["mode"] = "majorisation";
    j["sorted_descending"] = sorted;
    j["lorenz"] = lorenz;
    j["description"] =
        "a distribution is reachable exactly when its own sorted partial sums "
        "never exceed the lorenz values";
    sink.os() << j.dump(2) << "\n";
    return 0;
  }

  if (d == 2) {
    for (int i = 0; i < 2; ++i)
      require(gamma(i) > 0.0, "access-region: fixed point must have full support");
    j["mode"] = "thermal-qubit";
    j["ground_population"] = p(0);
    j["fixed_point_ground"] = gamma(0);
    if (use_lp) {
      j["method"] = "lp";
      j["memory"] = interval_json(lp_qubit_interval(p, gamma));
      j["note"] =
          "the linear program covers memory-assisted reachability only; the "
          "memoryless interval needs --closed-form";
    } else {
      j["method"] = "closed-form";
      auto [ml, mm] = qubit_intervals_oriented(p(0), gamma(0));
      j["memoryless"] = interval_json(ml);
      j["memory"] = interval_json(mm);
    }
    sink.os() << j.dump(2) << "\n";
    return 0;
  }

  throw std::runtime_error(
      "access-region: no closed region description beyond two levels with a "
      "nonuniform fixed point; supply --q for a point test");
}

int run_qubit_path(double x, double y, double z, double zeta, double delta, int steps,
                   Sink& sink) {
  BlochState start(x, y, z);
  PathTrajectory traj = extremal_path_evolve(start, zeta, delta, steps);

  // deviation is measured against the extremal circle through the start
  const ExtremalCircles circles = extremal_circles(start, zeta);
  const double center = delta > 0.0 ? circles.c0 : circles.c1;
  const double radius = delta > 0.0 ? circles.r0 : circles.r1;

  auto& os = sink.os();
  os << "step,x,z,r_plus,r_minus,radial_deviation\n";
  int k = 0;
  auto row = [&](const BlochState& s) {
    const QubitMonotones m = qubit_monotones(s, zeta);
    const double reach = std::hypot(std::hypot(s.x, s.y), s.z - center);
    os << k++ << "," << fmt17(s.x) << "," << fmt17(s.z) << "," << fmt17(m.r_plus)
       << "," << fmt17(m.r_minus) << "," << fmt17(std::abs(reach - radius)) << "\n";
  };
  row(traj.start);
  for (const PathStep& step : traj.steps) row(step.state);

  Json info;
  info["stop_reason"] = to_string(traj.stop_reason);
  info["steps"] = traj.steps.size();
  info["delta"] = delta;
  std::cerr << info.dump() << "\n";
  return 0;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trimmed_lower(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c)))
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

int run_free_energy_audit(const std::string& traj_path, const std::vector<double>& levels,
                          double beta, Sink& sink) {
  require(levels.size() == 2, "free-energy-audit: exactly two energy levels expected");
  std::ifstream in(traj_path);
  if (!in) throw std::runtime_error("cannot open trajectory file: " + traj_path);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("free-energy-audit: empty trajectory file");
  const std::vector<std::string> header = split_csv(line);
  int ti = -1, xi = -1, yi = -1, zi = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = trimmed_lower(header[i]);
    const int idx = static_cast<int>(i);
    if (name == "t" || name == "time" || name == "step") {
      if (ti < 0) ti = idx;
    } else if (name == "x") {
      xi = idx;
    } else if (name == "y") {
      yi = idx;
    } else if (name == "z") {
      zi = idx;
    }
  }
  require(ti >= 0 && xi >= 0 && zi >= 0,
          "free-energy-audit: header must name t (or step), x and z columns");

  std::vector<double> times;
  std::vector<DensityMatrix> states;
  while (std::getline(in, line)) {
    if (trimmed_lower(line).empty()) continue;
    const std::vector<std::string> fields = split_csv(line);
    const int needed = std::max(std::max(ti, xi), std::max(yi, zi));
    require(static_cast<int>(fields.size()) > needed,
            "free-energy-audit: row with too few columns");
    times.push_back(std::stod(fields[ti]));
    const double bx = std::stod(fields[xi]);
    const double by = yi >= 0 ? std::stod(fields[yi]) : 0.0;
    const double bz = std::stod(fields[zi]);
    states.push_back(BlochState(bx, by, bz).to_density());
  }
  require(!times.empty(), "free-energy-audit: no data rows");

  const EnergySpec spec(levels, beta);
  const FreeEnergyAudit audit = audit_trajectory(times, states, spec);

  auto& os = sink.os();
  os << "t,free_energy,quantum_free_energy,asymmetry\n";
  for (std::size_t i = 0; i < audit.times.size(); ++i)
    os << fmt17(audit.times[i]) << "," << fmt17(audit.f_classical[i]) << ","
       << fmt17(audit.f_quantum[i]) << "," << fmt17(audit.asym[i]) << "\n";

  Json info;
  info["monotone_ok"] = audit.monotone_ok;
  info["backflow_detected"] = audit.backflow_detected;
  std::cerr << info.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divisibility, realization and reachability toolbox"};
  app.require_subcommand(1);

  auto* ec = app.add_subcommand(
      "embed-check", "decide whether a stochastic matrix arises from a rate matrix");
  std::string ec_matrix;
  std::vector<double> ec_circ;
  std::string ec_out = "-";
  auto* ec_m = ec->add_option("--matrix", ec_matrix,
                              "JSON file holding the column-stochastic target");
  auto* ec_c = ec->add_option("--circulant", ec_circ,
                              "three-level cyclic target given by its two hop weights")
                   ->expected(2);
  ec->add_option("--out", ec_out, "output path, - for stdout");
  ec_m->excludes(ec_c);
  ec_c->excludes(ec_m);

  auto* qe = app.add_subcommand(
      "qembed", "build a stagewise quantum realization of a stochastic matrix");
  std::string qe_matrix;
  std::uint64_t qe_seed = 0;
  int qe_restarts = 24;
  std::string qe_out = "-";
  qe->add_option("--matrix", qe_matrix, "JSON file holding the column-stochastic target")
      ->required();
  qe->add_option("--seed", qe_seed, "search seed")->envname("EMBEDLAB_SEED");
  qe->add_option("--restarts", qe_restarts, "unitary search restarts");
  qe->add_option("--out", qe_out, "output path, - for stdout");

  auto* rs = app.add_subcommand(
      "region-scan", "classify the three-level cyclic family over a parameter grid");
  int rs_grid = 0;
  int rs_threads = 0;
  std::string rs_out = "-";
  rs->add_option("--grid", rs_grid, "points per axis")->required();
  rs->add_option("--threads", rs_threads, "worker threads (default: hardware)");
  rs->add_option("--out", rs_out, "output path, - for stdout");

  auto* ct = app.add_subcommand(
      "cost-table", "sequential-step cost of a function versus memory budget");
  std::string ct_function;
  int ct_bits = 0;
  std::vector<std::int64_t> ct_mem;
  std::string ct_out = "-";
  ct->add_option("--function", ct_function,
                 "f1 (cyclic increment), f2 (saturating shift), or a JSON table file")
      ->required();
  ct->add_option("--bits", ct_bits, "bit width for the named functions");
  ct->add_option("--mem", ct_mem, "comma-separated memory budgets")
      ->required()
      ->delimiter(',');
  ct->add_option("--out", ct_out, "output path, - for stdout");

  auto* ty = app.add_subcommand(
      "typicality", "image and fixed-point statistics of uniformly random functions");
  int ty_d = 0;
  int ty_trials = 0;
  std::uint64_t ty_seed = 0;
  std::string ty_out = "-";
  ty->add_option("--d", ty_d, "domain size")->required();
  ty->add_option("--trials", ty_trials, "number of sampled functions")->required();
  ty->add_option("--seed", ty_seed, "sampling seed")->envname("EMBEDLAB_SEED");
  ty->add_option("--out", ty_out, "output path, - for stdout");

  auto* ar = app.add_subcommand(
      "access-region", "describe which distributions a memory-assisted process reaches");
  std::string ar_p, ar_gamma, ar_q;
  std::string ar_out = "-";
  ar->add_option("--p", ar_p, "JSON file with the initial distribution")->required();
  ar->add_option("--gamma", ar_gamma, "JSON file with the fixed-point distribution")
      ->required();
  ar->add_option("--q", ar_q, "JSON file with a candidate target (point test)");
  auto* ar_lp = ar->add_flag("--lp", "answer through the feasibility linear program");
  auto* ar_cf = ar->add_flag("--closed-form", "answer through closed forms (default)");
  ar->add_option("--out", ar_out, "output path, - for stdout");
  ar_lp->excludes(ar_cf);
  ar_cf->excludes(ar_lp);

  auto* qp = app.add_subcommand(
      "qubit-path", "walk a two-level state along its extremal reachability circle");
  double qp_x = 0.0, qp_y = 0.0, qp_z = 0.0, qp_zeta = 0.0, qp_delta = 0.0;
  int qp_steps = 10000;
  std::string qp_out = "-";
  qp->add_option("--x", qp_x, "initial transverse component")->required();
  qp->add_option("--y", qp_y, "initial second transverse component");
  qp->add_option("--z", qp_z, "initial longitudinal component")->required();
  qp->add_option("--zeta", qp_zeta, "fixed-point longitudinal component")->required();
  qp->add_option("--delta", qp_delta, "signed longitudinal step")->required();
  qp->add_option("--steps", qp_steps, "step budget");
  qp->add_option("--out", qp_out, "output path, - for stdout");

  auto* fa = app.add_subcommand(
      "free-energy-audit", "free-energy bookkeeping along a two-level trajectory");
  std::string fa_traj;
  std::vector<double> fa_levels;
  double fa_beta = 0.0;
  std::string fa_out = "-";
  fa->add_option("--trajectory", fa_traj, "CSV with t (or step), x, z and optional y")
      ->required();
  fa->add_option("--levels", fa_levels, "comma-separated pair of energy levels")
      ->required()
      ->delimiter(',');
  fa->add_option("--beta", fa_beta, "inverse temperature")->required();
  fa->add_option("--out", fa_out, "output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(e.what());
    return 1;
  }

  try {
    if (app.got_subcommand(ec)) {
      if (ec_m->count() == 0 && ec_c->count() == 0)
        throw std::runtime_error("embed-check: provide --matrix or --circulant");
      Sink sink(ec_out);
      return run_embed_check(ec_matrix, ec_circ, sink);
    }
    if (app.got_subcommand(qe)) {
      Sink sink(qe_out);
      return run_qembed(qe_matrix, qe_seed, qe_restarts, sink);
    }
    if (app.got_subcommand(rs)) {
      Sink sink(rs_out);
      return run_region_scan(rs_grid, rs_threads, sink);
    }
    if (app.got_subcommand(ct)) {
      Sink sink(ct_out);
      return run_cost_table(ct_function, ct_bits, ct_mem, sink);
    }
    if (app.got_subcommand(ty)) {
      Sink sink(ty_out);
      return run_typicality(ty_d, ty_trials, ty_seed, sink);
    }
    if (app.got_subcommand(ar)) {
      Sink sink(ar_out);
      return run_access_region(ar_p, ar_gamma, ar_q, ar_lp->count() > 0, sink);
    }
    if (app.got_subcommand(qp)) {
      Sink sink(qp_out);
      return run_qubit_path(qp_x, qp_y, qp_z, qp_zeta, qp_delta, qp_steps, sink);
    }
    if (app.got_subcommand(fa)) {
      Sink sink(fa_out);
      return run_free_energy_audit(fa_traj, fa_levels, fa_beta, sink);
    }
  } catch (const std::exception& e) {
    emit_error(e.what());
    return 1;
  }
  emit_error("no subcommand selected");
  return 1;
}
