#include "core/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace l1p {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string record_line(const BenchRecord& r) {
  std::string line = r.instance + ',' + r.solver + ',' + r.status + ',' +
                     fmt(r.time_s) + ',' + fmt(r.objective) + ',' +
                     fmt(r.residual) + ',' + std::to_string(r.outer_iters) +
                     ',' + std::to_string(r.inner_iters);
  return line;
}

constexpr const char* kRecordsHeader =
    "instance,solver,status,time_s,objective,residual,outer_iters,inner_iters";

void check_label(const std::string& s) {
  if (s.empty() || s.find_first_of(",\n\r\"") != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument,
                "label not representable in records.csv: '" + s + "'");
  }
}

BenchRecord run_cell(const BpInstance& inst, const std::string& solver,
                     const SolverOptions& options) {
  BenchRecord rec;
  rec.instance = inst.meta.label;
  rec.solver = solver;
  try {
    SolverOptions opts = options;
    opts.record_trajectory = false;
    const SolveResult res = solve(inst, solver, opts);
    rec.status = to_string(res.status);
    rec.time_s = is_success(res.status) ? res.wall_time : options.time_limit;
    rec.objective = res.objective;
    rec.residual = res.residual;
    rec.outer_iters = res.outer_iterations;
    rec.inner_iters = res.inner_iterations;
  } catch (const std::exception&) {
    rec.status = kErrorStatus;
    rec.time_s = options.time_limit;
    rec.objective = std::nan("");
    rec.residual = std::nan("");
  }
  return rec;
}

}  // namespace

bool BenchRecord::solved() const {
  const auto s = parse_solve_status(status);
  return s && is_success(*s);
}

std::size_t effective_workers(std::size_t requested, std::size_t cells) {
  std::size_t w = std::max<std::size_t>(requested, 1);
  if (const char* env = std::getenv("L1PURSUIT_THREADS")) {
    std::size_t cap = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [p, ec] = std::from_chars(env, end, cap);
    if (ec == std::errc() && p == end && cap > 0) w = std::min(w, cap);
  }
  return std::clamp<std::size_t>(w, 1, std::max<std::size_t>(cells, 1));
}

std::vector<BenchRecord> run_suite(const std::vector<BpInstance>& instances,
                                   const std::vector<std::string>& solvers,
                                   const BenchOptions& options) {
  if (instances.empty() || solvers.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "benchmark needs at least one instance and one solver");
  }
  options.solver.validate();
  for (const auto& s : solvers) {
    check_label(s);
    if (!parse_solver_name(s)) {
      throw Error(ErrorCode::InvalidArgument, "unknown solver '" + s + "'");
    }
  }
  for (const auto& inst : instances) check_label(inst.meta.label);

  std::ofstream stream;
  if (options.stream_path) {
    stream.open(*options.stream_path);
    if (!stream) {
      throw Error(ErrorCode::Io,
                  "cannot write " + options.stream_path->string());
    }
    stream << kRecordsHeader << '\n' << std::flush;
  }

  const std::size_t cells = instances.size() * solvers.size();
  std::vector<BenchRecord> records(cells);
  std::atomic<std::size_t> next{0};
  std::mutex io;

  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      const BpInstance& inst = instances[c / solvers.size()];
      records[c] = run_cell(inst, solvers[c % solvers.size()], options.solver);
      if (stream.is_open()) {
        std::lock_guard lock(io);
        stream << record_line(records[c]) << '\n' << std::flush;
      }
    }
  };

  const std::size_t n_workers = effective_workers(options.workers, cells);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::stable_sort(records.begin(), records.end(),
                   [](const BenchRecord& a, const BenchRecord& b) {
                     return std::tie(a.instance, a.solver) <
                            std::tie(b.instance, b.solver);
                   });
  return records;
}

void write_records_csv(const std::vector<BenchRecord>& records,
                       std::ostream& out) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) out << record_line(r) << '\n';
}

void write_records_csv(const std::vector<BenchRecord>& records,
                       const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  write_records_csv(records, out);
  out.close();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

std::vector<BenchRecord> read_records_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kRecordsHeader) {
    throw Error(ErrorCode::Parse, path.string() + ":1: unexpected header");
  }
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorCode::Parse,
                  path.string() + ":" + std::to_string(line_no) + ": " + msg);
    };
    if (f.size() != 8) fail("expected 8 fields");
    BenchRecord r;
    r.instance = f[0];
    r.solver = f[1];
    r.status = f[2];
    try {
      r.time_s = std::stod(f[3]);
      r.objective = std::stod(f[4]);
      r.residual = std::stod(f[5]);
      r.outer_iters = std::stoull(f[6]);
      r.inner_iters = std::stoull(f[7]);
    } catch (const std::logic_error&) {
      fail("bad numeric field");
    }
    if (!(r.time_s >= 0.0)) fail("negative or missing time");
    records.push_back(std::move(r));
  }
  return records;
}

BenchManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open manifest " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::Parse, path.string() + ": not a JSON object");
  }
  BenchManifest m;
  const fs::path base = path.parent_path();
  try {
    for (const auto& p : j.value("instances", nlohmann::json::array())) {
      fs::path dir = p.get<std::string>();
      m.instances.push_back(dir.is_absolute() ? dir : base / dir);
    }
    for (const auto& s : j.value("solvers", nlohmann::json::array())) {
      m.solvers.push_back(s.get<std::string>());
    }
    if (j.contains("time_limit")) m.time_limit = j["time_limit"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
  if (m.instances.empty() || m.solvers.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                path.string() + ": manifest needs nonempty 'instances' and 'solvers'");
  }
  for (const auto& s : m.solvers) {
    if (!parse_solver_name(s)) {
      throw Error(ErrorCode::InvalidArgument, "unknown solver '" + s + "'");
    }
  }
  std::string missing;
  for (const auto& dir : m.instances) {
    if (!fs::is_directory(dir)) missing += "\n  " + dir.string();
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::Io, "missing instance directories:" + missing);
  }
  return m;
}

}  // namespace l1p
