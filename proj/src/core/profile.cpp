#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "core/bench.hpp"

namespace l1p {

namespace fs = std::filesystem;

namespace {

constexpr double kTieRel = 1e-9;
// Zero wall times (trivial instances) would make ratios 0/0.
constexpr double kMinTime = 1e-9;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

PerfProfile performance_profile(const std::vector<BenchRecord>& records) {
  if (records.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no records to profile");
  }
  std::set<std::string> problems;
  std::set<std::string> solvers;
  std::map<std::pair<std::string, std::string>, const BenchRecord*> grid;
  for (const auto& r : records) {
    problems.insert(r.instance);
    solvers.insert(r.solver);
    if (!grid.emplace(std::make_pair(r.instance, r.solver), &r).second) {
      throw Error(ErrorCode::InvalidArgument,
                  "duplicate record for (" + r.instance + ", " + r.solver + ")");
    }
  }
  std::string missing;
  for (const auto& p : problems) {
    for (const auto& s : solvers) {
      if (!grid.count({p, s})) missing += " (" + p + ", " + s + ")";
    }
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::InvalidArgument, "incomplete grid, missing:" + missing);
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::map<std::string, std::vector<double>> ratios;
  for (const auto& p : problems) {
    double best = inf;
    for (const auto& s : solvers) {
      const BenchRecord* r = grid[{p, s}];
      if (r->solved()) best = std::min(best, std::max(r->time_s, kMinTime));
    }
    for (const auto& s : solvers) {
      const BenchRecord* r = grid[{p, s}];
      double ratio = inf;
      if (r->solved()) {
        const double t = std::max(r->time_s, kMinTime);
        ratio = t <= best * (1.0 + kTieRel) ? 1.0 : t / best;
      }
      ratios[s].push_back(ratio);
    }
  }

  PerfProfile profile;
  profile.solvers.assign(solvers.begin(), solvers.end());
  profile.problems = problems.size();
  const double count = static_cast<double>(problems.size());
  for (const auto& s : profile.solvers) {
    std::vector<double>& rs = ratios[s];
    std::sort(rs.begin(), rs.end());
    ProfileCurve curve;
    curve.solver = s;
    std::size_t at_most = 0;
    while (at_most < rs.size() && rs[at_most] <= 1.0) ++at_most;
    curve.steps.push_back({1.0, at_most / count});
    for (std::size_t i = at_most; i < rs.size() && std::isfinite(rs[i]);) {
      const double tau = rs[i];
      while (i < rs.size() && rs[i] == tau) ++i;
      curve.steps.push_back({tau, i / count});
    }
    profile.curves.push_back(std::move(curve));
  }
  return profile;
}

double profile_value(const ProfileCurve& curve, double tau) {
  double rho = 0.0;
  for (const auto& step : curve.steps) {
    if (step.ratio > tau) break;
    rho = step.rho;
  }
  return rho;
}

void write_profile_csv(const PerfProfile& profile, std::ostream& out) {
  out << "solver,tau,rho\n";
  for (const auto& c : profile.curves) {
    for (const auto& s : c.steps) {
      out << c.solver << ',' << fmt(std::log2(s.ratio)) << ',' << fmt(s.rho)
          << '\n';
    }
  }
}

void write_profile_csv(const PerfProfile& profile, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  write_profile_csv(profile, out);
  out.close();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

void write_profile_svg(const PerfProfile& profile, const fs::path& path) {
  constexpr double W = 640, H = 420, left = 60, right = 160, top = 30,
                   bottom = 50;
  const double pw = W - left - right;
  const double ph = H - top - bottom;

  double xmax = 1.0;
  for (const auto& c : profile.curves) {
    for (const auto& s : c.steps) xmax = std::max(xmax, std::log2(s.ratio));
  }
  xmax *= 1.05;
  auto X = [&](double log_tau) { return left + pw * log_tau / xmax; };
  auto Y = [&](double rho) { return top + ph * (1.0 - rho); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes and ticks
  out << "<g stroke=\"black\" fill=\"none\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << Y(0) << "\" x2=\"" << left + pw
      << "\" y2=\"" << Y(0) << "\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << Y(0) << "\" x2=\"" << left
      << "\" y2=\"" << Y(1) << "\"/>\n</g>\n";
  for (int i = 0; i <= 5; ++i) {
    const double rho = i / 5.0;
    out << "<text x=\"" << left - 8 << "\" y=\"" << Y(rho) + 4
        << "\" text-anchor=\"end\">" << fmt(rho) << "</text>\n";
    const double lt = xmax * i / 5.0;
    out << "<text x=\"" << X(lt) << "\" y=\"" << Y(0) + 18
        << "\" text-anchor=\"middle\">" << fmt(std::round(lt * 100) / 100)
        << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 10
      << "\" text-anchor=\"middle\">log2(tau)</text>\n"
      << "<text x=\"15\" y=\"" << top + ph / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " << top + ph / 2
      << ")\">fraction of problems</text>\n";

  for (std::size_t k = 0; k < profile.curves.size(); ++k) {
    const auto& c = profile.curves[k];
    const char* color = colors[k % std::size(colors)];
    std::string pts;
    double prev_rho = 0.0;
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
      const double x = X(std::log2(c.steps[i].ratio));
      if (i > 0) pts += fmt(x) + ',' + fmt(Y(prev_rho)) + ' ';
      pts += fmt(x) + ',' + fmt(Y(c.steps[i].rho)) + ' ';
      prev_rho = c.steps[i].rho;
    }
    pts += fmt(X(xmax)) + ',' + fmt(Y(prev_rho));
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"" << pts << "\"/>\n";
    const double ly = top + 10 + 18 * static_cast<double>(k);
    out << "<line x1=\"" << W - right + 15 << "\" y1=\"" << ly << "\" x2=\""
        << W - right + 40 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << W - right + 46 << "\" y=\"" << ly + 4 << "\">"
        << xml_escape(c.solver) << "</text>\n";
  }
  out << "</svg>\n";
  out.close();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

}  // namespace l1p
