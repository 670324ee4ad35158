// Command-line front end for the planetred library: chart conversion,
// canonicity and cyclic-variable checks, averaging, and reference integration.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "planetred.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { plred_string_free(s); }
};
struct StateGuard {
  plred_state* p = nullptr;
  ~StateGuard() { plred_state_free(p); }
};
struct CoordsGuard {
  plred_coords* p = nullptr;
  ~CoordsGuard() { plred_coords_free(p); }
};
struct ReportGuard {
  plred_report* p = nullptr;
  ~ReportGuard() { plred_report_free(p); }
};

int fail(plred_status st, const std::string& what) {
  std::cerr << "error: " << what << ": " << plred_last_error() << "\n";
  return st == PLRED_ERR_PARSE || st == PLRED_ERR_UNKNOWN_CHART ? kExitUsage : kExitCheckFailed;
}

std::string default_masses(int n, double mu) {
  std::ostringstream os;
  os << "{\"m0\": 1.0, \"mu\": " << mu << ", \"m\": [";
  for (int i = 0; i < n; ++i) os << (i ? ", " : "") << "1.0";
  os << "]}";
  return os.str();
}

int print_report(const plred_report* rep) {
  StringGuard text;
  plred_report_text(rep, &text.s);
  std::cout << text.s;
  return plred_report_passed(rep) ? kExitOk : kExitCheckFailed;
}

// Demo states, embedded so the scenarios run without input files.
const char* kInclinedPair = R"({
  "m0": 1.0, "mu": 0.001, "m": [1.0, 0.8],
  "y": [[-0.73075866506907561, -0.90705767230799172, -0.045201969645234402],
        [-0.19610784633625378, -0.36053699794055183, 0.19806898267010198]],
  "x": [[-0.7546535740426934, 0.4245597856047012, 0.16437400317659895],
        [-2.4908428501789821, 1.0161034348752929, 0.19966854133008749]]
})";

const char* kPlanarPair = R"({
  "m0": 1.0, "mu": 0.001, "m": [1.0, 1.0],
  "y": [[-0.4632303822283238, -0.972649159105066, 0.028947437445914204],
        [-0.52690662198366667, -0.31990428678930694, 0.13695057570424393]],
  "x": [[-0.84122538117835155, 0.2195808441860258, 0.31524655005732011],
        [-0.77721649450013053, 2.1412290797281028, 0.54764754641014157]]
})";

int cmd_convert(const std::string& in_file, const std::string& from_chart,
                const std::string& to_chart, const std::string& out_file) {
  std::string text;
  try {
    text = read_file(in_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  StateGuard state;
  if (from_chart == "cartesian") {
    if (auto st = plred_state_from_json(text.c_str(), &state.p)) return fail(st, "parse state");
  } else {
    CoordsGuard coords;
    if (auto st = plred_coords_from_json(text.c_str(), &coords.p)) return fail(st, "parse coords");
    if (auto st = plred_coords_to_state(coords.p, &state.p)) return fail(st, "invert chart");
  }

  std::string out_text;
  if (to_chart == "cartesian") {
    StringGuard s;
    if (auto st = plred_state_to_json(state.p, &s.s)) return fail(st, "write state");
    out_text = s.s;
  } else {
    CoordsGuard coords;
    if (auto st = plred_state_to_chart(state.p, to_chart.c_str(), &coords.p))
      return fail(st, "convert to " + to_chart);
    StringGuard s;
    if (auto st = plred_coords_to_json(coords.p, &s.s)) return fail(st, "write coords");
    out_text = s.s;
    double resid = 0.0;
    if (auto st = plred_roundtrip_residual(state.p, to_chart.c_str(), &resid))
      return fail(st, "round trip");
    std::printf("round-trip residual: %.17g\n", resid);
  }
  try {
    write_file(out_file, out_text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_demo(const std::string& scenario) {
  if (scenario == "two-planet-inclined") {
    StateGuard state;
    if (auto st = plred_state_from_json(kInclinedPair, &state.p)) return fail(st, "demo state");
    CoordsGuard coords;
    if (auto st = plred_state_to_chart(state.p, "jacobi_radau", &coords.p))
      return fail(st, "node reduction");
    StringGuard text;
    plred_coords_to_json(coords.p, &text.s);
    // Pull Gamma1, Gamma2, G out of the named values.
    double G1 = 0, G2 = 0, G = 0;
    {
      std::string s(text.s);
      auto grab = [&](const char* key) {
        auto pos = s.find(std::string("\"") + key + "\":");
        if (pos == std::string::npos) return 0.0;
        return std::strtod(s.c_str() + s.find(':', pos) + 1, nullptr);
      };
      G1 = grab("Gamma1");
      G2 = grab("Gamma2");
      G = grab("G");
    }
    const double ci = (G1 * G1 + G2 * G2 - G * G) / (2.0 * G1 * G2);
    std::cout << "Two inclined planets reduced through the nodes.\n";
    std::printf("Gamma1 = %.17g\nGamma2 = %.17g\nG      = %.17g\n", G1, G2, G);
    std::printf("angular-momentum triangle angle: cos iota = %.17g  (iota = %.17g rad)\n", ci,
                std::acos(ci));
    std::printf("mutual inclination of the orbit normals: %.17g rad\n", M_PI - std::acos(ci));
    std::cout << text.s;
    return kExitOk;
  }
  if (scenario == "planar-limit") {
    StateGuard state;
    if (auto st = plred_state_from_json(kPlanarPair, &state.p)) return fail(st, "demo state");
    std::cout << "Coplanar orbits: node reductions degenerate, the perihelia frames do not.\n";
    CoordsGuard peri;
    if (plred_state_to_chart(state.p, "perihelia", &peri.p) != PLRED_OK) {
      std::cerr << "unexpected: perihelia chart failed: " << plred_last_error() << "\n";
      return kExitCheckFailed;
    }
    std::cout << "perihelia chart: defined\n";
    CoordsGuard dep;
    if (plred_state_to_chart(state.p, "deprit", &dep.p) == PLRED_OK) {
      std::cerr << "unexpected: node-based chart admitted a planar state\n";
      return kExitCheckFailed;
    }
    std::cout << "deprit chart: singular as expected (" << plred_last_error() << ")\n";
    return kExitOk;
  }
  if (scenario == "equivalence-sweep") {
    StateGuard state;
    if (auto st = plred_state_from_json(kInclinedPair, &state.p)) return fail(st, "demo state");
    const double mus[3] = {1e-3, 5e-4, 2.5e-4};
    ReportGuard rep;
    if (auto st = plred_equivalence(state.p, mus, 3, &rep.p)) return fail(st, "equivalence");
    StringGuard text;
    plred_report_text(rep.p, &text.s);
    std::cout << "Averaged perturbing functions, heliocentric vs Jacobi, gap per mu:\n";
    std::cout << "# mu d(mu)\n";
    {
      std::string s(text.s);
      size_t pos = 0;
      for (double mu : mus) {
        pos = s.find("d(mu=", pos);
        if (pos == std::string::npos) break;
        const double d = std::strtod(s.c_str() + s.find(':', pos) + 1, nullptr);
        std::printf("%.17g %.17g\n", mu, d);
        ++pos;
      }
    }
    std::cout << text.s;
    return plred_report_passed(rep.p) ? kExitOk : kExitCheckFailed;
  }
  std::cerr << "unknown scenario: " << scenario
            << " (expected two-planet-inclined | planar-limit | equivalence-sweep)\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planetred: canonical charts for the planetary problem"};
  app.require_subcommand(1);

  auto* conv = app.add_subcommand("convert", "convert between cartesian states and chart coordinates");
  std::string in_file, out_file, from_chart = "cartesian", to_chart;
  conv->add_option("--in", in_file, "input file")->required();
  conv->add_option("--from", from_chart, "source chart or 'cartesian'");
  conv->add_option("--to", to_chart, "target chart or 'cartesian'")->required();
  conv->add_option("--out", out_file, "output file")->required();

  auto* canon = app.add_subcommand("check-canonical", "symplecticity of a chart on random points");
  std::string chart, masses_file;
  int samples = 100, nbodies = 2;
  uint64_t seed = 1;
  double mu = 1e-3;
  canon->add_option("--chart", chart, "chart name")->required();
  canon->add_option("--samples", samples, "number of sample points");
  canon->add_option("--seed", seed, "random seed");
  canon->add_option("--n", nbodies, "number of planets");
  canon->add_option("--mu", mu, "mass ratio");
  canon->add_option("--masses", masses_file, "JSON file with m0, mu, m");

  auto* cyc = app.add_subcommand("check-cyclic", "partials of the pulled-back Hamiltonian");
  std::string cyc_chart, cyc_vars;
  cyc->add_option("--chart", cyc_chart, "chart name")->required();
  cyc->add_option("--vars", cyc_vars, "comma-separated coordinate names")->required();
  cyc->add_option("--seed", seed, "random seed");
  cyc->add_option("--n", nbodies, "number of planets");
  cyc->add_option("--mu", mu, "mass ratio");
  cyc->add_option("--masses", masses_file, "JSON file with m0, mu, m");

  auto* avg = app.add_subcommand("average", "average the perturbing function over the fast angles");
  std::string avg_in;
  avg->add_option("--in", avg_in, "state file (two planets)")->required();

  auto* equiv = app.add_subcommand("equivalence",
                                   "first-order agreement of heliocentric and Jacobi averages");
  std::string eq_in;
  std::vector<double> eq_mus{1e-3, 5e-4, 2.5e-4};
  equiv->add_option("--in", eq_in, "state file (two planets)")->required();
  equiv->add_option("--mus", eq_mus, "mu values for the sweep");

  auto* integ = app.add_subcommand("integrate", "fixed-step reference integration");
  std::string int_in, table_file;
  double T = 10.0, dt = 1e-2, tol = 1e-8;
  integ->add_option("--in", int_in, "state file")->required();
  integ->add_option("--T", T, "time span");
  integ->add_option("--dt", dt, "step size");
  integ->add_option("--tol", tol, "drift tolerance");
  integ->add_option("--table", table_file, "write drift table to this file");

  auto* demo = app.add_subcommand("demo", "narrated scenarios");
  std::string scenario;
  demo->add_option("scenario", scenario, "two-planet-inclined | planar-limit | equivalence-sweep")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (conv->parsed()) return cmd_convert(in_file, from_chart, to_chart, out_file);

    if (canon->parsed()) {
      const std::string masses =
          masses_file.empty() ? default_masses(nbodies, mu) : read_file(masses_file);
      ReportGuard rep;
      if (auto st = plred_check_canonical(chart.c_str(), masses.c_str(), samples, seed, &rep.p))
        return fail(st, "check-canonical " + chart);
      return print_report(rep.p);
    }

    if (cyc->parsed()) {
      const std::string masses =
          masses_file.empty() ? default_masses(nbodies, mu) : read_file(masses_file);
      ReportGuard rep;
      if (auto st = plred_check_cyclic(cyc_chart.c_str(), masses.c_str(), cyc_vars.c_str(), seed,
                                       &rep.p))
        return fail(st, "check-cyclic " + cyc_chart);
      return print_report(rep.p);
    }

    if (avg->parsed()) {
      StateGuard state;
      if (auto st = plred_state_from_json(read_file(avg_in).c_str(), &state.p))
        return fail(st, "parse state");
      double value = 0.0;
      if (auto st = plred_average(state.p, &value)) return fail(st, "average");
      std::printf("averaged perturbing function: %.17g\n", value);
      return kExitOk;
    }

    if (equiv->parsed()) {
      StateGuard state;
      if (auto st = plred_state_from_json(read_file(eq_in).c_str(), &state.p))
        return fail(st, "parse state");
      ReportGuard rep;
      if (auto st = plred_equivalence(state.p, eq_mus.data(), static_cast<int>(eq_mus.size()),
                                      &rep.p))
        return fail(st, "equivalence");
      return print_report(rep.p);
    }

    if (integ->parsed()) {
      StateGuard state;
      if (auto st = plred_state_from_json(read_file(int_in).c_str(), &state.p))
        return fail(st, "parse state");
      ReportGuard rep;
      StringGuard table;
      if (auto st = plred_integrate(state.p, T, dt, tol, &rep.p,
                                    table_file.empty() ? nullptr : &table.s))
        return fail(st, "integrate");
      if (!table_file.empty()) write_file(table_file, table.s);
      return print_report(rep.p);
    }

    if (demo->parsed()) return cmd_demo(scenario);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
