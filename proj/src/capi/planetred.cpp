#include "planetred.h"

#include <cmath>
#include <cstring>
#include <sstream>
#include <string>

#include "plred/io.hpp"
#include "plred/verify.hpp"

using namespace plred;

struct plred_state {
  MassParams mp;
  HelioState hs;
};

struct plred_coords {
  CoordsFile cf;
};

struct plred_report {
  CheckReport rep;
};

namespace {

thread_local std::string g_last_error;

plred_status status_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::parse_error:
      return PLRED_ERR_PARSE;
    case ErrorCode::unknown_chart:
      return PLRED_ERR_UNKNOWN_CHART;
    case ErrorCode::chart_singular:
    case ErrorCode::node_singular:
    case ErrorCode::triangle_violation:
    case ErrorCode::degenerate_node:
    case ErrorCode::not_coplanar:
      return PLRED_ERR_SINGULAR;
    case ErrorCode::quadrature_not_converged:
    case ErrorCode::collision_detected:
    case ErrorCode::step_rejected:
      return PLRED_ERR_NUMERIC;
    default:
      return PLRED_ERR_DOMAIN;
  }
}

template <typename F>
plred_status guarded(F&& f) {
  try {
    f();
    return PLRED_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PLRED_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PLRED_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

extern "C" {

const char* plred_last_error(void) { return g_last_error.c_str(); }

void plred_string_free(char* s) { delete[] s; }
void plred_state_free(plred_state* s) { delete s; }
void plred_coords_free(plred_coords* c) { delete c; }
void plred_report_free(plred_report* r) { delete r; }

plred_status plred_state_from_json(const char* text, plred_state** out) {
  return guarded([&] {
    const StateFile sf = parse_state_file(text);
    *out = new plred_state{sf.mp, sf.as_helio()};
  });
}

plred_status plred_state_to_json(const plred_state* s, char** out) {
  return guarded([&] { *out = dup_string(write_state_file(s->hs, s->mp)); });
}

plred_status plred_coords_from_json(const char* text, plred_coords** out) {
  return guarded([&] {
    CoordsFile cf = parse_coords_file(text);
    get_chart(cf.chart, cf.mp);  // validates the tag
    *out = new plred_coords{std::move(cf)};
  });
}

plred_status plred_coords_to_json(const plred_coords* c, char** out) {
  return guarded([&] {
    const ChartSpec chart = get_chart(c->cf.chart, c->cf.mp);
    *out = dup_string(write_coords_file(chart, c->cf.values));
  });
}

plred_status plred_state_to_chart(const plred_state* s, const char* chart_name,
                                  plred_coords** out) {
  return guarded([&] {
    if (!chart_converts_states(chart_name))
      throw Error(ErrorCode::unknown_chart,
                  std::string(chart_name) + " does not convert reduced states");
    const ChartSpec chart = get_chart(chart_name, s->mp);
    CoordsFile cf;
    cf.chart = chart_name;
    cf.mp = s->mp;
    cf.values = chart.forward_flat(flatten(s->hs));
    *out = new plred_coords{std::move(cf)};
  });
}

plred_status plred_coords_to_state(const plred_coords* c, plred_state** out) {
  return guarded([&] {
    const ChartSpec chart = get_chart(c->cf.chart, c->cf.mp);
    if (static_cast<int>(c->cf.values.size()) != chart.dim + chart.nparams)
      throw Error(ErrorCode::parse_error, "coords value count does not match the chart");
    *out = new plred_state{c->cf.mp, unflatten(chart.inverse_flat(c->cf.values))};
  });
}

plred_status plred_roundtrip_residual(const plred_state* s, const char* chart_name,
                                      double* out) {
  return guarded([&] {
    const ChartSpec chart = get_chart(chart_name, s->mp);
    const auto coords = chart.forward_flat(flatten(s->hs));
    const auto back = chart.inverse_flat(coords);
    const auto coords2 = chart.forward_flat(back);
    double maxdev = 0.0;
    for (int k = 0; k < chart.dim; ++k) {
      const double d = chart.angle_mask[k] ? std::abs(angle_diff(coords2[k], coords[k]))
                                           : std::abs(coords2[k] - coords[k]);
      maxdev = std::max(maxdev, d);
    }
    *out = maxdev;
  });
}

plred_status plred_chart_list(char** out) {
  return guarded([&] {
    std::string s;
    for (const auto& n : chart_names()) s += n + "\n";
    *out = dup_string(s);
  });
}

plred_status plred_check_canonical(const char* chart_name, const char* masses_json, int samples,
                                   uint64_t seed, plred_report** out) {
  return guarded([&] {
    const MassParams mp = parse_masses(masses_json);
    const ChartSpec chart = get_chart(chart_name, mp);
    Rng rng(seed);
    CheckReport worst;
    worst.check_name = "symplectic:" + chart.name;
    worst.tolerance = 1e-7;
    worst.passed = true;
    for (int k = 0; k < samples; ++k) {
      const auto point = chart.sample(rng);
      const CheckReport rep = check_symplectic(chart, point, 1e-5, 1e-7);
      if (rep.max_deviation > worst.max_deviation) {
        worst.max_deviation = rep.max_deviation;
        worst.per_component = rep.per_component;
      }
      worst.passed = worst.passed && rep.passed;
    }
    worst.per_component.emplace_back("samples", static_cast<double>(samples));
    *out = new plred_report{std::move(worst)};
  });
}

plred_status plred_check_cyclic(const char* chart_name, const char* masses_json,
                                const char* variables, uint64_t seed, plred_report** out) {
  return guarded([&] {
    const MassParams mp = parse_masses(masses_json);
    const ChartSpec chart = get_chart(chart_name, mp);
    Rng rng(seed);
    const auto point = chart.sample(rng);
    CheckReport rep = check_cyclic(chart, point, split_csv(variables));
    *out = new plred_report{std::move(rep)};
  });
}

plred_status plred_average(const plred_state* s, double* out) {
  return guarded([&] {
    if (s->mp.n() != 2)
      throw Error(ErrorCode::unsupported_body_count, "average needs two planets");
    const ChartSpec chart = get_chart("delaunay", s->mp);
    const auto point = chart.forward_flat(flatten(s->hs));
    *out = average_perturbation(chart, point, {6, 7});  // the two mean anomalies
  });
}

plred_status plred_equivalence(const plred_state* s, const double* mus, int nmus,
                               plred_report** out) {
  return guarded([&] {
    if (s->mp.n() != 2)
      throw Error(ErrorCode::unsupported_body_count, "equivalence needs two planets");
    SecularPoint sp;
    for (int i = 0; i < 2; ++i) {
      const DelaunayCoords d =
          delaunay_forward(s->hs.y[i], s->hs.x[i], s->mp.mred(i), s->mp.mgrav(i));
      sp.Lambda[i] = d.Lambda;
      sp.Gamma[i] = d.Gamma;
      sp.H[i] = d.H;
      sp.g[i] = d.g;
      sp.h[i] = d.h;
    }
    CheckReport rep = check_hel_jac_equivalence(
        s->mp, sp, std::span<const double>(mus, static_cast<size_t>(nmus)));
    *out = new plred_report{std::move(rep)};
  });
}

plred_status plred_integrate(const plred_state* s, double T, double dt, double tolerance,
                             plred_report** out, char** table_out) {
  return guarded([&] {
    IntegrationResult res = integrate(s->hs, s->mp, T, dt, 16, tolerance);
    if (table_out) {
      std::ostringstream os;
      const Integrals I0 = integrals(res.traj.states.front(), s->mp);
      os << "# t dE_rel dC_abs dP_abs\n";
      char buf[128];
      for (size_t i = 0; i < res.traj.t.size(); ++i) {
        const Integrals I = integrals(res.traj.states[i], s->mp);
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", res.traj.t[i],
                      std::abs(I.E - I0.E) / std::max(1.0, std::abs(I0.E)), norm(I.C - I0.C),
                      norm(I.P - I0.P));
        os << buf;
      }
      *table_out = dup_string(os.str());
    }
    *out = new plred_report{std::move(res.conservation)};
  });
}

int plred_report_passed(const plred_report* r) { return r->rep.passed ? 1 : 0; }
double plred_report_max_deviation(const plred_report* r) { return r->rep.max_deviation; }
plred_status plred_report_text(const plred_report* r, char** out) {
  return guarded([&] { *out = dup_string(r->rep.to_text()); });
}

}  // extern "C"
