#pragma once

#include <stdexcept>
#include <string>

namespace plred {

enum class ErrorCode {
  ok = 0,
  parse_error,
  unknown_chart,
  collision,
  unsupported_body_count,
  chart_singular,
  node_singular,
  triangle_violation,
  action_overflow,
  invalid_actions,
  eccentricity_out_of_range,
  not_elliptic,
  rectilinear,
  degenerate_node,
  not_coplanar,
  domain_violation,
  quadrature_not_converged,
  collision_detected,
  step_rejected,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(error_code_name(code) + (": " + what)), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// The singular manifolds excluded by each chart (vanishing nodes, zero
// eccentricity, degenerate angular-momentum triangles) all surface as one of
// these.  Messages name the offending body or node index.
struct ChartSingular : Error {
  explicit ChartSingular(const std::string& w) : Error(ErrorCode::chart_singular, w) {}
};
struct NodeSingular : Error {
  NodeSingular(int node_index, const std::string& w)
      : Error(ErrorCode::node_singular, w), index(node_index) {}
  int index;
};
struct TriangleViolation : Error {
  explicit TriangleViolation(const std::string& w) : Error(ErrorCode::triangle_violation, w) {}
};
struct ActionOverflow : Error {
  explicit ActionOverflow(const std::string& w) : Error(ErrorCode::action_overflow, w) {}
};
struct Collision : Error {
  explicit Collision(const std::string& w) : Error(ErrorCode::collision, w) {}
};

}  // namespace plred
