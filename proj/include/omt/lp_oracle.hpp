#pragma once

#include "omt/pdhg.hpp"

namespace omt {

/// Exact value of the discretized primal under elementwise-l1 norms, solved
/// as an uncapacitated min-cost flow: one node per (pixel, channel), spatial
/// arcs of cost dx between neighbouring cells, channel arcs of cost
/// alpha * c_e between graph nodes of the same cell. Independent of the PDHG
/// code path; used to validate it on small instances.
///
/// Throws InvalidArgument for matrix payloads or any norm other than
/// elementwise-l1.
double lp_oracle(const TransportProblem& problem, const SolverConfig& cfg);

double lp_oracle_scalar(const ScalarDensity& l0, const ScalarDensity& l1);
double lp_oracle_vector(const VectorDensity& l0, const VectorDensity& l1,
                        const TransportGraph& graph, double alpha);

}  // namespace omt
